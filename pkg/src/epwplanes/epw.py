"""EPW sextics: the determinantal degree-10 model, extraction of the degree-6
equation y_A, multiplicity via dim(A cap F_v), and the model Lagrangian built
from the ruling planes of the Plucker quadric (whose sextic is the triple
quadric)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _core
from .errors import (
    BadHyperplane,
    ConstructionDegenerate,
    InconsistentEvaluations,
    InternalInconsistency,
    NotDivisible,
    SpanDeficient,
)
from .exterior import KVector, tuple_index
from .lagrangian import F_of, LagrangianSubspace, intersection_dim, isotropic_span
from .linalg import Subspace, det_bareiss, rank
from .planes import PlaneFamily, ruling_plane
from .poly import (
    MultiPoly,
    exact_divide,
    interpolate_from_values,
    interpolation_nodes,
    taylor_parts,
)
from .scalars import crt_combine, primes_above, symmetric_lift

# 31-bit working primes for determinant evaluation
_EVAL_PRIMES = primes_above(2**31 - 2000, 10)

# the Plucker quadric of Gr(2,U) in the fixed coordinates e0..e5 <-> wedge^2 U
PLUCKER_QUADRIC = MultiPoly(6, {
    (1, 0, 0, 0, 0, 1): 1,
    (0, 1, 0, 0, 1, 0): -1,
    (0, 0, 1, 1, 0, 0): 1,
})


@dataclass
class EpwEquation:
    y: MultiPoly | None            # homogeneous degree 6, up to scalar
    identically_zero: bool
    hyperplane: list               # coefficients of the linear form cutting V0

    @property
    def is_plane_filling(self):
        return self.identically_zero


def _primitive_int_rows(space: Subspace):
    import math

    out = []
    for r in space.rows:
        lcm = 1
        for x in r:
            lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
        ints = [int(Fraction(x) * lcm) for x in r]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def _hyperplane_form(v0: Subspace):
    """The linear form (up to scalar) vanishing on a 5-dim subspace."""
    n = v0.complement_functionals()
    col = [n[i][0] for i in range(6)]
    import math

    lcm = 1
    for x in col:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    ints = [int(Fraction(x) * lcm) for x in col]
    return ints


def _wedge_columns(v0: Subspace):
    """For each basis 2-form of wedge^2 V0, the 20x6 matrix of v -> v ^ beta."""
    rows = _primitive_int_rows(v0)
    tidx3 = tuple_index(6, 3)
    mats = []
    for i, j in combinations(range(len(rows)), 2):
        beta = KVector.from_vector(rows[i]).wedge(KVector.from_vector(rows[j]))
        mat = [[0] * 6 for _ in range(20)]
        for col in range(6):
            prod = KVector.basis(6, (col,)).wedge(beta)
            for t, c in prod.coeffs.items():
                mat[tidx3[t]][col] = int(c)
        mats.append(mat)
    return mats


def _determinant_matrices(a: LagrangianSubspace, v0: Subspace, nodes):
    """All 20x20 evaluation matrices as one int64 array (entries stay small)."""
    acols = _primitive_int_rows(a.space)
    cmats = _wedge_columns(v0)
    n = len(nodes)
    arr = np.zeros((n, 20, 20), dtype=np.int64)
    amat = np.array(acols, dtype=np.int64).T  # 20 x 10
    arr[:, :, :10] = amat
    node_arr = np.array(nodes, dtype=np.int64)  # n x 6
    for j, cm in enumerate(cmats):
        cnp = np.array(cm, dtype=np.int64)     # 20 x 6
        arr[:, :, 10 + j] = node_arr @ cnp.T
    return arr


def epw_determinant(a: LagrangianSubspace, v0: Subspace | None = None) -> MultiPoly:
    """Degree-10 determinant of the 20x20 pencil [basis of A | v ^ wedge^2 V0].

    Evaluated at the interpolation nodes over several 31-bit primes, CRT
    lifted with a symmetric range, cross-checked on a fresh prime and by one
    exact integer determinant.
    """
    if v0 is None:
        v0 = Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in range(1, 6)])
    if v0.ambient_dim != 6 or v0.dim != 5:
        raise BadHyperplane("V0 must be a 5-dim subspace of the 6-space")
    nodes = interpolation_nodes(10, 6)
    arr = _determinant_matrices(a, v0, nodes)

    per_prime = {}

    def poly_mod(p):
        if p not in per_prime:
            vals = _core.batch_det_mod(arr % p, p)
            per_prime[p] = interpolate_from_values(vals, 10, 6, p=p)
        return per_prime[p]

    nprimes = 2
    result = None
    while nprimes <= 8:
        primes = _EVAL_PRIMES[:nprimes]
        check_prime = _EVAL_PRIMES[nprimes]
        for p in primes:
            poly_mod(p)
        modulus = 1
        for p in primes:
            modulus *= p
        exps = set()
        for p in primes:
            exps |= set(per_prime[p].terms)
        terms = {}
        for e in exps:
            x, _ = crt_combine([(per_prime[p].terms.get(e, 0), p) for p in primes])
            terms[e] = symmetric_lift(x, modulus)
        cand = MultiPoly(6, terms)
        chk = poly_mod(check_prime)
        reduced = {e: c % check_prime for e, c in ((e, int(c)) for e, c in cand.terms.items())}
        reduced = {e: c for e, c in reduced.items() if c}
        if reduced == chk.terms:
            result = cand
            break
        nprimes += 1
    if result is None:
        raise InconsistentEvaluations("determinant coefficients did not stabilize under CRT")

    # one exact confirmation row
    rng = random.Random("epw-exact-check")
    idx = rng.randrange(len(nodes))
    exact = det_bareiss([[int(x) for x in row] for row in arr[idx]])
    if result.eval(nodes[idx]) != exact:
        raise InconsistentEvaluations("exact determinant disagrees with the interpolation")
    return result


def _hyperplane_linear_poly(l):
    return MultiPoly(6, {tuple(1 if j == i else 0 for j in range(6)): l[i] for i in range(6)})


def _random_fp_point(rng, p):
    return [rng.randrange(p) for _ in range(6)]


def _membership_oracle(a_rows_mod, v, p):
    """dim(F_v cap A) >= 1 over F_p, by ranks of the stacked 20x20 matrix."""
    f = F_of(v, p)
    stacked = [list(r) for r in a_rows_mod] + [list(r) for r in f.rows]
    return _core.rank_mod(stacked, p) < 20


def _univariate_roots_modp(coeffs, p):
    """Roots in F_p of a univariate polynomial given low-to-high coefficients."""

    def pmul(f, g, mod):
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    out[i + j] = (out[i + j] + a * b) % p
        return prem(out, mod)

    def prem(f, g):
        f = f[:]
        dg = len(g) - 1
        inv = pow(g[-1], p - 2, p)
        while len(f) - 1 >= dg and any(f):
            while f and f[-1] == 0:
                f.pop()
            if len(f) - 1 < dg:
                break
            c = f[-1] * inv % p
            shift = len(f) - 1 - dg
            for i, b in enumerate(g):
                f[shift + i] = (f[shift + i] - c * b) % p
            while f and f[-1] == 0:
                f.pop()
        return f if f else [0]

    def pgcd(f, g):
        while any(g):
            f, g = g, prem(f, g)
        while f and f[-1] == 0:
            f.pop()
        return f if f else [0]

    def powmod(base, e, mod):
        out = [1]
        base = prem(base, mod)
        while e:
            if e & 1:
                out = pmul(out, base, mod)
            base = pmul(base, base, mod)
            e >>= 1
        return out

    f = [c % p for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []
    # keep only the part splitting into distinct linear factors
    xp = powmod([0, 1], p, f)
    xp_minus_x = xp[:]
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = pgcd(f, xp_minus_x)
    roots = []
    rng = random.Random(repr(("roots", p, tuple(coeffs))))

    def split(h):
        if len(h) - 1 == 0:
            return
        if len(h) - 1 == 1:
            roots.append((-h[0]) * pow(h[1], p - 2, p) % p)
            return
        while True:
            a = rng.randrange(p)
            t = powmod([a, 1], (p - 1) // 2, h)
            t = t[:]
            if not t:
                t = [0]
            t[0] = (t[0] - 1) % p
            d = pgcd(h, t)
            if 0 < len(d) - 1 < len(h) - 1:
                inv = pow(d[-1], p - 2, p)
                d = [c * inv % p for c in d]
                q = _poly_div(h, d, p)
                split(d)
                split(q)
                return

    if len(g) - 1 > 0:
        inv = pow(g[-1], p - 2, p)
        g = [c * inv % p for c in g]
        split(g)
    return sorted(set(roots))


def _poly_div(f, g, p):
    f = f[:]
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    inv = pow(g[-1], p - 2, p)
    for shift in range(len(f) - 1 - dg, -1, -1):
        c = f[shift + dg] * inv % p
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
    return q


def sample_membership_agreement(a: LagrangianSubspace, y: MultiPoly | None, p: int,
                                n_points: int = 250, seed: int = 0):
    """Check y_A(v) = 0 <=> dim(F_v cap A) >= 1 on random and on-locus points.

    Returns (checked, mismatches).  On-locus points come from roots of the
    sextic restricted to random lines, so the zero side is genuinely
    exercised.
    """
    a_mod = a.space.reduce_mod(p) if a.p is None else a.space
    rng = random.Random(repr((seed, "epw-sampling", p)))
    checked = mismatches = 0
    pts = [_random_fp_point(rng, p) for _ in range(n_points)]
    if y is not None:
        yp = MultiPoly(6, {e: int(c) % p for e, c in y.terms.items()}, p)
        # supplement with points on the locus
        tries = 0
        want = n_points // 4
        got = 0
        while got < want and tries < 40:
            tries += 1
            base = _random_fp_point(rng, p)
            dirn = _random_fp_point(rng, p)
            coeffs = _restrict_to_line(yp, base, dirn, p)
            for t in _univariate_roots_modp(coeffs, p):
                pt = [(base[i] + t * dirn[i]) % p for i in range(6)]
                if any(pt):
                    pts.append(pt)
                    got += 1
    for v in pts:
        if not any(v):
            continue
        member = _membership_oracle(a_mod.rows, v, p)
        if y is None:
            ok = member  # plane-filling sextic: everything is on the locus
        else:
            ok = (yp.eval(v) % p == 0) == member
        checked += 1
        if not ok:
            mismatches += 1
    return checked, mismatches


def _restrict_to_line(yp: MultiPoly, base, dirn, p):
    """Coefficients (low to high in t) of y(base + t*dirn) over F_p."""
    coeffs = [0] * 7
    for e, c in yp.terms.items():
        # expand prod (base_i + t dirn_i)^{e_i}
        acc = {0: 1}
        for i, k in enumerate(e):
            for _ in range(k):
                nxt = {}
                for d, v in acc.items():
                    nxt[d] = (nxt.get(d, 0) + v * base[i]) % p
                    nxt[d + 1] = (nxt.get(d + 1, 0) + v * dirn[i]) % p
                acc = nxt
        for d, v in acc.items():
            coeffs[d] = (coeffs[d] + c * v) % p
    return coeffs


_FALLBACK_HYPERPLANES = [tuple(i for i in range(6) if i != drop) for drop in range(6)]


def epw_equation(a: LagrangianSubspace, seed: int = 0) -> EpwEquation:
    """The degree-6 equation of the EPW locus of A, up to a nonzero scalar.

    Divides the degree-10 determinant by the 4th power of the hyperplane
    form, checks the exponent is exactly 4, re-derives with a second
    hyperplane for proportionality, and samples the membership oracle mod p.
    """
    last_error = None
    for count, keep in enumerate(_FALLBACK_HYPERPLANES[:2]):
        v0 = Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in keep])
        l = _hyperplane_form(v0)
        lin = _hyperplane_linear_poly(l)
        det = epw_determinant(a, v0)
        if det.is_zero():
            # confirm degeneracy on a second hyperplane before reporting it
            keep2 = _FALLBACK_HYPERPLANES[(count + 1) % 6]
            v02 = Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in keep2])
            if not epw_determinant(a, v02).is_zero():
                raise InternalInconsistency("determinant vanishes for one hyperplane only")
            eq = EpwEquation(y=None, identically_zero=True, hyperplane=l)
            checked, bad = sample_membership_agreement(a, None, _EVAL_PRIMES[0], seed=seed)
            if bad:
                raise ConstructionDegenerate(
                    f"plane-filling locus fails the rank oracle on {bad}/{checked} points"
                )
            return eq
        try:
            y = det
            for _ in range(4):
                y = exact_divide(y, lin)
        except NotDivisible as exc:
            last_error = exc
            continue
        try:
            exact_divide(y, lin)
        except NotDivisible:
            pass
        else:
            last_error = ConstructionDegenerate("determinant divisible by the 5th power")
            continue
        if y.degree() != 6 or not y.is_homogeneous():
            last_error = ConstructionDegenerate(f"quotient degree {y.degree()}, expected 6")
            continue
        # hyperplane independence
        keep2 = _FALLBACK_HYPERPLANES[(count + 1) % 6]
        v02 = Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in keep2])
        l2 = _hyperplane_form(v02)
        det2 = epw_determinant(a, v02)
        lin2 = _hyperplane_linear_poly(l2)
        y2 = det2
        try:
            for _ in range(4):
                y2 = exact_divide(y2, lin2)
        except NotDivisible as exc:
            last_error = exc
            continue
        if not y.proportional_to(y2):
            last_error = ConstructionDegenerate("two hyperplane choices disagree")
            continue
        checked, bad = sample_membership_agreement(a, y, _EVAL_PRIMES[0], seed=seed)
        if bad:
            last_error = ConstructionDegenerate(
                f"rank oracle disagrees on {bad}/{checked} sampled points"
            )
            continue
        return EpwEquation(y=y, identically_zero=False, hyperplane=l)
    raise ConstructionDegenerate(str(last_error) if last_error else "no hyperplane worked")


def epw_multiplicity(a: LagrangianSubspace, v, equation: EpwEquation | None = None, seed: int = 0):
    """(dim(A cap F_v), Taylor order of y_A at v or None off the locus)."""
    k = intersection_dim(a, F_of(v, a.p))
    if equation is None:
        equation = epw_equation(a, seed=seed)
    if equation.identically_zero:
        return k, None
    chart = _complement_chart(v)
    parts = taylor_parts(equation.y, v, chart)
    order = None
    for i, g in enumerate(parts):
        if not g.is_zero():
            order = i
            break
    if order == 0:
        return k, None  # v is not on the hypersurface
    return k, order


def _complement_chart(v):
    pivot = next(i for i, x in enumerate(v) if x)
    return [[1 if j == i else 0 for j in range(6)] for i in range(6) if i != pivot]


# -- the model Lagrangian of the ruling planes ---------------------------------

_SPANNING_POINTS = (
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    (1, 1, 0, 0), (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0),
    (0, 1, 0, 1), (1, 1, 1, 1),
)


def build_A_plus(points=None) -> LagrangianSubspace:
    """Span of the Plucker images of the ruling planes at a spanning point set.

    Always 10-dimensional and isotropic; its Theta set is the full family of
    ruling planes and its EPW locus is the triple Plucker quadric.
    """
    pts = [list(u) for u in (points or _SPANNING_POINTS)]
    family = PlaneFamily(6, [ruling_plane(u) for u in pts])
    span = isotropic_span(family)
    if span.dim < 10:
        raise SpanDeficient(f"ruling-plane span has dimension {span.dim}")
    return LagrangianSubspace(span)
