"""Plane degeneracy-locus sextics: the curve {[v] in P(W) : dim(F_v cap A) >= 2},
its reduced 18-dim model, the quadratic forms psi and the leading-term
formula, singularity reports with cusp detection, the projected-Grassmannian
common-zero check, and the inequality ledger bounding #Theta_A by 20."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import _core
from .errors import (
    BadFrame,
    ConstructionDegenerate,
    InfeasibleInput,
    InternalInconsistency,
    NotACurve,
    NotAMember,
    WrongDimension,
)
from .exterior import KVector, plucker, tuple_index
from .lagrangian import F_of, LagrangianSubspace, symplectic_perp
from .linalg import Subspace, det_bareiss, rank, solve
from .poly import MultiPoly, exact_divide, gcd_multivariate, interpolate_from_values, tangent_cone
from .scalars import primes_above

_CHECK_PRIME = primes_above(2**31 - 3000, 1)[0]


# -- the reduced 18-dimensional model -------------------------------------------


@dataclass
class ReducedSpace:
    w3: list                 # Plucker coordinates of W
    basis: list              # 18 rows x 20: complement of <w3> inside (w3)-perp
    _solver: list            # 19 x 20 stacked [w3; basis] for coordinate solves

    def project(self, vec20):
        """Coordinates in the 18-dim quotient of a vector of (w3)-perp."""
        sol = solve(self._solver, list(vec20))
        if sol is None:
            raise WrongDimension("vector is outside the perp of the Plucker line")
        return sol[1:]


def reduced_space(w: Subspace) -> ReducedSpace:
    """Model of (wedge^3 W)-perp / <wedge^3 W>, with its 18-dim projection."""
    if w.ambient_dim != 6 or w.dim != 3:
        raise WrongDimension("reduced space needs a plane in the 6-space")
    w3 = plucker(w).coords()
    perp = symplectic_perp(Subspace(20, [w3]))
    # drop one perp basis row so the rest complements the Plucker line
    rows = [list(r) for r in perp.rows]
    for drop in range(len(rows)):
        rest = [rows[i] for i in range(len(rows)) if i != drop]
        if rank([list(w3)] + rest) == 19:
            solver = [[row[j] for row in [list(w3)] + rest] for j in range(20)]
            return ReducedSpace(w3=list(w3), basis=rest, _solver=solver)
    raise InternalInconsistency("the perp of an isotropic line must contain it")


# -- the curve equation -----------------------------------------------------------


@dataclass
class CurveEquation:
    c: MultiPoly | None       # homogeneous degree 6 in 3 variables, up to scalar
    is_plane: bool            # True when every point of P(W) is on the locus
    frame: list               # the basis rows of W fixing the coordinates


def _primitive(vec):
    import math

    vec = [Fraction(x) for x in vec]
    lcm = 1
    for x in vec:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _hyperplane_candidates():
    for drop in range(6):
        keep = [i for i in range(6) if i != drop]
        yield Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in keep])


def _curve_rank_matrix(a_mod, frame_mod, x, p):
    """Stacked [A; F_v] mod p at v = sum x_i w_i; on the curve iff rank <= 18."""
    v = [sum(x[i] * frame_mod[i][j] for i in range(3)) % p for j in range(6)]
    f = F_of(v, p)
    return [list(r) for r in a_mod] + [list(r) for r in f.rows]


def _oracle_on_curve(a_mod, frame_mod, x, p):
    return _core.rank_mod(_curve_rank_matrix(a_mod, frame_mod, x, p), p) <= 18


def _proj_points(p, nvars):
    """Representatives of projective points: first nonzero coordinate is 1."""
    pts = []

    def rec(prefix):
        i = len(prefix)
        if i == nvars:
            if any(prefix):
                pts.append(tuple(prefix))
            return
        if any(prefix):
            for c in range(p):
                rec(prefix + [c])
        else:
            rec(prefix + [0])
            rec(prefix + [1])

    rec([])
    return pts


def curve_equation(a: LagrangianSubspace, w: Subspace, seed: int = 0) -> CurveEquation:
    """Degree-6 equation of the rank-degeneracy curve on P(W), or a plane marker.

    Interpolates several 18x18 minors of the 18x19 model over the simplex
    nodes, takes their gcd, strips extraneous linear factors, and validates
    exhaustively over F_2 and F_3 plus samples at a 31-bit prime.
    """
    w3 = plucker(w).coords()
    if not a.space.contains_vector(w3):
        raise NotAMember("the Plucker image of W is not in A")
    frame = [_primitive(r) for r in w.rows]
    red = reduced_space(w)

    # nine constant columns spanning A / <w3>
    acols = []
    for r in a.rows:
        acols.append(red.project(list(r)))
    acols = [list(row) for row in Subspace(18, acols).rows]
    if len(acols) != 9:
        raise InternalInconsistency("A projects to a 9-dim space of the reduced model")

    tidx3 = tuple_index(6, 3)
    last_error = None
    for v0 in list(_hyperplane_candidates())[:3]:
        try:
            return _curve_from_hyperplane(a, w, frame, red, acols, v0, tidx3, seed)
        except ConstructionDegenerate as exc:
            last_error = exc
    raise ConstructionDegenerate(str(last_error))


def _curve_from_hyperplane(a, w, frame, red, acols, v0, tidx3, seed):
    v0_rows = [_primitive(r) for r in v0.rows]
    betas = []
    for i, j in combinations(range(5), 2):
        betas.append(KVector.from_vector(v0_rows[i]).wedge(KVector.from_vector(v0_rows[j])))
    # projections of w_i ^ beta_j: the linear column j is sum_i x_i * proj[i][j]
    proj = [[None] * 10 for _ in range(3)]
    for i in range(3):
        wi = KVector.from_vector(frame[i])
        for j, beta in enumerate(betas):
            prod = wi.wedge(beta)
            vec = [Fraction(0)] * 20
            for t, c in prod.coeffs.items():
                vec[tidx3[t]] = c
            proj[i][j] = red.project(vec)

    const_cols = [_primitive(col) for col in acols]

    def minor_value(x, dropped):
        cols = [list(c) for c in const_cols]
        for j in range(10):
            if j == dropped:
                continue
            cols.append(
                [
                    sum(Fraction(x[i]) * proj[i][j][r] for i in range(3))
                    for r in range(18)
                ]
            )
        mat = [[cols[c][r] for c in range(18)] for r in range(18)]
        # scale rows to integers for the fraction-free determinant
        int_rows = []
        for row in mat:
            int_rows.append(_scale_row(row))
        scale = Fraction(1)
        rows2 = []
        for ints, s in int_rows:
            scale *= s
            rows2.append(ints)
        return det_bareiss(rows2) / scale

    from .poly import interpolation_nodes

    a_mod = {}
    frame_mod = {}
    for p in (2, 3):
        a_mod[p] = [list(r) for r in a.space.reduce_mod(p).rows] if a.p is None else [list(r) for r in a.rows]
        frame_mod[p] = [[x % p for x in r] for r in frame]

    nodes = interpolation_nodes(9, 3)
    pc = _CHECK_PRIME
    amp = [list(r) for r in a.space.reduce_mod(pc).rows] if a.p is None else [list(r) for r in a.rows]
    fmp = [[x % pc for x in r] for r in frame]
    g = None
    n_nonzero = 0
    stripped = None
    for dropped in range(10):
        vals = [minor_value(x, dropped) for x in nodes]
        if all(v == 0 for v in vals):
            continue
        f = interpolate_from_values(vals, 9, 3)
        g = f if g is None else gcd_multivariate(g, f)
        n_nonzero += 1
        # four independent minors usually pin the gcd down; keep folding in
        # further minors while a spurious higher-degree factor survives
        if n_nonzero >= 4:
            cand = _strip_spurious_factors(g, a_mod, frame_mod, amp, fmp)
            if cand.degree() == 6 and cand.is_homogeneous():
                stripped = cand
                break

    if g is None:
        # plane-filling: confirm with the exhaustive oracle at p = 2 and 3
        for p in (2, 3):
            for x in _proj_points(p, 3):
                if not _oracle_on_curve(a_mod[p], frame_mod[p], x, p):
                    raise ConstructionDegenerate(
                        "all minors vanish but the rank oracle finds an off-curve point"
                    )
        return CurveEquation(c=None, is_plane=True, frame=frame)

    g = stripped if stripped is not None else _strip_spurious_factors(g, a_mod, frame_mod, amp, fmp)
    if g.degree() != 6 or not g.is_homogeneous():
        raise ConstructionDegenerate(f"validated gcd has degree {g.degree()}, expected 6")
    _validate_curve(g, a, frame, a_mod, frame_mod, seed)
    return CurveEquation(c=g.monic(), is_plane=False, frame=frame)


def _scale_row(row):
    import math

    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row], Fraction(1, lcm)


def _strip_spurious_factors(g, a_mod, frame_mod, amp=None, fmp=None):
    """Remove factors of the minor gcd not supported on the degeneracy locus.

    Candidate factors are found by comparison with the rank oracle: first
    exhaustively over F_2 and F_3, then by sampling zeros of each surviving
    factor at the 31-bit check prime (a genuine curve factor vanishes only
    on the degeneracy locus).
    """
    import sympy

    if g.degree() <= 6:
        return g
    xs = sympy.symbols("x0:3")
    expr = 0
    for e, c in g.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, e):
            if k:
                term *= x ** k
        expr += term
    factors = sympy.factor_list(expr)[1]
    for base, mult in factors:
        poly = sympy.Poly(base, *xs)
        fac = MultiPoly(3, {tuple(int(k) for k in m): Fraction(c.p, c.q)
                            for m, c in poly.terms()})
        for _ in range(mult):
            if g.degree() <= 6:
                break
            # a genuine curve factor vanishes only where the oracle agrees
            spurious = False
            for p in (2, 3):
                fp = MultiPoly(3, {e: int(c * _common_den(fac)) % p for e, c in fac.terms.items()}, p)
                if fp.is_zero():
                    continue
                for x in _proj_points(p, 3):
                    if fp.eval(x) % p == 0 and not _oracle_on_curve(a_mod[p], frame_mod[p], x, p):
                        spurious = True
                        break
                if spurious:
                    break
            if not spurious and amp is not None:
                spurious = _spurious_at_check_prime(fac, amp, fmp)
            if spurious:
                g = exact_divide(g, fac)
    return g


def _line_restriction_modp(f, base, dirn, p):
    """Coefficients (low to high in t) of f(base + t*dirn) mod p."""
    d = f.degree()
    den = _common_den(f)
    fp_terms = {e: int(c * den) % p for e, c in f.terms.items()}
    vals = []
    for t in range(d + 1):
        x = [(base[i] + t * dirn[i]) % p for i in range(3)]
        v = 0
        for e, c in fp_terms.items():
            v = (v + c * pow(x[0], e[0], p) * pow(x[1], e[1], p) * pow(x[2], e[2], p)) % p
        vals.append(v)
    # solve the Vandermonde system for the univariate coefficients
    n = d + 1
    mat = [[pow(t, j, p) for j in range(n)] + [vals[t]] for t in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] % p)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = pow(mat[col][col], p - 2, p)
        mat[col] = [x * inv % p for x in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(a - c * b) % p for a, b in zip(mat[r], mat[col])]
    return [mat[j][n] for j in range(n)]


def _spurious_at_check_prime(fac, amp, fmp):
    """True if some zero of the factor mod the check prime is off the locus."""
    from .epw import _univariate_roots_modp

    p = _CHECK_PRIME
    rng = random.Random(repr(("factor-oracle", tuple(sorted(fac.terms)))))
    for _ in range(40):
        base = [rng.randrange(p) for _ in range(3)]
        dirn = [rng.randrange(p) for _ in range(3)]
        coeffs = _line_restriction_modp(fac, base, dirn, p)
        for t in _univariate_roots_modp(coeffs, p):
            x = tuple((base[i] + t * dirn[i]) % p for i in range(3))
            if not any(x):
                continue
            if not _oracle_on_curve(amp, fmp, x, p):
                return True
    return False


def _common_den(f):
    import math

    lcm = 1
    for c in f.terms.values():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm


def _validate_curve(g, a, frame, a_mod, frame_mod, seed):
    # exhaustive agreement over F_2 and F_3, then samples at a 31-bit prime
    for p in (2, 3):
        gp = MultiPoly(3, {e: int(c * _common_den(g)) % p for e, c in g.terms.items()}, p)
        for x in _proj_points(p, 3):
            on_poly = gp.eval(x) % p == 0 if not gp.is_zero() else True
            if on_poly != _oracle_on_curve(a_mod[p], frame_mod[p], x, p):
                raise ConstructionDegenerate(f"curve and rank oracle disagree at p={p}")
    p = _CHECK_PRIME
    rng = random.Random(repr((seed, "curve-sampling")))
    amp = [list(r) for r in a.space.reduce_mod(p).rows] if a.p is None else [list(r) for r in a.rows]
    fmp = [[x % p for x in r] for r in frame]
    gp = MultiPoly(3, {e: int(c * _common_den(g)) % p for e, c in g.terms.items()}, p)
    for _ in range(60):
        x = tuple(rng.randrange(p) for _ in range(3))
        if not any(x):
            continue
        if (gp.eval(x) % p == 0) != _oracle_on_curve(amp, fmp, x, p):
            raise ConstructionDegenerate("curve and rank oracle disagree at the check prime")


# -- psi forms and the leading term ----------------------------------------------


def _check_frame(v0, w, v0_space, w0_space):
    if w0_space.dim != 2 or not w.contains(w0_space):
        raise BadFrame("W0 must be a 2-dim subspace of W")
    if w0_space.contains_vector(v0) or not w.contains_vector(v0):
        raise BadFrame("v0 must lie in W outside W0")
    if v0_space.dim != 5 or v0_space.contains_vector(v0):
        raise BadFrame("V0 must be a 5-dim complement of the point")
    if v0_space.intersect(w) != w0_space:
        raise BadFrame("V0 must cut W exactly in W0")


def _frame_betas(v0_space, w0_space):
    """Basis 2-forms of wedge^2 V0 with the first spanning wedge^2 W0."""
    w0_rows = [_primitive(r) for r in w0_space.rows]
    others = []
    span = w0_space
    for r in v0_space.rows:
        cand = Subspace(6, [list(x) for x in span.rows] + [list(r)])
        if cand.dim > span.dim:
            span = cand
            others.append(_primitive(r))
    basis_vecs = w0_rows + others
    if len(basis_vecs) != 5:
        raise BadFrame("V0 basis extension failed")
    kvs = [KVector.from_vector(v) for v in basis_vecs]
    betas = []
    for i, j in combinations(range(5), 2):
        betas.append(kvs[i].wedge(kvs[j]))
    return betas  # betas[0] = w0' ^ w1' spans wedge^2 W0


def psi_form(v0, w_dir, v0_space: Subspace, w0_space: Subspace, w: Subspace):
    """9x9 symmetric matrix of beta -> vol(v0 ^ w ^ beta ^ beta) on the quotient.

    Rows/columns follow the pair basis of wedge^2 V0 with the wedge^2 W0
    generator removed; entries are linear in the direction w in W0.
    """
    _check_frame(v0, w, v0_space, w0_space)
    betas = _frame_betas(v0_space, w0_space)
    prefix = KVector.from_vector(list(v0)).wedge(KVector.from_vector(list(w_dir)))
    mat = []
    for k in range(1, 10):
        row = []
        for l in range(1, 10):
            top = prefix.wedge(betas[k]).wedge(betas[l])
            row.append(top.coeffs.get((0, 1, 2, 3, 4, 5), Fraction(0)))
        mat.append(row)
    return mat


def default_frame(w: Subspace, v0):
    """A W0 complementing v0 inside W and a V0 cutting W in W0."""
    v0 = _primitive(v0)
    w_rows = [_primitive(r) for r in w.rows]
    w0_rows = []
    span = Subspace(6, [v0])
    for r in w_rows:
        cand = Subspace(6, [list(x) for x in span.rows] + [list(r)])
        if cand.dim > span.dim:
            span = cand
            w0_rows.append(r)
    w0_space = Subspace(6, w0_rows)
    ext = [list(r) for r in w0_rows]
    for i in range(6):
        if len(ext) == 5:
            break
        e = [1 if j == i else 0 for j in range(6)]
        cand = Subspace(6, ext + [e])
        if cand.dim == len(ext) + 1 and not cand.contains_vector(v0):
            ext.append(e)
    v0_space = Subspace(6, ext)
    if v0_space.dim != 5 or v0_space.contains_vector(v0):
        raise BadFrame("no coordinate extension avoids the base point")
    return w0_space, v0_space


def leading_term(a: LagrangianSubspace, w: Subspace, v0, frame=None):
    """(k_bar, determinant of psi restricted to (A cap F_v0)/<wedge^3 W>).

    The determinant is a homogeneous degree-k_bar polynomial in the two chart
    variables along W0; k_bar = dim(A cap F_v0) - 1.
    """
    w3 = plucker(w).coords()
    if not a.space.contains_vector(w3):
        raise NotAMember("the Plucker image of W is not in A")
    if not w.contains_vector(v0):
        raise NotAMember("v0 must be a point of P(W)")
    if frame is None:
        w0_space, v0_space = default_frame(w, v0)
    else:
        w0_space, v0_space = frame
    _check_frame(v0, w, v0_space, w0_space)
    v0 = _primitive(v0)

    # K = A cap F_{v0}; K_bar = K / <wedge^3 W> under beta -> v0 ^ beta
    fv = F_of(v0)
    k_space = _intersect_rows(a.space, fv.space)
    k_bar = k_space.dim - 1
    if k_bar < 0 or not k_space.contains_vector(w3):
        raise InternalInconsistency("wedge^3 W must lie in A cap F_v0")

    betas = _frame_betas(v0_space, w0_space)
    tidx3 = tuple_index(6, 3)
    # solve v0 ^ beta = alpha for beta in wedge^2 V0 (columns = betas)
    cols = []
    v0k = KVector.from_vector(v0)
    for beta in betas:
        vec = [Fraction(0)] * 20
        for t, c in v0k.wedge(beta).coeffs.items():
            vec[tidx3[t]] = c
        cols.append(vec)
    sys_rows = [[cols[j][r] for j in range(10)] for r in range(20)]
    kbar_coords = []
    for alpha in k_space.rows:
        sol = solve(sys_rows, list(alpha))
        if sol is None:
            raise InternalInconsistency("A cap F_v0 must embed into wedge^2 V0")
        kbar_coords.append(sol[1:])  # drop the wedge^2 W0 component
    kbar_basis = [list(r) for r in Subspace(9, kbar_coords).rows]
    if len(kbar_basis) != k_bar:
        raise InternalInconsistency("quotient of A cap F_v0 has the wrong dimension")

    w0_rows = [_primitive(r) for r in w0_space.rows]
    psis = [psi_form(v0, w0_rows[i], v0_space, w0_space, w) for i in range(2)]
    if k_bar == 0:
        return 0, MultiPoly.constant(2, 1)

    # restrict each psi to the quotient basis, then det of x0*psi0 + x1*psi1
    def restrict(m):
        return [
            [
                sum(
                    Fraction(kbar_basis[r][i]) * m[i][j] * Fraction(kbar_basis[c][j])
                    for i in range(9)
                    for j in range(9)
                )
                for c in range(k_bar)
            ]
            for r in range(k_bar)
        ]

    r0, r1 = restrict(psis[0]), restrict(psis[1])
    x0 = MultiPoly.variable(2, 0)
    x1 = MultiPoly.variable(2, 1)
    entries = [
        [x0.scale(r0[i][j]) + x1.scale(r1[i][j]) for j in range(k_bar)]
        for i in range(k_bar)
    ]
    return k_bar, _poly_det(entries)


def _poly_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = MultiPoly.zero(m[0][0].nvars)
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _poly_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def _intersect_rows(s1: Subspace, s2: Subspace) -> Subspace:
    return s1.intersect(s2)


# -- projected-Grassmannian common-zero check ------------------------------------


@dataclass
class PsiCheckReport:
    prime: int
    ambient_points: int          # points of P(wedge^2 V0) scanned
    common_zeros: int            # distinct projected common zeros of the psi forms
    grassmann_points: int        # 2-dim subspaces of V0 over F_p
    projected_points: int        # distinct projections (center excluded)
    containment: bool            # projected Grassmannian inside the zero set


def psi_common_zero_check(v0, w: Subspace, p: int, frame=None) -> PsiCheckReport:
    """Compare common zeros of the psi forms with the projected Grassmannian.

    Scans all of P(wedge^2 V0) over F_p, pulls back both forms, projects the
    zero set from the wedge^2 W0 center, and checks it contains the image of
    Gr(2, V0) under the same projection.  Counts are reported, not judged.
    """
    if frame is None:
        w0_space, v0_space = default_frame(w, v0)
    else:
        w0_space, v0_space = frame
    _check_frame(_primitive(v0), w, v0_space, w0_space)
    v0 = _primitive(v0)
    w0_rows = [_primitive(r) for r in w0_space.rows]
    psis = [psi_form(v0, w0_rows[i], v0_space, w0_space, w) for i in range(2)]
    # pull back to wedge^2 V0: full 10x10 forms (first row/col vanish on W0)
    betas = _frame_betas(v0_space, w0_space)
    # the pair-basis diagonal vanishes (beta ^ beta = 0 for decomposables), so
    # the integral form is twice its upper triangle; evaluate the half-form to
    # keep the zero locus honest at p = 2
    import math

    full = []
    for wdir in w0_rows:
        prefix = KVector.from_vector(v0).wedge(KVector.from_vector(wdir))
        m = [[0] * 10 for _ in range(10)]
        g = 0
        for k in range(10):
            for l in range(k + 1, 10):
                top = prefix.wedge(betas[k]).wedge(betas[l])
                m[k][l] = int(top.coeffs.get((0, 1, 2, 3, 4, 5), Fraction(0)))
                g = math.gcd(g, m[k][l])
        # strip the content so scalar factors cannot fake vanishing mod p
        if g > 1:
            m = [[x // g for x in row] for row in m]
        m = [[x % p for x in row] for row in m]
        full.append(m)

    import numpy as np

    pts = np.array(_proj_points(p, 10), dtype=np.int64)
    ambient = len(pts)
    mask = np.ones(ambient, dtype=bool)
    for m in full:
        mm = np.array(m, dtype=np.int64)
        vals = ((pts @ mm) * pts).sum(axis=1) % p
        mask &= vals == 0
    zeros = set()
    for pt in pts[mask]:
        projected = _normalize_proj([int(c) for c in pt[1:]], p)
        if projected is not None:
            zeros.add(projected)

    # enumerate Gr(2, V0): 2-dim subspaces in the 5 coordinates of V0's basis
    _, planes = _core.enumerate_incident(5, 2, p, [])
    gr_count = len(planes)
    projected_pts = set()
    v0_basis = [w0_rows[0], w0_rows[1]] + _frame_extension_rows(v0_space, w0_space)
    contained = True
    pair_index = {pair: i for i, pair in enumerate(combinations(range(5), 2))}
    for rows in planes:
        # Plucker coordinates in the pair basis of wedge^2 V0
        coords = [0] * 10
        for (i, j), idx in pair_index.items():
            coords[idx] = (rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]) % p
        proj = _normalize_proj(coords[1:], p)
        if proj is None:
            continue  # the center itself
        projected_pts.add(proj)
        if proj not in zeros:
            contained = False
    return PsiCheckReport(
        prime=p,
        ambient_points=ambient,
        common_zeros=len(zeros),
        grassmann_points=gr_count,
        projected_points=len(projected_pts),
        containment=contained,
    )


def _frame_extension_rows(v0_space, w0_space):
    rows = []
    span = w0_space
    for r in v0_space.rows:
        cand = Subspace(6, [list(x) for x in span.rows] + [list(r)])
        if cand.dim > span.dim:
            span = cand
            rows.append(_primitive(r))
    return rows


def _normalize_proj(coords, p):
    first = next((c for c in coords if c % p), None)
    if first is None:
        return None
    inv = pow(first, p - 2, p)
    return tuple(c * inv % p for c in coords)


# -- the Plucker-cone tangent space and forced singular points --------------------


def plucker_tangent_space(w: Subspace) -> Subspace:
    """S_W = (wedge^2 W) ^ C^6, the 10-dim affine tangent space at wedge^3 W."""
    if w.ambient_dim != 6 or w.dim != 3:
        raise WrongDimension("expected a plane of the 6-space")
    tidx3 = tuple_index(6, 3)
    frame = [_primitive(r) for r in w.rows]
    rows = []
    for i, j in combinations(range(3), 2):
        two = KVector.from_vector(frame[i]).wedge(KVector.from_vector(frame[j]))
        for k in range(6):
            prod = two.wedge(KVector.basis(6, (k,)))
            vec = [Fraction(0)] * 20
            for t, c in prod.coeffs.items():
                vec[tidx3[t]] = c
            rows.append(vec)
    out = Subspace(20, rows, w.p)
    if out.dim != 10:
        raise InternalInconsistency("the tangent space of the Plucker cone is 10-dim")
    return out


def forced_singular_point(a: LagrangianSubspace, w: Subspace, v, theta_members=()) -> bool:
    """Membership in the forced-singularity locus of the curve on P(W).

    True when another Theta member passes through v, or when
    dim(A cap F_v cap S_W) >= 2.
    """
    if not w.contains_vector(v):
        raise NotAMember("v must be a point of P(W)")
    for other in theta_members:
        if other != w and other.contains_vector(v):
            return True
    fv = F_of(list(v), a.p)
    inter = a.space.intersect(fv.space).intersect(plucker_tangent_space(w))
    return inter.dim >= 2


# -- singularity reports -----------------------------------------------------------


@dataclass
class PointRecord:
    point: tuple              # coordinates in the curve frame
    n_p: int
    multiplicity: int
    cusp: bool


@dataclass
class SingularityReport:
    records: list
    tallies: dict             # j -> l_j for j = 1..4
    component_count: int      # caller-supplied assumption
    notes: list = field(default_factory=list)


def singularity_report(curve: CurveEquation, theta_members, w: Subspace,
                       component_count: int = 1) -> SingularityReport:
    """Multiplicity/cusp data at every P(W cap W'), W' another Theta member.

    Raises InternalInconsistency when a proved constraint fails: n_p > 4,
    a forced singular point that is smooth, an n_p = 2 point that is neither
    cuspidal nor of multiplicity >= 3, or n_p in {3,4} with multiplicity < 3.
    """
    if curve.is_plane or curve.c is None:
        raise NotACurve("the degeneracy locus is the whole plane")
    frame = curve.frame
    frame_rows = [[Fraction(x) for x in r] for r in frame]
    points = {}
    for other in theta_members:
        if other == w:
            continue
        q = w.intersect(other)
        if q.dim == 0:
            continue
        if q.dim > 1:
            raise InternalInconsistency("two Theta members share a line")
        pt = list(q.rows[0])
        sol = solve([[frame_rows[i][j] for i in range(3)] for j in range(6)], pt)
        if sol is None:
            raise InternalInconsistency("intersection point must lie in the frame")
        key = _normalize_fraction_point(sol)
        points[key] = points.get(key, 0) + 1

    records = []
    tallies = {1: 0, 2: 0, 3: 0, 4: 0}
    notes = []
    for key, n_p in sorted(points.items(), key=str):
        if n_p > 4:
            raise InternalInconsistency(f"n_p = {n_p} exceeds the proved bound 4")
        x = list(key)
        chart = _chart_at(x)
        m, _, quad_rank = tangent_cone(curve.c, x, chart)
        cusp = m == 2 and quad_rank == 1
        if m < 2:
            raise InternalInconsistency("a forced singular point is smooth on the curve")
        if n_p == 2 and not cusp and m < 3:
            raise InternalInconsistency("n_p = 2 needs a cusp or multiplicity >= 3")
        if n_p >= 3 and m < 3:
            raise InternalInconsistency("n_p >= 3 needs multiplicity >= 3")
        records.append(PointRecord(point=key, n_p=n_p, multiplicity=m, cusp=cusp))
        if 1 <= n_p <= 4:
            tallies[n_p] += 1
    if component_count < 1:
        raise InfeasibleInput("component count must be at least 1")
    notes.append(f"component count s={component_count} supplied by the caller, not verified")
    return SingularityReport(
        records=records, tallies=tallies, component_count=component_count, notes=notes
    )


def _normalize_fraction_point(sol):
    first = next(c for c in sol if c)
    return tuple(Fraction(c) / first for c in sol)


def _chart_at(x):
    pivot = next(i for i, c in enumerate(x) if c)
    return [[1 if j == i else 0 for j in range(3)] for i in range(3) if i != pivot]


# -- the inequality ledger ----------------------------------------------------------


@dataclass
class BoundAudit:
    cap: int
    binding: list
    violated: list
    feasible: bool


def bound_audit(l1: int, l2: int, l3: int, l4: int, s: int = 1) -> BoundAudit:
    """Evaluate the singular-point inequality ledger for a sextic curve.

    cap = 1 + l1 + 2*l2 + 3*l3 + 4*l4, clipped by the global bound 20;
    feasibility needs l1 + l2 + 3*(l3 + l4) <= 9 + s, at most 15 singular
    points, and (when s = 1 and l3 = l4 = 0) 2*l1 + 3*l2 <= 27.
    """
    if min(l1, l2, l3, l4) < 0 or s < 1:
        raise InfeasibleInput("counts must be nonnegative and s >= 1")
    if l1 + l2 + 3 * (l3 + l4) > 9 + s:
        raise InfeasibleInput(
            f"l1 + l2 + 3*(l3 + l4) = {l1 + l2 + 3 * (l3 + l4)} exceeds 9 + s = {9 + s}"
        )
    violated = []
    binding = []
    if l1 + l2 + l3 + l4 > 15:
        violated.append("at most 15 singular points")
    if s == 1 and l3 == 0 and l4 == 0 and 2 * l1 + 3 * l2 > 27:
        violated.append("2*l1 + 3*l2 <= 27")
    cap = 1 + l1 + 2 * l2 + 3 * l3 + 4 * l4
    binding.append("cap = 1 + l1 + 2*l2 + 3*l3 + 4*l4")
    if cap > 20:
        cap = 20
        binding.append("global bound 20")
    if l1 + l2 + 3 * (l3 + l4) == 9 + s:
        binding.append("l1 + l2 + 3*(l3 + l4) <= 9 + s")
    return BoundAudit(cap=cap, binding=binding, violated=violated, feasible=not violated)


def max_theta_bound(s_values=(1, 2, 3), l34=None) -> int:
    """Maximum audited cap over all feasible ledgers (optionally fixing l3+l4)."""
    best = 0
    for s in s_values:
        for l3 in range(0, 6):
            for l4 in range(0, 6):
                if l34 is not None and l3 + l4 != l34:
                    continue
                budget = 9 + s - 3 * (l3 + l4)
                if budget < 0:
                    continue
                for l2 in range(0, budget + 1):
                    for l1 in range(0, budget - l2 + 1):
                        try:
                            audit = bound_audit(l1, l2, l3, l4, s)
                        except InfeasibleInput:
                            continue
                        if audit.feasible and audit.cap > best:
                            best = audit.cap
    return best
