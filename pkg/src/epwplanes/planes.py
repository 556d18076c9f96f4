"""Projective-plane families: incidence, the Fano configuration, Morin-type
detectors, seeded generators, and exhaustive enumeration over prime fields.

Dimensions are linear throughout (a projective plane is a 3-dimensional
subspace); two planes are incident iff their subspaces meet nontrivially.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import _core
from .errors import GenerationFailed, MixedAmbient, WrongDimension
from .linalg import Subspace, nullspace, rank


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n (product formula)."""
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (k - i) - 1
    return num // den


@dataclass
class PlaneFamily:
    ambient_dim: int
    members: list
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        for w in self.members:
            if w.ambient_dim != self.ambient_dim:
                raise MixedAmbient("family members must share the ambient dimension")
            if w.dim != 3:
                raise WrongDimension("family members must be planes (dim 3)")
        if len(set(self.members)) != len(self.members):
            raise WrongDimension("family members must be pairwise distinct")

    def __len__(self):
        return len(self.members)


def intersect(w1: Subspace, w2: Subspace) -> Subspace:
    return w1.intersect(w2)


def incident(w1: Subspace, w2: Subspace) -> bool:
    """dim(W1 cap W2) >= 1; two planes of projective space meet."""
    if w1.ambient_dim != w2.ambient_dim or w1.p != w2.p:
        raise MixedAmbient("incidence needs a common ambient space")
    stacked = [list(r) for r in w1.rows + w2.rows]
    return rank(stacked, w1.p) < w1.dim + w2.dim


def span_of(family: PlaneFamily) -> Subspace:
    rows = [list(r) for w in family.members for r in w.rows]
    return Subspace(family.ambient_dim, rows, family.members[0].p if family.members else None)


@dataclass
class FamilyReport:
    size: int
    incidence: list            # boolean matrix
    intersection_dims: list    # integer matrix (diagonal = 3)
    line_pairs: list           # pairs with a 2-dim (line) intersection
    all_pairwise_incident: bool
    span_dim: int

    @property
    def not_finitely_completable(self) -> bool:
        # a line intersection embeds the family in an infinite one
        return bool(self.line_pairs)


def family_report(family: PlaneFamily) -> FamilyReport:
    n = len(family.members)
    if n < 1:
        raise WrongDimension("family_report needs at least one member")
    inc = [[True] * n for _ in range(n)]
    dims = [[3] * n for _ in range(n)]
    line_pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            d = family.members[i].intersect(family.members[j]).dim
            dims[i][j] = dims[j][i] = d
            inc[i][j] = inc[j][i] = d >= 1
            if d == 2:
                line_pairs.append((i, j))
    all_inc = all(inc[i][j] for i in range(n) for j in range(i + 1, n))
    return FamilyReport(
        size=n,
        incidence=inc,
        intersection_dims=dims,
        line_pairs=line_pairs,
        all_pairwise_incident=all_inc,
        span_dim=span_of(family).dim,
    )


# -- the Fano configuration ---------------------------------------------------

_FANO_TRIPLES = ((0, 1, 2), (2, 3, 4), (0, 4, 5), (1, 3, 5), (0, 3, 6), (1, 4, 6), (2, 5, 6))

# basis vector -> point of the projective plane over F_2
_F2_POINTS = {
    0: (0, 1, 0),
    1: (0, 1, 1),
    2: (0, 0, 1),
    3: (1, 0, 1),
    4: (1, 0, 0),
    5: (1, 1, 0),
    6: (1, 1, 1),
}


def fano_family() -> PlaneFamily:
    """The seven pairwise incident planes in ambient dimension 7.

    The members are exactly the planes spanned by the basis vectors whose
    F_2-plane labels are collinear; the labeling ships in family.labels.
    """
    members = []
    for s in _FANO_TRIPLES:
        rows = [[1 if j == i else 0 for j in range(7)] for i in s]
        members.append(Subspace(7, rows))
    lines = []
    for s in _FANO_TRIPLES:
        pts = [_F2_POINTS[i] for i in s]
        # the unique functional vanishing on all three points
        ker = nullspace([list(pt) for pt in pts], 3, p=2)
        assert len(ker) == 1
        lines.append(tuple(ker[0]))
    return PlaneFamily(
        7,
        members,
        labels={
            "f2_points": {i: _F2_POINTS[i] for i in range(7)},
            "f2_lines": lines,
        },
    )


def lambda_quadruple() -> PlaneFamily:
    """The first four coordinate planes of the seven, cut down to ambient 6.

    Exactly three lines of P^5 meet all four: <v0,v3>, <v1,v4>, <v2,v5>.
    """
    members = []
    for s in _FANO_TRIPLES[:4]:
        rows = [[1 if j == i else 0 for j in range(6)] for i in s]
        members.append(Subspace(6, rows))
    return PlaneFamily(6, members)


# -- exhaustive finite-field enumeration ---------------------------------------


def _reduced_constraints(family: PlaneFamily, p: int):
    reduced = [w.reduce_mod(p) if w.p is None else w for w in family.members]
    return [w.complement_functionals() for w in reduced]


def enumerate_incident_planes_modp(family: PlaneFamily, p: int, with_count=False):
    """All planes of F_p^ambient incident to every member of the family mod p.

    Streams the RREF cells of the Grassmannian; the visited count equals the
    Gaussian binomial [ambient choose 3]_p.
    """
    constraints = _reduced_constraints(family, p)
    visited, matches = _core.enumerate_incident(family.ambient_dim, 3, p, constraints)
    subs = [Subspace(family.ambient_dim, rows, p, already_rref=True) for rows in matches]
    if with_count:
        return subs, visited
    return subs


def enumerate_incident_lines_modp(family: PlaneFamily, p: int, with_count=False):
    """All lines (dim-2 subspaces) of F_p^6 meeting every member of the family."""
    if family.ambient_dim != 6:
        raise MixedAmbient("line enumeration is defined in ambient dimension 6")
    constraints = _reduced_constraints(family, p) if family.members else []
    visited, matches = _core.enumerate_incident(6, 2, p, constraints)
    subs = [Subspace(6, rows, p, already_rref=True) for rows in matches]
    if with_count:
        return subs, visited
    return subs


# -- Morin-type detectors -------------------------------------------------------


def quadrics_through(members, ambient=6):
    """Basis of quadratic forms on the ambient space vanishing on each member.

    A form is a symmetric matrix; returned as a list of symmetric ambient x
    ambient Fraction matrices.
    """
    monomials = [(i, j) for i in range(ambient) for j in range(i, ambient)]
    eqs = []
    for w in members:
        rows = [list(r) for r in w.rows]
        # restriction of x_i x_j to the plane: sum over parameters
        for a in range(3):
            for b in range(a, 3):
                eq = []
                for (i, j) in monomials:
                    if a == b:
                        coef = rows[a][i] * rows[a][j]
                    else:
                        coef = rows[a][i] * rows[b][j] + rows[b][i] * rows[a][j]
                    eq.append(coef)
                eqs.append(eq)
    ker = nullspace(eqs, len(monomials), None)
    forms = []
    for coeffs in ker:
        g = [[Fraction(0)] * ambient for _ in range(ambient)]
        for (i, j), c in zip(monomials, coeffs):
            if i == j:
                g[i][i] = Fraction(c)
            else:
                g[i][j] = Fraction(c) / 2
                g[j][i] = Fraction(c) / 2
        forms.append(g)
    return forms


def _has_rank6_combination(forms, seed=0, tries=64):
    if not forms:
        return False
    for g in forms:
        if rank(g) == 6:
            return True
    rng = random.Random(seed)
    m = len(forms)
    for _ in range(tries):
        coeffs = [rng.randint(-5, 5) for _ in range(m)]
        g = [
            [sum(coeffs[t] * forms[t][i][j] for t in range(m)) for j in range(6)]
            for i in range(6)
        ]
        if rank(g) == 6:
            return True
    return False


@dataclass
class MorinFlags:
    common_point: bool
    meets_witness_plane: bool
    inside_p4: bool
    quadric_ruling: bool

    @property
    def classified(self) -> bool:
        return any((self.common_point, self.meets_witness_plane, self.inside_p4, self.quadric_ruling))


def morin_classify(family: PlaneFamily, witness_plane: Subspace | None = None) -> MorinFlags:
    """Test membership in the four linear/quadric maximal infinite families.

    Flag 2 is verification only: the caller supplies the candidate fixed
    plane, and membership requires every member to meet it in a line.
    The two Veronese families are not detected; all-false means unknown.
    """
    if len(family.members) < 2:
        raise WrongDimension("classification needs at least two planes")
    common = family.members[0]
    for w in family.members[1:]:
        common = common.intersect(w)
    flag1 = common.dim >= 1

    flag2 = False
    if witness_plane is not None:
        flag2 = all(witness_plane.intersect(w).dim >= 2 for w in family.members)

    flag3 = span_of(family).dim <= 5

    flag4 = False
    if family.ambient_dim == 6:
        forms = quadrics_through(family.members)
        if forms and _has_rank6_combination(forms):
            rep = family_report(family)
            n = len(family.members)
            odd = all(rep.intersection_dims[i][j] % 2 == 1 for i in range(n) for j in range(i + 1, n))
            flag4 = odd
    return MorinFlags(flag1, flag2, flag3, flag4)


# -- the quadric-ruling embedding ----------------------------------------------

# coordinates of wedge^2 of the 4-space U: e_0..e_5 <-> these index pairs
LAMBDA2_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# the Plucker quadric of Gr(2, U) in these coordinates: x0 x5 - x1 x4 + x2 x3
PLUCKER_QUADRIC_TERMS = (((0, 5), 1), ((1, 4), -1), ((2, 3), 1))


def ruling_plane(u, p=None) -> Subspace:
    """The plane {u ^ x : x in U} inside the 6-space identified with wedge^2 U."""
    if len(u) != 4 or not any(u):
        raise WrongDimension("expected a nonzero vector of the 4-space U")
    rows = []
    for j in range(4):
        row = []
        for (a, b) in LAMBDA2_PAIRS:
            # coefficient of e_a ^ e_b in u ^ e_j
            c = 0
            if b == j:
                c = u[a]
            elif a == j:
                c = -u[b]
            row.append(c)
        rows.append(row)
    w = Subspace(6, rows, p)
    if w.dim != 3:
        raise WrongDimension("ruling plane construction degenerated")
    return w


# -- witness search: an extra plane incident to a whole family ------------------


def _extend_to_plane(rng, ambient, vectors, pool=()):
    """Grow the span of the given vectors to dimension 3 if possible."""
    w = Subspace(ambient, vectors)
    pool = list(pool)
    tries = 0
    while w.dim < 3 and tries < 60:
        tries += 1
        extra = list(pool.pop()) if pool else _random_vector(rng, ambient)
        w2 = Subspace(ambient, [list(r) for r in w.rows] + [extra])
        if w2.dim > w.dim:
            w = w2
    return w if w.dim == 3 else None


def _ruling_pencil_witness(family, rng, check):
    """Another plane from the same ruling of a common smooth 4-dim quadric.

    Given two members meeting at a point q, the planes of their ruling that
    contain q form a pencil; its members are graphs x -> x + mu*F x between
    the two (with F = M^-1 J for the cross Gram M), lifted back along q.
    """
    forms = quadrics_through(family.members)
    gs = [g for g in forms if rank(g) == 6]
    if not gs and len(forms) > 1:
        m = len(forms)
        for _ in range(40):
            coeffs = [rng.randint(-4, 4) for _ in range(m)]
            g = [
                [sum(coeffs[t] * forms[t][i][j] for t in range(m)) for j in range(6)]
                for i in range(6)
            ]
            if rank(g) == 6:
                gs.append(g)
                break
    jmat = ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)))
    for g in gs[:2]:
        def bil(x, y):
            return sum(x[i] * g[i][j] * y[j] for i in range(6) for j in range(6))

        for w1 in family.members:
            for w2 in family.members:
                if w2 is w1:
                    continue
                q = w1.intersect(w2)
                if q.dim != 1:
                    continue
                q0 = list(q.rows[0])
                avecs = _complete_past(w1, q0)
                bvecs = _complete_past(w2, q0)
                if avecs is None or bvecs is None:
                    continue
                m = [[bil(a, b) for b in bvecs] for a in avecs]
                det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
                if det == 0:
                    continue
                minv = [
                    [m[1][1] / det, -m[0][1] / det],
                    [-m[1][0] / det, m[0][0] / det],
                ]
                f = [
                    [sum(minv[i][k] * jmat[k][j] for k in range(2)) for j in range(2)]
                    for i in range(2)
                ]
                for mu in (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)):
                    rows = [q0]
                    for i in range(2):
                        rows.append(
                            [
                                avecs[i][j] + mu * (f[i][0] * bvecs[0][j] + f[i][1] * bvecs[1][j])
                                for j in range(6)
                            ]
                        )
                    cand = Subspace(6, rows)
                    if check(cand):
                        return cand
    return None


def _complete_past(w, q0):
    """Two rows of w that complete the vector q0 to a basis of w."""
    rows = [list(r) for r in w.rows]
    for i in range(3):
        for j in range(i + 1, 3):
            if rank([q0, rows[i], rows[j]]) == 3:
                return [rows[i], rows[j]]
    return None


def find_extra_incident_plane(family: PlaneFamily, seed: int = 0):
    """A plane incident to every family member but not in the family, or None.

    Tries, in order: a common point, a small span, a shared line, a common
    witness plane through the pairwise intersections, greedy point pairing,
    and the quadric-ruling pencil.  Every candidate is re-verified.
    """
    rng = random.Random(repr((seed, "witness")))
    members = family.members
    amb = family.ambient_dim

    def check(cand):
        return (
            cand is not None
            and cand.dim == 3
            and cand not in members
            and all(incident(cand, m) for m in members)
        )

    common = members[0]
    for w in members[1:]:
        common = common.intersect(w)
    if common.dim >= 1:
        c = list(common.rows[0])
        for _ in range(60):
            cand = Subspace(amb, [c, _random_vector(rng, amb), _random_vector(rng, amb)])
            if check(cand):
                return cand

    s = span_of(family)
    if s.dim <= 5:
        for _ in range(60):
            cand = Subspace(amb, [_random_combo(rng, s.rows) for _ in range(3)])
            if check(cand):
                return cand

    inter_pts = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            q = members[i].intersect(members[j])
            if q.dim >= 1:
                inter_pts.append(list(q.rows[0]))
            if q.dim == 2:
                # any plane through the shared line works if it meets the rest
                for _ in range(40):
                    cand = _extend_to_plane(rng, amb, [list(r) for r in q.rows])
                    if check(cand):
                        return cand

    if inter_pts:
        m_hat = Subspace(amb, inter_pts)
        if m_hat.dim == 3 and check(m_hat):
            return m_hat

    for _ in range(60):
        idx = list(range(len(members)))
        rng.shuffle(idx)
        pts = []
        while len(idx) >= 2 and len(pts) < 3:
            i, j = idx.pop(), idx.pop()
            q = members[i].intersect(members[j])
            if q.dim >= 1:
                pts.append(list(q.rows[0]))
        for i in idx:
            if len(pts) >= 3:
                break
            pts.append(_random_combo(rng, members[i].rows))
        if not pts:
            continue
        cand = _extend_to_plane(rng, amb, pts)
        if check(cand):
            return cand

    if amb == 6 and len(members) >= 2:
        cand = _ruling_pencil_witness(family, rng, check)
        if cand is not None:
            return cand
    return None


# -- seeded generators ------------------------------------------------------------


def _random_vector(rng, n, lo=-3, hi=3):
    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            return v


def _random_combo(rng, rows, lo=-2, hi=2):
    """Random integer combination of the given basis rows."""
    coeffs = [rng.randint(lo, hi) for _ in rows]
    return [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(len(rows[0]))]


def random_incident_family(seed: int, k: int, mode) -> PlaneFamily:
    """Seeded family of k pairwise incident planes in ambient dimension 6.

    mode 1..4 builds inside the corresponding Morin family; mode "greedy"
    grows the family by spanning shared points.  Deterministic per seed.
    """
    if k < 2:
        raise GenerationFailed("need k >= 2")
    rng = random.Random(repr((seed, k, str(mode))))
    for _attempt in range(200):
        got = _try_generate(rng, k, mode)
        if got is None:
            continue
        members, labels = got
        if len(set(members)) != k:
            continue
        fam = PlaneFamily(6, members, labels=labels)
        rep = family_report(fam)
        if rep.all_pairwise_incident:
            return fam
    raise GenerationFailed(f"could not generate mode {mode} family of size {k}")


def _try_generate(rng, k, mode):
    if mode == 1:
        c = _random_vector(rng, 6)
        members = []
        for _ in range(k):
            w = Subspace(6, [c, _random_vector(rng, 6), _random_vector(rng, 6)])
            if w.dim != 3:
                return None
            members.append(w)
        return members, {"common_point": tuple(c)}
    if mode == 2:
        m = Subspace(6, [_random_vector(rng, 6) for _ in range(3)])
        if m.dim != 3:
            return None
        members = []
        for _ in range(k):
            a = _random_combo(rng, m.rows)
            b = _random_combo(rng, m.rows)
            w = Subspace(6, [a, b, _random_vector(rng, 6)])
            if w.dim != 3 or w.intersect(m).dim < 2:
                return None
            members.append(w)
        return members, {"witness_plane": m}
    if mode == 3:
        s = Subspace(6, [_random_vector(rng, 6) for _ in range(5)])
        if s.dim != 5:
            return None
        members = []
        for _ in range(k):
            rows = [_random_combo(rng, s.rows) for _ in range(3)]
            w = Subspace(6, rows)
            if w.dim != 3:
                return None
            members.append(w)
        return members, {"hyperplane": s}
    if mode == 4:
        points = [_random_vector(rng, 4, -2, 2) for _ in range(k)]
        try:
            members = [ruling_plane(u) for u in points]
        except WrongDimension:
            return None
        return members, {"ruling_points": [tuple(u) for u in points]}
    if mode in ("greedy", 0):
        if k > 7:
            return None
        members = [Subspace(6, [_random_vector(rng, 6) for _ in range(3)])]
        if members[0].dim != 3:
            return None
        while len(members) < k:
            pts = []
            existing = list(members)
            rng.shuffle(existing)
            # pair up existing members; each intersection point meets two of them
            while len(existing) >= 2 and len(pts) < 3:
                w1, w2 = existing.pop(), existing.pop()
                q = w1.intersect(w2)
                if q.dim < 1:
                    return None
                pts.append(list(q.rows[0]))
            for w in existing:
                if len(pts) >= 3:
                    break
                pts.append(_random_combo(rng, w.rows))
            while len(pts) < 3:
                pts.append(_random_vector(rng, 6))
            w_new = Subspace(6, pts)
            if w_new.dim != 3:
                return None
            members.append(w_new)
        return members, {}
    raise GenerationFailed(f"unknown mode {mode!r}")
