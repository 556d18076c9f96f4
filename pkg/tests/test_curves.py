"""Degeneracy-locus sextics: curve equations, psi forms, leading terms,
singularity reports and the bound ledger."""

import random

import pytest

from epwplanes import _core
from epwplanes.curves import (
    CurveEquation,
    bound_audit,
    curve_equation,
    default_frame,
    forced_singular_point,
    leading_term,
    max_theta_bound,
    plucker_tangent_space,
    psi_common_zero_check,
    psi_form,
    reduced_space,
    singularity_report,
)
from epwplanes.epw import build_A_plus
from epwplanes.errors import (
    BadFrame,
    InfeasibleInput,
    InternalInconsistency,
    NotACurve,
    NotAMember,
)
from epwplanes.exterior import plucker, symplectic_gram, tuple_index
from epwplanes.lagrangian import F_of, lagrangian_through, symplectic_perp
from epwplanes.linalg import Subspace, rank
from epwplanes.planes import gaussian_binomial, ruling_plane
from epwplanes.poly import taylor_parts

W0_PLANE = Subspace(6, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
W_PARTNER = Subspace(6, [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]])
E0 = [1, 0, 0, 0, 0, 0]


def _pair_lagrangian(seed=0):
    return lagrangian_through([W0_PLANE, W_PARTNER], seed=seed)


def test_reduced_space_dimensions():
    red = reduced_space(W0_PLANE)
    assert len(red.basis) == 18
    gram = symplectic_gram(None)
    induced = [
        [
            sum(red.basis[i][a] * gram[a][b] * red.basis[j][b] for a in range(20) for b in range(20))
            for j in range(18)
        ]
        for i in range(18)
    ]
    assert rank(induced) == 18


def test_reduced_space_receives_f_v_and_a():
    red = reduced_space(W0_PLANE)
    f = F_of(E0)
    for row in f.rows:
        red.project(list(row))  # no WrongDimension: F_v lies in the perp
    a = _pair_lagrangian()
    images = [red.project(list(r)) for r in a.rows]
    assert rank(images) == 9


def test_curve_equation_pair():
    a = _pair_lagrangian()
    c = curve_equation(a, W0_PLANE)
    assert not c.is_plane
    assert c.c.degree() == 6
    assert c.c.is_homogeneous()
    # the curve passes through P(W cap W') = [1:0:0] and is singular there
    parts = taylor_parts(c.c, [1, 0, 0], [[0, 1, 0], [0, 0, 1]])
    assert parts[0].is_zero() and parts[1].is_zero()


def test_curve_agrees_with_rank_oracle_mod2():
    a = _pair_lagrangian()
    c = curve_equation(a, W0_PLANE)
    a2 = [list(r) for r in a.space.reduce_mod(2).rows]
    for x0 in range(2):
        for x1 in range(2):
            for x2 in range(2):
                if not (x0 or x1 or x2):
                    continue
                v = [x0, x1, x2, 0, 0, 0]
                on_oracle = _core.rank_mod(a2 + [list(r) for r in F_of(v, 2).rows], 2) <= 18
                num = c.c.eval((x0, x1, x2))
                on_curve = num.numerator % 2 == 0 if num.denominator % 2 else False
                assert on_curve == on_oracle


def test_curve_not_a_member():
    a = _pair_lagrangian()
    other = Subspace(6, [[0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]])
    with pytest.raises(NotAMember):
        curve_equation(a, other)


def test_plane_marker_for_ruling_cone():
    a = build_A_plus()
    c = curve_equation(a, ruling_plane([1, 0, 0, 0]))
    assert c.is_plane
    assert c.c is None


def test_psi_form_linear_and_symmetric():
    w0_space, v0_space = default_frame(W0_PLANE, E0)
    w1, w2 = [[int(x) for x in r] for r in w0_space.rows]
    m1 = psi_form(E0, w1, v0_space, w0_space, W0_PLANE)
    m2 = psi_form(E0, w2, v0_space, w0_space, W0_PLANE)
    comb = psi_form(E0, [2 * a + 3 * b for a, b in zip(w1, w2)], v0_space, w0_space, W0_PLANE)
    assert comb == [[2 * a + 3 * b for a, b in zip(r1, r2)] for r1, r2 in zip(m1, m2)]
    assert all(m1[i][j] == m1[j][i] for i in range(9) for j in range(9))


def test_psi_form_bad_frame():
    w0_space, v0_space = default_frame(W0_PLANE, E0)
    bad_v0 = Subspace(6, [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0],
                          [0, 0, 0, 0, 1, 0], [1, 0, 0, 0, 0, 0]])
    with pytest.raises(BadFrame):
        psi_form(E0, [0, 1, 0, 0, 0, 0], bad_v0, w0_space, W0_PLANE)


def test_psi_common_zero_check_counts():
    for p, ambient in ((2, 1023), (3, 29524)):
        rep = psi_common_zero_check(E0, W0_PLANE, p)
        assert rep.ambient_points == ambient
        assert rep.grassmann_points == gaussian_binomial(5, 2, p)
        assert rep.containment
        assert rep.common_zeros >= rep.projected_points


def test_leading_term_at_forced_point():
    a = _pair_lagrangian()
    kbar, g = leading_term(a, W0_PLANE, E0)
    assert kbar == 1
    # forced singular points keep the restricted determinant identically zero
    assert g.is_zero()


def test_leading_term_generic_point():
    a = _pair_lagrangian()
    kbar, g = leading_term(a, W0_PLANE, [1, 1, 1, 0, 0, 0])
    assert kbar == 0
    assert g.degree() == 0 and not g.is_zero()


def test_leading_term_matches_taylor_part_at_smooth_point():
    """The restricted-determinant formula gives the curve's lowest part."""
    v1 = [0, 1, 0, 0, 0, 0]
    t1, t2 = plucker(W0_PLANE).coords(), plucker(W_PARTNER).coords()
    cands = symplectic_perp(Subspace(20, [t1, t2])).intersect(F_of(v1).space)
    rng = random.Random(7)
    alpha = [sum(rng.randint(-2, 2) * r[j] for r in cands.rows) for j in range(20)]
    a = lagrangian_through([W0_PLANE, W_PARTNER], seed=1, extra=[alpha])
    c = curve_equation(a, W0_PLANE)
    kbar, g = leading_term(a, W0_PLANE, v1)
    assert kbar == 1
    parts = taylor_parts(c.c, [0, 1, 0], [[1, 0, 0], [0, 0, 1]])
    lowest = next(i for i, part in enumerate(parts) if not part.is_zero())
    assert lowest == kbar
    assert parts[lowest].proportional_to(g)


def test_forced_singular_point_clauses():
    a = _pair_lagrangian()
    assert forced_singular_point(a, W0_PLANE, E0, [W0_PLANE, W_PARTNER])
    assert not forced_singular_point(a, W0_PLANE, [0, 1, 0, 0, 0, 0], [W0_PLANE, W_PARTNER])


def test_plucker_tangent_space():
    s = plucker_tangent_space(W0_PLANE)
    assert s.dim == 10
    v = [0] * 20
    v[tuple_index(6, 3)[(0, 1, 5)]] = 1
    assert s.contains_vector(v)
    v2 = [0] * 20
    v2[tuple_index(6, 3)[(3, 4, 5)]] = 1
    assert not s.contains_vector(v2)


def test_singularity_report():
    a = _pair_lagrangian()
    c = curve_equation(a, W0_PLANE)
    rep = singularity_report(c, [W0_PLANE, W_PARTNER], W0_PLANE)
    assert len(rep.records) == 1
    rec = rep.records[0]
    assert rec.n_p == 1
    assert rec.multiplicity >= 2
    assert rep.tallies == {1: 1, 2: 0, 3: 0, 4: 0}


def test_singularity_report_rejects_plane():
    c = CurveEquation(c=None, is_plane=True, frame=[[1, 0, 0, 0, 0, 0]])
    with pytest.raises(NotACurve):
        singularity_report(c, [], W0_PLANE)


def test_singularity_tripwire_np_bound():
    """Five extra planes through one point must trip the n_p <= 4 check."""
    a = _pair_lagrangian()
    c = curve_equation(a, W0_PLANE)
    fake_theta = [W0_PLANE]
    for i in range(5):
        rows = [E0, [0, 0, 0, 1, i, 0], [0, 0, 0, 0, 1, i + 1]]
        fake_theta.append(Subspace(6, rows))
    with pytest.raises(InternalInconsistency):
        singularity_report(c, fake_theta, W0_PLANE)


def test_bound_audit_cases():
    assert bound_audit(0, 9, 0, 0, 1).cap == 19
    assert bound_audit(0, 7, 0, 1, 1).cap == 19
    assert bound_audit(0, 4, 0, 2, 1).cap == 17
    assert bound_audit(9, 0, 0, 0, 1).cap == 10
    with pytest.raises(InfeasibleInput):
        bound_audit(9, 9, 0, 0, 1)
    with pytest.raises(InfeasibleInput):
        bound_audit(-1, 0, 0, 0, 1)


def test_bound_audit_monotone_and_capped():
    rng = random.Random(2)
    for _ in range(60):
        l1, l2, l3, l4 = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 2), rng.randint(0, 2)
        s = rng.randint(1, 3)
        try:
            base = bound_audit(l1, l2, l3, l4, s)
        except InfeasibleInput:
            continue
        assert base.cap <= 20
        try:
            assert bound_audit(l1 + 1, l2, l3, l4, s).cap >= base.cap
        except InfeasibleInput:
            pass


def test_max_theta_bound_cases():
    assert max_theta_bound(s_values=(1,), l34=0) == 19
    assert max_theta_bound(s_values=(1,), l34=1) == 19
    assert max_theta_bound(s_values=(1,), l34=2) == 17
    assert max_theta_bound() == 20
