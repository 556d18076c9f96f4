"""Polynomial layer: arithmetic, homogeneous interpolation, division, gcd,
Taylor expansion and tangent cones."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epwplanes.errors import BadChart, InconsistentEvaluations, NotDivisible
from epwplanes.poly import (
    MultiPoly,
    exact_divide,
    gcd_multivariate,
    interpolate_from_values,
    interpolate_homogeneous,
    interpolation_nodes,
    tangent_cone,
    taylor_parts,
)


def _random_homogeneous(rng, nvars, d, nterms=6):
    terms = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = rng.randint(-5, 5)
    return MultiPoly(nvars, terms)


def test_arithmetic_basics():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert f.degree() == 2
    assert f.is_homogeneous()
    assert f.eval([3, 2]) == 5
    assert (f - f).is_zero()
    assert f.graded_part(2) == f
    assert f.graded_part(1).is_zero()


def test_monic_and_proportional():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    f = (x * x + y * y).scale(Fraction(3, 7))
    assert f.monic() == x * x + y * y
    assert f.proportional_to(x * x + y * y)
    assert not f.proportional_to(x * x)


def test_interpolation_nodes_count():
    assert len(interpolation_nodes(6, 6)) == 462
    assert len(interpolation_nodes(10, 6)) == 3003
    assert len(interpolation_nodes(9, 3)) == 55


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interpolation_roundtrip_random(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    n = rng.randint(2, 4)
    f = _random_homogeneous(rng, n, d)
    nodes = interpolation_nodes(d, n)
    vals = [f.eval(x) for x in nodes]
    g = interpolate_from_values(vals, d, n)
    assert g == f


def test_interpolation_roundtrip_modp():
    rng = random.Random(0)
    p = 10007
    f = _random_homogeneous(rng, 4, 5)
    fp = MultiPoly(4, {e: int(c) % p for e, c in f.terms.items()}, p)
    nodes = interpolation_nodes(5, 4)
    vals = [fp.eval(x) % p for x in nodes]
    g = interpolate_from_values(vals, 5, 4, p)
    assert g == fp


def test_interpolate_homogeneous_consistency_check():
    # evaluator that is secretly degree 3 while claiming degree 2
    f = MultiPoly(2, {(3, 0): 1})
    with pytest.raises(InconsistentEvaluations):
        interpolate_homogeneous(lambda x: f.eval(x), 2, 2)


def test_exact_divide():
    x = MultiPoly.variable(3, 0)
    y = MultiPoly.variable(3, 1)
    z = MultiPoly.variable(3, 2)
    f = (x + y) * (y + z) * (x + z)
    assert exact_divide(f, x + y) == (y + z) * (x + z)
    with pytest.raises(NotDivisible):
        exact_divide(f, x + y + z)


def test_gcd_multivariate():
    x = MultiPoly.variable(3, 0)
    y = MultiPoly.variable(3, 1)
    z = MultiPoly.variable(3, 2)
    common = x * x + y * z
    f = common * (x + y)
    g = common * (x - z) * (x - z)
    h = gcd_multivariate(f, g)
    assert h.proportional_to(common)
    # coprime inputs give a constant
    assert gcd_multivariate(x + y, x + z).degree() == 0


def test_taylor_parts_shift():
    # f = x^2 y around the point (1, 1, 1) of the projective plane
    f = MultiPoly(3, {(2, 1, 0): 1})
    chart = [[1, 0, -1], [0, 1, -1]]
    parts = taylor_parts(f, [1, 1, 1], chart)
    assert sum(p.eval([Fraction(1, 3), Fraction(1, 5)]) for p in parts) == f.eval(
        [1 + Fraction(1, 3) - 0, 1 + Fraction(1, 5), 1 - Fraction(1, 3) - Fraction(1, 5)]
    )
    assert parts[0].eval([0, 0]) == 1  # f(1,1,1)


def test_taylor_parts_bad_chart():
    f = MultiPoly(3, {(2, 1, 0): 1})
    with pytest.raises(BadChart):
        taylor_parts(f, [1, 1, 1], [[1, 0, -1], [2, 0, -2]])


def test_tangent_cone_node():
    # x^2 - y^2 at the origin of the chart: multiplicity 2, full-rank cone
    x = MultiPoly.variable(3, 0)
    y = MultiPoly.variable(3, 1)
    z = MultiPoly.variable(3, 2)
    f = x * x * z - y * y * z + x * x * x
    m, g, quad_rank = tangent_cone(f, [0, 0, 1], [[1, 0, 0], [0, 1, 0]])
    assert m == 2
    assert quad_rank == 2


def test_tangent_cone_cusp():
    # y^2 z = x^3: classic cusp at (0 : 0 : 1), rank-1 quadratic cone
    f = MultiPoly(3, {(0, 2, 1): 1, (3, 0, 0): -1})
    m, g, quad_rank = tangent_cone(f, [0, 0, 1], [[1, 0, 0], [0, 1, 0]])
    assert m == 2
    assert quad_rank == 1


def test_tangent_cone_smooth_point():
    f = MultiPoly(3, {(0, 2, 1): 1, (3, 0, 0): -1})
    # (1 : 1 : 1) lies on y^2 z - x^3 = 0 and is a smooth point
    m, g, quad_rank = tangent_cone(f, [1, 1, 1], [[1, 0, -1], [0, 1, -1]])
    assert m == 1
    assert quad_rank is None
