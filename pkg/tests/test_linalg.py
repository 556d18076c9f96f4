"""Exact linear algebra over Q and F_p."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epwplanes.errors import BadReduction, MixedAmbient
from epwplanes.linalg import (
    Subspace,
    det_bareiss,
    det_fraction,
    mat_vec,
    nullspace,
    rank,
    rref,
    solve,
)


def test_rref_identity():
    red, piv = rref([[2, 0], [0, 3]])
    assert red == [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert piv == [0, 1]


def test_rank_and_nullspace():
    m = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(m) == 2
    ns = nullspace(m, 3)
    assert len(ns) == 1
    for row in m:
        assert sum(a * b for a, b in zip(row, ns[0])) == 0


def test_modp_rank_matches_generic_rational_rank():
    rng = random.Random(5)
    for _ in range(30):
        m = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(4)]
        rq = rank(m)
        # a big prime cannot lose rank on such tiny entries
        assert rank(m, 2 ** 31 - 1 + 12) >= rq or rank(m, 104729) == rq


def test_solve():
    x = solve([[2, 1], [1, 3]], [5, 10])
    assert x == [Fraction(1), Fraction(3)]
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_det_bareiss_known():
    assert det_bareiss([[1, 2], [3, 4]]) == -2
    assert det_bareiss([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert det_bareiss([[1, 2], [2, 4]]) == 0


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_bareiss_matches_fraction_elimination(m):
    assert det_bareiss(m) == det_fraction(m)


def test_det_multiplicative():
    rng = random.Random(11)
    for _ in range(20):
        a = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        b = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        ab = [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        assert det_bareiss(ab) == det_bareiss(a) * det_bareiss(b)


def test_subspace_basics():
    s = Subspace(4, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert s.dim == 2
    assert s.contains_vector([1, 1, 1, 1])
    assert not s.contains_vector([1, 0, 0, 0])
    t = Subspace(4, [[2, 2, 0, 0]])
    assert s.contains(t)
    assert s.add(t) == s
    assert s.intersect(t) == t


def test_subspace_intersect_random():
    rng = random.Random(3)
    for _ in range(25):
        a = Subspace(6, [[rng.randint(-3, 3) for _ in range(6)] for _ in range(3)])
        b = Subspace(6, [[rng.randint(-3, 3) for _ in range(6)] for _ in range(3)])
        cap = a.intersect(b)
        for row in cap.rows:
            assert a.contains_vector(row) and b.contains_vector(row)
        # dimension formula
        assert cap.dim == a.dim + b.dim - a.add(b).dim


def test_complement_functionals():
    s = Subspace(5, [[1, 0, 2, 0, 0], [0, 1, 0, 3, 0]])
    ncols = s.complement_functionals()
    # W . N = 0
    for row in s.rows:
        prods = mat_vec([[ncols[i][j] for i in range(5)] for j in range(len(ncols[0]))], list(row))
        assert all(x == 0 for x in prods)


def test_mixed_ambient_raises():
    with pytest.raises(MixedAmbient):
        Subspace(4, [[1, 0, 0, 0]]).intersect(Subspace(5, [[1, 0, 0, 0, 0]]))


def test_reduce_mod():
    s = Subspace(3, [[Fraction(1, 2), 0, 1]])
    assert s.reduce_mod(5).dim == 1
    # primitive scaling makes 2 a good prime here: (1/2, 0, 1) ~ (1, 0, 2)
    assert s.reduce_mod(2).dim == 1


def test_reduce_mod_genuine_drop():
    # both primitive rows collapse to (0,0,1) mod 2
    s = Subspace(3, [[2, 0, 1], [0, 2, 1]])
    assert s.dim == 2
    assert s.reduce_mod(3).dim == 2
    with pytest.raises(BadReduction):
        s.reduce_mod(2)
