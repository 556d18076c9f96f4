"""Exterior algebra: wedge axioms, Plucker images, the symplectic form."""

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epwplanes.errors import DegreeOverflow, ZeroInput
from epwplanes.exterior import (
    KVector,
    index_tuples,
    is_decomposable,
    merge_sign,
    plucker,
    proportional,
    support,
    symplectic_form,
    tuple_index,
    wedge,
)
from epwplanes.linalg import Subspace

vec6 = st.lists(st.integers(-4, 4), min_size=6, max_size=6)


def _kv(v):
    return KVector.from_vector(v)


def test_index_tuples():
    assert len(index_tuples(6, 3)) == 20
    assert index_tuples(6, 3)[0] == (0, 1, 2)
    assert index_tuples(6, 3)[-1] == (3, 4, 5)
    assert tuple_index(6, 3)[(0, 1, 2)] == 0


def test_merge_sign():
    assert merge_sign((0, 1, 2), (3, 4, 5)) == ((0, 1, 2, 3, 4, 5), 1)
    assert merge_sign((0,), (1,)) == ((0, 1), 1)
    assert merge_sign((1,), (0,)) == ((0, 1), -1)
    assert merge_sign((0, 1), (1, 2)) == (None, 0)  # overlap


@settings(max_examples=200, deadline=None)
@given(a=vec6, b=vec6)
def test_wedge_anticommutes(a, b):
    ab = _kv(a).wedge(_kv(b))
    ba = _kv(b).wedge(_kv(a))
    assert ab == ba.scale(-1)


@settings(max_examples=200, deadline=None)
@given(a=vec6, b=vec6, c=vec6)
def test_wedge_bilinear_and_associative(a, b, c):
    ka, kb, kc = _kv(a), _kv(b), _kv(c)
    assert ka.wedge(kb + kc) == ka.wedge(kb) + ka.wedge(kc)
    assert ka.wedge(kb).wedge(kc) == ka.wedge(kb.wedge(kc))


@settings(max_examples=100, deadline=None)
@given(a=vec6)
def test_wedge_square_zero(a):
    assert _kv(a).wedge(_kv(a)).is_zero()


def test_degree_overflow():
    e = KVector.basis(6, (0, 1, 2))
    with pytest.raises(DegreeOverflow):
        e.wedge(KVector.basis(6, (3, 4, 5))).wedge(_kv([1, 0, 0, 0, 0, 0]))


def test_volume_normalization():
    top = KVector.basis(6, (0, 1, 2)).wedge(KVector.basis(6, (3, 4, 5)))
    assert top.coeffs == {(0, 1, 2, 3, 4, 5): Fraction(1)}


def test_symplectic_form_antisymmetric():
    rng = random.Random(4)
    for _ in range(30):
        a = KVector(6, 3, {t: rng.randint(-3, 3) for t in index_tuples(6, 3)})
        b = KVector(6, 3, {t: rng.randint(-3, 3) for t in index_tuples(6, 3)})
        assert symplectic_form(a, b) == -symplectic_form(b, a)
        assert symplectic_form(a, a) == 0


def test_plucker_and_support():
    w = Subspace(6, [[1, 0, 0, 0, 1, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    alpha = plucker(w)
    ok, supp = is_decomposable(alpha)
    assert ok and supp == w
    assert support(alpha) == w


def test_plucker_basis_independent():
    rows = [[1, 2, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 0]]
    w = Subspace(6, rows)
    direct = _kv(rows[0]).wedge(_kv(rows[1])).wedge(_kv(rows[2]))
    assert proportional(plucker(w), direct)


def test_non_decomposable():
    alpha = KVector.basis(6, (0, 1, 2)) + KVector.basis(6, (3, 4, 5))
    ok, supp = is_decomposable(alpha)
    assert not ok and supp is None


def test_support_of_zero_raises():
    with pytest.raises(ZeroInput):
        support(KVector(6, 3, {}))


def test_incidence_iff_symplectic_vanishing():
    """Two planes meet iff their Plucker trivectors pair to zero."""
    rng = random.Random(0)
    agree = 0
    trials = 0
    while trials < 2000:
        rows = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]
        w1 = Subspace(6, rows[:3])
        w2 = Subspace(6, rows[3:])
        if w1.dim != 3 or w2.dim != 3:
            continue
        trials += 1
        meets = w1.intersect(w2).dim >= 1
        pairing = symplectic_form(plucker(w1), plucker(w2))
        assert meets == (pairing == 0)
        agree += 1
    assert agree == 2000


def test_wedge_function_alias():
    a, b = _kv([1, 0, 0, 0, 0, 0]), _kv([0, 1, 0, 0, 0, 0])
    assert wedge(a, b) == a.wedge(b)
