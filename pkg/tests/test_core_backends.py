"""Compiled core vs pure-Python fallback: both backends must agree on every
exported primitive."""

import random
import subprocess
import sys

import pytest

from epwplanes import _core
from epwplanes._core import _impl as _selected
from epwplanes import _purecore


def _random_mats(seed, n_mats, rows, cols, p):
    rng = random.Random(repr(seed))
    return [
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
        for _ in range(n_mats)
    ]


def test_backends_importable():
    assert _purecore.BACKEND == "pure"
    assert _core.BACKEND in ("pure", "compiled")


def test_rank_mod_agreement():
    for p in (2, 3, 7):
        for m in _random_mats((p, "rank"), 30, 6, 8, p):
            assert _core.rank_mod(m, p) == _purecore.rank_mod(m, p)


def test_det_mod_agreement():
    for p in (2, 5, 101):
        for m in _random_mats((p, "det"), 30, 5, 5, p):
            assert _core.det_mod(m, p) == _purecore.det_mod(m, p)


def test_batch_ops_agreement():
    p = 7
    mats = _random_mats("batch", 20, 4, 4, p)
    assert _core.batch_det_mod(mats, p) == _purecore.batch_det_mod(mats, p)
    assert _core.batch_rank_mod(mats, p) == _purecore.batch_rank_mod(mats, p)


def test_enumerate_incident_agreement():
    # one plane constraint in Gr(3, F_2^6): columns of N are functionals
    n_mat = [[1 if i == j + 3 else 0 for j in range(3)] for i in range(6)]
    v1, m1 = _core.enumerate_incident(6, 3, 2, [n_mat])
    v2, m2 = _purecore.enumerate_incident(6, 3, 2, [n_mat])
    assert v1 == v2 == 1395
    assert sorted(m1) == sorted(m2)


def test_theta_scan_agreement():
    from epwplanes.epw import build_A_plus

    a = build_A_plus()
    for p in (2, 3):
        red = a.space.reduce_mod(p)
        rows = [[int(x) % p for x in r] for r in red.rows]
        pivots = [next(j for j in range(20) if r[j]) for r in rows]
        v1, m1 = _core.theta_scan(p, rows, pivots)
        v2, m2 = _purecore.theta_scan(p, rows, pivots)
        assert v1 == v2
        assert sorted(m1) == sorted(m2)
        assert len(m1) == {2: 15, 3: 40}[p]


def test_force_pure_env_selects_fallback():
    code = (
        "from epwplanes import _core; print(_core.BACKEND)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True,
        env={"EPWPLANES_FORCE_PURE": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "pure"


@pytest.mark.skipif(_selected.BACKEND != "compiled",
                    reason="compiled extension not built")
def test_compiled_backend_is_default():
    assert _core.BACKEND == "compiled"
