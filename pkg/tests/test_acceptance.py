"""Acceptance gate: one test per contract criterion, each printing a single
PASS/FAIL line on the real stdout.

Set EPWPLANES_ACCEPT_P5=1 to extend criterion 2 to p=5 (roughly half an hour).
"""

import contextlib
import math
import os
import random
import time

from epwplanes.cli import curve_pair, random_frame
import pytest

from epwplanes.curves import (
    bound_audit,
    curve_equation,
    leading_term,
    max_theta_bound,
    psi_common_zero_check,
)
from epwplanes.epw import (
    PLUCKER_QUADRIC,
    build_A_plus,
    epw_equation,
    epw_multiplicity,
    sample_membership_agreement,
)
from epwplanes.epw import _hyperplane_form, _hyperplane_linear_poly, epw_determinant
from epwplanes.errors import InfeasibleInput
from epwplanes.exterior import KVector, plucker, symplectic_form, wedge
from epwplanes.lagrangian import (
    F_of,
    completeness_certificate,
    random_lagrangian,
    theta_enumerate_modp,
)
from epwplanes.linalg import Subspace, rank
from epwplanes.planes import (
    enumerate_incident_lines_modp,
    enumerate_incident_planes_modp,
    family_report,
    fano_family,
    gaussian_binomial,
    incident,
    lambda_quadruple,
    random_incident_family,
)
from epwplanes.poly import exact_divide, taylor_parts
from epwplanes.scalars import primes_above

E0 = [1, 0, 0, 0, 0, 0]


@contextlib.contextmanager
def _criterion(capsys, n, label):
    t0 = time.time()
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"criterion {n:2d} ({label}): FAIL  [{time.time() - t0:.1f}s]", flush=True)
        raise
    with capsys.disabled():
        print(f"criterion {n:2d} ({label}): PASS  [{time.time() - t0:.1f}s]", flush=True)


def test_criterion_01_fano_incidence_report(capsys):
    with _criterion(capsys, 1, "seven-plane family report"):
        rep = family_report(fano_family())
        assert rep.size == 7
        assert rep.all_pairwise_incident
        assert sum(1 for i in range(7) for j in range(i + 1, 7) if rep.incidence[i][j]) == 21
        assert all(rep.intersection_dims[i][j] == 1
                   for i in range(7) for j in range(7) if i != j)
        assert rep.span_dim == 7


def test_criterion_02_fano_completeness_modp(capsys):
    primes = [2, 3] + ([5] if os.environ.get("EPWPLANES_ACCEPT_P5") == "1" else [])
    with _criterion(capsys, 2, f"completeness scan p={primes}"):
        fam = fano_family()
        for p in primes:
            found, visited = enumerate_incident_planes_modp(fam, p, with_count=True)
            assert visited == gaussian_binomial(7, 3, p)
            assert len(found) == 7
            members_mod = {tuple(tuple(int(x) % p for x in r) for r in w.reduce_mod(p).rows)
                           for w in fam.members}
            assert {tuple(tuple(r) for r in w.rows) for w in found} == members_mod
        assert gaussian_binomial(7, 3, 2) == 11811
        assert gaussian_binomial(7, 3, 3) == 925771


def test_criterion_03_three_lines(capsys):
    with _criterion(capsys, 3, "three lines through the quadruple"):
        fam = lambda_quadruple()
        expect = set()
        for i, j in ((0, 3), (1, 4), (2, 5)):
            rows = [[1 if t == i else 0 for t in range(6)],
                    [1 if t == j else 0 for t in range(6)]]
            expect.add((tuple(rows[0]), tuple(rows[1])))
        for p in (2, 3, 5):
            found = enumerate_incident_lines_modp(fam, p)
            got = {tuple(tuple(int(x) % p for x in r) for r in L.rows) for L in found}
            assert got == expect, (p, got)


def test_criterion_04_triple_quadric(capsys):
    with _criterion(capsys, 4, "ruling-cone locus is the cubed quadric"):
        eq = epw_equation(build_A_plus())
        assert not eq.identically_zero
        assert eq.y.proportional_to(PLUCKER_QUADRIC.pow(3))


def test_criterion_05_epw_soundness(capsys):
    with _criterion(capsys, 5, "locus equation soundness, 3 seeds"):
        p = primes_above(2 ** 31 - 2000, 1)[0]
        for seed in (0, 1, 2):
            a = random_lagrangian(seed, kernel_dim=0)
            eq = epw_equation(a)
            assert eq.y.degree() == 6 and eq.y.is_homogeneous()
            # hyperplane independence: re-derive against a different chart
            keep = (0, 1, 2, 3, 5)
            v0 = Subspace(6, [[1 if j == i else 0 for j in range(6)] for i in keep])
            lin = _hyperplane_linear_poly(_hyperplane_form(v0))
            alt = epw_determinant(a, v0)
            for _ in range(4):
                alt = exact_divide(alt, lin)
            assert alt.proportional_to(eq.y)
            checked, mismatches = sample_membership_agreement(
                a, eq.y, p, n_points=500, seed=seed)
            assert checked >= 500 and mismatches == 0


def test_criterion_06_multiplicity_law(capsys):
    cases = {1: (0, 2, 3), 2: (0, 3, 6), 3: (0, 8, 10)}
    with _criterion(capsys, 6, "Taylor order equals kernel dimension, 9 cases"):
        for k, seeds in cases.items():
            for seed in seeds:
                a = random_lagrangian(seed, kernel_dim=k)
                for p in (2, 3):
                    for w in theta_enumerate_modp(a, p).members:
                        assert not w.contains_vector(E0), (k, seed, p)
                dim, order = epw_multiplicity(a, E0)
                assert (dim, order) == (k, k), (k, seed, dim, order)


def _chart_at(point):
    i = next(j for j, x in enumerate(point) if x)
    return [[1 if t == j else 0 for t in range(3)] for j in range(3) if j != i]


def test_criterion_07_curve_suite(capsys):
    with _criterion(capsys, 7, "degeneracy sextics, 3 seeded pairs"):
        from epwplanes import _core

        # seeds chosen so the curve has good reduction at 2 and 3; see the
        # bad-reduction note in the generator docstring
        for seed in (3, 4, 5):
            a, (w, wp) = curve_pair(seed)
            c = curve_equation(a, w)
            assert not c.is_plane and c.c.degree() == 6

            # exhaustive oracle agreement over F_2 and F_3
            den = math.lcm(*(co.denominator for co in c.c.terms.values()))
            for p in (2, 3):
                coeffs = {e: int(co * den) % p for e, co in c.c.terms.items()}
                assert any(coeffs.values()), (seed, p)
                a_mod = [list(r) for r in a.space.reduce_mod(p).rows]
                for x0 in range(p):
                    for x1 in range(p):
                        for x2 in range(p):
                            if not (x0 or x1 or x2):
                                continue
                            v = [x0, x1, x2, 0, 0, 0]
                            oracle = _core.rank_mod(
                                a_mod + [list(r) for r in F_of(v, p).rows], p) <= 18
                            on = sum(
                                co * x0 ** e[0] * x1 ** e[1] * x2 ** e[2]
                                for e, co in coeffs.items()
                            ) % p == 0
                            assert on == oracle, (seed, p, v)

            # multiplicity >= 2 at the marked intersection point
            line = w.intersect(wp)
            assert line.dim == 1
            pt6 = [int(x) for x in line.rows[0]]
            pt3 = pt6[:3]
            parts = taylor_parts(c.c, pt3, _chart_at(pt3))
            assert parts[0].is_zero() and parts[1].is_zero()

            # leading term vs lowest Taylor part at a spread of points
            for pt3 in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1], [1, -1, 2]):
                v6 = pt3 + [0, 0, 0]
                kbar, g = leading_term(a, w, v6)
                parts = taylor_parts(c.c, pt3, _chart_at(pt3))
                lowest = next((i for i, part in enumerate(parts) if not part.is_zero()), None)
                assert lowest is not None
                if g.is_zero():
                    # degenerate restricted determinant: order strictly exceeds kbar
                    assert lowest > kbar, (seed, pt3, kbar, lowest)
                else:
                    assert lowest == kbar, (seed, pt3, kbar, lowest)
                    assert parts[lowest].proportional_to(g), (seed, pt3)


def test_criterion_08_psi_common_zero_check(capsys):
    with _criterion(capsys, 8, "projected-Grassmannian containment, 3 frames"):
        w = Subspace(6, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
        for i in range(3):
            frame = random_frame(w, E0, (11, i))
            for p in (2, 3):
                rep = psi_common_zero_check(E0, w, p, frame=frame)
                assert rep.containment, (i, p)


def test_criterion_09_bound_ledger_and_certificates(capsys):
    with _criterion(capsys, 9, "singularity cap ledger + completeness verdicts"):
        assert bound_audit(0, 9, 0, 0, 1).cap == 19
        assert bound_audit(0, 7, 0, 1, 1).cap == 19
        assert bound_audit(0, 4, 0, 2, 1).cap == 17
        assert max_theta_bound(s_values=(1,), l34=0) == 19
        assert max_theta_bound(s_values=(1,), l34=1) == 19
        assert max_theta_bound(s_values=(1,), l34=2) == 17
        assert max_theta_bound() == 20
        with pytest.raises(InfeasibleInput):
            bound_audit(9, 9, 0, 0, 1)

        cert = completeness_certificate(fano_family(), [2, 3])
        assert cert.verdict == "CompleteCertifiedAtPrimes"
        for mode in (1, 2, 3, 4):
            fam = random_incident_family(17, 5, mode)
            cert = completeness_certificate(fam, [2, 3])
            assert cert.verdict == "Incomplete" and cert.witness is not None
            assert all(incident(cert.witness, m) for m in fam.members)


def test_criterion_10_property_suites(capsys):
    with _criterion(capsys, 10, "bulk property suites"):
        rng = random.Random(repr(("acceptance", "bulk")))

        # incidence <=> symplectic vanishing, 10^4 random plane pairs
        for _ in range(10 ** 4):
            r1 = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(3)]
            r2 = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(3)]
            if rank(r1) != 3 or rank(r2) != 3:
                continue
            w1, w2 = Subspace(6, r1), Subspace(6, r2)
            form = symplectic_form(plucker(w1), plucker(w2))
            assert incident(w1, w2) == (form == 0)

        # Lagrangian invariants of F_v, 10^4 random v
        for _ in range(10 ** 4):
            v = [rng.randint(-4, 4) for _ in range(6)]
            if not any(v):
                continue
            f = F_of(v)
            assert f.space.dim == 10
            rows = [list(r) for r in f.rows]
            i, j = rng.randrange(10), rng.randrange(10)
            a = KVector.from_coords(6, 3, rows[i])
            b = KVector.from_coords(6, 3, rows[j])
            assert symplectic_form(a, b) == 0
            vv = KVector.from_coords(6, 1, v)
            assert wedge(vv, a).is_zero()

        # Gaussian-binomial enumeration counts
        for (n, k, p), expect in (
            ((6, 3, 2), 1395), ((6, 3, 3), 33880),
            ((6, 2, 2), 651), ((7, 3, 2), 11811),
        ):
            from epwplanes import _core

            visited, _ = _core.enumerate_incident(n, k, p, [])
            assert visited == expect == gaussian_binomial(n, k, p)
