"""Timing comparison of the compiled core against the pure-Python fallback.

Run with: python3 benchmarks/benchmark_cores.py
"""

import random
import time

from epwplanes import _purecore
from epwplanes.epw import build_A_plus

try:
    from epwplanes import _fastcore
except ImportError:
    _fastcore = None


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads():
    rng = random.Random("bench")
    p = 10007
    mats = [[[rng.randrange(p) for _ in range(12)] for _ in range(12)] for _ in range(300)]
    a = build_A_plus()
    red = a.space.reduce_mod(3)
    rows = [[int(x) % 3 for x in r] for r in red.rows]
    pivots = [next(j for j in range(20) if r[j]) for r in rows]
    n_mat = [[1 if i == j + 3 else 0 for j in range(3)] for i in range(6)]
    return [
        ("rank_mod 300x(12x12) p=10007", lambda m: m.batch_rank_mod(mats, p)),
        ("det_mod  300x(12x12) p=10007", lambda m: m.batch_det_mod(mats, p)),
        ("enumerate_incident Gr(3,F_2^6)", lambda m: m.enumerate_incident(6, 3, 2, [n_mat])),
        ("theta_scan Gr(3,F_3^6)", lambda m: m.theta_scan(3, rows, pivots)),
    ]


def main():
    backends = [("pure", _purecore)]
    if _fastcore is not None:
        backends.append(("compiled", _fastcore))
    loads = _workloads()
    width = max(len(name) for name, _ in loads)
    header = f"{'workload':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in backends)
    print(header)
    print("-" * len(header))
    for name, fn in loads:
        times = [_time(lambda m=mod: fn(m)) for _, mod in backends]
        cells = "  ".join(f"{t * 1000:9.1f}ms" for t in times)
        line = f"{name:<{width}}  {cells}"
        if len(times) == 2 and times[1] > 0:
            line += f"  ({times[0] / times[1]:.1f}x)"
        print(line)


if __name__ == "__main__":
    main()
