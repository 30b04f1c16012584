"""Timing comparison of the compiled kernels against the numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--bounds 200,500,1000,2000]

The workload is the dominant brute-force loop (root enumeration into a
phase cloud) plus the two cheap circle sweeps, evaluated on an InZ chart
point of the 3-Kronecker quiver.
"""
from __future__ import annotations

import argparse
import cmath
import math
import time

from kronstab import _kernels_py
from kronstab._kernels import BACKEND

try:
    from kronstab import _kernels_cy
except ImportError:
    _kernels_cy = None


def _time(fn, *args, repeats: int = 3) -> tuple[float, object]:
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bounds", default="200,500,1000,2000")
    args = parser.parse_args()
    bounds = [int(tok) for tok in args.bounds.split(",") if tok]

    z1 = -cmath.exp(complex(0.0, 1.0))
    z2 = cmath.exp(complex(0.2, 2.2))
    print(f"active backend: {BACKEND}")
    if _kernels_cy is None:
        print("compiled extension not built; timing the fallback only")
    header = f"{'bound':>7} {'points':>9} {'python_s':>10} {'compiled_s':>11} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for bound in bounds:
        t_py, (angles_py, skipped_py) = _time(
            _kernels_py.cloud_angles, 3, bound, z1, z2
        )
        if _kernels_cy is not None:
            t_cy, (angles_cy, skipped_cy) = _time(
                _kernels_cy.cloud_angles, 3, bound, z1, z2
            )
            assert skipped_py == skipped_cy
            assert angles_py.shape == angles_cy.shape
            # numpy's vectorized arctan2 and libm's differ by up to 1 ulp
            assert abs(angles_py - angles_cy).max() <= 5e-16
            ratio = f"{t_py / t_cy:8.2f}"
            t_cy_text = f"{t_cy:11.6f}"
        else:
            ratio, t_cy_text = f"{'n/a':>8}", f"{'n/a':>11}"
        print(f"{bound:7d} {angles_py.size:9d} {t_py:10.6f} {t_cy_text} {ratio}")

    # the sweep kernels are memory-bound; report them once on a big cloud
    angles, _ = _kernels_py.cloud_angles(3, bounds[-1], z1, z2)
    t_py, m_py = _time(_kernels_py.fattened_union_measure, angles, 0.01, math.pi)
    t_gap_py, g_py = _time(_kernels_py.max_circular_gap, angles, math.pi)
    print(f"\nunion measure on {angles.size} points: python {t_py:.6f}s", end="")
    if _kernels_cy is not None:
        t_cy, m_cy = _time(_kernels_cy.fattened_union_measure, angles, 0.01, math.pi)
        t_gap_cy, g_cy = _time(_kernels_cy.max_circular_gap, angles, math.pi)
        assert abs(m_py - m_cy) < 1e-9 and abs(g_py - g_cy) < 1e-12
        print(f", compiled {t_cy:.6f}s ({t_py / t_cy:.2f}x)")
        print(
            f"max gap on {angles.size} points: python {t_gap_py:.6f}s,"
            f" compiled {t_gap_cy:.6f}s ({t_gap_py / t_gap_cy:.2f}x)"
        )
    else:
        print()


if __name__ == "__main__":
    main()
