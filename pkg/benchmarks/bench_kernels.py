"""Time the compiled RK4 kernels against the pure-Python twin.

Usage::

    python3 benchmarks/bench_kernels.py [--steps 20000] [--repeat 3]

Both backends run on identical step grids; the script also reports the
largest difference in the final amplitudes.
"""
import argparse
import time

import numpy as np

from grover_anneal import _rk4_py
from grover_anneal.integrator import step_grid
from grover_anneal.schedule import build_local_adiabatic, linear

try:
    from grover_anneal import _rk4
except ImportError:  # extension not built
    _rk4 = None


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def effective_case(kernels, n, grid, imaginary):
    s_grid, h, _ = grid
    empty = np.empty(0)
    idx = np.empty(0, dtype=np.int64)
    a0, a1 = complex(1 / np.sqrt(n)), complex(np.sqrt(1 - 1 / n))
    return lambda: np.array(kernels.rk4_effective(n, s_grid, h, imaginary, a0, a1, 0.0, idx, empty, empty)[:2])


def full_case(kernels, n, grid, imaginary):
    s_grid, h, _ = grid

    def run():
        psi = np.full(n, 1 / np.sqrt(n), dtype=complex)
        kernels.rk4_full(n, s_grid, h, imaginary, psi)
        return psi

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _rk4 is None:
        raise SystemExit("compiled extension not available; build with `pip install -e .`")

    cases = [
        ("two-level, linear, RT", 1024, step_grid(linear(100.0), args.steps), False, effective_case),
        ("two-level, linear, IT", 1024, step_grid(linear(100.0), args.steps), True, effective_case),
        ("two-level, adiabatic, RT", 2 ** 18,
         step_grid(build_local_adiabatic(2 ** 18, 800.0), args.steps), False, effective_case),
        ("full space N=512, RT", 512, step_grid(linear(20.0), args.steps // 10), False, full_case),
        ("full space N=4096, IT", 4096, step_grid(linear(20.0), args.steps // 10), True, full_case),
    ]
    print(f"{'case':<28}{'RK4 steps':>10}{'cython s':>12}{'python s':>12}{'speedup':>10}{'max diff':>12}")
    for label, n, grid, imaginary, make in cases:
        tc, oc = best_of(args.repeat, make(_rk4, n, grid, imaginary))
        tp, op = best_of(args.repeat, make(_rk4_py, n, grid, imaginary))
        diff = float(np.max(np.abs(oc - op)))
        print(f"{label:<28}{grid[1].size:>10}{tc:>12.4f}{tp:>12.4f}{tp / tc:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
