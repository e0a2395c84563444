"""Pick the compiled RK4 kernels when available, else the Python twin.

Set ``GROVER_ANNEAL_PURE_PYTHON=1`` to force the fallback (benchmarks and
parity tests use this).
"""
import os

if os.environ.get("GROVER_ANNEAL_PURE_PYTHON", "") not in ("", "0"):
    from . import _rk4_py as kernels
else:
    try:
        from . import _rk4 as kernels
    except ImportError:  # extension not built
        from . import _rk4_py as kernels

BACKEND = "cython" if kernels.__name__.endswith("_rk4") else "python"

rk4_effective = kernels.rk4_effective
rk4_full = kernels.rk4_full
