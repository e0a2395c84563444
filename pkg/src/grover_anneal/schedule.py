"""Annealing schedules ``s(t)`` on ``[0, tau]``.

Two kinds are supported: the linear ramp ``s = t/tau`` and a locally
adiabatic ramp whose rate follows ``ds/dt ~ gap(s)**2 / <1(s)|H0 - Hq|0(s)>``.
With the closed Grover matrix element ``sqrt(N-1)/(N*gap)`` that rate is
``c * gap**3 * N / sqrt(N-1)``; ``c`` is fixed by ``s(tau) = 1``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from .model import check_size, gap
from .quadrature import QuadratureError, integrate

MIN_KNOTS = 1024
MAX_KNOTS = 1 << 20
# change allowed between a knot table and its 2x refinement
INTERP_TOL = 1e-8
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


class ScheduleKind(str, enum.Enum):
    LINEAR = "linear"
    LOCAL_ADIABATIC = "adiabatic"


@dataclass(frozen=True)
class ScheduleSpec:
    kind: ScheduleKind
    tau: float
    n: int | None = None
    # LocalAdiabatic only: knot table (t_knots, s_knots) and rate constant
    t_knots: np.ndarray | None = field(default=None, repr=False)
    s_knots: np.ndarray | None = field(default=None, repr=False)
    rate_constant: float | None = None
    _interp: PchipInterpolator | None = field(default=None, repr=False, compare=False)

    def __call__(self, t):
        return evaluate(self, t)

    def rescaled(self, tau: float) -> "ScheduleSpec":
        """Same schedule shape stretched to a new total time."""
        if self.kind is ScheduleKind.LINEAR:
            return linear(tau)
        return build_local_adiabatic(self.n, tau)


def linear(tau: float) -> ScheduleSpec:
    tau = float(tau)
    if not tau >= 0 or math.isinf(tau):
        raise ValueError(f"anneal time must be finite and non-negative, got {tau!r}")
    return ScheduleSpec(ScheduleKind.LINEAR, tau)


def evaluate(spec: ScheduleSpec, t):
    """Annealing parameter at time ``t`` (scalar or array)."""
    tau = spec.tau
    arr = np.asarray(t, dtype=float)
    slack = 1e-12 * max(tau, 1.0)
    if np.any(arr < -slack) or np.any(arr > tau + slack):
        raise ValueError(f"time outside [0, {tau}]")
    if tau == 0:
        out = np.zeros_like(arr)
    elif spec.kind is ScheduleKind.LINEAR:
        out = np.clip(arr / tau, 0.0, 1.0)
    else:
        out = np.clip(spec._interp(np.clip(arr, 0.0, tau)), 0.0, 1.0)
        out = np.where(arr >= tau, 1.0, np.where(arr <= 0.0, 0.0, out))
    return float(out) if out.ndim == 0 else out


def _inverse_rate_shape(n: int, s):
    # dt/ds up to the constant factor sqrt(N-1)/(c*N)
    return gap(n, s) ** -3


def chebyshev_knots(m: int) -> np.ndarray:
    """``m + 1`` Chebyshev-Lobatto points on [0, 1], increasing."""
    k = np.arange(m + 1)
    s = 0.5 - 0.5 * np.cos(np.pi * k / m)
    # pin the mirror symmetry s[m - k] = 1 - s[k] exactly
    return 0.5 * (s + (1.0 - s[::-1]))


def _cumulative_profile(n: int, s: np.ndarray) -> np.ndarray:
    # Gauss-Legendre on each knot interval; the integrand is analytic with
    # its nearest complex singularity at distance ~1/(2 sqrt N) from s = 1/2
    a, b = s[:-1], s[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = _inverse_rate_shape(n, nodes) @ _GL_WEIGHTS
    return np.concatenate(([0.0], np.cumsum(vals * half)))


def _profile_total(n: int, tol: float) -> float:
    return 2.0 * integrate(lambda s: _inverse_rate_shape(n, s), 0.0, 0.5, tol=tol)


def _table(n: int, m: int):
    """Chebyshev knots and normalized times ``u = t/tau`` for ``m + 1`` knots.

    Only ``s <= 1/2`` is integrated; the other half is mirrored, since the gap
    is symmetric about 1/2.  Returns ``(s, u, total)``.
    """
    s = chebyshev_knots(m)
    cum = _cumulative_profile(n, s[: m // 2 + 1])
    u_half = cum / (2.0 * cum[-1])
    u = np.concatenate((u_half, 1.0 - u_half[-2::-1]))
    return s, u, 2.0 * cum[-1]


def _distinct(s, u):
    # near t = tau the outermost knots can collide in double precision;
    # drop them in mirror pairs
    keep = np.append(np.diff(u) > 0, True)
    keep &= keep[::-1]
    return s[keep], u[keep]


@lru_cache(maxsize=64)
def _normalized_table(n: int, tol: float):
    """Knots ``(u, s)`` with ``u = t/tau`` plus the total of ``gap**-3``."""
    total = _profile_total(n, tol)
    m = MIN_KNOTS
    s_prev, u_prev, table_total = _table(n, m)
    while True:
        m *= 2
        s_new, u_new, table_total = _table(n, m)
        coarse = PchipInterpolator(*_distinct(s_prev, u_prev)[::-1])
        # odd-index knots are the ones the coarse table does not contain
        change = np.max(np.abs(coarse(u_new[1::2]) - s_new[1::2]))
        # the returned table must itself sit within INTERP_TOL of its own
        # refinement, so stop with a margin
        if change <= 0.1 * INTERP_TOL:
            if abs(table_total - total) > 10 * tol * total:
                raise QuadratureError(
                    f"knot table total {table_total!r} disagrees with adaptive "
                    f"quadrature {total!r} beyond relative tolerance {tol}",
                    achieved=abs(table_total - total) / total,
                )
            s_out, u_out = _distinct(s_new, u_new)
            return u_out, s_out, total
        if m >= MAX_KNOTS:
            raise QuadratureError(
                f"knot table did not converge with {m + 1} knots", achieved=change
            )
        s_prev, u_prev = s_new, u_new


def build_local_adiabatic(n: int, tau: float, tol: float = 1e-10) -> ScheduleSpec:
    n = check_size(n)
    tau = float(tau)
    if not tau > 0 or math.isinf(tau):
        raise ValueError(f"anneal time must be positive and finite, got {tau!r}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    u, s, total = _normalized_table(n, float(tol))
    t = u * tau
    return ScheduleSpec(
        kind=ScheduleKind.LOCAL_ADIABATIC,
        tau=tau,
        n=n,
        t_knots=t,
        s_knots=s,
        rate_constant=math.sqrt(n - 1) * total / (n * tau),
        _interp=PchipInterpolator(t, s),
    )


def rate(spec: ScheduleSpec, s):
    """``ds/dt`` as a function of ``s`` for a built schedule."""
    if spec.kind is ScheduleKind.LINEAR:
        return np.full_like(np.asarray(s, dtype=float), 1.0 / spec.tau)
    n = spec.n
    return spec.rate_constant * gap(n, s) ** 3 * n / math.sqrt(n - 1)


def make_schedule(kind, n: int, tau: float) -> ScheduleSpec:
    kind = ScheduleKind(kind)
    if kind is ScheduleKind.LINEAR:
        return linear(tau)
    if tau == 0:
        # zero-length anneal: the shape is irrelevant
        return ScheduleSpec(ScheduleKind.LOCAL_ADIABATIC, 0.0, n=check_size(n))
    return build_local_adiabatic(n, tau)
