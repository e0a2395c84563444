"""Anneal-time scans, scaling-law fits and the schedule comparison."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .integrator import Mode, final_probability
from .model import check_size
from .schedule import ScheduleKind, make_schedule

log = logging.getLogger(__name__)

TAU_CAP = 1e7
# geometric grid density of the fallback scan, points per doubling of tau
GRID_PER_OCTAVE = 16
PRECISION_FLOOR = 1e-12


class BracketError(ArithmeticError):
    """No anneal time below the cap reaches the target probability."""


@dataclass(frozen=True)
class ScanResult:
    n: int
    tau: float
    p_target: float
    mode: str
    schedule: str
    monotone_bracket: bool
    evaluations: int
    # (tau, P) pairs in evaluation order
    samples: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("samples")
        return d


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares line ``tau* = slope * ln N + intercept``."""

    slope: float
    intercept: float
    rms_residual: float
    points: list

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit ``y = prefactor * x**exponent`` in log-log space."""

    exponent: float
    prefactor: float
    rms_residual: float
    points: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Comparison:
    rows: list  # (N, tau_it_linear, tau_it_adiabatic, tau_rt_adiabatic)
    it_linear: ScalingFit
    it_adiabatic: PowerLawFit
    rt_adiabatic: PowerLawFit

    def to_dict(self) -> dict:
        return {
            "rows": [list(r) for r in self.rows],
            "it_linear": self.it_linear.to_dict(),
            "it_adiabatic": self.it_adiabatic.to_dict(),
            "rt_adiabatic": self.rt_adiabatic.to_dict(),
        }


def fit_log_linear(ns, taus) -> ScalingFit:
    x = np.log(np.asarray(ns, dtype=float))
    y = np.asarray(taus, dtype=float)
    if x.size < 3:
        raise ValueError("a scaling fit needs at least 3 points")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ScalingFit(
        slope=float(slope),
        intercept=float(intercept),
        rms_residual=float(np.sqrt(np.mean(resid ** 2))),
        points=[(float(a), float(b)) for a, b in zip(x, y)],
    )


def fit_power_law(xs, ys) -> PowerLawFit:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 3:
        raise ValueError("a power-law fit needs at least 3 points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("power-law fit needs positive data")
    lx, ly = np.log(x), np.log(y)
    exponent, log_pref = np.polyfit(lx, ly, 1)
    resid = ly - (exponent * lx + log_pref)
    return PowerLawFit(
        exponent=float(exponent),
        prefactor=float(math.exp(log_pref)),
        rms_residual=float(np.sqrt(np.mean(resid ** 2))),
        points=[(float(a), float(b)) for a, b in zip(x, y)],
    )


def _probability(n, tau, mode, kind):
    if tau == 0:
        return 1.0 / n
    return final_probability(n, make_schedule(kind, n, tau), mode)


def scan_tau(
    n: int,
    p_target: float = 0.99,
    mode=Mode.IMAGINARY_TIME,
    schedule_kind=ScheduleKind.LINEAR,
    rel_tol: float = 1e-3,
    tau_cap: float = TAU_CAP,
) -> ScanResult:
    """Smallest anneal time whose final success probability reaches ``p_target``.

    Doubles ``tau`` from 1 until the target is met, checks that the sampled
    probabilities never decrease, then bisects to relative width ``rel_tol``.
    A non-monotone bracket triggers a dense geometric grid scan to locate the
    first crossing before bisecting.
    """
    n = check_size(n)
    mode = Mode(mode)
    kind = ScheduleKind(schedule_kind)
    if not 0.0 < p_target < 1.0:
        raise ValueError(f"target probability must lie in (0, 1), got {p_target!r}")
    if not rel_tol > 0:
        raise ValueError(f"relative tolerance must be positive, got {rel_tol!r}")
    samples = []

    def prob(tau):
        p = _probability(n, tau, mode, kind)
        samples.append((tau, p))
        return p

    def result(tau, monotone):
        return ScanResult(n, float(tau), p_target, mode.value, kind.value,
                          monotone, len(samples), samples)

    if prob(0.0) >= p_target:
        return result(0.0, True)
    lo, hi = 0.0, 1.0
    while prob(hi) < p_target:
        lo, hi = hi, 2.0 * hi
        if hi > tau_cap:
            raise BracketError(
                f"no anneal time up to {tau_cap:g} reaches P >= {p_target} "
                f"(n={n}, mode={mode.value}, schedule={kind.value})"
            )
    bracket = [p for _, p in samples]
    monotone = all(b >= a for a, b in zip(bracket, bracket[1:]))
    if not monotone:
        log.warning("non-monotone P(tau) on bracket samples for n=%d; scanning grid", n)
        ratio = 2.0 ** (1.0 / GRID_PER_OCTAVE)
        grid = hi * ratio ** -np.arange(int(round(math.log2(hi) * GRID_PER_OCTAVE)) + 1)[::-1]
        prev = 0.0
        for tau in grid:
            if prob(float(tau)) >= p_target:
                lo, hi = prev, float(tau)
                break
            prev = float(tau)
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if prob(mid) >= p_target:
            hi = mid
        else:
            lo = mid
    return result(hi, monotone)


def _map(fn, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def scan_many(ns, p_target, mode, schedule_kind, rel_tol=1e-3, workers=1):
    ns = sorted(check_size(n) for n in ns)
    return _map(lambda n: scan_tau(n, p_target, mode, schedule_kind, rel_tol), ns, workers)


def scaling_study(ns, p_target=0.99, mode=Mode.IMAGINARY_TIME,
                  schedule_kind=ScheduleKind.LINEAR, rel_tol=1e-3, workers=1) -> ScalingFit:
    """Fit ``tau* = a ln N + b`` over the given problem sizes."""
    if len(ns) < 3:
        raise ValueError("a scaling study needs at least 3 sizes")
    scans = scan_many(ns, p_target, mode, schedule_kind, rel_tol, workers)
    return fit_log_linear([s.n for s in scans], [s.tau for s in scans])


def asymptotic_slope(n, taus, mode=Mode.IMAGINARY_TIME,
                     schedule_kind=ScheduleKind.LINEAR, workers=1) -> PowerLawFit:
    """Exponent of ``1 - P(tau)`` against ``tau`` in the adiabatic regime."""
    n = check_size(n)
    taus = sorted(float(t) for t in taus)
    if any(t <= 0 for t in taus):
        raise ValueError("anneal times must be positive")
    probs = _map(lambda t: _probability(n, t, Mode(mode), ScheduleKind(schedule_kind)), taus, workers)
    low = [(t, p) for t, p in zip(taus, probs) if p <= 0.9]
    if low:
        raise ValueError(f"not in the adiabatic regime (P <= 0.9) at tau = {[t for t, _ in low]}")
    usable = [(t, 1.0 - p) for t, p in zip(taus, probs) if 1.0 - p >= PRECISION_FLOOR]
    if len(usable) < 3:
        raise ValueError(f"only {len(usable)} runs above the 1e-12 precision floor; need 3")
    return fit_power_law(*zip(*usable))


def schedule_comparison(ns, p_target=0.99, rel_tol=1e-3, workers=1) -> Comparison:
    ns = sorted(check_size(n) for n in ns)
    if len(ns) < 3:
        raise ValueError("a schedule comparison needs at least 3 sizes")
    it_lin = scan_many(ns, p_target, Mode.IMAGINARY_TIME, ScheduleKind.LINEAR, rel_tol, workers)
    it_ad = scan_many(ns, p_target, Mode.IMAGINARY_TIME, ScheduleKind.LOCAL_ADIABATIC, rel_tol, workers)
    rt_ad = scan_many(ns, p_target, Mode.REAL_TIME, ScheduleKind.LOCAL_ADIABATIC, rel_tol, workers)
    rows = [(n, a.tau, b.tau, c.tau) for n, a, b, c in zip(ns, it_lin, it_ad, rt_ad)]
    return Comparison(
        rows=rows,
        it_linear=fit_log_linear(ns, [r[1] for r in rows]),
        it_adiabatic=fit_power_law(ns, [r[2] for r in rows]),
        rt_adiabatic=fit_power_law(ns, [r[3] for r in rows]),
    )
