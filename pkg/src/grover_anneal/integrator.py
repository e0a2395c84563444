"""Fixed-step RK4 propagation of the reduced two-level state.

Real time follows ``d psi/dt = -i H psi``; imaginary time follows
``d psi/dt = -H psi`` with per-step renormalization, the shed norm being
accumulated in ``log_norm``.

Steps are uniform in time.  A step during which the schedule advances ``s``
by ``ds > 1/steps`` is split into ``ceil(ds*steps)`` equal sub-steps; the
linear ramp is never split.  The local-adiabatic ramp sweeps most of
``[0, 1]`` in a tiny time window at each end and would otherwise be badly
under-resolved there.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .model import check_size, gap
from .schedule import ScheduleSpec, evaluate

MIN_STEPS = 10_000
STEPS_PER_TIME = 50
FULL_SPACE_CAP = 4096


class Mode(str, enum.Enum):
    REAL_TIME = "rt"
    IMAGINARY_TIME = "it"


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EffectiveState:
    a_opt: complex
    a_rest: complex
    log_norm: float = 0.0

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.a_opt) ** 2 + abs(self.a_rest) ** 2)


@dataclass
class Trajectory:
    n: int
    mode: Mode
    tau: float
    steps: int
    t: np.ndarray
    s: np.ndarray
    p_opt: np.ndarray
    log_norm: np.ndarray
    gap: np.ndarray
    final: EffectiveState
    # |change in final P| at the last step halving, when certified
    halving_change: float | None = field(default=None)

    @property
    def final_probability(self) -> float:
        return success_probability(self.final)

    def rows(self):
        return zip(self.t, self.s, self.p_opt, self.log_norm, self.gap)


def initial_state(n: int) -> EffectiveState:
    n = check_size(n)
    return EffectiveState(complex(1.0 / math.sqrt(n)), complex(math.sqrt(1.0 - 1.0 / n)), 0.0)


def success_probability(state: EffectiveState) -> float:
    w0 = abs(state.a_opt) ** 2
    total = w0 + abs(state.a_rest) ** 2
    if total == 0.0:
        raise ArithmeticError("zero-norm state")
    return w0 / total


def default_steps(tau: float) -> int:
    return max(MIN_STEPS, math.ceil(STEPS_PER_TIME * tau))


def step_grid(schedule: ScheduleSpec, steps: int):
    """RK4 step widths and annealing parameters for a run of ``steps`` steps.

    Returns ``(s_grid, h, ends)`` where ``ends[k]`` is the index of the
    sub-step that completes uniform step ``k``.
    """
    tau = schedule.tau
    dt = tau / steps
    t = np.arange(steps + 1) * dt
    t[-1] = tau
    s = evaluate(schedule, t)
    splits = np.maximum(1, np.ceil(np.abs(np.diff(s)) * steps - 1e-9)).astype(np.int64)
    ends = np.cumsum(splits) - 1
    if ends[-1] + 1 == steps:
        nodes = t
    else:
        owner = np.repeat(np.arange(steps), splits)
        frac = (np.arange(owner.size) - (ends - splits + 1)[owner]) / splits[owner]
        nodes = np.append(t[owner] + frac * dt, tau)
    h = np.diff(nodes)
    s_grid = np.empty(2 * h.size + 1)
    s_grid[0::2] = evaluate(schedule, nodes)
    s_grid[1::2] = evaluate(schedule, nodes[:-1] + 0.5 * h)
    return s_grid, h, ends


def rk4_step(n: int, schedule: ScheduleSpec, mode, t: float, dt: float, state: EffectiveState) -> EffectiveState:
    """One classical RK4 step from ``t`` to ``t + dt``."""
    n = check_size(n)
    mode = Mode(mode)
    if not dt > 0:
        raise ValueError(f"step must be positive, got {dt!r}")
    if t < 0 or t + dt > schedule.tau + 1e-12:
        raise ValueError(f"step [{t}, {t + dt}] leaves [0, {schedule.tau}]")
    end = min(t + dt, schedule.tau)
    s_grid = np.asarray(evaluate(schedule, np.array([t, t + 0.5 * dt, end])), dtype=float)
    empty = np.empty(0)
    a0, a1, ln = _backend.rk4_effective(
        n, s_grid, np.array([dt]), mode is Mode.IMAGINARY_TIME,
        complex(state.a_opt), complex(state.a_rest), float(state.log_norm),
        np.empty(0, dtype=np.int64), empty, empty,
    )
    return EffectiveState(a0, a1, ln)


def _run(n, schedule, mode, steps, stride):
    s_grid, h, ends = step_grid(schedule, steps)
    picks = np.arange(stride - 1, steps, stride)
    if picks.size == 0 or picks[-1] != steps - 1:
        picks = np.append(picks, steps - 1)
    record_at = np.ascontiguousarray(ends[picks], dtype=np.int64)
    p_out = np.empty(record_at.size)
    ln_out = np.empty(record_at.size)
    start = initial_state(n)
    a0, a1, ln = _backend.rk4_effective(
        n, s_grid, h, mode is Mode.IMAGINARY_TIME,
        start.a_opt, start.a_rest, 0.0, record_at, p_out, ln_out,
    )
    t = np.append(0.0, (picks + 1) * (schedule.tau / steps))
    t[-1] = schedule.tau
    s = np.append(0.0, s_grid[2 * (record_at + 1)])
    return Trajectory(
        n=n,
        mode=mode,
        tau=schedule.tau,
        steps=steps,
        t=t,
        s=s,
        p_opt=np.append(1.0 / n, p_out),
        log_norm=np.append(0.0, ln_out),
        gap=gap(n, s),
        final=EffectiveState(a0, a1, ln),
    )


def _static(n, schedule, mode):
    start = initial_state(n)
    return Trajectory(
        n=n, mode=mode, tau=0.0, steps=0,
        t=np.zeros(1), s=np.zeros(1), p_opt=np.array([1.0 / n]),
        log_norm=np.zeros(1), gap=np.ones(1), final=start, halving_change=0.0,
    )


def evolve(
    n: int,
    schedule: ScheduleSpec,
    mode,
    steps: int | None = None,
    stride: int = 1,
    certify: bool = False,
    tol: float = 1e-9,
    max_halvings: int = 8,
) -> Trajectory:
    """Propagate the initial uniform state over the whole schedule.

    Parameters
    ----------
    steps
        Number of uniform time steps; defaults to ``max(1e4, ceil(50*tau))``.
    stride
        Record every ``stride``-th step (the final step is always recorded).
    certify
        Keep halving the step until the final success probability moves by
        less than ``tol``; the finest trajectory is returned.
    """
    n = check_size(n)
    mode = Mode(mode)
    if steps is None:
        steps = default_steps(schedule.tau)
    if steps < 1 or stride < 1:
        raise ValueError("steps and stride must be >= 1")
    if schedule.tau == 0:
        return _static(n, schedule, mode)
    traj = _run(n, schedule, mode, steps, stride)
    if not certify:
        return traj
    for _ in range(max_halvings):
        steps *= 2
        stride *= 2
        finer = _run(n, schedule, mode, steps, stride)
        change = abs(finer.final_probability - traj.final_probability)
        finer.halving_change = change
        traj = finer
        if change < tol:
            return traj
    raise ConvergenceError(
        f"final success probability still moved by {change:.3g} after "
        f"{max_halvings} halvings (steps={steps})"
    )


def final_probability(n: int, schedule: ScheduleSpec, mode, steps: int | None = None,
                      certify: bool = True, tol: float = 1e-9) -> float:
    """Final success probability without keeping the sample history."""
    n = check_size(n)
    if schedule.tau == 0:
        return 1.0 / n
    steps = default_steps(schedule.tau) if steps is None else steps
    traj = evolve(n, schedule, mode, steps, stride=steps, certify=certify, tol=tol)
    return traj.final_probability


def evolve_full(n: int, schedule: ScheduleSpec, mode, steps: int | None = None,
                cap: int = FULL_SPACE_CAP) -> float:
    """Same scheme on the full N-dimensional state; returns the final P."""
    n = check_size(n)
    mode = Mode(mode)
    if n > cap:
        raise ValueError(f"full-space evolution is capped at n <= {cap}, got {n}")
    if schedule.tau == 0:
        return 1.0 / n
    steps = default_steps(schedule.tau) if steps is None else steps
    s_grid, h, _ = step_grid(schedule, steps)
    psi = np.full(n, 1.0 / math.sqrt(n), dtype=complex)
    _backend.rk4_full(n, s_grid, h, mode is Mode.IMAGINARY_TIME, psi)
    w = np.abs(psi) ** 2
    return float(w[0] / w.sum())
