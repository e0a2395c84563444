"""Closed-form bounds on the imaginary-time excited-state coefficient.

Quadrature helpers evaluate the phase integrals and the ``I1`` integral
exactly, so the closed forms can be checked against them.  Every integrand
here is symmetric or antisymmetric about the gap minimum at ``s = 1/2``, so
integration ranges are split there before adaptation.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .model import check_fraction, check_size, gap
from .quadrature import integrate


@dataclass(frozen=True)
class BoundReport:
    n: int
    tau: float
    delta: float
    d1_upper: float
    d1_asymptotic: float
    ratio_bound: float
    tau_required: float

    def to_dict(self) -> dict:
        return asdict(self)


def _split(n: int):
    # the integrands vary on the scale 1/sqrt(N) around the gap minimum
    w = 1.0 / math.sqrt(n)
    return [0.5 - w, 0.5 - 0.25 * w, 0.5, 0.5 + 0.25 * w, 0.5 + w]


def _eps(n: int, s: float, level: int) -> float:
    g = gap(n, s)
    if level == 1:
        return 0.5 * (1.0 + g)
    # (1 - g)/2 rewritten without cancellation, using 1 - g**2 = 4(1 - 1/N)s(1 - s)
    return 2.0 * (1.0 - 1.0 / n) * s * (1.0 - s) / (1.0 + g)


def phi_exact(n: int, s: float, level: int, tol: float = 1e-10) -> float:
    """``int_0^s eps_level(s') ds'`` by adaptive quadrature."""
    n = check_size(n)
    s = check_fraction(s)
    if level not in (0, 1):
        raise ValueError(f"level must be 0 or 1, got {level!r}")
    return integrate(lambda x: _eps(n, x, level), 0.0, s, tol=tol, points=_split(n))


def delta_phi_exact(n: int, s: float, tol: float = 1e-10) -> float:
    """``int_0^s gap(s') ds'`` by adaptive quadrature."""
    n = check_size(n)
    s = check_fraction(s)
    return integrate(lambda x: gap(n, x), 0.0, s, tol=tol, points=_split(n))


def delta_phi_approx(n: int, s: float) -> float:
    """Large-N closed form ``(s - 1/2)*gap(s)/2 + 1/4``."""
    n = check_size(n)
    s = check_fraction(s)
    return 0.5 * (s - 0.5) * gap(n, s) + 0.25


def i1_quadrature(n: int, tau: float, s_a: float, s_b: float, tol: float = 1e-10) -> float:
    """``int_{s_a}^{s_b} (s - 1/2) exp(tau (s - 1/2)|s - 1/2|) / gap(s)**5 ds``."""
    n = check_size(n)
    s_a, s_b = check_fraction(s_a), check_fraction(s_b)
    if s_a > s_b:
        raise ValueError(f"need s_a <= s_b, got {s_a} > {s_b}")
    if s_a == s_b:
        return 0.0

    def f(s):
        x = s - 0.5
        return x * math.exp(tau * x * abs(x)) / gap(n, s) ** 5

    # the integrand peaks at |s - 1/2| ~ 1/(2 sqrt N)
    return integrate(f, s_a, s_b, tol=tol, points=_split(n))


def _i1_shape(n: int):
    return (math.sqrt(n) - 1.0) / (math.sqrt(n) + 1.0)


def i1_lower_half_bound(n: int, tau: float) -> float:
    """Closed-form upper bound on ``I1`` over ``[0, 1/2]``."""
    n = check_size(n)
    r = _i1_shape(n)
    head = -(n ** 2.5) / (12.0 * (n - 1)) * (1.0 - 0.5 * r * tau / (n - 1))
    tail = n / (12.0 * (n - 1)) * math.exp(-tau / 4.0) * (1.0 + 0.5 * r * n * tau / (n - 1))
    return head + tail


def i1_upper_half_bound(n: int, tau: float) -> float:
    """Closed-form upper bound on ``I1`` over ``[1/2, 1]``."""
    n = check_size(n)
    r = _i1_shape(n)
    head = -n / (12.0 * (n - 1)) * math.exp(tau / 4.0) * (1.0 - 0.5 * r * n * tau / (n - 1))
    tail = n ** 2.5 / (12.0 * (n - 1)) * (1.0 + 0.5 * r * tau / (n - 1))
    return head + tail


def d1_definition(n: int, tau: float, s: float = 1.0, tol: float = 1e-10) -> float:
    """``D1(s)`` straight from its integral definition (exact phase)."""
    n = check_size(n)
    dphi_s = delta_phi_exact(n, s, tol)

    def f(x):
        return math.exp(tau * (delta_phi_exact(n, x, tol) - dphi_s)) / gap(n, x) ** 2

    return math.sqrt(n - 1) / n * integrate(f, 0.0, s, tol=1e-8, points=_split(n))


def d1_upper_bound(n: int, tau: float) -> float:
    if tau < 0:
        raise ValueError(f"anneal time must be non-negative, got {tau!r}")
    return 1.0 / (2.0 * math.sqrt(n)) + math.exp(-tau / 4.0)


def d1_asymptotic(n: int, tau: float) -> float:
    if not tau > 0:
        raise ValueError(f"anneal time must be positive, got {tau!r}")
    return math.sqrt(n - 1) / n * (1.0 - math.exp(-tau / 2.0)) / tau


def ratio_bound(n: int, tau: float) -> float:
    """Bound on the excited/ground coefficient ratio at the end of the anneal."""
    if tau < 0:
        raise ValueError(f"anneal time must be non-negative, got {tau!r}")
    return 0.5 + math.sqrt(n) * math.exp(-tau / 4.0)


def required_tau(n: float, delta: float) -> float:
    """Anneal time at which ``sqrt(N) exp(-tau/4)`` falls to ``delta``."""
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta!r}")
    return 2.0 * math.log(n / delta ** 2)


def delta_for_probability(p: float) -> float:
    """Amplitude ratio ``delta`` with ``1/(1 + delta**2) = p``."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"target probability must lie in (0, 1), got {p!r}")
    return math.sqrt((1.0 - p) / p)


def bound_report(n: int, tau: float, delta: float = 0.1) -> BoundReport:
    n = check_size(n)
    if not tau > 0:
        raise ValueError(f"anneal time must be positive, got {tau!r}")
    return BoundReport(
        n=n,
        tau=float(tau),
        delta=float(delta),
        d1_upper=d1_upper_bound(n, tau),
        d1_asymptotic=d1_asymptotic(n, tau),
        ratio_bound=ratio_bound(n, tau),
        tau_required=required_tau(n, delta),
    )
