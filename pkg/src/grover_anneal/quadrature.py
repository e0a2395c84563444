"""Adaptive quadrature with explicit convergence reporting.

Thin wrapper over QUADPACK (adaptive Gauss-Kronrod with interval bisection)
that raises instead of warning when the requested tolerance is not met.
"""
from __future__ import annotations

import warnings

from scipy import integrate as _integrate


class QuadratureError(ArithmeticError):
    """Adaptive quadrature stopped short of the requested tolerance."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


def _quad(f, a, b, tol, points, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _integrate.IntegrationWarning)
        return _integrate.quad(
            f, a, b, epsabs=0.0, epsrel=tol, limit=limit, points=points, full_output=1
        )[:3]


def integrate(f, a: float, b: float, tol: float = 1e-10, points=None, limit: int = 2000) -> float:
    """Integrate ``f`` over ``[a, b]`` to relative tolerance ``tol``.

    ``points`` are interior break points (e.g. the gap minimum) that are
    split on before adaptation starts.  The error is measured against
    ``|integral of f|``, or against the integral of ``|f|`` when ``f`` changes
    sign and the signed value cancels below what double precision can
    resolve.
    """
    if a == b:
        return 0.0
    if points is not None:
        points = sorted(p for p in points if a < p < b) or None
    value, abserr, info = _quad(f, a, b, tol, points, limit)
    scale = abs(value)
    # QUADPACK's error estimate is conservative; allow a small multiple
    if abserr > 10 * tol * scale and abserr > 1e-300:
        scale = max(scale, _quad(lambda x: abs(f(x)), a, b, 1e-3, points, limit)[0])
    if abserr > 10 * tol * scale and abserr > 1e-300:
        achieved = abserr / scale if scale else float("inf")
        raise QuadratureError(
            f"quadrature on [{a}, {b}] reached relative error {achieved:.3g} "
            f"(requested {tol:.3g}) after {info['last']} subintervals",
            achieved=achieved,
        )
    return float(value)
