"""Grover annealing Hamiltonian and its two-level reduction.

The annealing Hamiltonian is ``H(s) = s*H0 + (1 - s)*Hq`` with
``H0 = I - |0><0|`` and ``Hq = I - |Psi0><Psi0|``.  Starting from the uniform
superposition, the dynamics never leave ``span{|0>, |Psi>}`` where ``|Psi>``
is the uniform superposition over the N - 1 unmarked items.  Everything in
this module is closed form; nothing calls an eigensolver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# radicands this far below zero are rounding noise, not domain errors
_RADICAND_FLOOR = -1e-14


def check_size(n) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"problem size must be an integer, got {n!r}")
    n = int(n)
    if n < 2:
        raise ValueError(f"problem size must satisfy n >= 2, got {n}")
    return n


def check_fraction(s) -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"annealing parameter must lie in [0, 1], got {s!r}")
    return s


def _safe_sqrt(x: float) -> float:
    if x < 0.0:
        if x < _RADICAND_FLOOR:
            raise ValueError(f"negative radicand {x!r}")
        return 0.0
    return math.sqrt(x)


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """Upper triangle of the 2x2 block on the basis ``{|0>, |Psi>}``."""

    h00: float
    h01: float
    h11: float
    s: float

    @property
    def trace(self) -> float:
        return self.h00 + self.h11

    @property
    def det(self) -> float:
        return self.h00 * self.h11 - self.h01 * self.h01

    def as_array(self) -> np.ndarray:
        return np.array([[self.h00, self.h01], [self.h01, self.h11]])


@dataclass(frozen=True)
class SpectralData:
    s: float
    eps0: float
    eps1: float
    gap: float
    p_coeff: float
    q_coeff: float


def effective_hamiltonian(n: int, s: float) -> EffectiveHamiltonian:
    n = check_size(n)
    s = check_fraction(s)
    r = 1.0 - s
    return EffectiveHamiltonian(
        h00=r * (1.0 - 1.0 / n),
        h01=-r * math.sqrt(n - 1) / n,
        h11=s + r / n,
        s=s,
    )


def gap(n: int, s):
    """Energy gap between the two lowest relevant levels.

    ``1 - 4(1 - 1/N)s(1 - s)`` is evaluated as ``1/N + 4(1 - 1/N)(s - 1/2)**2``,
    which avoids cancellation near the minimum.  Accepts a scalar or an array;
    the array path does no validation.
    """
    if np.ndim(s):
        x = np.asarray(s, dtype=float) - 0.5
        return np.sqrt(1.0 / n + 4.0 * (1.0 - 1.0 / n) * x * x)
    x = s - 0.5
    return math.sqrt(1.0 / n + 4.0 * (1.0 - 1.0 / n) * x * x)


def spectral_data(n: int, s: float) -> SpectralData:
    """Instantaneous eigenvalues and ground-state components at ``s``.

    The ground state is ``P|0> + Q|Psi>`` and the excited state is
    ``-Q|0> + P|Psi>``; both coefficients are non-negative.
    """
    n = check_size(n)
    s = check_fraction(s)
    g = gap(n, s)
    # g >= 1/sqrt(n) > 0, so the division is safe for every valid n
    tilt = (0.5 - (1.0 - 1.0 / n) * (1.0 - s)) / g
    p = _safe_sqrt(0.5 + tilt)
    q = _safe_sqrt(0.5 - tilt)
    return SpectralData(
        s=s,
        eps0=0.5 * (1.0 - g),
        eps1=0.5 * (1.0 + g),
        gap=g,
        p_coeff=min(p, 1.0),
        q_coeff=min(q, 1.0),
    )


def coupling_matrix_element(n: int, s: float, tau: float) -> float:
    """``<1(s)| dH/dt |0(s)>`` for the linear ramp ``s = t/tau``."""
    n = check_size(n)
    s = check_fraction(s)
    if not tau > 0:
        raise ValueError(f"anneal time must be positive, got {tau!r}")
    return math.sqrt(n - 1) / n / gap(n, s) / tau


def eigenbasis_projection(state, n: int, s: float) -> tuple[complex, complex]:
    """Components of ``state`` on the instantaneous ground and excited states."""
    sd = spectral_data(n, s)
    p, q = sd.p_coeff, sd.q_coeff
    c0 = p * state.a_opt + q * state.a_rest
    c1 = -q * state.a_opt + p * state.a_rest
    return complex(c0), complex(c1)


def full_hamiltonian_apply(n: int, s: float, v) -> np.ndarray:
    """Apply ``H(s)`` to a length-N vector without building an N x N matrix.

    ``H v = v - s*v[0]*e0 - (1 - s)*<Psi0|v>*Psi0``, which costs O(N).
    """
    n = check_size(n)
    s = check_fraction(s)
    v = np.asarray(v)
    if v.shape != (n,):
        raise ValueError(f"vector must have shape ({n},), got {v.shape}")
    out = v - (1.0 - s) * (v.sum() / n)
    out = out.astype(np.result_type(out, float), copy=False)
    out[0] -= s * v[0]
    return out


def uniform_state(n: int) -> np.ndarray:
    n = check_size(n)
    return np.full(n, 1.0 / math.sqrt(n), dtype=complex)


def dense_hamiltonian(n: int, s: float) -> np.ndarray:
    """Explicit N x N matrix, for testing only (memory grows as N**2)."""
    n = check_size(n)
    s = check_fraction(s)
    if n > 4096:
        raise ValueError("dense construction is limited to n <= 4096")
    psi0 = np.full(n, 1.0 / math.sqrt(n))
    h0 = np.eye(n)
    h0[0, 0] = 0.0
    hq = np.eye(n) - np.outer(psi0, psi0)
    return s * h0 + (1.0 - s) * hq
