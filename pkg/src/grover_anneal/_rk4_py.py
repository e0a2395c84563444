"""Pure-Python twin of the compiled RK4 kernels (same signatures).

Used when the extension is not built.  The 2x2 kernel is a scalar loop; the
full-space kernel is vectorized with numpy.
"""
import math

import numpy as np


def rk4_effective(n, s_grid, h, imaginary, a_opt, a_rest, log_norm, record_at, p_out, ln_out):
    invn = 1.0 / n
    off = math.sqrt(n - 1) / n
    shift = 0.0 if imaginary else 0.5
    gen = -1.0 if imaginary else -1j
    s_grid = s_grid.tolist()
    h = h.tolist()
    record_at = record_at.tolist()
    nrec = len(record_at)
    r = 0
    a0, a1 = complex(a_opt), complex(a_rest)

    def coeffs(s):
        return (
            (1.0 - s) * (1.0 - invn) - shift,
            -(1.0 - s) * off,
            s + (1.0 - s) * invn - shift,
        )

    for k, dt in enumerate(h):
        p00, p01, p11 = coeffs(s_grid[2 * k])
        m00, m01, m11 = coeffs(s_grid[2 * k + 1])
        q00, q01, q11 = coeffs(s_grid[2 * k + 2])
        k10 = gen * (p00 * a0 + p01 * a1)
        k11 = gen * (p01 * a0 + p11 * a1)
        x0, x1 = a0 + 0.5 * dt * k10, a1 + 0.5 * dt * k11
        k20 = gen * (m00 * x0 + m01 * x1)
        k21 = gen * (m01 * x0 + m11 * x1)
        x0, x1 = a0 + 0.5 * dt * k20, a1 + 0.5 * dt * k21
        k30 = gen * (m00 * x0 + m01 * x1)
        k31 = gen * (m01 * x0 + m11 * x1)
        x0, x1 = a0 + dt * k30, a1 + dt * k31
        k40 = gen * (q00 * x0 + q01 * x1)
        k41 = gen * (q01 * x0 + q11 * x1)
        w = dt / 6.0
        a0 = a0 + w * (k10 + 2.0 * k20 + 2.0 * k30 + k40)
        a1 = a1 + w * (k11 + 2.0 * k21 + 2.0 * k31 + k41)

        nrm = a0.real * a0.real + a0.imag * a0.imag + a1.real * a1.real + a1.imag * a1.imag
        if imaginary:
            nrm = math.sqrt(nrm)
            a0, a1 = a0 / nrm, a1 / nrm
            log_norm += math.log(nrm)
            nrm = 1.0
        if r < nrec and record_at[r] == k:
            p_out[r] = (a0.real * a0.real + a0.imag * a0.imag) / nrm
            ln_out[r] = log_norm
            r += 1
    return a0, a1, log_norm


def _apply(v, s, shift, gen, n):
    out = gen * ((1.0 - shift) * v - (1.0 - s) * (v.sum() / n))
    out[0] -= gen * s * v[0]
    return out


def rk4_full(n, s_grid, h, imaginary, psi):
    shift = 0.0 if imaginary else 0.5
    gen = -1.0 if imaginary else -1j
    log_norm = 0.0
    for k, dt in enumerate(h.tolist()):
        sa, sm, sb = s_grid[2 * k], s_grid[2 * k + 1], s_grid[2 * k + 2]
        k1 = _apply(psi, sa, shift, gen, n)
        k2 = _apply(psi + 0.5 * dt * k1, sm, shift, gen, n)
        k3 = _apply(psi + 0.5 * dt * k2, sm, shift, gen, n)
        k4 = _apply(psi + dt * k3, sb, shift, gen, n)
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if imaginary:
            nrm = float(np.sqrt(np.vdot(psi, psi).real))
            psi /= nrm
            log_norm += math.log(nrm)
    return log_norm
