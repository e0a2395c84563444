# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 kernels for the Grover annealing dynamics.

Both kernels march over a precomputed step sequence: step ``k`` has width
``h[k]`` and uses the annealing parameter at its start, midpoint and end,
stored in ``s_grid[2k]``, ``s_grid[2k+1]`` and ``s_grid[2k+2]``.

Real time integrates ``-i (H - 1/2) psi``; the shift is a global phase that
halves the spectral radius and so the RK4 norm drift.  Imaginary time
integrates ``-H psi`` and renormalizes after every step, accumulating the
log of the shed norm.
"""
from libc.math cimport sqrt, log

cdef extern from "complex.h" nogil:
    double creal(double complex)
    double cimag(double complex)


cdef inline double abs2(double complex z) noexcept nogil:
    return creal(z) * creal(z) + cimag(z) * cimag(z)


def rk4_effective(long n, const double[::1] s_grid, const double[::1] h, bint imaginary,
                  double complex a_opt, double complex a_rest, double log_norm,
                  const long[::1] record_at, double[::1] p_out, double[::1] ln_out):
    cdef Py_ssize_t k, m = h.shape[0], r = 0, nrec = record_at.shape[0]
    cdef double invn = 1.0 / n
    cdef double off = sqrt(<double>(n - 1)) / n
    cdef double shift = 0.0 if imaginary else 0.5
    cdef double complex gen = -1.0 if imaginary else -1j
    cdef double dt, s, nrm, w
    cdef double h00a, h01a, h11a, h00m, h01m, h11m, h00b, h01b, h11b
    cdef double complex k10, k11, k20, k21, k30, k31, k40, k41, x0, x1

    with nogil:
        for k in range(m):
            dt = h[k]
            s = s_grid[2 * k]
            h00a = (1.0 - s) * (1.0 - invn) - shift
            h01a = -(1.0 - s) * off
            h11a = s + (1.0 - s) * invn - shift
            s = s_grid[2 * k + 1]
            h00m = (1.0 - s) * (1.0 - invn) - shift
            h01m = -(1.0 - s) * off
            h11m = s + (1.0 - s) * invn - shift
            s = s_grid[2 * k + 2]
            h00b = (1.0 - s) * (1.0 - invn) - shift
            h01b = -(1.0 - s) * off
            h11b = s + (1.0 - s) * invn - shift

            k10 = gen * (h00a * a_opt + h01a * a_rest)
            k11 = gen * (h01a * a_opt + h11a * a_rest)
            x0 = a_opt + 0.5 * dt * k10
            x1 = a_rest + 0.5 * dt * k11
            k20 = gen * (h00m * x0 + h01m * x1)
            k21 = gen * (h01m * x0 + h11m * x1)
            x0 = a_opt + 0.5 * dt * k20
            x1 = a_rest + 0.5 * dt * k21
            k30 = gen * (h00m * x0 + h01m * x1)
            k31 = gen * (h01m * x0 + h11m * x1)
            x0 = a_opt + dt * k30
            x1 = a_rest + dt * k31
            k40 = gen * (h00b * x0 + h01b * x1)
            k41 = gen * (h01b * x0 + h11b * x1)
            w = dt / 6.0
            a_opt = a_opt + w * (k10 + 2.0 * k20 + 2.0 * k30 + k40)
            a_rest = a_rest + w * (k11 + 2.0 * k21 + 2.0 * k31 + k41)

            nrm = abs2(a_opt) + abs2(a_rest)
            if imaginary:
                nrm = sqrt(nrm)
                a_opt = a_opt / nrm
                a_rest = a_rest / nrm
                log_norm += log(nrm)
                nrm = 1.0
            if r < nrec and record_at[r] == k:
                p_out[r] = abs2(a_opt) / nrm
                ln_out[r] = log_norm
                r += 1
    return a_opt, a_rest, log_norm


cdef inline void apply_h(double complex[::1] v, double complex[::1] out, double s,
                         double shift, double complex gen, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    cdef double complex total = 0.0
    for i in range(n):
        total = total + v[i]
    total = total * ((1.0 - s) / n)
    for i in range(n):
        out[i] = gen * ((1.0 - shift) * v[i] - total)
    out[0] = out[0] - gen * s * v[0]


def rk4_full(long n, const double[::1] s_grid, const double[::1] h, bint imaginary,
             double complex[::1] psi):
    cdef Py_ssize_t k, i, m = h.shape[0]
    cdef double shift = 0.0 if imaginary else 0.5
    cdef double complex gen = -1.0 if imaginary else -1j
    cdef double dt, nrm, log_norm = 0.0
    cdef double complex[::1] k1 = psi.copy()
    cdef double complex[::1] k2 = psi.copy()
    cdef double complex[::1] k3 = psi.copy()
    cdef double complex[::1] k4 = psi.copy()
    cdef double complex[::1] x = psi.copy()

    with nogil:
        for k in range(m):
            dt = h[k]
            apply_h(psi, k1, s_grid[2 * k], shift, gen, n)
            for i in range(n):
                x[i] = psi[i] + 0.5 * dt * k1[i]
            apply_h(x, k2, s_grid[2 * k + 1], shift, gen, n)
            for i in range(n):
                x[i] = psi[i] + 0.5 * dt * k2[i]
            apply_h(x, k3, s_grid[2 * k + 1], shift, gen, n)
            for i in range(n):
                x[i] = psi[i] + dt * k3[i]
            apply_h(x, k4, s_grid[2 * k + 2], shift, gen, n)
            for i in range(n):
                psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if imaginary:
                nrm = 0.0
                for i in range(n):
                    nrm += abs2(psi[i])
                nrm = sqrt(nrm)
                for i in range(n):
                    psi[i] = psi[i] / nrm
                log_norm += log(nrm)
    return log_norm
