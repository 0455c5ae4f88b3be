"""numba-compiled hot kernels (default backend)."""

import math

import numpy as np
from numba import njit, prange

NAME = "numba"

FRESNEL_SWITCH = 1.6
_EPS = 1e-16
_MAXIT = 2000
_FPMIN = 1e-300


@njit(cache=True, nogil=True)
def _fresnel_scalar(v):
    x = abs(v)
    if x <= FRESNEL_SWITCH:
        t = 0.5 * math.pi * x * x
        c_sum = 0.0
        s_sum = 0.0
        term = 1.0
        n = 0
        while True:
            sign = -1.0 if (n // 2) % 2 else 1.0
            contrib = sign * term / (2 * n + 1)
            if n % 2 == 0:
                c_sum += contrib
            else:
                s_sum += contrib
            n += 1
            term = term * t / n
            if n > 4 and term <= _EPS * max(abs(c_sum), 1e-300):
                break
        c = x * c_sum
        s = x * s_sum
    else:
        pix2 = math.pi * x * x
        b = complex(1.0, -pix2)
        cc = complex(1.0 / _FPMIN, 0.0)
        d = 1.0 / b
        h = d
        n = -1
        for _ in range(_MAXIT):
            n += 2
            a = -n * (n + 1.0)
            b += 4.0
            d = 1.0 / (a * d + b)
            cc = b + a / cc
            delta = cc * d
            h *= delta
            if abs(delta - 1.0) < _EPS:
                break
        h *= complex(x, -x)
        cs = complex(0.5, 0.5) * (
            1.0 - complex(math.cos(0.5 * pix2), math.sin(0.5 * pix2)) * h
        )
        c = cs.real
        s = cs.imag
    if v < 0.0:
        return -c, -s
    return c, s


@njit(cache=True, parallel=True)
def _fresnel_flat(x):
    c = np.empty_like(x)
    s = np.empty_like(x)
    for i in prange(x.shape[0]):
        c[i], s[i] = _fresnel_scalar(x[i])
    return c, s


def fresnel_cs(v):
    """Return ``(C(v), S(v))`` for a float64 array ``v``."""
    v = np.asarray(v, dtype=np.float64)
    c, s = _fresnel_flat(np.ascontiguousarray(v.ravel()))
    return c.reshape(v.shape), s.reshape(v.shape)


@njit(cache=True, parallel=True)
def _phase_matrix(pos, cos_theta, inv_d, wavenumber, exact):
    n = pos.shape[0]
    q = cos_theta.shape[0]
    out = np.empty((n, q), dtype=np.complex128)
    # Row-major output: walk each antenna's row contiguously.
    for i in prange(n):
        y = pos[i]
        for j in range(q):
            c = cos_theta[j]
            if exact:
                d = 1.0 / inv_d[j]
                phase = -wavenumber * (math.sqrt(d * d + y * y - 2.0 * d * y * c) - d)
            else:
                phase = wavenumber * (y * c - 0.5 * y * y * (1.0 - c * c) * inv_d[j])
            out[i, j] = complex(math.cos(phase), math.sin(phase))
    return out


def phase_matrix(pos, cos_theta, inv_d, wavenumber, exact):
    return _phase_matrix(
        np.ascontiguousarray(pos, dtype=np.float64),
        np.ascontiguousarray(cos_theta, dtype=np.float64),
        np.ascontiguousarray(inv_d, dtype=np.float64),
        float(wavenumber),
        bool(exact),
    )


@njit(cache=True, parallel=True)
def _dft_gains(pos, b, beam_dirs, wavenumber):
    n = pos.shape[0]
    m = beam_dirs.shape[0]
    out = np.empty(m, dtype=np.float64)
    for k in prange(m):
        acc = 0.0 + 0.0j
        for i in range(n):
            phase = -wavenumber * pos[i] * beam_dirs[k]
            acc += complex(math.cos(phase), math.sin(phase)) * b[i]
        out[k] = (acc.real * acc.real + acc.imag * acc.imag) / (n * n)
    return out


def dft_gains(pos, b, beam_dirs, wavenumber):
    return _dft_gains(
        np.ascontiguousarray(pos, dtype=np.float64),
        np.ascontiguousarray(b, dtype=np.complex128),
        np.ascontiguousarray(beam_dirs, dtype=np.float64),
        float(wavenumber),
    )
