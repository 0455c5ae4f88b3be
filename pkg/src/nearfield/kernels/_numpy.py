"""Pure-numpy implementations of the hot kernels.

Same algorithms as ``_numba``; used when numba is unavailable or disabled
with ``NEARFIELD_DISABLE_NUMBA=1``.
"""

import numpy as np

NAME = "numpy"

# Switch point between the power series and the continued fraction.
FRESNEL_SWITCH = 1.6
_EPS = 1e-16
_MAXIT = 2000
_FPMIN = 1e-300


def _fresnel_series(x):
    t = 0.5 * np.pi * x * x
    c_sum = np.zeros_like(x)
    s_sum = np.zeros_like(x)
    term = np.ones_like(x)  # t**n / n!
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
        if n > 4 and np.all(term <= _EPS * np.maximum(np.abs(c_sum), 1e-300)):
            break
    return x * c_sum, x * s_sum


def _fresnel_cf(x):
    # Modified Lentz evaluation of the erfc continued fraction.
    pix2 = np.pi * x * x
    b = 1.0 - 1j * pix2
    cc = np.full(x.shape, 1.0 / _FPMIN, dtype=np.complex128)
    d = 1.0 / b
    h = d.copy()
    n = -1
    active = np.ones(x.shape, dtype=bool)
    for _ in range(_MAXIT):
        n += 2
        a = -n * (n + 1.0)
        b = b + 4.0
        d_new = 1.0 / (a * d + b)
        cc_new = b + a / cc
        delta = cc_new * d_new
        d = np.where(active, d_new, d)
        cc = np.where(active, cc_new, cc)
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) >= _EPS
        if not active.any():
            break
    h = h * (x - 1j * x)
    cs = (0.5 + 0.5j) * (1.0 - (np.cos(0.5 * pix2) + 1j * np.sin(0.5 * pix2)) * h)
    return cs.real, cs.imag


def fresnel_cs(v):
    """Return ``(C(v), S(v))`` for a float64 array ``v``."""
    v = np.asarray(v, dtype=np.float64)
    x = np.abs(v).ravel()
    c = np.empty_like(x)
    s = np.empty_like(x)
    small = x <= FRESNEL_SWITCH
    if small.any():
        c[small], s[small] = _fresnel_series(x[small])
    if (~small).any():
        c[~small], s[~small] = _fresnel_cf(x[~small])
    sgn = np.sign(v.ravel())
    return (sgn * c).reshape(v.shape), (sgn * s).reshape(v.shape)


def phase_matrix(pos, cos_theta, inv_d, wavenumber, exact):
    """Unit-modulus response vectors, one column per ``(cos_theta, inv_d)`` node.

    Expansion model: ``exp(j k (y cos - y**2 (1 - cos**2) inv_d / 2))``;
    exact model: ``exp(-j k (d_n - d))``.
    """
    y = pos[:, None]
    c = cos_theta[None, :]
    if exact:
        d = 1.0 / inv_d[None, :]
        dn = np.sqrt(d * d + y * y - 2.0 * d * y * c)
        phase = -wavenumber * (dn - d)
    else:
        phase = wavenumber * (y * c - 0.5 * y * y * (1.0 - c * c) * inv_d[None, :])
    return np.exp(1j * phase)


def dft_gains(pos, b, beam_dirs, wavenumber):
    """``|a(beam)^H b|**2 / N**2`` for every beam direction."""
    n = pos.shape[0]
    steer = np.exp(-1j * wavenumber * np.outer(beam_dirs, pos))
    return np.abs(steer @ b) ** 2 / (n * n)
