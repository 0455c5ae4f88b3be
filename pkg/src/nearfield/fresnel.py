"""Fresnel integrals ``C(v) = int_0^v cos(pi t^2 / 2) dt`` and ``S(v)`` (sine kernel).

Power series for ``|v| <= 1.6``, a Lentz continued fraction beyond. Both are
odd in ``v`` by construction.
"""

import numpy as np

from . import kernels


def fresnel(v):
    """Return ``(C(v), S(v))``; scalars in, scalars out."""
    arr = np.asarray(v, dtype=np.float64)
    c, s = kernels.fresnel_cs(np.atleast_1d(arr))
    if arr.ndim == 0:
        return float(c[0]), float(s[0])
    return c.reshape(arr.shape), s.reshape(arr.shape)


def fresnel_c(v):
    return fresnel(v)[0]


def fresnel_s(v):
    return fresnel(v)[1]
