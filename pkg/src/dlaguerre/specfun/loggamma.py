"""Complex log-Gamma and the Stirling remainder.

``log_gamma`` is the principal branch from :func:`scipy.special.loggamma`.
``stirling_remainder`` returns
``log Gamma(w) - (w - 1/2) log w + w - log(2 pi)/2`` without forming the
large terms it cancels, which is what the Gamma-type factor near the origin
needs.
"""
import math

import numpy as np
from scipy import special

__all__ = ["log_gamma", "stirling_remainder"]

# B_{2k} / (2k (2k - 1)), k = 1..10
_STIRLING = (
    1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360,
    1 / 156, -3617 / 122400, 43867 / 244188, -174611 / 125400,
)
_SHIFT_TO = 12.0


def _is_pole(z):
    return z.imag == 0.0 and z.real <= 0 and z.real == math.floor(z.real)


def log_gamma(z):
    """Principal-branch ``log Gamma(z)``.

    Raises
    ------
    ValueError
        At the poles ``z = 0, -1, -2, ...``.
    """
    z = complex(z)
    if _is_pole(z):
        raise ValueError(f"Gamma has a pole at z={z.real:g}")
    return complex(special.loggamma(z))


def stirling_remainder(w):
    """``log Gamma(w) - (w - 1/2) log w + w - log(2 pi)/2`` for ``w`` off ``(-inf, 0]``.

    Shifts ``w`` up until ``|w| >= 12`` with the recurrence, then sums ten
    Stirling terms.  Accurate to about 1e-15 absolute once ``|w| >= 12``.
    """
    w = complex(w)
    if w.imag == 0.0 and w.real <= 0:
        raise ValueError("remainder defined off the negative real axis")
    shift = 0.0j
    v = w
    # log Gamma(v) = log Gamma(v + 1) - log v; track the remainder
    while abs(v) < _SHIFT_TO:
        # R(v) = R(v+1) + (v + 1/2) log(1 + 1/v) - 1
        shift += (v + 0.5) * np.log1p(1 / v) - 1.0
        v += 1.0
    inv = 1 / v
    inv2 = inv * inv
    s = 0.0j
    p = inv
    for c in _STIRLING:
        s += c * p
        p *= inv2
    return complex(s + shift)
