"""Airy functions of complex argument.

Values come from :func:`scipy.special.airy` (AMOS); this module adds the
working-range check and the scaled form used when ``|z|`` is large.
"""
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = ["AiryValues", "airy", "MAX_ABS_ARG"]

MAX_ABS_ARG = 1e4


@dataclass(frozen=True)
class AiryValues:
    ai: complex
    ai_prime: complex
    bi: complex
    bi_prime: complex

    def wronskian(self):
        """``Ai Bi' - Ai' Bi``; equals ``1/pi`` identically."""
        return self.ai * self.bi_prime - self.ai_prime * self.bi


def airy(z, scaled=False):
    """Ai, Ai', Bi, Bi' at complex ``z``.

    Parameters
    ----------
    z : complex
        ``|z| <= 1e4``.
    scaled : bool
        If true, return ``Ai * exp(zeta)`` and ``Bi * exp(-|Re zeta|)`` with
        ``zeta = (2/3) z**1.5``, as :func:`scipy.special.airye` does.

    Raises
    ------
    ValueError
        Outside the working range or for non-finite input.
    """
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError("non-finite Airy argument")
    if abs(z) > MAX_ABS_ARG:
        raise ValueError(f"|z|={abs(z):.3g} exceeds the Airy working range {MAX_ABS_ARG:g}")
    f = special.airye if scaled else special.airy
    if z.imag == 0.0:
        vals = [complex(v) for v in f(z.real)]
    else:
        vals = [complex(v) for v in f(z)]
    return AiryValues(*vals)
