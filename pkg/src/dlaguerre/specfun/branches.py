"""Branch bookkeeping for the multivalued factors.

Every root or logarithm of a quantity that can sit on its cut takes a
``side`` argument: ``+1`` for the boundary value from the upper half-plane,
``-1`` from the lower one, ``0`` when the argument is known to be off the cut.
"""
import cmath
import math

__all__ = ["on_side", "csqrt", "cpow", "clog", "zhalf", "side_of"]


def side_of(z, side=0):
    """Half-plane of ``z``: the sign of ``Im z``, or ``side`` on the real axis."""
    z = complex(z)
    if z.imag > 0:
        return 1
    if z.imag < 0:
        return -1
    return side


def on_side(w, side):
    # signed zero imaginary part; cmath honours it on the negative axis
    w = complex(w)
    if w.imag == 0.0 and side:
        return complex(w.real, math.copysign(0.0, side))
    return w


def clog(w, side=0):
    """Principal log; on the negative axis the argument is ``side * pi``."""
    w = on_side(w, side)
    if w.imag == 0.0 and w.real < 0 and not side:
        raise ValueError("log on its cut needs a side")
    return cmath.log(w)


def csqrt(w, side=0):
    return cmath.exp(0.5 * clog(w, side)) if w != 0 else 0j


def cpow(w, p, side=0):
    """Principal ``w**p`` with the cut on the negative axis."""
    if w == 0:
        if p > 0:
            return 0j
        raise ZeroDivisionError("0 to a non-positive power")
    return cmath.exp(p * clog(w, side))


def zhalf(z):
    """``z**(1/2)`` with ``arg z`` taken in ``(-pi/2, 3pi/2)``."""
    z = complex(z)
    if z == 0:
        return 0j
    th = math.atan2(z.imag, z.real)
    if th <= -0.5 * math.pi:
        th += 2 * math.pi
    return cmath.rect(math.sqrt(abs(z)), 0.5 * th)
