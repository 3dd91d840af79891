"""Scalar ingredients of the local and global approximations.

Szego function ``D``, the map ``gamma``, the pair ``(N1, N2)``, the
Gamma-type factors ``H`` and ``H*`` near the origin, the conformal maps
``f`` (at ``b``) and ``f~`` (at ``a``), and the Airy combinations
``eta1``, ``eta2``.

``f`` and ``f~`` are analytic at their edge.  Writing
``xi = 2 g - c z - l`` one has ``f**3 = (9/16) xi**2`` near ``b`` and
``f~**3 = (3 pi/2)**2 (sqrt z - 1 + s xi / (2 pi i))**2`` near ``a``, where
``s = sign(Im z)``.  Both right-hand sides are single-valued and vanish to
third order at the edge.  The quotient by ``(z - edge)**3`` is sampled on
a circle, expanded in a Taylor series, and the cube root taken of that
non-vanishing analytic function.  This gives the maps on and off the real
axis, including at the edge itself.
"""
from dataclasses import dataclass, field
import cmath
import math

import numpy as np

from ..gfield import GContext, xi
from .airy import airy
from .branches import cpow, csqrt, side_of, zhalf
from .loggamma import stirling_remainder

__all__ = [
    "ParametrixContext",
    "build_parametrix",
    "working_radius",
    "szego_D",
    "gamma_map",
    "script_N",
    "H",
    "H_star",
    "log_H",
    "conformal_f",
    "conformal_ftilde",
    "eta",
    "OutsideRadiusError",
]

_SAMPLES = 64


class OutsideRadiusError(ValueError):
    pass


@dataclass(frozen=True)
class _EdgeSeries:
    center: float
    radius: float
    coeffs: np.ndarray = field(repr=False)

    def __call__(self, z):
        d = complex(z) - self.center
        if abs(d) > self.radius * (1 + 1e-12):
            raise OutsideRadiusError(
                f"|z - {self.center:.6g}| = {abs(d):.3g} exceeds the working radius "
                f"{self.radius:.3g}")
        return complex(np.polyval(self.coeffs[::-1], d))


@dataclass(frozen=True)
class ParametrixContext:
    support: object
    alpha: float
    D_infinity: float
    gctx: GContext = field(repr=False)
    _qb: _EdgeSeries = field(repr=False, default=None)
    _qa: _EdgeSeries = field(repr=False, default=None)

    @property
    def radius_b(self):
        return self._qb.radius

    @property
    def radius_a(self):
        return self._qa.radius


def working_radius(s, edge):
    """``min(0.2 (b - a), distance to the nearest other endpoint) / 2``."""
    if edge == "b":
        other = s.b - s.a
    elif edge == "a":
        other = min(s.a, s.b - s.a)
    else:
        raise ValueError("edge must be 'a' or 'b'")
    return 0.5 * min(0.2 * (s.b - s.a), other)


def _taylor_from_circle(fun, center, radius):
    # coefficients of an analytic function from samples on |z - center| = radius;
    # half-step angles keep every sample off the real axis
    phi = 2 * math.pi * (np.arange(_SAMPLES) + 0.5) / _SAMPLES
    pts = center + radius * np.exp(1j * phi)
    vals = np.array([fun(complex(p)) for p in pts])
    k = np.arange(_SAMPLES)
    coeffs = (np.exp(-1j * np.outer(k, phi)) @ vals) / _SAMPLES / radius**k
    # the tail is aliasing noise once below machine precision
    return coeffs[: _SAMPLES // 2]


def build_parametrix(gctx, alpha):
    """Parametrix context for a supercritical g-context and weight exponent alpha."""
    s = gctx.support
    if not s.supercritical:
        raise ValueError("the edge maps need the supercritical regime")
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    a, b = s.a, s.b
    Dinf = ((math.sqrt(a) + math.sqrt(b)) / 2) ** (alpha - 0.5)

    def qb(z):
        return (9 / 16) * xi(z, gctx) ** 2 / (z - b) ** 3

    def qa(z):
        sg = 1 if z.imag > 0 else -1
        u = cmath.sqrt(z) - 1 + sg * xi(z, gctx) / (2j * math.pi)
        return (1.5 * math.pi) ** 2 * u * u / (z - a) ** 3

    rb, ra = working_radius(s, "b"), working_radius(s, "a")
    serb = _EdgeSeries(b, rb, _taylor_from_circle(qb, b, 2 * rb))
    sera = _EdgeSeries(a, ra, _taylor_from_circle(qa, a, 2 * ra))
    return ParametrixContext(s, float(alpha), Dinf, gctx, serb, sera)


def szego_D(z, ctx, side=0):
    """Szego function; on the band pass ``side`` for the boundary value."""
    s = ctx.support
    beta = ctx.alpha - 0.5
    if beta == 0.0:
        return 1.0 + 0j
    z = complex(z)
    a, b = s.a, s.b
    ra, rb = math.sqrt(a), math.sqrt(b)
    if z == 0:
        ratio = 2 * math.sqrt(a * b) / (ra + rb)
        return complex(ratio**beta)
    if z.imag == 0.0 and a <= z.real <= b and not side:
        raise ValueError("z on [a, b]: pass side=+1 or -1")
    R = csqrt(z - a, side) * csqrt(z - b, side)
    ratio = (ra + rb) * z / (z + math.sqrt(a * b) + R)
    return cpow(ratio, beta)


def gamma_map(z, ctx, side=0):
    """``z**(1/2) / ((z - a)**(1/4) (z - b)**(1/4))`` with principal roots."""
    s = ctx.support
    z = complex(z)
    if z.imag == 0.0 and 0 <= z.real <= s.b and not side:
        raise ValueError("z on [0, b]: pass side=+1 or -1")
    return csqrt(z, side) / (cpow(z - s.a, 0.25, side) * cpow(z - s.b, 0.25, side))


def script_N(z, ctx, side=0):
    """``(N1, N2)`` with ``N1 = (Dinf/D)(gamma + 1/gamma)/2`` and
    ``N2 = Dinf D (gamma - 1/gamma)/(-2i)``."""
    gm = gamma_map(z, ctx, side)
    D = szego_D(z, ctx, side)
    N1 = ctx.D_infinity / D * (gm + 1 / gm) / 2
    N2 = ctx.D_infinity * D * (gm - 1 / gm) / (-2j)
    return N1, N2


def log_H(z, n):
    """``log H(z)`` where ``H = e^w Gamma(w) / (sqrt(2 pi) w**(w - 1/2))``,
    ``w = n z**(1/2)`` and ``arg z`` in ``(-pi/2, 3pi/2)``."""
    z = complex(z)
    if z.real == 0.0 and z.imag <= 0.0:
        raise ValueError("H is cut along (-i inf, 0]")
    return stirling_remainder(n * zhalf(z))


def H(z, n):
    return cmath.exp(log_H(z, n))


def H_star(z, n):
    """``H(z) (1 - exp(+-2 i n pi sqrt z))`` with the sign given by the half-plane."""
    z = complex(z)
    if z.imag == 0.0 and z.real >= 0.0:
        raise ValueError("H* is cut along [0, inf)")
    sg = side_of(z, 1)  # both choices agree on the negative axis
    return H(z, n) * (1 - cmath.exp(sg * 2j * n * math.pi * cmath.sqrt(z)))


def conformal_f(z, ctx):
    """Map at ``b``: ``f(b) = 0``, ``f'(b) = (C2 pi)**(2/3)``, real on the axis."""
    z = complex(z)
    q = ctx._qb(z)
    return (z - ctx.support.b) * cpow(q, 1 / 3)


def conformal_ftilde(z, ctx):
    """Map at ``a``: ``f~(a) = 0``, ``f~'(a) = (C1 pi)**(2/3)``, real on the axis."""
    z = complex(z)
    q = ctx._qa(z)
    return (z - ctx.support.a) * cpow(q, 1 / 3)


def eta(z, n, ctx):
    """``eta1 = cos(n pi sqrt z) Ai(-n^(2/3) f~) - sin(n pi sqrt z) Bi(-n^(2/3) f~)``
    and ``eta2``, the same with derivatives."""
    z = complex(z)
    t = n * math.pi * cmath.sqrt(z)
    v = airy(-(n ** (2 / 3)) * conformal_ftilde(z, ctx))
    c, sn = cmath.cos(t), cmath.sin(t)
    return c * v.ai - sn * v.bi, c * v.ai_prime - sn * v.bi_prime
