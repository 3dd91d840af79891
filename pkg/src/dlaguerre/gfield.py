"""Logarithmic transform of the equilibrium measure.

``g(z) = int_0^b log(z - s) rho(s) ds`` with the principal logarithm, its
boundary values on the real axis, the Lagrange constant ``l`` and the band
phase ``Phi(x) = int_x^b rho``.

The saturated part ``int_0^a log(z - s) ds / (2 sqrt s)`` is elementary;
with ``r = sqrt z`` and ``A = sqrt a`` it equals
``(r + A) log(r + A) - (r - A) log(r - A) - 2A``.  The band part is
integrated in ``theta`` with ``s = a + (b - a) sin(theta)**2``, which makes
``rho(s) ds`` smooth, on a rule graded toward the logarithmic singularity.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .equilibrium import RegimeError, SupportData, _band_density
from .quadrature import EndpointSpec, graded_rule, integrate

__all__ = [
    "GContext",
    "build_context",
    "g_value",
    "g_boundary",
    "g_boundary_limit",
    "log_potential",
    "lagrange_constant",
    "variational_gap",
    "band_phase",
    "xi",
]

_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class GContext:
    support: SupportData
    l: float | None
    # Gauss rule in theta for smooth band integrands
    _theta: np.ndarray = field(repr=False, compare=False, default=None)
    _weight: np.ndarray = field(repr=False, compare=False, default=None)


def _band_measure(theta, s):
    """``rho(s(theta)) ds/dtheta`` on the band; smooth in theta."""
    a, b = s.a, s.b
    if s.supercritical:
        d = (b - a) * np.sin(theta) ** 2
        return _band_density(a + d, a, b, d) * (b - a) * np.sin(2 * theta)
    # Marchenko-Pastur density with s = b sin^2: rho ds = (c b / pi) cos^2
    return s.c * b / math.pi * np.cos(theta) ** 2


def _theta_of(x, s):
    t = (x - s.a) / (s.b - s.a)
    return math.asin(math.sqrt(min(max(t, 0.0), 1.0)))


def build_context(s):
    """GContext for a solved support; computes ``l`` when supercritical."""
    ctx = GContext(s, None)
    if s.supercritical:
        ctx = GContext(s, lagrange_constant(ctx))
    return ctx


def _saturated_part(z, A, side=0):
    """Elementary ``int_0^{A^2} log(z - s) ds/(2 sqrt s)`` (boundary value on cuts)."""
    if A == 0.0:
        return 0.0j
    z = complex(z)
    if side and z.imag == 0.0:
        z = complex(z.real, side * 0.0)
    r = np.sqrt(z)  # principal; sign of the zero imaginary part selects the side
    if side and z.real < 0:
        r = complex(0.0, side * math.sqrt(-z.real))

    def xlogx(w):
        if w == 0:
            return 0.0j
        if side and w.imag == 0.0:
            w = complex(w.real, side * 0.0)
        return w * np.log(w)

    return xlogx(r + A) - xlogx(r - A) - 2 * A


def _band_part(z, s, m=16):
    a, b = s.a, s.b
    focus = _theta_of(z.real, s)
    th, w = graded_rule(0.0, _HALF_PI, focus, m=m)
    return np.dot(w * _band_measure(th, s), np.log((z - a) - (b - a) * np.sin(th) ** 2))


def _band_log_abs(x, s, m=16):
    a, b = s.a, s.b
    focus = _theta_of(x, s)
    th, w, off = graded_rule(0.0, _HALF_PI, focus, m=m, offsets=True)
    if a <= x <= b:
        # x - s(theta) without cancellation next to the singular node
        diff = -(b - a) * np.sin(off) * np.sin(2 * focus + off)
    else:
        diff = (x - a) - (b - a) * np.sin(th) ** 2
    return float(np.dot(w * _band_measure(th, s), np.log(np.abs(diff))))


def g_value(z, ctx):
    """``g(z)`` for ``z`` off ``(-inf, b]``.

    Raises
    ------
    ValueError
        For real ``z <= b``; use :func:`g_boundary` there.
    """
    z = complex(z)
    s = ctx.support
    if z.imag == 0.0 and z.real <= s.b:
        raise ValueError(f"z={z} lies on the cut (-inf, b]; use g_boundary")
    return complex(_saturated_part(z, math.sqrt(s.a)) + _band_part(z, s))


def log_potential(x, ctx):
    """``int_0^b log|x - s| rho(s) ds`` for real ``x`` (the real part of g on the axis)."""
    s = ctx.support
    x = float(x)
    A = math.sqrt(s.a)
    if A > 0.0:
        if x > 0:
            r = math.sqrt(x)
            sat = (r + A) * math.log(r + A) - 2 * A
            if r != A:
                sat -= (r - A) * math.log(abs(r - A))
        else:
            # r = i t: Re[(it+A)log(it+A) - (it-A)log(it-A)]
            t = math.sqrt(-x)
            sat = 2 * A * math.log(math.hypot(t, A)) + 2 * t * math.atan2(A, t) - 2 * A
    else:
        sat = 0.0
    return sat + _band_log_abs(x, s)


def band_phase(x, ctx):
    """``Phi(x) = int_x^b rho(s) ds``: 1 for ``x <= 0``, ``1 - sqrt x`` on the
    saturated region, 0 for ``x >= b``."""
    s = ctx.support
    x = float(x)
    if x <= 0.0:
        return 1.0
    if x >= s.b:
        return 0.0
    if x <= s.a:
        return 1.0 - math.sqrt(x)
    t0 = _theta_of(x, s)
    if t0 >= _HALF_PI:
        return 0.0
    return integrate(lambda th: _band_measure(th, s), t0, _HALF_PI, tol=1e-14).value


def _check_side(side):
    if side in ("plus", "+", 1, +1):
        return 1
    if side in ("minus", "-", -1):
        return -1
    raise ValueError(f"side must be plus/minus or +1/-1, got {side!r}")


def g_boundary(x, side, ctx):
    """Boundary value ``g_+(x)`` (``side=+1``) or ``g_-(x)`` on the real axis.

    Equals ``log_potential(x) +- i pi Phi(x)``, the exact limit of the
    principal-branch integral.
    """
    sg = _check_side(side)
    s = ctx.support
    x = float(x)
    if x in (0.0, s.a, s.b):
        raise ValueError(f"boundary value undefined at the endpoint x={x}")
    return complex(log_potential(x, ctx), sg * math.pi * band_phase(x, ctx))


def g_boundary_limit(x, side, ctx, eps=1e-8, levels=4):
    """Boundary value as a Richardson-extrapolated limit of ``g(x + i side eps)``.

    Independent of :func:`g_boundary`; used to validate it.  Near an
    endpoint the limit carries ``eps log eps`` terms and is less accurate.
    """
    sg = _check_side(side)
    h = eps * (1 + abs(x))
    T = [[g_value(complex(x, sg * h / 2**k), ctx)] for k in range(levels)]
    for k in range(1, levels):
        for j in range(1, k + 1):
            T[k].append(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / (2**j - 1))
    return complex(T[-1][-1])


def lagrange_constant(ctx):
    """``l = 2 int_0^b log|a - s| rho(s) ds - c a``."""
    s = ctx.support
    if not s.supercritical:
        raise RegimeError("the Lagrange constant is defined for c > pi^2/4")
    return 2 * log_potential(s.a, ctx) - s.c * s.a


def variational_gap(x, ctx):
    """``2 int log|x - y| rho(y) dy - c x - l``: positive on (0, a), zero on
    the band, negative beyond b."""
    s = ctx.support
    if ctx.l is None:
        raise RegimeError("the variational gap needs the supercritical regime")
    x = float(x)
    if not x > 0 or x in (s.a, s.b):
        raise ValueError("x must be positive and differ from a, b")
    return 2 * log_potential(x, ctx) - s.c * x - ctx.l


def xi(z, ctx, side=0):
    """``2 g(z) - c z - l``; real ``z <= b`` needs ``side`` = +-1."""
    z = complex(z)
    s = ctx.support
    if z.imag == 0.0 and z.real <= s.b:
        if side == 0:
            raise ValueError("z on the cut: pass side=+1 or -1")
        g = g_boundary(z.real, side, ctx)
    else:
        g = g_value(z, ctx)
    return 2 * g - s.c * z - ctx.l
