"""Leading-order large-``n`` formulas for ``P_n`` (with ``N = n``), ``h_n``,
``A2_n`` and ``B_n`` in the supercritical regime ``c > pi**2/4``.

Each evaluator returns a :class:`~dlaguerre.oracle.ScaledValue` so that the
exponentially large or small factors ``e^{n g}``, ``e^{n l}`` never leave
log space.  Real inputs give real outputs (a sign, not a phase).
"""
from dataclasses import dataclass, field
import cmath
import math

from .equilibrium import RegimeError, SupportData, support_for
from .gfield import GContext, band_phase, build_context, g_boundary, g_value, log_potential
from .oracle import ScaledValue
from .specfun import (
    H,
    H_star,
    airy,
    build_parametrix,
    conformal_f,
    conformal_ftilde,
    cpow,
    eta,
    script_N,
)
from .specfun.branches import clog

__all__ = [
    "REGIMES",
    "Regime",
    "AsymContext",
    "AsymCoefficients",
    "build_asymptotics",
    "coefficients",
    "asym_norm_and_recurrence",
    "classify",
    "pn_void",
    "pn_band",
    "pn_saturated",
    "pn_origin",
    "pn_edge_a",
    "pn_edge_b",
    "pn_asym",
    "band_cosine_argument",
]

REGIMES = ("void", "band", "saturated", "origin", "edge_a", "edge_b")
_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class Regime:
    tag: str
    delta: float

    def __post_init__(self):
        if self.tag not in REGIMES:
            raise ValueError(f"unknown regime {self.tag!r}")


@dataclass(frozen=True)
class AsymCoefficients:
    a: float
    b: float
    l: float
    D_infinity: float
    alpha: float
    A2_limit: float
    B_limit: float

    def log_h(self, n):
        """log of ``n pi e^{n l} (a + b)/4 ((sqrt a + sqrt b)/2)**(2 alpha - 1)``."""
        return (math.log(n * math.pi * (self.a + self.b) / 4) + n * self.l
                + 2 * math.log(self.D_infinity))


@dataclass(frozen=True)
class AsymContext:
    support: SupportData
    alpha: float
    gctx: GContext = field(repr=False)
    pctx: object = field(repr=False)
    delta: float = 0.0

    @property
    def l(self):
        return self.gctx.l


def build_asymptotics(c, alpha=0.0, delta=None, support=None):
    """Solve the equilibrium problem and prepare every evaluator for ``(c, alpha)``.

    Raises
    ------
    RegimeError
        For ``c <= pi**2/4``; the formulas need a saturated region.
    """
    s = support if support is not None else support_for(c)
    if not s.supercritical:
        raise RegimeError(f"c={c} is subcritical; the asymptotic formulas need c > pi^2/4")
    g = build_context(s)
    p = build_parametrix(g, alpha)
    if delta is None:
        delta = 0.1 * min(s.a, s.b - s.a)
    if not 0 < delta < min(s.a, s.b - s.a) / 4:
        raise ValueError("delta must lie in (0, min(a, b - a)/4)")
    return AsymContext(s, float(alpha), g, p, float(delta))


def coefficients(ctx):
    s = ctx.support
    a, b = s.a, s.b
    return AsymCoefficients(a, b, ctx.l, ctx.pctx.D_infinity, ctx.alpha,
                            (a + b) ** 2 / 16, (a * a + b * b) / (2 * (a + b)))


def asym_norm_and_recurrence(n, coeffs):
    """``(h_n, A2_n, B_n)`` leading terms; ``h`` as a ScaledValue."""
    if n < 1:
        raise ValueError("n must be positive")
    h = ScaledValue(coeffs.log_h(n), 1.0, True)
    return h, coeffs.A2_limit, coeffs.B_limit


def classify(z, ctx, delta=None):
    """Region tag for ``z``.

    Disks of radius ``delta`` around ``a`` and ``b`` (boundary included) come
    first, then the open disk around 0, then the strips ``|Im z| <= delta``
    over ``(0, a)`` and ``(a, b)``; everything else is void.
    """
    s = ctx.support
    delta = ctx.delta if delta is None else delta
    if not 0 < delta < min(s.a, s.b - s.a) / 4:
        raise ValueError("delta must lie in (0, min(a, b - a)/4)")
    z = complex(z)
    if abs(z - s.a) <= delta:
        return Regime("edge_a", delta)
    if abs(z - s.b) <= delta:
        return Regime("edge_b", delta)
    if abs(z) < delta:
        return Regime("origin", delta)
    if abs(z.imag) <= delta:
        if 0 < z.real < s.a:
            return Regime("saturated", delta)
        if s.a < z.real < s.b:
            return Regime("band", delta)
    return Regime("void", delta)


def _require(z, ctx, tag, strict):
    if strict:
        got = classify(z, ctx).tag
        if got != tag:
            raise ValueError(f"z={complex(z)} is in the {got} region, not {tag}")


def _is_real(z):
    return isinstance(z, (int, float)) or complex(z).imag == 0.0


def _finish(logv, real):
    return ScaledValue.from_log(logv, real=real)


def pn_void(z, n, ctx, strict=True):
    """``e^{n g(z)} N1(z)``."""
    _require(z, ctx, "void", strict)
    s = ctx.support
    real = _is_real(z)
    z = complex(z)
    if real and 0 <= z.real <= s.b:
        raise ValueError("the void formula is not defined on [0, b]")
    if real and z.real < 0:
        g = g_boundary(z.real, +1, ctx.gctx)
        N1, _ = script_N(z, ctx.pctx, side=+1)
    else:
        g = g_value(z, ctx.gctx)
        N1, _ = script_N(z, ctx.pctx)
    return _finish(n * g + clog(N1), real)


def band_cosine_argument(x, n, ctx):
    """Argument of the cosine in the band formula, with the real phase ``-pi/4``."""
    s = ctx.support
    a, b, al = s.a, s.b, ctx.alpha
    q = math.sqrt((a + b) * x - a * b)
    u1 = min(1.0, (x + math.sqrt(a * b)) / ((math.sqrt(a) + math.sqrt(b)) * math.sqrt(x)))
    u2 = min(1.0, x / q)
    return ((al - 0.5) * math.acos(u1) + math.acos(u2)
            + n * math.pi * band_phase(x, ctx.gctx) - math.pi / 4)


def pn_band(x, n, ctx, strict=True):
    """Cosine formula on the band (real ``x``)."""
    _require(x, ctx, "band", strict)
    s = ctx.support
    a, b, al = s.a, s.b, ctx.alpha
    x = float(x)
    if not a < x < b:
        raise ValueError("the band formula needs a < x < b")
    log_pre = (math.log(ctx.pctx.D_infinity) + 0.5 * n * (s.c * x + ctx.l)
               + 0.5 * math.log((a + b) * x - a * b) - 0.5 * al * math.log(x)
               - 0.25 * math.log(x - a) - 0.25 * math.log(b - x))
    cs = math.cos(band_cosine_argument(x, n, ctx))
    if cs == 0.0:
        return ScaledValue(-math.inf, 1.0, True)
    return ScaledValue(log_pre + math.log(abs(cs)), math.copysign(1.0, cs), True)


def pn_saturated(x, n, ctx, strict=True):
    """Sine formula on the saturated region (real ``x``), leading term only."""
    _require(x, ctx, "saturated", strict)
    s = ctx.support
    a, b, al = s.a, s.b, ctx.alpha
    x = float(x)
    if not 0 < x < a:
        raise ValueError("the saturated formula needs 0 < x < a")
    r = math.sqrt((a - x) * (b - x))
    alg = ((x - r) / (math.sqrt(x) * ((a - x) * (b - x)) ** 0.25)
           * ((x + math.sqrt(a * b) - r) / (2 * x)) ** (al - 0.5))
    sn = math.sin(n * math.pi * math.sqrt(x))
    v = (-1) ** (n + 1) * sn * alg
    if v == 0.0:
        return ScaledValue(-math.inf, 1.0, True)
    return ScaledValue(n * log_potential(x, ctx.gctx) + math.log(abs(v)),
                       math.copysign(1.0, v), True)


def pn_origin(z, n, ctx, strict=True):
    """``e^{n g} N1 H*`` near 0; on ``(0, delta)`` the one-sided real form
    ``2i (-1)^{n+1} sin(n pi sqrt x) e^{n L(x)} N1_+(x) H(x)``."""
    _require(z, ctx, "origin", strict)
    s = ctx.support
    real = _is_real(z)
    z = complex(z)
    if z == 0:
        raise ValueError("the origin formula is singular at z = 0 itself")
    if abs(z) >= s.a:
        raise ValueError("the origin formula is used only for |z| < a")
    if real and z.real > 0:
        x = z.real
        N1p, _ = script_N(x, ctx.pctx, side=+1)
        v = 2j * (-1) ** (n + 1) * math.sin(n * math.pi * math.sqrt(x)) * N1p * H(x, n)
        if v == 0:
            return ScaledValue(-math.inf, 1.0, True)
        return _finish(n * log_potential(x, ctx.gctx) + cmath.log(v), True)
    if real:
        g = g_boundary(z.real, +1, ctx.gctx)
        N1, _ = script_N(z, ctx.pctx, side=+1)
    else:
        g = g_value(z, ctx.gctx)
        N1, _ = script_N(z, ctx.pctx)
    return _finish(n * g + clog(N1) + cmath.log(H_star(z, n)), real)


def _edge_point_average(fn, z, edge, scale):
    # the formulas carry f**(-1/4) * (vanishing bracket) at the edge itself;
    # average two symmetric nearby points instead (error O(h**2))
    h = 1e-5 * scale
    v1 = fn(complex(edge, h)).value()
    v2 = fn(complex(edge, -h)).value()
    return 0.5 * (v1 + v2)


def _edge_b_log(z, n, ctx, side):
    s = ctx.support
    al = ctx.alpha
    f = conformal_f(z, ctx.pctx)
    if z.imag == 0.0:
        f = complex(f.real, 0.0)
    N1, N2 = script_N(z, ctx.pctx, side=side)
    zp = cpow(z, 0.5 - al)
    nf = n ** (2 / 3) * f
    v = airy(nf)
    f14 = cpow(f, 0.25, side)
    bracket = (n ** (1 / 6) * f14 * v.ai * (N1 - 1j * zp * N2)
               - n ** (-1 / 6) / f14 * v.ai_prime * (N1 + 1j * zp * N2))
    return 0.5 * math.log(math.pi) + 0.5 * n * (s.c * z + ctx.l) + cmath.log(bracket)


def pn_edge_b(z, n, ctx, strict=True):
    """Airy formula at the band-void edge ``b``."""
    _require(z, ctx, "edge_b", strict)
    s = ctx.support
    real = _is_real(z)
    z = complex(z)
    if abs(z - s.b) > ctx.pctx.radius_b * (1 + 1e-12):
        raise ValueError("z outside the working radius at b")
    if abs(z - s.b) < 1e-9 * s.b:
        v = _edge_point_average(lambda w: pn_edge_b(w, n, ctx, strict=False), z, s.b,
                                s.b - s.a)
        return ScaledValue.from_complex(v.real if real else v, real)
    return _finish(_edge_b_log(z, n, ctx, +1 if real else 0), real)


def _edge_a_log(z, n, ctx, side):
    s = ctx.support
    al = ctx.alpha
    ft = conformal_ftilde(z, ctx.pctx)
    if z.imag == 0.0:
        ft = complex(ft.real, 0.0)
    N1, N2 = script_N(z, ctx.pctx, side=side)
    zp = cpow(z, 0.5 - al)
    e1, e2 = eta(z, n, ctx.pctx)
    # -f~ lies on the opposite side of the real axis from z
    m14 = cpow(-ft, 0.25, -side)
    bracket = (n ** (1 / 6) * m14 * e1 * (1j * N1 + zp * N2)
               + n ** (-1 / 6) / m14 * e2 * (1j * N1 - zp * N2))
    sign = 0.0 if n % 2 == 0 else math.pi
    return (0.5 * math.log(math.pi) + 0.5 * n * (s.c * z + ctx.l)
            + cmath.log(bracket) + 1j * sign)


def pn_edge_a(z, n, ctx, strict=True):
    """Airy formula at the saturated-band edge ``a``."""
    _require(z, ctx, "edge_a", strict)
    s = ctx.support
    real = _is_real(z)
    z = complex(z)
    if abs(z - s.a) > ctx.pctx.radius_a * (1 + 1e-12):
        raise ValueError("z outside the working radius at a")
    if abs(z - s.a) < 1e-9 * s.a:
        v = _edge_point_average(lambda w: pn_edge_a(w, n, ctx, strict=False), z, s.a,
                                s.b - s.a)
        return ScaledValue.from_complex(v.real if real else v, real)
    if real:
        # upper boundary value; the lower one differs by a sign
        return _finish(_edge_a_log(z, n, ctx, +1), True)
    if z.imag < 0:
        # the formula holds in the upper half-plane; P_n has real coefficients
        v = _edge_a_log(z.conjugate(), n, ctx, 0)
        return _finish(v.conjugate(), False)
    return _finish(_edge_a_log(z, n, ctx, 0), False)


_EVALUATORS = {
    "void": pn_void,
    "band": pn_band,
    "saturated": pn_saturated,
    "origin": pn_origin,
    "edge_a": pn_edge_a,
    "edge_b": pn_edge_b,
}


def pn_asym(z, n, ctx):
    """Dispatch to the evaluator of the region containing ``z``."""
    tag = classify(z, ctx).tag
    if tag in ("band", "saturated"):
        if complex(z).imag != 0.0:
            raise ValueError(f"the {tag} formula is implemented for real x only")
        z = complex(z).real
    return tag, _EVALUATORS[tag](z, n, ctx)
