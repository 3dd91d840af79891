"""Constrained equilibrium measure for the external field ``V(x) = c x``.

The upper constraint is the limiting node density ``1/(2 sqrt(x))`` of the
lattice ``{k**2 / N**2}``.  Below ``c_cr = pi**2/4`` the constraint is
inactive and the density is of Marchenko-Pastur type on ``(0, 4/c)``.
Above it the measure saturates the constraint on ``(0, a)`` and has a band
on ``(a, b)``.

The band endpoints are fixed by the mass condition (``ab1_residual``) and by
regularity of the density at ``a`` (``edge_residual``): the coefficient of
the ``(x - a)**-1/2`` term in the band formula must vanish, which is the
same as ``c = int_0^a ds / sqrt(s (a - s) (b - s))``.  The normalisation
residual ``ab2_residual`` coincides identically with ``ab1_residual`` after
exchanging the order of integration, so it cannot serve as the second
equation; it is still evaluated and reported.
"""
from dataclasses import dataclass, field
import math

import numpy as np
from scipy.special import elliprf, elliprj

from .quadrature import EndpointSpec, QuadratureError, integrate

__all__ = [
    "C_CR",
    "ModelParams",
    "SupportData",
    "RegimeError",
    "SolverError",
    "critical_value",
    "ab1_residual",
    "ab2_residual",
    "edge_residual",
    "solve_endpoints",
    "support_for",
    "density",
    "density_two_term",
    "edge_constants",
]

C_CR = math.pi**2 / 4


def critical_value():
    """Return ``pi**2 / 4``, the onset of saturation."""
    return C_CR


class RegimeError(ValueError):
    pass


class SolverError(RuntimeError):
    def __init__(self, message, a, b, residuals):
        super().__init__(f"{message} (a={a!r}, b={b!r}, residuals={residuals!r})")
        self.a = a
        self.b = b
        self.residuals = residuals


@dataclass(frozen=True)
class ModelParams:
    """Weight ``x**alpha exp(-N c x)`` on ``{k**2/N**2}``; ``n`` is the degree."""

    alpha: float
    c: float
    N: int
    n: int

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError("alpha must exceed -1")
        if not self.c > 0:
            raise ValueError("c must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")


@dataclass(frozen=True)
class SupportData:
    a: float
    b: float
    c: float
    regime: str
    C1: float | None = None
    C2: float | None = None
    residuals: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.regime == "supercritical":
            if not 0 < self.a < self.b:
                raise ValueError("supercritical support needs 0 < a < b")
        elif self.regime == "subcritical":
            if self.a != 0.0:
                raise ValueError("subcritical support starts at 0")
        else:
            raise ValueError(f"unknown regime {self.regime!r}")

    @property
    def supercritical(self):
        return self.regime == "supercritical"


def _breaks_near_top(scale):
    # angles pi/2 - scale * 4**j, grading the rule toward theta = pi/2 where
    # the integrands below have a nearby pole when b - a or x - a is small
    half = 0.5 * math.pi
    return [half - scale * 4.0**j for j in range(40) if scale * 4.0**j < half]


def _angular(f, a, gap, tol):
    # integrals over (0, a) in s = a sin(theta)**2, which absorbs the
    # s**-1/2 and (a - s)**+-1/2 endpoint factors
    scale = math.sqrt(gap / a) if gap < a else math.inf
    return integrate(f, 0.0, 0.5 * math.pi, tol=tol,
                     points=_breaks_near_top(scale)).value


def ab1_residual(a, b, c, tol=1e-13):
    """Mass condition: ``c(b-a)/4 + 1/2 int_0^a sqrt((a-x)/(x(b-x))) dx - 1``."""
    f = lambda t: 2 * a * np.cos(t) ** 2 / np.sqrt(b - a * np.sin(t) ** 2)
    J = _angular(f, a, b - a, tol)
    return c * (b - a) / 4 + 0.5 * J - 1.0


def edge_residual(a, b, c, tol=1e-13):
    """Regularity at ``a``: ``c - int_0^a ds / sqrt(s(a-s)(b-s))``."""
    f = lambda t: 2.0 / np.sqrt(b - a * np.sin(t) ** 2)
    return c - _angular(f, a, b - a, tol)


def _inner_cauchy(x, a, b, tol):
    # int_0^a sqrt((a-s)/(s(b-s))) ds/(s-x) for x > a
    def f(t):
        c2 = np.cos(t) ** 2
        return -2 * a * c2 / (np.sqrt(b - a + a * c2) * ((x - a) + a * c2))
    return _angular(f, a, x - a, tol)


def ab2_residual(a, b, c, tol=1e-12):
    """Normalisation ``int_0^b rho = 1`` written as a double integral."""
    outer = lambda xs: np.array(
        [np.sqrt((b - x) / (x - a)) * _inner_cauchy(x, a, b, tol) for x in xs])
    I = integrate(outer, a, b, EndpointSpec(-0.5, 0.5), tol=tol, m=16).value
    return math.sqrt(a) + c * (b - a) / 4 + I / (2 * math.pi) - 1.0


def _residual_vector(a, b, c, tol):
    return np.array([ab1_residual(a, b, c, tol), edge_residual(a, b, c, tol)])


def _newton(c, x0, tol, max_iter):
    qtol = max(1e-13, min(1e-12, tol * 1e-2))
    x = np.array(x0, dtype=float)
    F = _residual_vector(*x, c, qtol)
    for _ in range(max_iter):
        if np.max(np.abs(F)) <= tol * 1e-2:
            break
        J = np.empty((2, 2))
        for j in range(2):
            h = 1e-6 * max(abs(x[j]), 1e-3 * x[1])
            xp = x.copy()
            xp[j] += h
            J[:, j] = (_residual_vector(*xp, c, qtol) - F) / h
        step = np.linalg.solve(J, -F)
        lam = 1.0
        while True:
            xn = x + lam * step
            Fn = None
            if 0 < xn[0] < xn[1]:
                try:
                    Fn = _residual_vector(*xn, c, qtol)
                except QuadratureError:
                    pass
            if Fn is not None and (np.max(np.abs(Fn)) < np.max(np.abs(F)) or lam < 1e-3):
                break
            lam *= 0.5
            if lam < 1e-10:
                raise SolverError("line search failed", float(x[0]), float(x[1]),
                                  tuple(map(float, F)))
        x, F = xn, Fn
    a, b = float(x[0]), float(x[1])
    if np.max(np.abs(F)) > tol:
        raise SolverError("Newton did not converge", a, b, tuple(map(float, F)))
    return a, b, F


def solve_endpoints(c, tol=1e-12, max_iter=60):
    """Band endpoints ``(a, b)`` for ``c > pi**2/4``.

    Damped Newton on the pair (mass condition, edge regularity) with a
    forward-difference Jacobian, started from ``a = 0.05 * 4/c``,
    ``b = 4/c``.  If that start fails (large ``c``, where the band becomes
    very narrow around 1) the solve is continued in ``c`` from ``c = 4``.

    Raises
    ------
    RegimeError
        For ``c <= pi**2/4``; use :func:`support_for` instead.
    SolverError
        If Newton stalls; carries the last iterate and residuals.
    """
    if not c > C_CR:
        raise RegimeError(
            f"c={c} <= pi^2/4: no saturated region, use the subcritical density")
    if not tol > 0:
        raise ValueError("tol must be positive")
    try:
        a, b, F = _newton(c, (0.05 * 4.0 / c, 4.0 / c), tol, max_iter)
    except SolverError:
        if c <= 4.0:
            raise
        a, b = 0.05, 1.0
        for ck in np.geomspace(4.0, c, 12):
            a, b, F = _newton(ck, (0.05 * 4.0 / ck, 4.0 / ck) if ck == 4.0 else (a, b),
                              tol, max_iter)
    r1, redge = float(F[0]), float(F[1])
    r2 = float(ab2_residual(a, b, c, tol=min(tol, 1e-12)))
    s = SupportData(a, b, c, "supercritical", residuals=(r1, r2, redge))
    C1, C2 = edge_constants(s)
    return SupportData(a, b, c, "supercritical", C1, C2, residuals=(r1, r2, redge))


def support_for(c, tol=1e-12):
    """SupportData for either regime."""
    if c > C_CR:
        return solve_endpoints(c, tol)
    if not c > 0:
        raise ValueError("c must be positive")
    b = 4.0 / c
    # rho ~ c**1.5 / (4 pi) sqrt(b - x) at the soft edge
    return SupportData(0.0, b, c, "subcritical", None, c**1.5 / (4 * math.pi))


def _ellip_pi(n, m, one_minus_n=None):
    """Complete elliptic integral of the third kind via Carlson forms."""
    p = 1.0 - n if one_minus_n is None else one_minus_n
    return elliprf(0.0, 1.0 - m, 1.0) + n / 3.0 * elliprj(0.0, 1.0 - m, 1.0, p)


def _band_density(x, a, b, x_minus_a=None):
    # two-term band formula with the edge condition substituted:
    # rho = sqrt((b-x)(x-a))/(2 pi) int_0^a ds / (sqrt(s(a-s)(b-s)) (x-s))
    d = x - a if x_minus_a is None else x_minus_a
    return (np.sqrt((b - x) * d) / (math.pi * x * math.sqrt(b))
            * _ellip_pi(a / x, a / b, d / x))


def density(x, s):
    """Equilibrium density on ``(0, b)``; vectorised in ``x``.

    Raises
    ------
    ValueError
        If any ``x`` lies outside the open interval ``(0, b)``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0) or np.any(x >= s.b):
        raise ValueError(f"density defined on (0, {s.b}) only")
    if not s.supercritical:
        c = s.c
        return c / (2 * math.pi) * np.sqrt((4 - c * x) / (c * x))
    out = np.empty_like(x)
    sat = x <= s.a
    out[sat] = 0.5 / np.sqrt(x[sat])
    band = ~sat
    out[band] = _band_density(x[band], s.a, s.b)
    return out


def density_two_term(x, s, tol=1e-13):
    """Band density from the literal two-term formula (scalar ``x`` in ``(a, b)``).

    Independent of :func:`density`; kept for cross-checks.
    """
    a, b, c = s.a, s.b, s.c
    if not a < x < b:
        raise ValueError("x must lie in the band")
    r = math.sqrt((b - x) / (x - a))
    return r * (c + _inner_cauchy(x, a, b, tol)) / (2 * math.pi)


def _richardson_limit(q, h, levels=6):
    """Extrapolate ``q(t)`` to ``t = 0`` from ``t = h/2**k``; q is smooth in t."""
    T = np.empty((levels, levels))
    for k in range(levels):
        T[k, 0] = q(h / 2**k)
        for j in range(1, k + 1):
            T[k, j] = T[k, j - 1] + (T[k, j - 1] - T[k - 1, j - 1]) / (2**j - 1)
    return T[-1, -1], abs(T[-1, -1] - T[-2, -2])


def edge_constants(s):
    """``(C1, C2)`` with ``rho ~ 1/(2 sqrt x) - C1 sqrt(x-a)`` at ``a`` and
    ``rho ~ C2 sqrt(b-x)`` at ``b``.

    Computed as Richardson-extrapolated limits of the defining quotients.
    """
    if not s.supercritical:
        raise RegimeError("edge constants need the supercritical regime")
    a, b = s.a, s.b
    h = 0.05 * (b - a)

    def q1(t):
        x = a + t
        return (0.5 / math.sqrt(x) - _band_density(x, a, b)) / math.sqrt(t)

    def q2(t):
        return _band_density(b - t, a, b) / math.sqrt(t)

    C1, e1 = _richardson_limit(q1, h)
    C2, e2 = _richardson_limit(q2, h)
    if not (C1 > 0 and C2 > 0) or max(e1 / C1, e2 / C2) > 1e-8:
        raise SolverError("edge-constant extrapolation failed", a, b, (C1, C2))
    return float(C1), float(C2)
