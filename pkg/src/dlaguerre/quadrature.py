"""Gauss-Legendre quadrature for integrands with algebraic endpoint singularities.

The integrals that define the equilibrium measure carry factors such as
``s**-0.5``, ``(a - s)**0.5`` and ``(b - x)**0.5`` at the ends of the
interval.  :func:`integrate` removes them with a power substitution at each
end and then runs composite Gauss-Legendre with dyadic refinement.

:func:`graded_rule` builds a fixed rule that is geometrically refined toward
one point.  It is used for logarithmic kernels ``log|x - s|`` whose
singularity sits inside the interval.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

DEFAULT_TOL = 1e-12
GAUSS_ORDER = 20
MAX_LEVEL = 12
ROUNDOFF_FLOOR = 1e3 * np.finfo(float).eps

__all__ = [
    "EndpointSpec",
    "QuadResult",
    "QuadratureError",
    "integrate",
    "gauss_legendre",
    "graded_rule",
    "mapped_rule",
]


class QuadratureError(RuntimeError):
    """Refinement budget exhausted; ``result`` holds the best estimate."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class EndpointSpec:
    """Exponents ``p`` and ``q`` of ``(s - L)**p (R - s)**q`` in the integrand."""

    left_exponent: float = 0.0
    right_exponent: float = 0.0

    def __post_init__(self):
        for name in ("left_exponent", "right_exponent"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= -1.0:
                raise ValueError(f"{name}={v} is not integrable (need > -1)")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int


@lru_cache(maxsize=None)
def gauss_legendre(m):
    """Nodes and weights of the ``m``-point rule on ``[0, 1]``."""
    x, w = np.polynomial.legendre.leggauss(m)
    return 0.5 * (x + 1.0), 0.5 * w


def _substitution_power(p):
    # s - L = t**k makes (s - L)**p ds = k t**(k(p+1) - 1) dt smooth when
    # k(p+1) is an integer; small-denominator rationals cover the
    # half-integer exponents used here exactly.
    if p == 0.0:
        return 1
    frac = Fraction(p).limit_denominator(16)
    if abs(float(frac) - p) < 1e-14:
        return frac.denominator
    return max(1, math.ceil(4.0 / (p + 1.0)))


def _half_rule(length, k, panels, m):
    """Composite rule on [0, length] for s = length * t**k, t in [0, 1]."""
    t, w = gauss_legendre(m)
    edges = np.linspace(0.0, 1.0, panels + 1)
    h = np.diff(edges)
    tt = (edges[:-1, None] + h[:, None] * t[None, :]).ravel()
    ww = (h[:, None] * w[None, :]).ravel()
    s = length * tt**k
    ws = ww * length * k * tt ** (k - 1)
    return s, ws


def mapped_rule(L, R, spec=EndpointSpec(), panels=1, m=GAUSS_ORDER):
    """Nodes and weights on ``(L, R)`` after the endpoint substitutions."""
    M = 0.5 * (L + R)
    kl = _substitution_power(spec.left_exponent)
    kr = _substitution_power(spec.right_exponent)
    sl, wl = _half_rule(M - L, kl, panels, m)
    sr, wr = _half_rule(R - M, kr, panels, m)
    nodes = np.concatenate([L + sl, R - sr])
    weights = np.concatenate([wl, wr])
    return nodes, weights


def _integrate_piece(f, L, R, spec, tol, m, max_level):
    prev = None
    err = math.inf
    evals = 0
    for level in range(max_level + 1):
        x, w = mapped_rule(L, R, spec, panels=2**level, m=m)
        val = np.dot(w, f(x))
        evals += x.size
        if prev is not None:
            err = abs(val - prev)
            # below ROUNDOFF_FLOOR the level-to-level difference is noise from
            # endpoint cancellation, not truncation error
            if err <= max(tol * abs(val), tol, ROUNDOFF_FLOOR * abs(val)):
                return val, err, evals, True
        prev = val
    return prev, err, evals, False


def integrate(f, L, R, spec=None, tol=DEFAULT_TOL, points=(), m=GAUSS_ORDER,
              max_level=MAX_LEVEL):
    """Integrate ``f`` over ``(L, R)``.

    Parameters
    ----------
    f : callable
        Vectorised integrand; receives a 1-d array of nodes.  It is the full
        integrand, singular endpoint factors included.
    L, R : float
        Interval ends, ``L < R``.
    spec : EndpointSpec, optional
        Endpoint exponents; default ``(0, 0)``.
    tol : float
        Stop once two successive dyadic levels differ by less than
        ``max(tol * |value|, tol)``.
    points : sequence of float, optional
        Interior break points.  Outer endpoint exponents apply only to the
        first and last pieces.

    Returns
    -------
    QuadResult

    Raises
    ------
    QuadratureError
        If any piece fails to converge within ``max_level`` refinements.
    """
    if spec is None:
        spec = EndpointSpec()
    if not L < R:
        raise ValueError(f"need L < R, got L={L}, R={R}")
    if not tol > 0:
        raise ValueError("tol must be positive")
    cuts = [L] + sorted(p for p in points if L < p < R) + [R]
    total, err_total, evals, ok = 0.0, 0.0, 0, True
    for i, (lo, hi) in enumerate(zip(cuts[:-1], cuts[1:])):
        piece = EndpointSpec(spec.left_exponent if i == 0 else 0.0,
                             spec.right_exponent if i == len(cuts) - 2 else 0.0)
        val, err, n, conv = _integrate_piece(f, lo, hi, piece, tol, m, max_level)
        total += val
        err_total += err
        evals += n
        ok &= conv
    if np.iscomplexobj(total):
        total = complex(total)
    else:
        total = float(total)
    result = QuadResult(total, float(err_total), evals)
    if not ok:
        raise QuadratureError(
            f"no convergence on ({L}, {R}) after {max_level} refinements", result)
    return result


def graded_rule(L, R, focus, ratio=0.15, layers=22, m=16, offsets=False):
    """Composite rule on ``[L, R]`` refined geometrically toward ``focus``.

    Panels shrink by ``ratio`` as they approach ``focus`` from either side,
    down to a width of about ``ratio**layers`` times the side length.  This
    integrates ``log|focus - s| * smooth(s)`` (and near-singular kernels with
    a nearby complex pole) to double precision with a few hundred nodes.

    With ``offsets=True`` also returns ``nodes - focus`` computed without
    rounding, which callers need to evaluate ``log|focus - s|`` next to
    the singular point.
    """
    focus = min(max(focus, L), R)
    t, w = gauss_legendre(m)
    deltas, weights = [], []
    for length, sign in ((focus - L, -1.0), (R - focus, 1.0)):
        if length <= 0.0:
            continue
        # distances from the focus of the panel ends
        d = np.append(length * ratio ** np.arange(layers + 1), 0.0)
        for far, near in zip(d[:-1], d[1:]):
            h = far - near
            deltas.append(sign * (near + h * t))
            weights.append(h * w)
    delta = np.concatenate(deltas)
    weights = np.concatenate(weights)
    nodes = focus + delta
    if offsets:
        return nodes, weights, delta
    return nodes, weights
