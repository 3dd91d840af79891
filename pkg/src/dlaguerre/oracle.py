"""Extended-precision discrete Laguerre polynomials.

The measure puts mass ``x**alpha * exp(-N c x)`` on the nodes
``x_k = k**2 / N**2``, ``k >= k_min``.  Recurrence coefficients come from
the discrete Stieltjes procedure run in mpmath at ``precision_bits``; the
infinite lattice is truncated once the degree-``2 n_max`` moment summand
is negligible.

Also provides the continuous Laguerre comparator for weight
``x**beta * exp(-lam x)`` on ``(0, inf)``, whose recurrence is explicit.
"""
from dataclasses import dataclass, field
import math

import mpmath
import numpy as np

from .equilibrium import ModelParams

__all__ = [
    "LatticeMeasure",
    "RecurrenceTable",
    "ScaledValue",
    "PrecisionError",
    "build_recurrence",
    "eval_poly",
    "eval_poly_mp",
    "zeros",
    "continuous_laguerre_table",
    "continuous_laguerre_zeros",
    "lattice_nodes",
    "inner_product",
    "check_interlacing",
]

DEFAULT_BITS = 160
_TAIL_RUN = 50


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LatticeMeasure:
    params: ModelParams
    k_min: int = 1
    K: int | None = None
    precision_bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.k_min not in (0, 1):
            raise ValueError("k_min must be 0 or 1")
        if self.k_min == 0 and self.params.alpha < 0:
            raise ValueError("alpha < 0 puts infinite weight on x = 0; use k_min = 1")
        if self.precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")


@dataclass(frozen=True)
class RecurrenceTable:
    """``B[k]``, ``A2[k]`` (``A2[0] = 0``) and ``h[k]`` for ``k <= degree_max``.

    Entries are mpmath numbers at ``precision_bits``.
    """

    B: list
    A2: list
    h: list
    degree_max: int
    precision_bits: int
    measure: LatticeMeasure | None = field(default=None, repr=False)
    K: int | None = None

    def floats(self):
        return (np.array([float(v) for v in self.B]),
                np.array([float(v) for v in self.A2]),
                np.array([float(v) for v in self.h]))


@dataclass(frozen=True)
class ScaledValue:
    """``exp(log_modulus) * exp(i phase)`` (complex) or ``* sign`` (real).

    A zero is stored as ``log_modulus = -inf``.
    """

    log_modulus: float
    phase_or_sign: float
    is_real: bool

    @classmethod
    def from_complex(cls, v, real=None):
        v = complex(v)
        if real is None:
            real = v.imag == 0.0
        if real:
            r = v.real
            if r == 0.0:
                return cls(-math.inf, 1.0, True)
            return cls(math.log(abs(r)), math.copysign(1.0, r), True)
        if v == 0:
            return cls(-math.inf, 0.0, False)
        return cls(math.log(abs(v)), math.atan2(v.imag, v.real), False)

    @classmethod
    def from_log(cls, logv, real=False):
        """From a complex logarithm; real values keep the sign of ``cos(Im log)``."""
        logv = complex(logv)
        if real:
            c = math.cos(logv.imag)
            if c == 0.0:
                return cls(-math.inf, 1.0, True)
            return cls(logv.real + math.log(abs(c)), math.copysign(1.0, c), True)
        ph = math.remainder(logv.imag, 2 * math.pi)
        return cls(logv.real, ph, False)

    @property
    def is_zero(self):
        return self.log_modulus == -math.inf

    def value(self):
        """Plain complex value; may overflow to inf."""
        if self.is_zero:
            return 0j
        m = math.exp(self.log_modulus)
        if self.is_real:
            return complex(self.phase_or_sign * m)
        return complex(m * math.cos(self.phase_or_sign), m * math.sin(self.phase_or_sign))

    def ratio(self, other):
        """``self / other`` as a complex number, formed in log space."""
        if other.is_zero:
            raise ZeroDivisionError("ratio by a zero ScaledValue")
        if self.is_zero:
            return 0j
        d = self.log_modulus - other.log_modulus
        if self.is_real and other.is_real:
            return complex(self.phase_or_sign * other.phase_or_sign * math.exp(d))
        ph = (0.0 if self.is_real and self.phase_or_sign > 0 else
              math.pi if self.is_real else self.phase_or_sign)
        ph -= (0.0 if other.is_real and other.phase_or_sign > 0 else
               math.pi if other.is_real else other.phase_or_sign)
        return complex(math.exp(d) * math.cos(ph), math.exp(d) * math.sin(ph))


def lattice_nodes(measure, K):
    N = measure.params.N
    return [mpmath.mpf(k) ** 2 / N**2 for k in range(measure.k_min, K + 1)]


def _weights(measure, nodes):
    p = measure.params
    alpha = mpmath.mpf(p.alpha)
    rate = mpmath.mpf(p.N) * mpmath.mpf(p.c)
    return [(x**alpha if x != 0 else mpmath.mpf(alpha == 0)) * mpmath.exp(-rate * x)
            for x in nodes]


def _truncation_index(measure, n_max):
    """Smallest K after which 50 consecutive moment summands are negligible."""
    p = measure.params
    alpha = mpmath.mpf(p.alpha)
    rate = mpmath.mpf(p.N) * mpmath.mpf(p.c)
    thresh = mpmath.mpf(2) ** (-measure.precision_bits - 10)
    total = mpmath.mpf(0)
    run = 0
    k = measure.k_min
    while True:
        x = mpmath.mpf(k) ** 2 / p.N**2
        if x == 0:
            term = mpmath.mpf(0) if 2 * n_max + alpha > 0 else mpmath.mpf(1)
        else:
            term = x ** (2 * n_max + alpha) * mpmath.exp(-rate * x)
        total += term
        if total > 0 and term < thresh * total:
            run += 1
            if run >= _TAIL_RUN:
                return k
        else:
            run = 0
        k += 1


def build_recurrence(measure, n_max):
    """Discrete Stieltjes procedure up to degree ``n_max``.

    Returns
    -------
    RecurrenceTable
        ``B[k]``, ``A2[k]``, ``h[k]`` for ``0 <= k <= n_max``.

    Raises
    ------
    ValueError
        If the truncation index is too small (``n_max > K/4``).
    PrecisionError
        If some ``h_k`` has lost all significant bits.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    with mpmath.workprec(measure.precision_bits):
        K = measure.K
        if K is None:
            # extra nodes beyond the tail cutoff only add negligible mass, so
            # the quarter-node safety margin can always be met
            K = max(_truncation_index(measure, n_max), measure.k_min + 4 * n_max)
        count = K - measure.k_min + 1
        if n_max > count / 4:
            raise ValueError(f"n_max={n_max} exceeds a quarter of the {count} lattice nodes")
        x = lattice_nodes(measure, K)
        w = _weights(measure, x)
        prev = [mpmath.mpf(0)] * len(x)
        cur = [mpmath.mpf(1)] * len(x)
        B, A2, h = [], [], []
        for k in range(n_max + 1):
            wp = [wi * pi for wi, pi in zip(w, cur)]
            hk = mpmath.fdot(wp, cur)
            # cancellation check: the sum of |terms| equals h_k here, so a
            # non-positive h_k means the arithmetic has broken down
            if not hk > 0:
                raise PrecisionError(f"h_{k} not positive at {measure.precision_bits} bits")
            bk = mpmath.fdot(wp, [xi * pi for xi, pi in zip(x, cur)]) / hk
            a2 = hk / h[-1] if k else mpmath.mpf(0)
            B.append(bk)
            A2.append(a2)
            h.append(hk)
            if k < n_max:
                nxt = [(xi - bk) * pi - a2 * qi for xi, pi, qi in zip(x, cur, prev)]
                prev, cur = cur, nxt
    return RecurrenceTable(B, A2, h, n_max, measure.precision_bits, measure, K)


def inner_product(table, i, j):
    """``sum_k P_i(x_k) P_j(x_k) w(x_k)`` by direct summation (test oracle)."""
    m = table.measure
    with mpmath.workprec(table.precision_bits):
        x = lattice_nodes(m, table.K)
        w = _weights(m, x)
        return mpmath.fsum(wi * eval_poly_mp(table, i, xi) * eval_poly_mp(table, j, xi)
                           for xi, wi in zip(x, w))


def eval_poly_mp(table, n, z):
    """Monic ``P_n(z)`` by forward recurrence, as an mpmath number."""
    if n > table.degree_max:
        raise ValueError(f"degree {n} exceeds the table ({table.degree_max})")
    with mpmath.workprec(table.precision_bits):
        z = mpmath.mpmathify(z)
        p0, p1 = mpmath.mpf(0), mpmath.mpf(1)
        for k in range(n):
            p0, p1 = p1, (z - table.B[k]) * p1 - table.A2[k] * p0
        return p1


def eval_poly(table, n, z):
    """Monic ``P_n(z)`` as a ScaledValue (real inputs keep a sign).

    mpmath numbers have an unbounded exponent, so the forward recurrence
    cannot overflow; the value is converted to log form at the end.
    """
    real = isinstance(z, (int, float, np.floating)) or (
        isinstance(z, complex) and z.imag == 0.0) or isinstance(z, mpmath.mpf)
    if isinstance(z, complex) and z.imag == 0.0:
        z = z.real
    v = eval_poly_mp(table, n, z)
    with mpmath.workprec(table.precision_bits):
        if v == 0:
            return ScaledValue(-math.inf, 1.0 if real else 0.0, real)
        lm = float(mpmath.log(abs(v)))
        if real:
            return ScaledValue(lm, 1.0 if v > 0 else -1.0, True)
        return ScaledValue(lm, float(mpmath.arg(v)), False)


def _newton_polish(table, n, x0, steps=3):
    with mpmath.workprec(table.precision_bits):
        x = mpmath.mpf(x0)
        for _ in range(steps):
            # P and P' from the differentiated recurrence
            p0, p1 = mpmath.mpf(0), mpmath.mpf(1)
            d0, d1 = mpmath.mpf(0), mpmath.mpf(0)
            for k in range(n):
                p0, p1, d0, d1 = (p1, (x - table.B[k]) * p1 - table.A2[k] * p0,
                                  d1, p1 + (x - table.B[k]) * d1 - table.A2[k] * d0)
            if d1 == 0:
                break
            x = x - p1 / d1
        return x


def zeros(table, n, exact=False):
    """Zeros of ``P_n``: Jacobi-matrix eigenvalues polished by three Newton steps.

    Returns a float array, or a list of mpmath numbers if ``exact``.
    """
    if n > table.degree_max:
        raise ValueError(f"degree {n} exceeds the table ({table.degree_max})")
    if n == 0:
        return [] if exact else np.array([])
    B, A2, _ = table.floats()
    J = np.diag(B[:n]) + np.diag(np.sqrt(A2[1:n]), 1) + np.diag(np.sqrt(A2[1:n]), -1)
    try:
        ev = np.linalg.eigvalsh(J)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("Jacobi eigenvalue iteration did not converge") from exc
    roots = [_newton_polish(table, n, float(e)) for e in np.sort(ev)]
    if exact:
        return roots
    return np.array([float(r) for r in roots])


def continuous_laguerre_table(n_max, beta, lam, precision_bits=DEFAULT_BITS):
    """Recurrence of the monic orthogonal polynomials for ``x**beta exp(-lam x)``:
    ``B_k = (2k + beta + 1)/lam``, ``A2_k = k (k + beta)/lam**2``."""
    if not beta > -1 or not lam > 0:
        raise ValueError("need beta > -1 and lam > 0")
    with mpmath.workprec(precision_bits):
        beta = mpmath.mpf(beta)
        lam = mpmath.mpf(lam)
        B = [(2 * k + beta + 1) / lam for k in range(n_max + 1)]
        A2 = [k * (k + beta) / lam**2 for k in range(n_max + 1)]
        h = [mpmath.gamma(beta + 1) / lam ** (beta + 1)]
        for k in range(1, n_max + 1):
            h.append(h[-1] * A2[k])
    return RecurrenceTable(B, A2, h, n_max, precision_bits)


def continuous_laguerre_zeros(n, beta, lam, precision_bits=DEFAULT_BITS, exact=False):
    return zeros(continuous_laguerre_table(n, beta, lam, precision_bits), n, exact)


def check_interlacing(zs, measure, K=None):
    """True if every closed interval between consecutive nodes holds at most one zero.

    Saturated-region zeros lie exponentially close to nodes, so pass the
    ``exact=True`` zeros; the comparison is then done at the measure's
    precision against exact nodes.
    """
    if len(zs) == 0:
        return True
    with mpmath.workprec(measure.precision_bits):
        zs = sorted(mpmath.mpf(z) for z in zs)
        N = measure.params.N
        k_last = int(math.ceil(math.sqrt(float(zs[-1])) * N)) + 1
        nodes = [mpmath.mpf(k * k) / N**2 for k in range(measure.k_min, k_last + 1)]
        j = 0
        for lo, hi in zip(nodes[:-1], nodes[1:]):
            while j < len(zs) and zs[j] < lo:
                j += 1
            cnt = 0
            while j + cnt < len(zs) and zs[j + cnt] <= hi:
                cnt += 1
            if cnt > 1:
                return False
    return True
    N = measure.params.N
    k_last = int(math.ceil(math.sqrt(zs[-1]) * N)) + 1
    nodes = np.array([k * k / N**2 for k in range(measure.k_min, k_last + 1)])
    for lo, hi in zip(nodes[:-1], nodes[1:]):
        if np.count_nonzero((zs >= lo) & (zs <= hi)) > 1:
            return False
    return True
