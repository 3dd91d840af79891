import cmath
import math

import mpmath
import numpy as np
import pytest

from dlaguerre.specfun import (
    H,
    H_star,
    airy,
    build_parametrix,
    conformal_f,
    conformal_ftilde,
    eta,
    gamma_map,
    log_gamma,
    script_N,
    stirling_remainder,
    szego_D,
)


@pytest.fixture(scope="module")
def p4(ctx4):
    return ctx4.pctx


def test_airy_at_zero():
    v = airy(0.0)
    assert v.ai == pytest.approx(0.35502805388781723926, rel=1e-15)
    assert v.ai_prime == pytest.approx(-0.25881940379280679841, rel=1e-15)


def test_airy_wronskian_grid():
    rng = np.random.default_rng(7)
    r = 2 * np.sqrt(rng.random(100))
    t = 2 * math.pi * rng.random(100)
    for z in r * np.exp(1j * t):
        assert abs(airy(z).wronskian() - 1 / math.pi) < 1e-12
    assert abs(airy(1 + 1j).wronskian() - 1 / math.pi) < 1e-12


def test_airy_against_mpmath():
    for z in (0.5 + 0.3j, -2.0, 3 - 1j):
        assert abs(airy(z).ai - complex(mpmath.airyai(z))) < 1e-13 * max(1, abs(complex(mpmath.airyai(z))))


def test_log_gamma_identities():
    assert cmath.exp(log_gamma(0.5)) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert cmath.exp(log_gamma(6)) == pytest.approx(120, rel=1e-14)
    with pytest.raises(ValueError):
        log_gamma(-2)


def test_log_gamma_stirling_consistency():
    z = 50 + 10j
    with mpmath.workdps(40):
        w = mpmath.mpc(z)
        series = ((w - 0.5) * mpmath.log(w) - w + mpmath.log(2 * mpmath.pi) / 2
                  + sum(mpmath.bernoulli(2 * k) / (2 * k * (2 * k - 1) * w ** (2 * k - 1))
                        for k in range(1, 15)))
    assert abs(log_gamma(z) - complex(series)) < 1e-12


def test_stirling_remainder_against_mpmath():
    for w in (0.3 + 0.1j, 2.0, 7 - 3j, 40j + 1):
        with mpmath.workdps(30):
            v = mpmath.mpc(w)
            ref = mpmath.loggamma(v) + v - (v - 0.5) * mpmath.log(v) - mpmath.log(2 * mpmath.pi) / 2
        assert abs(stirling_remainder(w) - complex(ref)) < 1e-13


def test_H_values():
    assert H(1, 1) == pytest.approx(math.e / math.sqrt(2 * math.pi), rel=1e-14)
    z = 1 + 0.5j
    d = [abs(H(z, n) - 1) for n in (10, 100, 1000)]
    assert d[0] > d[1] > d[2]
    z = 0.01 + 0.01j
    n = 5
    ratio = H_star(z, n) / H(z, n)
    assert abs(ratio - (1 - cmath.exp(2j * n * math.pi * cmath.sqrt(z)))) < 1e-14


def test_szego(p4, ctx4):
    s = ctx4.support
    z = 1e6 * cmath.exp(0.4j)
    assert abs(szego_D(z, p4) / p4.D_infinity - 1) < 1e-5
    x = (s.a + s.b) / 2
    prod = szego_D(x, p4, +1) * szego_D(x, p4, -1)
    assert abs(prod - x ** (p4.alpha - 0.5)) < 1e-10
    ph = build_parametrix(ctx4.gctx, 0.5)
    assert szego_D(0.3 + 0.2j, ph) == 1


def test_gamma_map(p4, ctx4):
    s = ctx4.support
    z = 1e6
    g = gamma_map(z, p4)
    assert abs(g - 1 - (s.a + s.b) / (4 * z)) < 10 / z**2
    g = gamma_map(2 * s.b, p4)
    assert g.imag == 0 and g.real > 0
    g = gamma_map(1 + 2j, p4)
    assert abs(((g + 1 / g) / 2) ** 2 + ((g - 1 / g) / 2j) ** 2 - 1) < 1e-12


def test_script_N(p4, ctx4):
    s = ctx4.support
    z = 2 * s.b
    N1, N2 = script_N(z, p4)
    D = szego_D(z, p4)
    assert abs((N1 * D / p4.D_infinity) ** 2 + (N2 / (p4.D_infinity * D)) ** 2 - 1) < 1e-12
    x = 0.01
    assert abs(script_N(x, p4, +1)[0] + script_N(x, p4, -1)[0]) < 1e-12
    assert abs(script_N(1e6, p4)[0] - 1) < 1e-5


def test_conformal_maps(p4, ctx4):
    s = ctx4.support
    assert abs(conformal_f(s.b, p4)) < 1e-14
    h = 1e-5
    fp = (conformal_f(s.b + h, p4) - conformal_f(s.b - h, p4)) / (2 * h)
    assert fp.real == pytest.approx((s.C2 * math.pi) ** (2 / 3), rel=1e-8)
    assert abs(conformal_ftilde(s.a, p4)) < 1e-14
    ft = [conformal_ftilde(s.a + t, p4) for t in np.linspace(0.001, 0.9 * p4.radius_a, 6)]
    assert all(abs(v.imag) < 1e-10 for v in ft)
    assert all(u.real < v.real for u, v in zip(ft, ft[1:]))
    ftp = (conformal_ftilde(s.a + h, p4) - conformal_ftilde(s.a - h, p4)) / (2 * h)
    assert ftp.real == pytest.approx((s.C1 * math.pi) ** (2 / 3), rel=1e-7)


def test_eta(p4, ctx4):
    s = ctx4.support
    n = 48
    # n pi sqrt z = 44.5 pi (cos 0, sin 1) and 44 pi (cos 1, sin 0)
    for k, pick in ((44.5, "bi"), (44.0, "ai")):
        z = (k / n) ** 2
        assert abs(z - s.a) <= p4.radius_a
        e1, _ = eta(z, n, p4)
        v = airy(-(n ** (2 / 3)) * conformal_ftilde(z, p4))
        want = -v.bi if pick == "bi" else v.ai
        assert abs(e1 - want) < 1e-12 * max(1, abs(want))
    z = s.a + 0.01
    e1, e2 = eta(z, n, p4)
    t = n * math.pi * math.sqrt(z)
    v = airy(-(n ** (2 / 3)) * conformal_ftilde(z, p4))
    assert abs(e1 - (math.cos(t) * v.ai - math.sin(t) * v.bi)) < 1e-13 * max(1, abs(e1))
    assert abs(e2 - (math.cos(t) * v.ai_prime - math.sin(t) * v.bi_prime)) < 1e-13 * max(1, abs(e2))
