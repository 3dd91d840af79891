import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import ellipe, ellipk

from dlaguerre.equilibrium import (
    C_CR,
    RegimeError,
    ab2_residual,
    critical_value,
    density,
    density_two_term,
    edge_constants,
    solve_endpoints,
    support_for,
)


@pytest.fixture(scope="module")
def s4():
    return solve_endpoints(4.0)


def test_critical_value():
    assert critical_value() == pytest.approx(2.4674011002723396547, rel=1e-16)
    assert support_for(4.0).supercritical
    assert not support_for(math.pi**2 / 600).supercritical


def test_subcritical_limit_of_mass_condition():
    # a = 0 leaves c b / 4 = 1
    s = support_for(2.0)
    assert s.a == 0.0 and s.b == pytest.approx(2.0)


def test_near_critical():
    s = solve_endpoints(C_CR * (1 + 1e-4))
    assert s.a < 1e-2
    assert abs(s.b - 16 / math.pi**2) < 1e-2


def test_c4_endpoints_and_residuals(s4):
    assert s4.a == pytest.approx(0.8356050713349222, rel=1e-10)
    assert s4.b == pytest.approx(1.1358804436007057, rel=1e-10)
    assert max(abs(r) for r in s4.residuals) < 1e-10


def test_closed_form_endpoint_equations(s4):
    # elliptic-integral form of the two endpoint conditions, m = a/b
    a, b, c = s4.a, s4.b, s4.c
    m = a / b
    K, E = ellipk(m), ellipe(m)
    assert abs(2 * K / math.sqrt(b) - c) < 1e-10
    assert abs(-(b - a) * K / (2 * math.sqrt(b)) + math.sqrt(b) * E - 1) < 1e-10


def test_c2_closed_form(s4):
    a, b = s4.a, s4.b
    C2 = ellipe(a / b) / (math.pi * math.sqrt(b) * math.sqrt(b - a))
    assert s4.C2 == pytest.approx(C2, rel=1e-8)


@pytest.mark.parametrize("c", [3.0, 4.0, 8.0])
def test_total_mass(c):
    s = solve_endpoints(c)
    band, _ = quad(lambda x: density(x, s), s.a, s.b, epsabs=1e-14, epsrel=1e-13, limit=200)
    assert abs(math.sqrt(s.a) + band - 1) < 1e-10
    assert abs(ab2_residual(s.a, s.b, c)) < 1e-10


def test_density_branches(s4):
    assert density(2.0 / 1.0, support_for(1.0)) == pytest.approx(1 / (2 * math.pi))
    x = s4.a / 2
    assert density(x, s4) == pytest.approx(0.5 / math.sqrt(x), rel=1e-14)
    assert density(s4.b - 1e-12, s4) < 1e-5
    with pytest.raises(ValueError):
        density(s4.b + 0.1, s4)


def test_density_matches_literal_formula(s4):
    for x in np.linspace(s4.a, s4.b, 7)[1:-1]:
        assert density(x, s4) == pytest.approx(density_two_term(x, s4), rel=1e-9)


def test_edge_slopes(s4):
    a, b = s4.a, s4.b
    t = np.geomspace(1e-6, 1e-3, 8)
    y1 = 0.5 / np.sqrt(a + t) - np.array([density(a + ti, s4) for ti in t])
    y2 = np.array([density(b - ti, s4) for ti in t])
    assert np.polyfit(np.log(t), np.log(y1), 1)[0] == pytest.approx(0.5, abs=0.02)
    assert np.polyfit(np.log(t), np.log(y2), 1)[0] == pytest.approx(0.5, abs=0.02)


def test_edge_constants_positive(s4):
    C1, C2 = edge_constants(s4)
    assert C1 > 0 and C2 > 0


def test_subcritical_rejected():
    with pytest.raises(RegimeError):
        solve_endpoints(2.0)
