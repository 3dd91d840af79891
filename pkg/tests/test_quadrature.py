import math

import numpy as np
import pytest

from dlaguerre.quadrature import EndpointSpec, graded_rule, integrate


def test_inverse_sqrt():
    r = integrate(lambda x: x**-0.5, 0.0, 1.0, EndpointSpec(-0.5, 0.0))
    assert abs(r.value - 2.0) < 1e-12


def test_beta_integral():
    r = integrate(lambda x: np.sqrt((1 - x) / x), 0.0, 1.0, EndpointSpec(-0.5, 0.5))
    assert abs(r.value - math.pi / 2) < 1e-12


def test_marchenko_pastur_mass():
    c = 1.0
    f = lambda x: c / (2 * math.pi) * np.sqrt((4 - c * x) / (c * x))
    r = integrate(f, 0.0, 4 / c, EndpointSpec(-0.5, 0.5))
    assert abs(r.value - 1.0) < 1e-12


def test_endpoint_spec_rejects_nonintegrable():
    with pytest.raises(ValueError):
        EndpointSpec(-1.0, 0.0)


def test_graded_rule_log_singularity():
    # int_0^1 log|x - 0.3| dx, singular node inside
    x0 = 0.3
    exact = (1 - x0) * math.log(1 - x0) + x0 * math.log(x0) - 1
    th, w, off = graded_rule(0.0, 1.0, x0, offsets=True)
    assert abs(np.dot(w, np.log(np.abs(off))) - exact) < 1e-10


def test_graded_rule_offsets_match_nodes():
    th, w, off = graded_rule(0.0, 1.0, 0.3, offsets=True)
    assert np.allclose(th, 0.3 + off, atol=1e-15)
    assert abs(w.sum() - 1.0) < 1e-13
