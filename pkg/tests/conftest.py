import functools

import pytest

from dlaguerre.asymptotics import build_asymptotics
from dlaguerre.equilibrium import ModelParams
from dlaguerre.oracle import LatticeMeasure, build_recurrence


@pytest.fixture(scope="session")
def ctx4():
    return build_asymptotics(4.0, 0.0)


@functools.lru_cache(maxsize=None)
def lattice_table(n, c=4.0, alpha=0.0, bits=160):
    return build_recurrence(LatticeMeasure(ModelParams(alpha, c, n, n), 1,
                                           precision_bits=bits), n)


@pytest.fixture(scope="session")
def table():
    return lattice_table
