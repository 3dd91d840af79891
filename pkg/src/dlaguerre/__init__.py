"""Discrete Laguerre polynomials on a quadratic lattice.

An extended-precision oracle for the orthogonal polynomials, the
constrained equilibrium measure behind their large-degree behaviour, and
evaluators for the leading-order asymptotic formulas in each region.
"""
from .asymptotics import (
    REGIMES,
    asym_norm_and_recurrence,
    build_asymptotics,
    classify,
    coefficients,
    pn_asym,
)
from .equilibrium import (
    C_CR,
    ModelParams,
    RegimeError,
    SolverError,
    SupportData,
    density,
    solve_endpoints,
    support_for,
)
from .gfield import build_context, g_boundary, g_value, variational_gap
from .harness import RunConfig, run_comparison, run_convergence, run_table1
from .oracle import (
    LatticeMeasure,
    ScaledValue,
    build_recurrence,
    eval_poly,
    zeros,
)

__version__ = "0.1.0"
