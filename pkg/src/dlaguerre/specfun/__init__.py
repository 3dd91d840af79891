"""Special functions and the scalar parametrix ingredients."""
from .airy import AiryValues, airy
from .branches import clog, cpow, csqrt, zhalf
from .loggamma import log_gamma, stirling_remainder
from .parametrix import (
    OutsideRadiusError,
    ParametrixContext,
    H,
    H_star,
    build_parametrix,
    conformal_f,
    conformal_ftilde,
    eta,
    gamma_map,
    log_H,
    script_N,
    szego_D,
    working_radius,
)
