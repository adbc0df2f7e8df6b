"""Stability criteria for continuous- and discrete-time delay systems."""

from .continuous import (
    ContinuousCertifier,
    DominanceCheck,
    alpha_max_profile,
    certificate_from_window,
    check_cor2,
    check_cor4,
    check_necessity,
    check_thm1,
    check_thm2,
    check_thm2_applicability,
    check_thm3,
    comparison_matrix,
    condition_vectors,
    find_certificate_thm1,
    find_certificate_thm2,
    find_certificate_thm3,
    find_rate_window_cor2,
    necessity_violated,
)
from .discrete import (
    DiscreteCertifier,
    check_thm4,
    check_thm5,
    find_certificate_cor5,
    find_certificate_thm5,
    lambda_max_profile,
)

__all__ = [
    # Continuous time
    "ContinuousCertifier", "DominanceCheck", "alpha_max_profile", "certificate_from_window",
    "check_cor2", "check_cor4", "check_necessity", "check_thm1", "check_thm2",
    "check_thm2_applicability", "check_thm3", "comparison_matrix", "condition_vectors",
    "find_certificate_thm1", "find_certificate_thm2", "find_certificate_thm3",
    "find_rate_window_cor2", "necessity_violated",
    # Discrete time
    "DiscreteCertifier", "check_thm4", "check_thm5", "find_certificate_cor5",
    "find_certificate_thm5", "lambda_max_profile",
]
