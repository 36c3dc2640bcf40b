"""Blind separation of an additive-target nonlinear mixture of two positive sources.

The compiled extension exposes the mixing model, the recurrent separating
structure with its fixed-point solver, kernel-density score and spacing
entropy estimators, the corrected gradient of the separation criterion (with
the naive partial-only variant for comparison), a gradient-descent trainer,
and separation quality metrics.
"""

from atmbss._core import (
    criterion_value,
    evaluate_separation,
    fd_entropy_term,
    fd_jacobian_term,
    generate_sources,
    gradient,
    jacobian,
    jacobian_partials,
    jacobian_total_derivatives,
    kde_density,
    kde_score,
    loop_gain,
    mix,
    output_sensitivities,
    separate,
    silverman_bandwidth,
    train,
    vasicek_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "criterion_value",
    "evaluate_separation",
    "fd_entropy_term",
    "fd_jacobian_term",
    "generate_sources",
    "gradient",
    "jacobian",
    "jacobian_partials",
    "jacobian_total_derivatives",
    "kde_density",
    "kde_score",
    "loop_gain",
    "mix",
    "output_sensitivities",
    "separate",
    "silverman_bandwidth",
    "train",
    "vasicek_entropy",
]
