"""Time-inhomogeneous geometric stable processes."""

from ._core import (
    Curve,
    ParamCurves,
    accumulated_exponent,
    empirical_cf,
    gs1_terminal,
    gs2_terminal,
    gs_homog_sample,
    laplace_exponent_check,
    levy_gs1_sub,
    levy_gs2_oracle,
    levy_gs2_series,
    mittag_leffler,
    propagate_density,
    psi,
    run_criterion,
    stable_density,
    stable_sample,
    tail_slope,
    vg_inhom_terminal,
)

__all__ = [
    "Curve",
    "ParamCurves",
    "accumulated_exponent",
    "empirical_cf",
    "gs1_terminal",
    "gs2_terminal",
    "gs_homog_sample",
    "laplace_exponent_check",
    "levy_gs1_sub",
    "levy_gs2_oracle",
    "levy_gs2_series",
    "mittag_leffler",
    "propagate_density",
    "psi",
    "run_criterion",
    "stable_density",
    "stable_sample",
    "tail_slope",
    "vg_inhom_terminal",
]
