"""The threshold M* and its closed-form predictions."""

from .fit import ExponentFit, exponent_fit
from .mstar import (
    MODE_ORACLE,
    MODE_SURROGATE,
    SWEEP_COLUMNS,
    MStarResult,
    SweepRow,
    k_h_threshold,
    log_psi,
    mstar,
    sweep,
)
from .predictions import predicted_exponent, skeleton_threshold, threshold_cap

__all__ = [
    "ExponentFit",
    "MODE_ORACLE",
    "MODE_SURROGATE",
    "MStarResult",
    "SWEEP_COLUMNS",
    "SweepRow",
    "exponent_fit",
    "k_h_threshold",
    "log_psi",
    "mstar",
    "predicted_exponent",
    "skeleton_threshold",
    "sweep",
    "threshold_cap",
]
