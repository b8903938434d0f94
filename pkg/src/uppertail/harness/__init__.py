"""Monte Carlo tail experiments and exponent prediction tables."""

from .config import PatternSpec, TailExperimentConfig, TailTarget
from .records import TRIAL_COLUMNS, ExperimentRecord, ExponentWindow, TrialRow, TrialSummary
from .report import (
    REPORT_COLUMNS,
    UNVERIFIED,
    ExponentReport,
    ReportMode,
    ReportRow,
    exponent_report,
    lower_bound_applicable,
)
from .runner import MeanCheck, epsilon_sweep, mean_check, run_trials, tail_estimate
from .stats import edge_tail_probability, edge_threshold, log_probability, wilson_interval

__all__ = [
    "ExperimentRecord",
    "ExponentReport",
    "ExponentWindow",
    "MeanCheck",
    "PatternSpec",
    "REPORT_COLUMNS",
    "ReportMode",
    "ReportRow",
    "TRIAL_COLUMNS",
    "TailExperimentConfig",
    "TailTarget",
    "TrialRow",
    "TrialSummary",
    "UNVERIFIED",
    "edge_tail_probability",
    "edge_threshold",
    "epsilon_sweep",
    "exponent_report",
    "log_probability",
    "lower_bound_applicable",
    "mean_check",
    "run_trials",
    "tail_estimate",
    "wilson_interval",
]
