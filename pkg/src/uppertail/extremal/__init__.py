"""The vertex-weight program, its dual, the blow-up witness and the brute-force oracle."""

from .backends import HighsBackend, LPBackend, TableauBackend, create_lp_backend
from .gamma import (
    DualityReport,
    DualPoint,
    ExtremalQuery,
    SandwichBounds,
    blowup_witness,
    compare_lemma_gap,
    n_hat_bounds,
    skeleton_dual_certificate,
    solve_gamma,
    verify_certificate,
    witness_constant,
)
from .logvalue import LogValue
from .oracle import brute_force_N, graph_classes
from .program import LPInstance, LPSolution, Scalar, SolveMode

__all__ = [
    "DualPoint",
    "DualityReport",
    "ExtremalQuery",
    "HighsBackend",
    "LPBackend",
    "LPInstance",
    "LPSolution",
    "LogValue",
    "SandwichBounds",
    "Scalar",
    "SolveMode",
    "TableauBackend",
    "blowup_witness",
    "brute_force_N",
    "compare_lemma_gap",
    "create_lp_backend",
    "graph_classes",
    "n_hat_bounds",
    "skeleton_dual_certificate",
    "solve_gamma",
    "verify_certificate",
    "witness_constant",
]
