"""Simplicial homology over prime fields."""

from .betti import BettiVector, betti_vector, free_count, free_faces, morse_gap
from .linalg import boundary_rank, gf2_rank, is_prime, rank_mod_p

__all__ = [
    "BettiVector",
    "betti_vector",
    "boundary_rank",
    "free_count",
    "free_faces",
    "gf2_rank",
    "is_prime",
    "morse_gap",
    "rank_mod_p",
]
