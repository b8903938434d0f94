"""Betti numbers, Morse-inequality slack and free faces."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from ..complexes import SimplicialComplex
from ..exceptions import InvalidParameters
from .linalg import boundary_rank, require_prime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiVector:
    """Unreduced Betti numbers (beta_0, ..., beta_dim) over GF(field_char)."""

    betti: Tuple[int, ...]
    field_char: int = 2

    def __getitem__(self, j: int) -> int:
        return self.betti[j] if 0 <= j < len(self.betti) else 0

    def __len__(self) -> int:
        return len(self.betti)

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * b for j, b in enumerate(self.betti))

    def to_dict(self) -> Dict[str, Any]:
        return {"betti": list(self.betti), "field": self.field_char}


def betti_vector(K: SimplicialComplex, field_char: int = 2) -> BettiVector:
    """beta_j = s_j - rank d_j - rank d_{j+1} for j = 0..dim K.

    Raises:
        InvalidField: ``field_char`` is not prime.
    """
    require_prime(field_char)
    counts = K.simplex_counts()
    ranks: List[int] = [boundary_rank(K, j, field_char) for j in range(K.dimension + 2)]
    betti = tuple(counts[j] - ranks[j] - ranks[j + 1] for j in range(K.dimension + 1))
    logger.debug(f"Betti numbers of {K!r} over GF({field_char}): {betti}")
    return BettiVector(betti=betti, field_char=field_char)


def morse_gap(K: SimplicialComplex, j: int, field_char: int = 2) -> Tuple[int, int]:
    """(beta_j - (s_j - s_{j-1} - s_{j+1}), s_j - beta_j); both are >= 0."""
    if not 0 <= j <= K.dimension + 1:
        raise InvalidParameters(f"dimension {j} outside 0..{K.dimension + 1}")
    counts = K.simplex_counts()
    beta = betti_vector(K, field_char)[j]
    s = counts.get
    lower = beta - (s(j) - (s(j - 1) if j > 0 else 0) - s(j + 1))
    return lower, s(j) - beta


def free_faces(K: SimplicialComplex, j: int) -> List[Tuple[int, ...]]:
    """j-faces contained in no (j+1)-face."""
    covered = set()
    for face in K.faces(j + 1):
        for drop in range(len(face)):
            covered.add(face[:drop] + face[drop + 1 :])
    return [f for f in K.faces(j) if f not in covered]


def free_count(K: SimplicialComplex, j: int) -> int:
    if not 0 <= j <= max(K.dimension, 0):
        raise InvalidParameters(f"dimension {j} outside 0..{K.dimension}")
    return len(free_faces(K, j))
