"""Copy counts of a pattern G inside a host complex."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict

from ..complexes import (
    SimplexCountVector,
    SimplicialComplex,
    automorphism_count,
    count_ordered_copies,
)
from ..exceptions import CountInvariantViolated


@dataclass(frozen=True)
class PatternStats:
    """Cached facts about a pattern complex G."""

    pattern: SimplicialComplex
    aut: int
    s: SimplexCountVector

    @property
    def dimension(self) -> int:
        return self.pattern.dimension

    def to_dict(self) -> Dict[str, Any]:
        return {"pattern": self.pattern.to_dict(), "aut": self.aut, "s": self.s.to_list()}


@lru_cache(maxsize=512)
def pattern_stats(G: SimplicialComplex) -> PatternStats:
    return PatternStats(pattern=G, aut=automorphism_count(G), s=G.simplex_counts())


def count_ordered(host: SimplicialComplex, G: SimplicialComplex) -> int:
    """Injective vertex maps G -> host carrying every i-face of G onto an i-face of host."""
    return count_ordered_copies(host, G)


def count_unordered(host: SimplicialComplex, G: SimplicialComplex) -> int:
    """Subcomplexes of host isomorphic to G: ordered count divided by #Aut(G)."""
    ordered = count_ordered(host, G)
    aut = pattern_stats(G).aut
    if ordered % aut:
        raise CountInvariantViolated(f"ordered count {ordered} is not a multiple of #Aut={aut}")
    return ordered // aut
