"""
Non-empty subcomplexes of a pattern G, optionally up to isomorphism.

Subcomplexes are grown level by level: a face of dimension i >= 2 may be
chosen only once its whole boundary was chosen at level i-1. The vertex set
is the union of the chosen faces unless isolated vertices are requested.
Representatives keep G's vertex labels, so each one is a genuine subcomplex
of G.
"""

import logging
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from ..complexes import Face, SimplicialComplex, are_isomorphic, isomorphism_invariant
from ..config import get_settings
from ..exceptions import PatternTooLarge

logger = logging.getLogger(__name__)


def _subsets(items: Sequence[Face]) -> Iterator[Tuple[Face, ...]]:
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def _positive_families(G: SimplicialComplex) -> Iterator[List[Tuple[Face, ...]]]:
    """Downward-closed families of positive-dimensional faces, as per-level tuples."""

    def grow(chosen: List[Tuple[Face, ...]], dim: int) -> Iterator[List[Tuple[Face, ...]]]:
        below = set(chosen[-1])
        options = [
            f
            for f in G.faces(dim)
            if all(f[:j] + f[j + 1 :] in below for j in range(len(f)))
        ]
        for pick in _subsets(options):
            if not pick:
                yield chosen
            else:
                yield from grow(chosen + [pick], dim + 1)

    for edges in _subsets(G.faces(1)):
        if edges:
            yield from grow([edges], 2)


def _as_complex(G: SimplicialComplex, levels: List[Tuple[Face, ...]], extra: Tuple[int, ...]) -> SimplicialComplex:
    vertices = sorted({v for f in levels[0] for v in f} | set(extra))
    return SimplicialComplex(G.vertex_count, [[(v,) for v in vertices], *levels])


def is_subcomplex(H: SimplicialComplex, G: SimplicialComplex) -> bool:
    return all(face in G for face in H.all_faces())


def enumerate_subcomplexes(
    G: SimplicialComplex, *, include_isolated: bool = False, labeled: bool = False
) -> List[SimplicialComplex]:
    """Subcomplexes of G with at least one positive-dimensional face.

    Args:
        G: The pattern.
        include_isolated: Also emit variants padded with isolated vertices of G.
        labeled: Return every labelled subcomplex instead of one per isomorphism class.

    Raises:
        PatternTooLarge: G has too many vertices, or the labelled family exceeds the guard.
    """
    settings = get_settings()
    s0 = len(G.vertices)
    if s0 > settings.subcomplex_max_vertices:
        raise PatternTooLarge(
            f"pattern has {s0} vertices; enumeration is limited to {settings.subcomplex_max_vertices}"
        )

    seen = 0
    labelled: List[SimplicialComplex] = []
    for levels in _positive_families(G):
        used = {v for f in levels[0] for v in f}
        spare = [v for v in G.vertices if v not in used]
        paddings = _subsets(tuple((v,) for v in spare)) if include_isolated else iter([()])
        for pad in paddings:
            seen += 1
            if seen > settings.subcomplex_max_labeled:
                raise PatternTooLarge(
                    f"more than {settings.subcomplex_max_labeled} labelled subcomplexes"
                )
            labelled.append(_as_complex(G, levels, tuple(v[0] for v in pad)))

    if labeled:
        return labelled

    buckets: Dict[Tuple[object, ...], List[SimplicialComplex]] = {}
    classes: List[SimplicialComplex] = []
    for H in labelled:
        bucket = buckets.setdefault(isomorphism_invariant(H), [])
        if any(are_isomorphic(H, other) for other in bucket):
            continue
        bucket.append(H)
        classes.append(H)
    classes.sort(key=lambda H: (H.simplex_counts().counts, H.facets()))
    logger.debug(f"{len(labelled)} labelled subcomplexes of {G!r} fall into {len(classes)} classes")
    return classes
