"""
Backtracking search for face-preserving injective vertex maps.

One search routine serves copy counting, isomorphism testing and automorphism
counting. Pattern vertices are visited in a connectivity-first order so that
every newly placed vertex closes as many pattern faces as possible, and host
candidates are filtered by per-dimension vertex degrees.
"""

import logging
from math import factorial
from typing import Callable, Dict, List, Optional, Set, Tuple

from .simplicial import Face, SimplicialComplex, is_full_simplex

logger = logging.getLogger(__name__)


def _search_order(pattern: SimplicialComplex) -> List[int]:
    vertices = list(pattern.vertices)
    if not vertices:
        return []
    neighbours: Dict[int, Set[int]] = {v: set() for v in vertices}
    for u, w in pattern.faces(1):
        neighbours[u].add(w)
        neighbours[w].add(u)

    def weight(v: int) -> Tuple[int, ...]:
        return tuple(-d for d in reversed(pattern.vertex_degrees(v)))

    order: List[int] = []
    placed: Set[int] = set()
    remaining = set(vertices)
    while remaining:
        # Most links into the placed set first, then highest degree, then label.
        v = min(remaining, key=lambda u: (-len(neighbours[u] & placed), weight(u), u))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    return order


def _closing_faces(pattern: SimplicialComplex, order: List[int]) -> List[List[Tuple[int, ...]]]:
    """For each search position, the positive-dimensional faces it completes (as positions)."""
    position = {v: idx for idx, v in enumerate(order)}
    closing: List[List[Tuple[int, ...]]] = [[] for _ in order]
    for i in range(1, pattern.dimension + 1):
        for face in pattern.faces(i):
            positions = tuple(position[v] for v in face)
            closing[max(positions)].append(positions)
    return closing


def _earlier_neighbour(pattern: SimplicialComplex, order: List[int]) -> List[Optional[int]]:
    position = {v: idx for idx, v in enumerate(order)}
    anchor: List[Optional[int]] = [None] * len(order)
    for u, w in pattern.faces(1):
        pu, pw = position[u], position[w]
        lo, hi = min(pu, pw), max(pu, pw)
        if anchor[hi] is None or lo < anchor[hi]:
            anchor[hi] = lo
    return anchor


def _host_adjacency(host: SimplicialComplex) -> Dict[int, List[int]]:
    adjacency: Dict[int, List[int]] = {v: [] for v in host.vertices}
    for u, w in host.faces(1):
        adjacency[u].append(w)
        adjacency[w].append(u)
    return adjacency


def count_embeddings(
    pattern: SimplicialComplex,
    host: SimplicialComplex,
    *,
    limit: Optional[int] = None,
    exact_degrees: bool = False,
    visit: Optional[Callable[[Dict[int, int]], None]] = None,
) -> int:
    """Number of injective vertex maps sending every face of ``pattern`` to a face of ``host``.

    Args:
        pattern: The complex being embedded.
        host: The complex embedded into.
        limit: Stop once this many maps are found.
        exact_degrees: Require equal (not merely dominating) degree profiles;
            only sound when both complexes have the same face counts.
        visit: Called with each map (pattern vertex -> host vertex) as it is found.

    Returns:
        The number of maps found (at most ``limit`` when given).
    """
    if pattern.dimension > host.dimension:
        return 0
    order = _search_order(pattern)
    if not order:
        return 1
    if len(order) > len(host.vertices):
        return 0

    closing = _closing_faces(pattern, order)
    anchor = _earlier_neighbour(pattern, order)
    adjacency = _host_adjacency(host)
    width = pattern.dimension

    def profile(complex_: SimplicialComplex, v: int) -> Tuple[int, ...]:
        degrees = complex_.vertex_degrees(v)
        return tuple(degrees[:width]) + (0,) * (width - len(degrees[:width]))

    host_profiles = {w: profile(host, w) for w in host.vertices}
    candidates: List[List[int]] = []
    for v in order:
        need = profile(pattern, v)
        if exact_degrees:
            pool = [w for w, have in host_profiles.items() if have == need]
        else:
            pool = [
                w for w, have in host_profiles.items() if all(h >= d for h, d in zip(have, need))
            ]
        if not pool:
            return 0
        candidates.append(pool)
    allowed = [set(pool) for pool in candidates]

    image: List[int] = [-1] * len(order)
    used: Set[int] = set()
    found = 0
    stop = limit if limit is not None else -1

    def faces_ok(t: int) -> bool:
        for positions in closing[t]:
            face: Face = tuple(sorted(image[p] for p in positions))
            if face not in host:
                return False
        return True

    def extend(t: int) -> bool:
        nonlocal found
        if t == len(order):
            found += 1
            if visit is not None:
                visit(dict(zip(order, image)))
            return found == stop
        a = anchor[t]
        pool = adjacency[image[a]] if a is not None else candidates[t]
        for w in pool:
            if w in used or w not in allowed[t]:
                continue
            image[t] = w
            if faces_ok(t):
                used.add(w)
                if extend(t + 1):
                    return True
                used.discard(w)
        image[t] = -1
        return False

    extend(0)
    return found


def count_ordered_copies(host: SimplicialComplex, pattern: SimplicialComplex) -> int:
    """Ordered copies of ``pattern`` in ``host``; full simplices use (k+1)!·s_k directly."""
    if is_full_simplex(pattern):
        k = pattern.dimension
        return factorial(k + 1) * host.simplex_counts().get(k)
    return count_embeddings(pattern, host)


def automorphism_count(G: SimplicialComplex) -> int:
    """Vertex permutations of G mapping faces onto faces."""
    if is_full_simplex(G):
        return factorial(G.dimension + 1)
    return count_embeddings(G, G, exact_degrees=True)


def _invariant(K: SimplicialComplex) -> Tuple[object, ...]:
    return (
        K.simplex_counts().counts,
        tuple(sorted(K.vertex_degrees(v) for v in K.vertices)),
    )


def are_isomorphic(A: SimplicialComplex, B: SimplicialComplex) -> bool:
    """True iff a vertex bijection carries the faces of A onto the faces of B."""
    if _invariant(A) != _invariant(B):
        return False
    return count_embeddings(A, B, limit=1, exact_degrees=True) == 1


def isomorphism_invariant(K: SimplicialComplex) -> Tuple[object, ...]:
    """Cheap invariant used to bucket complexes before exact isomorphism tests."""
    return _invariant(K)
