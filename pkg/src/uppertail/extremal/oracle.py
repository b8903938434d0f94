"""
Exhaustive extremal parameter N(m_0, m_1, m_2; G) for tiny budgets.

Copy counts only grow as faces are added, so an optimal F may use exactly
m_0 vertices and min(m_1, C(m_0, 2)) edges. Graphs of that size are generated
one isomorphism class at a time by adding edges to class representatives of
the previous size. For a 2-dimensional G every copy in the 1-skeleton needs a
fixed set of triangles; the best triangle budget is then chosen over those
requirement masks.
"""

import logging
from collections import Counter
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

from ..complexes import (
    SimplicialComplex,
    are_isomorphic,
    count_embeddings,
    isomorphism_invariant,
)
from ..config import get_settings
from ..counting import count_unordered, pattern_stats
from ..exceptions import InvalidRange, OracleTooLarge
from .gamma import ExtremalQuery

logger = logging.getLogger(__name__)


def _integer_bounds(query: ExtremalQuery) -> List[int]:
    values = []
    for i in range(len(query.bounds)):
        m = query.bound_value(i)
        if isinstance(m, float) or m.denominator != 1 or m < 0:
            raise InvalidRange(f"the oracle needs non-negative integer bounds, got m_{i}={m}")
        values.append(int(m))
    return values


def graph_classes(n: int, edges: int) -> List[SimplicialComplex]:
    """One representative per isomorphism class of graphs on n vertices with ``edges`` edges."""
    vertices = [(v,) for v in range(n)]
    pairs = list(combinations(range(n), 2))
    reps: List[SimplicialComplex] = [SimplicialComplex(n, [vertices])]
    for _ in range(edges):
        buckets: Dict[Tuple[object, ...], List[SimplicialComplex]] = {}
        grown: List[SimplicialComplex] = []
        for rep in reps:
            present = set(rep.faces(1))
            for pair in pairs:
                if pair in present:
                    continue
                candidate = SimplicialComplex(n, [vertices, [*present, pair]])
                bucket = buckets.setdefault(isomorphism_invariant(candidate), [])
                if any(are_isomorphic(candidate, other) for other in bucket):
                    continue
                bucket.append(candidate)
                grown.append(candidate)
        reps = grown
    return reps


def _best_triangle_choice(masks: Counter, useful: List[int], budget: int) -> int:
    """max over triangle sets S with |S| <= budget of sum_{mask subset of S} masks[mask]."""
    if budget >= len(useful):
        return sum(masks.values())
    if all(bin(mask).count("1") == 1 for mask in masks):
        return sum(sorted(masks.values(), reverse=True)[:budget])
    best = 0
    for chosen in combinations(useful, budget):
        S = 0
        for t in chosen:
            S |= 1 << t
        best = max(best, sum(c for mask, c in masks.items() if mask & ~S == 0))
    return best


def brute_force_N(query: ExtremalQuery) -> int:
    """Exact max of the unordered copy count of G over complexes within the budgets.

    Raises:
        OracleTooLarge: m_0 or dim(G) exceeds the configured guard.
        InvalidRange: A bound is not an integer.
    """
    settings = get_settings()
    G = query.pattern
    bounds = _integer_bounds(query)
    m0 = bounds[0]
    if m0 > settings.oracle_max_vertices or G.dimension > settings.oracle_max_dim:
        raise OracleTooLarge(
            f"oracle limited to m_0 <= {settings.oracle_max_vertices} and dim <= "
            f"{settings.oracle_max_dim}; got m_0={m0}, dim={G.dimension}"
        )
    stats = pattern_stats(G)
    if any(stats.s[i] > bounds[i] for i in range(len(bounds))):
        return 0

    vertices = [(v,) for v in range(m0)]
    if G.dimension == 0:
        return count_unordered(SimplicialComplex(m0, [vertices]), G)

    edge_budget = min(bounds[1], comb(m0, 2))
    skeleton = G.skeleton(1)
    triangles = G.faces(2)
    best = 0
    for graph in graph_classes(m0, edge_budget):
        if G.dimension == 1:
            best = max(best, count_unordered(graph, G))
            continue

        available = [t for t in combinations(range(m0), 3) if all(e in graph for e in combinations(t, 2))]
        index = {t: i for i, t in enumerate(available)}
        masks: Counter = Counter()

        def record(image: Dict[int, int]) -> None:
            mask = 0
            for tri in triangles:
                target = tuple(sorted(image[v] for v in tri))
                if target not in index:
                    return
                mask |= 1 << index[target]
            masks[mask] += 1

        count_embeddings(skeleton, graph, visit=record)
        if not masks:
            continue
        useful = sorted({i for mask in masks for i in range(len(available)) if mask >> i & 1})
        ordered = _best_triangle_choice(masks, useful, bounds[2])
        best = max(best, ordered // stats.aut)

    logger.debug(f"Oracle N{tuple(bounds)} for {G!r} = {best}")
    return best
