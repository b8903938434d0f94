"""
Sampling K(n; p_1, ..., p_kmax).

Level i keeps each (i+1)-set whose whole boundary survived level i-1, with
probability p_i. The uniform deciding a face is a pure function of
(seed, stream, dimension, colex rank of the face): it is read from a Philox
stream keyed by ``SeedSequence(seed, spawn_key=(*stream, dim))`` at the
face's rank. Decisions therefore do not depend on the order in which
candidates are enumerated.
"""

import logging
from math import comb
from typing import Any, Dict, List, Sequence, Set, Tuple

import numpy as np

from ..complexes import Face, SimplicialComplex
from ..config import get_settings
from ..exceptions import InvalidParameters
from .params import ModelParams

logger = logging.getLogger(__name__)

# Above this many potential faces in one dimension, uniforms are read face by
# face with Philox.advance instead of streaming the whole rank range.
_STREAM_LIMIT = 1 << 31

_PHILOX_WORDS = 4
_INT64_MAX = int(np.iinfo(np.int64).max)


def colex_rank(face: Sequence[int]) -> int:
    """Rank of an ascending tuple among all subsets of its size, colexicographically."""
    return sum(comb(v, j + 1) for j, v in enumerate(face))


def _bit_generator(seed: int, stream: Tuple[int, ...], dim: int) -> np.random.Philox:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(*stream, dim))
    return np.random.Philox(ss)


def _uniform_at(state: Dict[str, Any], rank: int) -> float:
    """The uniform a fresh generator in ``state`` would return as its rank-th draw."""
    jumper = np.random.Philox()
    jumper.state = state
    # One counter step yields _PHILOX_WORDS 64-bit outputs, and each double uses one output.
    block, offset = divmod(rank, _PHILOX_WORDS)
    jumper.advance(block)
    return float(np.random.Generator(jumper).random(offset + 1)[-1])


def face_uniforms(
    seed: int, stream: Tuple[int, ...], dim: int, ranks: np.ndarray, total: int
) -> np.ndarray:
    """Uniforms in [0, 1) for the faces with the given colex ranks.

    The face of rank r always receives the r-th draw of its dimension's stream,
    whether the stream is read in chunks or jumped to directly.
    """
    if ranks.size == 0:
        return np.empty(0, dtype=np.float64)
    bg = _bit_generator(seed, stream, dim)

    if total > _STREAM_LIMIT:
        state = bg.state
        return np.array([_uniform_at(state, int(r)) for r in ranks.tolist()], dtype=np.float64)

    gen = np.random.Generator(bg)
    chunk = max(1, get_settings().uniform_chunk)
    if total <= chunk:
        return gen.random(total)[ranks]

    order = np.argsort(ranks, kind="stable")
    sorted_ranks = ranks[order]
    picked = np.empty(ranks.size, dtype=np.float64)
    start = 0
    cursor = 0
    while start < total and cursor < sorted_ranks.size:
        size = min(chunk, total - start)
        block = gen.random(size)
        stop = np.searchsorted(sorted_ranks, start + size, side="left")
        picked[cursor:stop] = block[sorted_ranks[cursor:stop] - start]
        cursor = stop
        start += size
    out = np.empty_like(picked)
    out[order] = picked
    return out


def _edge_level(n: int, p: float, seed: int, stream: Tuple[int, ...]) -> List[Face]:
    if n < 2:
        return []
    total = comb(n, 2)
    if p >= 1.0:
        return [(u, w) for u in range(n) for w in range(u + 1, n)]
    u_idx, w_idx = np.triu_indices(n, k=1)
    ranks = w_idx * (w_idx - 1) // 2 + u_idx
    keep = face_uniforms(seed, stream, 1, ranks.astype(np.int64), total) < p
    return [(int(u), int(w)) for u, w in zip(u_idx[keep], w_idx[keep])]


def _candidates(previous: List[Face], present: Set[Face], upper: Dict[int, Set[int]]) -> List[Face]:
    """(i+1)-sets whose full boundary lies in ``present`` (the (i-1)-faces)."""
    out: List[Face] = []
    for tau in previous:
        common = set(upper[tau[-1]])
        for v in tau[:-1]:
            common &= upper[v]
            if not common:
                break
        for w in sorted(common):
            candidate = tau + (w,)
            if all(
                candidate[:j] + candidate[j + 1 :] in present for j in range(len(tau))
            ):
                out.append(candidate)
    return out


def sample(params: ModelParams, seed: int, *, stream: Tuple[int, ...] = ()) -> SimplicialComplex:
    """Draw one complex; identical (params, seed, stream) give identical complexes.

    Args:
        params: Model parameters.
        seed: Non-negative 64-bit seed.
        stream: Extra key components, e.g. ``(trial,)`` for per-trial streams.
    """
    if seed < 0:
        raise InvalidParameters(f"seed must be non-negative, got {seed}")
    n = params.n
    levels: List[List[Face]] = [[(v,) for v in range(n)]]

    p1 = float(params.probability(1))
    edges = _edge_level(n, p1, seed, stream) if p1 > 0 else []
    if edges:
        levels.append(edges)
    upper: Dict[int, Set[int]] = {v: set() for v in range(n)}
    for u, w in edges:
        upper[u].add(w)

    for i in range(2, params.k_max + 1):
        p = float(params.probability(i))
        if p <= 0 or len(levels) < i:
            break
        previous = levels[i - 1]
        candidates = _candidates(previous, set(previous), upper)
        if not candidates:
            break
        if p >= 1.0:
            kept = candidates
        else:
            total = comb(n, i + 1)
            # Ranks beyond int64 stay Python ints; they only occur on the jump path.
            rank_type = np.int64 if total <= _INT64_MAX else object
            ranks = np.array([colex_rank(c) for c in candidates], dtype=rank_type)
            draws = face_uniforms(seed, stream, i, ranks, total)
            kept = [c for c, x in zip(candidates, draws) if x < p]
        if not kept:
            break
        levels.append(kept)

    K = SimplicialComplex(n, levels)
    logger.debug(f"Sampled {K!r} (seed={seed}, stream={stream})")
    return K
