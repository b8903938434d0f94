"""Closed-form face statistics of K(n; p)."""

from fractions import Fraction
from math import comb
from typing import Optional

from ..exceptions import InvalidParameters
from .critical import first_positive_index
from .params import ModelParams, Real


def _product(params: ModelParams, lo: int, hi: int, exponent) -> Real:
    out: Real = Fraction(1)
    for i in range(lo, hi + 1):
        out = out * params.probability(i) ** exponent(i)
    return out


def face_presence_probability(params: ModelParams, j: int) -> Real:
    """Probability that a fixed (j+1)-set is a face: prod_{i=1}^{j} p_i^{C(j+1, i+1)}."""
    if j < 0:
        raise InvalidParameters(f"dimension must be >= 0, got {j}")
    return _product(params, 1, j, lambda i: comb(j + 1, i + 1))


def mean_face_count(params: ModelParams, j: int) -> Real:
    """E[s_j] = C(n, j+1) * prod_{i=1}^{j} p_i^{C(j+1, i+1)}."""
    return comb(params.n, j + 1) * face_presence_probability(params, j)


def free_simplex_probability(
    params: ModelParams, k_star: int, m: int, q: Optional[int] = None
) -> Real:
    """Probability that a fixed (k*+1)-set in a full q-skeleton on m vertices is a free k*-face.

    The set must be a face, no other vertex of the m-set may extend it using
    only faces above dimension q, and no outside vertex may extend it at all.
    """
    if q is None:
        q = first_positive_index(params.exponents())
    if not 1 <= q <= k_star:
        raise InvalidParameters(f"need 1 <= q <= k*, got q={q}, k*={k_star}")
    if not k_star + 1 <= m <= params.n:
        raise InvalidParameters(f"need k*+1 <= m <= n, got m={m}")
    present = _product(params, q + 1, k_star, lambda i: comb(k_star + 1, i + 1))
    inside = _product(params, q + 1, k_star + 1, lambda i: comb(k_star + 1, i))
    outside = _product(params, q, k_star + 1, lambda i: comb(k_star + 1, i))
    return present * (1 - inside) ** (m - k_star - 1) * (1 - outside) ** (params.n - m)
