"""Closed-form growth predictions for M*."""

import math
from fractions import Fraction
from math import comb

from ..complexes import SimplicialComplex, full_simplex
from ..exceptions import InvalidParameters
from ..model import ModelParams, Real


def threshold_cap(n: int, G: SimplicialComplex) -> int:
    """floor(C(n, k+1) / s_k(G))."""
    k = G.dimension
    return comb(n, k + 1) // G.simplex_counts()[k]


def predicted_exponent(k: int, q: int, alpha_q: Real) -> Real:
    """q + 1 - C(k, q) alpha_q, the growth exponent of M* for G = sigma_k."""
    if not 1 <= q <= k:
        raise InvalidParameters(f"need 1 <= q <= k, got q={q}, k={k}")
    if not alpha_q > 0:
        raise InvalidParameters(f"alpha_q must be positive, got {alpha_q}")
    return q + 1 - comb(k, q) * alpha_q


def skeleton_threshold(params: ModelParams, k: int, q: int) -> int:
    """floor(n^{q+1-C(k,q) alpha_q} / C(k+1, q+1)), clipped to the M* cap of sigma_k.

    This is K_H for H the q-skeleton of G = sigma_k, where the optimal weights
    are all equal, and it applies while C(k+1, q+1) m <= n^{q+1}.
    """
    n = params.n
    width = comb(k + 1, q + 1)
    exponent = predicted_exponent(k, q, params.exponent(q))
    cap = threshold_cap(n, full_simplex(k))
    if isinstance(exponent, Fraction):
        a, b = exponent.numerator, exponent.denominator
        if a < 0:
            return 0

        def fits(m: int) -> bool:
            return (width * m) ** b <= n**a

        m = min(cap, math.floor(n ** float(exponent) / width))
        while m < cap and fits(m + 1):
            m += 1
        while m > 0 and not fits(m):
            m -= 1
        return m
    return max(0, min(cap, math.floor(n ** float(exponent) / width)))
