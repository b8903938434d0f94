"""
Expected copy counts and Psi.

mu_o = (n)_{s_0} prod p_i^{s_i},   mu = mu_o / #Aut(G),   Psi = n^{s_0} prod p_i^{s_i}.

Values are exact fractions when every p_i is rational; otherwise they are
assembled in log space with ``math.fsum`` and exponentiated at the end, giving
``inf`` rather than an overflow error for astronomically large means.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List

from ..complexes import SimplicialComplex
from ..exceptions import InvalidParameters
from ..model import ModelParams, Real
from .copies import pattern_stats


@dataclass(frozen=True)
class Magnitude:
    """A non-negative quantity together with its natural logarithm (``-inf`` for zero)."""

    value: Real
    log: float

    def to_dict(self) -> Dict[str, Any]:
        return {"value": float(self.value), "log": self.log}


def _log_terms(params: ModelParams, G: SimplicialComplex) -> List[float]:
    terms: List[float] = []
    for i, s in enumerate(G.simplex_counts().counts[1:], start=1):
        p = params.probability(i)
        if s == 0:
            continue
        if p == 0:
            return [-math.inf]
        terms.append(s * math.log(p))
    return terms


def _build(base: int, params: ModelParams, G: SimplicialComplex) -> Magnitude:
    if G.dimension > params.k_max:
        raise InvalidParameters(f"pattern dimension {G.dimension} exceeds k_max={params.k_max}")
    counts = G.simplex_counts()
    probs = [params.probability(i) for i in range(1, counts.dimension + 1)]

    terms = _log_terms(params, G)
    if base == 0 or (terms and terms[0] == -math.inf):
        return Magnitude(Fraction(0), -math.inf)
    log_value = math.fsum([math.log(base), *terms])

    if all(isinstance(p, Fraction) for p in probs):
        exact = Fraction(base)
        for p, s in zip(probs, counts.counts[1:]):
            exact *= p**s
        return Magnitude(exact, log_value)
    try:
        value: float = math.exp(log_value)
    except OverflowError:
        value = math.inf
    return Magnitude(value, log_value)


def expected_ordered_magnitude(params: ModelParams, G: SimplicialComplex) -> Magnitude:
    return _build(math.perm(params.n, G.simplex_counts().get(0)), params, G)


def expected_ordered(params: ModelParams, G: SimplicialComplex) -> Real:
    """mu_{o,n}(G) = (n)_{s_0(G)} prod_i p_i^{s_i(G)}."""
    return expected_ordered_magnitude(params, G).value


def expected_unordered(params: ModelParams, G: SimplicialComplex) -> Real:
    """mu_n(G) = mu_{o,n}(G) / #Aut(G)."""
    mu_o = expected_ordered(params, G)
    aut = pattern_stats(G).aut
    return mu_o / aut if isinstance(mu_o, Fraction) else float(mu_o) / aut


def psi(params: ModelParams, G: SimplicialComplex) -> Magnitude:
    """Psi_{G,n} = n^{s_0(G)} prod_i p_i^{s_i(G)}, with its logarithm."""
    return _build(params.n ** G.simplex_counts().get(0), params, G)
