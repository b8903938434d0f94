"""
Critical-dimension diagnostics for p_i = n^{-alpha_i}.

With L_k = sum_{i<=k} C(k, i) alpha_i, the face-count exponents satisfy
tau_{k+1} - tau_k = 1 - L_{k+1}, and L_k is nondecreasing in k. Dimension k
is critical when L_k < 1 < L_{k+1} and q <= k, which makes it the unique
maximiser of tau.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..exceptions import InvalidParameters, NoPositiveExponent
from .params import Real, is_infinite, parse_real

logger = logging.getLogger(__name__)


def _show(x: Real) -> str:
    return "inf" if is_infinite(x) else ("-inf" if x == float("-inf") else str(x))


@dataclass(frozen=True)
class CriticalProfile:
    """q, the tau profile, the critical dimension and the regime conditions."""

    alphas: Tuple[Real, ...]
    q: int
    tau: Tuple[Real, ...]
    k_star: Optional[int]
    degenerate: bool
    subcritical: Dict[int, bool] = field(default_factory=dict)
    new_cond: Dict[int, bool] = field(default_factory=dict)
    new_cond2: Optional[bool] = None

    def tau_at(self, j: int) -> Real:
        return self.tau[j - 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "alphas": [_show(a) for a in self.alphas],
            "q": self.q,
            "tau": [float(t) for t in self.tau],
            "tau_exact": [_show(t) for t in self.tau],
            "k_star": self.k_star if self.k_star is not None else "none",
            "degenerate": self.degenerate,
            "subcritical": {str(k): v for k, v in self.subcritical.items()},
            "new_cond": {str(k): v for k, v in self.new_cond.items()},
            "new_cond2": self.new_cond2,
        }


def _alpha(alphas: Sequence[Real], i: int) -> Real:
    return alphas[i - 1] if i <= len(alphas) else Fraction(0)


def first_positive_index(alphas: Sequence[Real]) -> int:
    """q = min{i >= 1 : alpha_i > 0}."""
    for i, a in enumerate(alphas, start=1):
        if a > 0:
            return i
    raise NoPositiveExponent("all exponents are zero; q is undefined")


def tau(alphas: Sequence[Real], j: int) -> Real:
    """tau_j = j + 1 - sum_{i=1}^{j} C(j+1, i+1) alpha_i."""
    return (j + 1) - sum((comb(j + 1, i + 1) * _alpha(alphas, i) for i in range(1, j + 1)), Fraction(0))


def level_sum(alphas: Sequence[Real], k: int) -> Real:
    """L_k = sum_{i=1}^{k} C(k, i) alpha_i."""
    return sum((comb(k, i) * _alpha(alphas, i) for i in range(1, k + 1)), Fraction(0))


def is_subcritical(alphas: Sequence[Real], k: int, q: int) -> bool:
    return level_sum(alphas, k) < 1 and q <= k


def satisfies_new_cond(alphas: Sequence[Real], k: int, q: int) -> bool:
    """The extra condition needed for q < k, checked for every k0 = q+1..k."""
    if q >= k:
        return True
    head = Fraction(k - q, k + 1) * comb(k + 1, q + 1) * _alpha(alphas, q)
    for k0 in range(q + 1, k + 1):
        tail = sum((comb(k + 1, j + 1) * _alpha(alphas, j) for j in range(q + 1, k0 + 1)), Fraction(0))
        if not head + tail < k0 - q:
            return False
    return True


def satisfies_new_cond2(alphas: Sequence[Real], k_star: int, q: int) -> bool:
    """Betti-number condition, evaluated with the multinomial factor exactly as stated."""
    lhs = sum(
        (comb(k_star + 1, i) * _alpha(alphas, i) for i in range(q, k_star + 2)), Fraction(0)
    ) - 1
    coefficient = Fraction(
        q * factorial(k_star + 2),
        factorial(q + 1) * factorial(k_star + 1 - q) * (k_star + 1),
    )
    return lhs >= coefficient * _alpha(alphas, q)


def critical_profile(alphas: Sequence[Real], k_max: int) -> CriticalProfile:
    """Evaluate q, tau_1..tau_kmax, k* and the regime flags.

    Exponents beyond the supplied vector count as zero. Boundary equality in
    the criticality condition yields ``k_star=None`` with ``degenerate=True``.
    """
    if k_max < 1:
        raise InvalidParameters(f"k_max must be >= 1, got {k_max}")
    values = tuple(parse_real(a) if not isinstance(a, float) else a for a in alphas)
    if any(a < 0 for a in values):
        raise InvalidParameters("exponents must be non-negative")
    q = first_positive_index(values)

    taus = tuple(tau(values, j) for j in range(1, k_max + 1))
    subcritical = {k: is_subcritical(values, k, q) for k in range(1, k_max + 1)}
    new_cond = {k: satisfies_new_cond(values, k, q) for k in range(1, k_max + 1)}

    k_star: Optional[int] = None
    degenerate = False
    boundary: List[int] = []
    for k in range(max(q, 1), k_max + 1):
        lo, hi = level_sum(values, k), level_sum(values, k + 1)
        if lo < 1 < hi:
            k_star = k
            break
        if lo <= 1 <= hi:
            boundary.append(k)
    if k_star is None and boundary:
        degenerate = True
        logger.warning(f"Criticality holds only with equality at k={boundary}; k* left undefined")

    new_cond2 = satisfies_new_cond2(values, k_star, q) if k_star is not None and q <= k_star else None
    return CriticalProfile(
        alphas=values,
        q=q,
        tau=taus,
        k_star=k_star,
        degenerate=degenerate,
        subcritical=subcritical,
        new_cond=new_cond,
        new_cond2=new_cond2,
    )


def regime_verified(alphas: Sequence[Real], k: int, q: int) -> bool:
    """Whether the M* growth prediction for sigma_k is established at these exponents.

    Subcriticality alone suffices up to k = 3; beyond that the extra condition is needed.
    """
    if not is_subcritical(alphas, k, q):
        return False
    return k <= 3 or satisfies_new_cond(alphas, k, q)
