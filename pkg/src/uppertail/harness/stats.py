"""Interval estimates and the exact binomial oracle for the edge pattern."""

import math
from fractions import Fraction
from math import ceil, comb
from typing import Optional, Tuple

from scipy.stats import binom, norm

from ..exceptions import InvalidRange
from ..model import Real


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Raises:
        InvalidRange: ``trials < 1``, ``successes`` outside 0..trials, or confidence not in (0, 1).
    """
    if trials < 1:
        raise InvalidRange(f"need at least one trial, got {trials}")
    if not 0 <= successes <= trials:
        raise InvalidRange(f"successes={successes} outside 0..{trials}")
    if not 0 < confidence < 1:
        raise InvalidRange(f"confidence must lie in (0, 1), got {confidence}")
    z = float(norm.ppf(0.5 + confidence / 2))
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def edge_threshold(n: int, p: Real, epsilon: Real) -> int:
    """Smallest edge count e with 2e >= (1 + epsilon) * n(n-1)p."""
    target = (1 + Fraction(epsilon)) * comb(n, 2) * Fraction(p)
    return ceil(target)


def edge_tail_probability(n: int, p: Real, epsilon: Real) -> float:
    """P(2 * Bin(C(n,2), p) >= (1 + epsilon) * n(n-1)p), the exact ordered edge-count tail."""
    trials = comb(n, 2)
    threshold = edge_threshold(n, p, epsilon)
    if threshold <= 0:
        return 1.0
    if threshold > trials:
        return 0.0
    return float(binom.sf(threshold - 1, trials, float(p)))


def log_probability(successes: int, trials: int) -> Optional[float]:
    """ln of the empirical frequency; None when no trial exceeded the threshold."""
    if successes <= 0:
        return None
    return math.log(successes / trials)


def n_power(n: int, exponent: Real) -> Real:
    """n**exponent, exact for integer exponents."""
    if isinstance(exponent, Fraction) and exponent.denominator == 1:
        return Fraction(n) ** exponent.numerator
    return float(n) ** float(exponent)
