"""
Prediction tables for the upper-tail exponent.

Nothing is simulated here: each row combines M* with the closed-form
exponent to give the log-probability scales that bracket ln P at that n.
Rows outside the proven regime are flagged rather than dropped.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..complexes import SimplicialComplex, is_full_simplex
from ..exceptions import NoPositiveExponent
from ..model import (
    ModelParams,
    Real,
    critical_profile,
    first_positive_index,
    is_infinite,
    regime_verified,
    tau,
)
from ..threshold import mstar, predicted_exponent
from .records import ExponentWindow
from .stats import n_power

logger = logging.getLogger(__name__)

UNVERIFIED = "unverified regime"
NO_EXPONENT = "no closed-form exponent"

REPORT_COLUMNS = [
    "n",
    "mstar",
    "upper_scale",
    "lower_scale",
    "exponent",
    "window_lower",
    "window_upper",
    "mean_scale",
    "lower_bound_applicable",
    "flag",
]


class ReportMode(str, Enum):
    SIMPLEX = "simplex"
    BETTI = "betti"


def lower_bound_applicable(params: ModelParams, G: SimplicialComplex, epsilon: Real) -> bool:
    """(1 + epsilon) prod_j p_j^{s_j(G)} <= 1."""
    product: Real = Fraction(1)
    for j, s in enumerate(G.simplex_counts().to_list()[1:], start=1):
        product = product * params.probability(j) ** s
    return (1 + epsilon) * product <= 1


@dataclass(frozen=True)
class ReportRow:
    n: int
    mstar: Optional[int] = None
    log_inverse_probability: Optional[float] = None
    window: Optional[ExponentWindow] = None
    mean_scale: Optional[float] = None
    lower_bound: Optional[bool] = None
    flags: Tuple[str, ...] = ()

    @property
    def upper_scale(self) -> Optional[float]:
        """-M*, the scale of the upper bound on ln P."""
        return None if self.mstar is None else -float(self.mstar)

    @property
    def lower_scale(self) -> Optional[float]:
        """-M* ln(1 / prod p_j^{s_j}), the scale of the lower bound on ln P."""
        if self.mstar is None or self.log_inverse_probability is None:
            return None
        return -self.mstar * self.log_inverse_probability

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mstar": self.mstar,
            "upper_scale": self.upper_scale,
            "lower_scale": self.lower_scale,
            "exponent": self.window.exponent if self.window else None,
            "window_lower": self.window.lower if self.window else None,
            "window_upper": self.window.upper if self.window else None,
            "mean_scale": self.mean_scale,
            "lower_bound_applicable": self.lower_bound,
            "flag": ";".join(self.flags),
        }


@dataclass(frozen=True)
class ExponentReport:
    mode: ReportMode
    exponent: Optional[float]
    verified: bool
    epsilon: Real
    rows: List[ReportRow] = field(default_factory=list)
    critical_dimension: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "exponent": self.exponent,
            "regime_verified": self.verified,
            "epsilon": str(self.epsilon),
            "critical_dimension": self.critical_dimension,
            "rows": [r.to_dict() for r in self.rows],
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.rows]


def _padded(alphas: Sequence[Real], length: int) -> List[Real]:
    return list(alphas) + [Fraction(0)] * max(0, length - len(alphas))


def _log_inverse_probability(G: SimplicialComplex, alphas: Sequence[Real], n: int) -> float:
    """ln(1 / prod_j p_j^{s_j(G)}) = sum_j s_j alpha_j ln n."""
    total = 0.0
    for j, s in enumerate(G.simplex_counts().to_list()[1:], start=1):
        if s == 0:
            continue
        a = alphas[j - 1]
        if is_infinite(a):
            return math.inf
        total += s * float(a)
    return total * math.log(n)


def _simplex_report(
    G: SimplicialComplex, alphas: Sequence[Real], n_grid: Sequence[int], epsilon: Real, threads: Optional[int]
) -> ExponentReport:
    k = G.dimension
    padded = _padded(alphas, k)
    exponent: Optional[float] = None
    verified = False
    try:
        q = first_positive_index(padded[:k])
        if is_full_simplex(G):
            exponent = float(predicted_exponent(k, q, padded[q - 1]))
            verified = regime_verified(padded, k, q)
    except NoPositiveExponent:
        pass
    flags: Tuple[str, ...] = ()
    if exponent is None:
        flags = (NO_EXPONENT,)
    elif not verified:
        flags = (UNVERIFIED,)
        logger.warning(f"alphas={list(alphas)} lie outside the proven regime for dimension {k}")

    k_max = max(k, len(alphas))
    rows = []
    for n in n_grid:
        params = ModelParams(n=n, k_max=k_max, alphas=tuple(padded[:k_max]))
        value = mstar(params, G, threads=threads).value
        rows.append(
            ReportRow(
                n=n,
                mstar=value,
                log_inverse_probability=_log_inverse_probability(G, padded, n),
                window=ExponentWindow(exponent, n, verified) if exponent is not None else None,
                lower_bound=lower_bound_applicable(params, G, epsilon),
                flags=flags,
            )
        )
        logger.info(f"report n={n}: M*={value}")
    return ExponentReport(ReportMode.SIMPLEX, exponent, verified, epsilon, rows)


def _betti_report(
    G: SimplicialComplex, alphas: Sequence[Real], n_grid: Sequence[int], epsilon: Real
) -> ExponentReport:
    k_max = max(len(alphas), G.dimension, 1)
    profile = critical_profile(alphas, k_max)
    k_star = profile.k_star
    exponent: Optional[float] = None
    verified = False
    flags: Tuple[str, ...] = (NO_EXPONENT,)
    if k_star is not None:
        q = profile.q
        exponent = float(predicted_exponent(k_star, q, profile.alphas[q - 1]))
        verified = bool(profile.new_cond2)
        flags = () if verified else (UNVERIFIED,)
        if not verified:
            logger.warning(f"Betti condition fails at k*={k_star}; window is unverified")

    rows = []
    for n in n_grid:
        mean_scale = None
        if k_star is not None:
            mean_scale = float(n_power(n, tau(profile.alphas, k_star)) / factorial(k_star + 1))
        rows.append(
            ReportRow(
                n=n,
                window=ExponentWindow(exponent, n, verified) if exponent is not None else None,
                mean_scale=mean_scale,
                flags=flags,
            )
        )
    return ExponentReport(ReportMode.BETTI, exponent, verified, epsilon, rows, critical_dimension=k_star)


def exponent_report(
    pattern: SimplicialComplex,
    alphas: Sequence[Real],
    n_grid: Sequence[int],
    epsilon: Real,
    *,
    mode: ReportMode = ReportMode.SIMPLEX,
    threads: Optional[int] = None,
) -> ExponentReport:
    """Per-n table of M*, the tail-bracket scales and the closed-form exponent window.

    In betti mode the exponent is q + 1 - C(k*, q) alpha_q at the critical
    dimension k*, and M* is not computed.
    """
    if mode == ReportMode.BETTI:
        return _betti_report(pattern, alphas, n_grid, epsilon)
    return _simplex_report(pattern, alphas, n_grid, epsilon, threads)
