"""Least-squares growth exponent of M* over an n grid."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from ..complexes import SimplicialComplex
from ..exceptions import InvalidRange
from ..model import Real, is_subcritical, regime_verified, satisfies_new_cond
from .mstar import sweep
from .predictions import predicted_exponent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExponentFit:
    """Slope of ln M* against ln n, with the predicted exponent and regime flags."""

    slope: float
    intercept: float
    residual: float
    predicted: Optional[float]
    subcritical: bool
    new_cond: bool
    verified: bool
    points: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def deviation(self) -> Optional[float]:
        return None if self.predicted is None else self.slope - self.predicted

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "predicted_exponent": self.predicted,
            "deviation": self.deviation,
            "subcritical": self.subcritical,
            "new_cond": self.new_cond,
            "regime_verified": self.verified,
            "points": self.points,
        }


def exponent_fit(
    G: SimplicialComplex,
    alphas: Sequence[Real],
    n_grid: Sequence[int],
    *,
    threads: Optional[int] = None,
) -> ExponentFit:
    """Least-squares slope of ln M*(n) on ln n over ``n_grid``.

    Violated regime conditions are reported in the flags; the fit is computed anyway.

    Raises:
        InvalidRange: Fewer than 4 grid points, or M* = 0 on all but one of them.
    """
    if len(n_grid) < 4:
        raise InvalidRange(f"need at least 4 grid points, got {len(n_grid)}")
    k = G.dimension
    padded = list(alphas) + [Fraction(0)] * max(0, k - len(alphas))
    q = next((i for i in range(1, k + 1) if padded[i - 1] > 0), None)
    if q is None:
        logger.warning("No positive exponent up to the pattern dimension; nothing to predict")
        subcritical, new_cond, verified, predicted = False, False, False, None
    else:
        subcritical = is_subcritical(padded, k, q)
        new_cond = satisfies_new_cond(padded, k, q)
        verified = regime_verified(padded, k, q)
        predicted = float(predicted_exponent(k, q, padded[q - 1]))
        if not verified:
            logger.warning(f"Regime conditions fail for alphas={list(alphas)}; fit is unverified")

    rows = sweep(G, alphas, n_grid, threads=threads)
    usable = [r for r in rows if r.mstar > 0]
    if len(usable) < 2:
        raise InvalidRange("M* vanished on too many grid points to fit a slope")
    x = np.array([r.ln_n for r in usable])
    y = np.array([r.ln_mstar for r in usable])
    result = stats.linregress(x, y)
    residuals = y - (result.intercept + result.slope * x)
    return ExponentFit(
        slope=float(result.slope),
        intercept=float(result.intercept),
        residual=float(np.sqrt(np.mean(residuals**2))),
        predicted=predicted,
        subcritical=subcritical,
        new_cond=new_cond,
        verified=verified,
        points=[r.to_dict() for r in rows],
    )
