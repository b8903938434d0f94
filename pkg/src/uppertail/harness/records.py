"""Trial rows, the mergeable summary reducer and the experiment record."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .stats import log_probability, wilson_interval

TRIAL_COLUMNS = ["trial", "count", "exceed"]


@dataclass(frozen=True)
class TrialRow:
    trial: int
    count: int
    exceed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"trial": self.trial, "count": self.count, "exceed": int(self.exceed)}


@dataclass(frozen=True)
class TrialSummary:
    """Integer sufficient statistics of a batch of trials.

    ``merge`` is associative and commutative, so batches finished in any order
    combine to the same summary.
    """

    trials: int = 0
    exceed: int = 0
    total: int = 0
    total_sq: int = 0

    @classmethod
    def of(cls, rows: Iterable[TrialRow]) -> "TrialSummary":
        summary = cls()
        for row in rows:
            summary = summary.merge(cls(1, int(row.exceed), row.count, row.count * row.count))
        return summary

    def merge(self, other: "TrialSummary") -> "TrialSummary":
        return TrialSummary(
            trials=self.trials + other.trials,
            exceed=self.exceed + other.exceed,
            total=self.total + other.total,
            total_sq=self.total_sq + other.total_sq,
        )

    @property
    def mean(self) -> float:
        return self.total / self.trials if self.trials else 0.0

    @property
    def variance(self) -> float:
        """Unbiased sample variance, computed from the integer sums."""
        if self.trials < 2:
            return 0.0
        centred = self.total_sq * self.trials - self.total * self.total
        return max(0.0, centred / (self.trials * (self.trials - 1)))

    @property
    def std_error(self) -> float:
        return math.sqrt(self.variance / self.trials) if self.trials else 0.0

    @property
    def frequency(self) -> float:
        return self.exceed / self.trials if self.trials else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "exceed": self.exceed,
            "mean": self.mean,
            "std_error": self.std_error,
            "frequency": self.frequency,
        }


@dataclass(frozen=True)
class ExponentWindow:
    """Log-probability scales -n^e ln n and -n^e bracketing ln P for exponent e."""

    exponent: float
    n: int
    verified: bool

    @property
    def lower(self) -> float:
        return -(self.n**self.exponent) * math.log(self.n)

    @property
    def upper(self) -> float:
        return -(self.n**self.exponent)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exponent": self.exponent,
            "lower": self.lower,
            "upper": self.upper,
            "regime_verified": self.verified,
        }


@dataclass(frozen=True)
class ExperimentRecord:
    """Outcome of one seeded tail experiment."""

    config: Dict[str, Any]
    mean: float
    threshold: float
    rows: List[TrialRow]
    summary: TrialSummary
    oracle: Optional[float] = None
    window: Optional[ExponentWindow] = None
    confidence: float = 0.95
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def wilson(self) -> Tuple[float, float]:
        return wilson_interval(self.summary.exceed, self.summary.trials, self.confidence)

    @property
    def log_probability(self) -> Optional[float]:
        return log_probability(self.summary.exceed, self.summary.trials)

    def oracle_in_band(self) -> Optional[bool]:
        if self.oracle is None:
            return None
        lo, hi = self.wilson
        return lo <= self.oracle <= hi

    def to_dict(self) -> Dict[str, Any]:
        lo, hi = self.wilson
        return {
            "config": self.config,
            "mean": self.mean,
            "threshold": self.threshold,
            "summary": self.summary.to_dict(),
            "wilson": [lo, hi],
            "log_probability": self.log_probability,
            "oracle": self.oracle,
            "oracle_in_band": self.oracle_in_band(),
            "window": self.window.to_dict() if self.window else None,
            **self.extra,
            "trials": [r.to_dict() for r in self.rows],
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        return [r.to_dict() for r in self.rows]
