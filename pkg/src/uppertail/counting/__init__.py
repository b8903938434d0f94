"""Copy counting, expected counts, Psi and subcomplex enumeration."""

from .copies import PatternStats, count_ordered, count_unordered, pattern_stats
from .means import (
    Magnitude,
    expected_ordered,
    expected_ordered_magnitude,
    expected_unordered,
    psi,
)
from .subcomplexes import enumerate_subcomplexes, is_subcomplex

__all__ = [
    "Magnitude",
    "PatternStats",
    "count_ordered",
    "count_unordered",
    "enumerate_subcomplexes",
    "expected_ordered",
    "expected_ordered_magnitude",
    "expected_unordered",
    "is_subcomplex",
    "pattern_stats",
    "psi",
]
