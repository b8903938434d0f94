"""
Dense tableau simplex with Bland's rule.

The constraint matrix and costs are rational, so every pivot decision on the
reduced-cost row is exact. Right-hand sides are either :class:`LogValue`
(exact mode) or floats; they only enter through the ratio test and the
objective value.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Union

from ...config import get_settings
from ...exceptions import NonconvergentFloat, UpperTailError
from ..logvalue import LogValue
from ..program import LPInstance, LPSolution, Scalar, SolveMode
from .base import LPBackend

logger = logging.getLogger(__name__)


class TableauBackend(LPBackend):
    """Primal simplex from the all-slack basis (x = 0 is always feasible)."""

    name = "tableau"

    def __init__(self, max_iterations: Optional[int] = None, tolerance: Optional[float] = None):
        settings = get_settings()
        self.max_iterations = max_iterations or settings.lp_max_iterations
        self.tolerance = tolerance if tolerance is not None else settings.lp_float_tolerance

    @property
    def supports_exact(self) -> bool:
        return True

    def _ratio_beats(self, ratio: Scalar, best: Scalar) -> int:
        """1 if ratio < best, 0 on a tie, -1 otherwise."""
        if isinstance(ratio, LogValue):
            diff = (ratio - best).sign()
            return 1 if diff < 0 else (0 if diff == 0 else -1)
        scale = self.tolerance * (1.0 + abs(float(best)))
        if ratio < best - scale:
            return 1
        return 0 if abs(ratio - best) <= scale else -1

    def solve(self, instance: LPInstance) -> LPSolution:
        exact = instance.mode == SolveMode.EXACT
        zero: Scalar = LogValue.zero() if exact else 0.0
        n_var = len(instance.vertices)
        n_row = len(instance.rows)
        width = n_var + n_row

        table: List[List[Fraction]] = []
        for r, coefficients in enumerate(instance.incidence()):
            row = coefficients + [Fraction(0)] * n_row
            row[n_var + r] = Fraction(1)
            table.append(row)
        rhs: List[Scalar] = [b if exact else float(b) for b in instance.rhs]
        basis = [n_var + r for r in range(n_row)]
        reduced = [Fraction(-1)] * n_var + [Fraction(0)] * n_row
        value: Scalar = zero

        iterations = 0
        while True:
            entering = next((j for j in range(width) if reduced[j] < 0), None)
            if entering is None:
                break
            iterations += 1
            if iterations > self.max_iterations:
                raise NonconvergentFloat(
                    f"simplex exceeded {self.max_iterations} iterations on {instance.pattern!r}"
                )

            leaving: Optional[int] = None
            best: Union[Scalar, None] = None
            for r in range(n_row):
                a = table[r][entering]
                if a <= 0:
                    continue
                ratio = rhs[r] / a
                if best is None:
                    leaving, best = r, ratio
                    continue
                verdict = self._ratio_beats(ratio, best)
                if verdict > 0 or (verdict == 0 and basis[r] < basis[leaving]):
                    leaving, best = r, ratio
            if leaving is None:
                raise UpperTailError("vertex-weight program is unbounded")

            pivot = table[leaving][entering]
            table[leaving] = [a / pivot for a in table[leaving]]
            rhs[leaving] = rhs[leaving] / pivot
            prow, pval = table[leaving], rhs[leaving]
            for r in range(n_row):
                factor = table[r][entering]
                if r == leaving or factor == 0:
                    continue
                table[r] = [a - factor * b for a, b in zip(table[r], prow)]
                rhs[r] = rhs[r] - factor * pval
            factor = reduced[entering]
            reduced = [a - factor * b for a, b in zip(reduced, prow)]
            value = value - factor * pval
            basis[leaving] = entering

        primal: List[Scalar] = [zero] * n_var
        for r, j in enumerate(basis):
            if j < n_var:
                primal[j] = rhs[r]
        dual = tuple(reduced[n_var:])
        logger.debug(f"Tableau solved {instance.pattern!r} in {iterations} pivots: gamma={float(value):.6g}")
        return LPSolution(
            gamma=value,
            primal=tuple(primal),
            dual=dual,
            instance=instance,
            backend=self.name,
            mode=instance.mode,
            iterations=iterations,
        )
