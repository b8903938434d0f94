"""scipy's HiGHS solver as an independent floating-point backend."""

import logging

import numpy as np
from scipy.optimize import linprog

from ...exceptions import NonconvergentFloat
from ..program import LPInstance, LPSolution, SolveMode
from .base import LPBackend

logger = logging.getLogger(__name__)


class HighsBackend(LPBackend):
    name = "highs"

    def solve(self, instance: LPInstance) -> LPSolution:
        n_var = len(instance.vertices)
        A = np.array([[float(a) for a in row] for row in instance.incidence()], dtype=np.float64)
        b = np.array([float(v) for v in instance.rhs], dtype=np.float64)
        res = linprog(
            c=-np.ones(n_var),
            A_ub=A.reshape(len(instance.rows), n_var),
            b_ub=b,
            bounds=[(0, None)] * n_var,
            method="highs",
        )
        if res.status != 0:
            raise NonconvergentFloat(f"HiGHS failed on {instance.pattern!r}: {res.message}")
        # Marginals are d(min objective)/d(b_ub) <= 0 for the negated objective.
        duals = tuple(max(0.0, -float(m)) for m in res.ineqlin.marginals)
        logger.debug(f"HiGHS solved {instance.pattern!r}: gamma={-res.fun:.6g}")
        return LPSolution(
            gamma=float(-res.fun),
            primal=tuple(float(x) for x in res.x),
            dual=duals,
            instance=instance,
            backend=self.name,
            mode=SolveMode.FLOAT,
            iterations=int(getattr(res, "nit", 0)),
        )
