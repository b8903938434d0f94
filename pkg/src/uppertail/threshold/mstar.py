"""
The threshold M*_{G,n} = min over subcomplexes H of K_H.

K_H is the largest m <= floor(C(n, k+1)/s_k(G)) for which the surrogate
e^{gamma_H(n, m s_1(G), ..., m s_{dim H}(G))} (or the exact N on tiny
instances) stays at most Psi_{H,n}.

gamma_H as a function of t = ln m is concave, nondecreasing and piecewise
linear, and the dual weight on positive-dimensional rows is a supergradient.
Newton steps from m = 1 therefore approach the crossing point from the
feasible side; exact probes at integers then pin K_H down.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..complexes import SimplicialComplex
from ..config import get_settings
from ..counting import enumerate_subcomplexes, is_subcomplex, psi
from ..exceptions import DegenerateMean, InvalidParameters, InvalidSubcomplex
from ..extremal import (
    ExtremalQuery,
    LogValue,
    Scalar,
    TableauBackend,
    brute_force_N,
    solve_gamma,
)
from ..model import ModelParams, is_infinite, parse_real
from .predictions import predicted_exponent, threshold_cap

logger = logging.getLogger(__name__)

MODE_SURROGATE = "lp-surrogate"
MODE_ORACLE = "oracle-exact"


def log_psi(params: ModelParams, H: SimplicialComplex) -> Scalar:
    """ln Psi_{H,n}, exact for rational exponents or rational probabilities.

    Raises:
        DegenerateMean: Psi_{H,n} = 0.
    """
    counts = H.simplex_counts()
    n = params.n
    used = [i for i in range(1, len(counts)) if counts[i] > 0]
    if params.uses_exponents:
        alphas = [params.exponent(i) for i in used]
        if any(is_infinite(a) for a in alphas) and n >= 2:
            raise DegenerateMean(f"Psi is zero for {H!r}: some alpha_i is infinite")
        if all(isinstance(a, Fraction) for a in alphas):
            exponent = counts[0] - sum((counts[i] * a for i, a in zip(used, alphas)), Fraction(0))
            return LogValue.power(n, exponent) if n >= 1 else LogValue.zero()
    probs = [params.probability(i) for i in used]
    if any(p == 0 for p in probs):
        raise DegenerateMean(f"Psi is zero for {H!r}: some p_i is zero")
    if all(isinstance(p, Fraction) for p in probs) and n >= 1:
        terms: Dict[Fraction, Fraction] = {Fraction(n): Fraction(counts[0])}
        for i, p in zip(used, probs):
            terms[p] = terms.get(p, Fraction(0)) + counts[i]
        return LogValue(terms)
    return psi(params, H).log


def _at_most(value: Scalar, limit: Scalar) -> bool:
    if isinstance(value, LogValue) and isinstance(limit, LogValue):
        return value <= limit
    tolerance = get_settings().lp_float_tolerance
    return float(value) <= float(limit) + tolerance * (1.0 + abs(float(limit)))


class _ThresholdSearch:
    """Largest m in [0, cap] with surrogate(m) <= Psi_H."""

    def __init__(
        self,
        params: ModelParams,
        G: SimplicialComplex,
        H: SimplicialComplex,
        cap: int,
        oracle: bool,
    ):
        self.n = params.n
        self.H = H
        self.G_counts = G.simplex_counts()
        self.cap = cap
        self.oracle = oracle
        self.limit = log_psi(params, H)
        self.backend = TableauBackend()
        self.probes = 0

    def _bounds(self, m: Union[int, float]) -> Tuple[Union[int, float], ...]:
        return (self.n, *(m * self.G_counts[i] for i in range(1, self.H.dimension + 1)))

    def holds(self, m: int) -> bool:
        if m <= 0:
            return True
        self.probes += 1
        query = ExtremalQuery(self.H, self._bounds(m))
        if self.oracle:
            N = brute_force_N(query)
            return N == 0 or _at_most(LogValue.log(N), self.limit)
        return _at_most(solve_gamma(query, self.backend).gamma, self.limit)

    def _excess(self, t: float) -> Tuple[float, float]:
        """(gamma(e^t) - ln Psi, d/dt) from a floating-point solve."""
        query = ExtremalQuery(self.H, tuple(float(b) for b in self._bounds(math.exp(t))))
        solution = solve_gamma(query, self.backend)
        slope = sum(
            float(d) for face, d in zip(solution.instance.rows, solution.dual) if len(face) > 1
        )
        return float(solution.gamma) - float(self.limit), slope

    def _estimate(self) -> int:
        t = 0.0
        top = math.log(self.cap)
        for _ in range(get_settings().mstar_max_probes):
            excess, slope = self._excess(t)
            if slope <= 0:
                return self.cap
            step = -excess / slope
            if step <= 1e-12:
                break
            t = min(t + step, top)
            if t >= top:
                break
        return max(1, min(self.cap, math.floor(math.exp(t))))

    def run(self) -> int:
        if self.cap <= 0:
            return 0
        if self.holds(self.cap):
            return self.cap
        if not self.holds(1):
            return 0
        guess = self._estimate() if not self.oracle else 1
        # Gallop to an integer bracket lo (holds) < hi (fails), then bisect.
        if self.holds(guess):
            lo, step = guess, 1
            hi = min(self.cap, lo + step)
            while self.holds(hi):
                lo, step = hi, step * 2
                hi = min(self.cap, lo + step)
        else:
            hi, step = guess, 1
            lo = max(1, hi - step)
            while not self.holds(lo):
                hi, step = lo, step * 2
                lo = max(1, hi - step)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.holds(mid):
                lo = mid
            else:
                hi = mid
        return lo


def k_h_threshold(
    params: ModelParams, G: SimplicialComplex, H: SimplicialComplex, *, oracle: bool = False
) -> int:
    """K_H for a non-empty subcomplex H of G.

    Raises:
        InvalidSubcomplex: H is empty or not a subcomplex of G.
        DegenerateMean: Psi_{H,n} = 0.
    """
    if H.dimension < 0 or not is_subcomplex(H, G):
        raise InvalidSubcomplex(f"{H!r} is not a non-empty subcomplex of {G!r}")
    search = _ThresholdSearch(params, G, H, threshold_cap(params.n, G), oracle)
    value = search.run()
    logger.debug(f"K_H={value} for H={H!r} after {search.probes} exact probes")
    return value


@dataclass(frozen=True)
class MStarResult:
    value: int
    argmin_subcomplex: SimplicialComplex
    per_H: Tuple[Tuple[SimplicialComplex, int], ...]
    mode: str
    cap: int
    n: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mstar": self.value,
            "cap": self.cap,
            "mode": self.mode,
            "argmin_H": self.argmin_subcomplex.to_dict(),
            "per_H": [
                {"H": H.to_dict(), "s": H.simplex_counts().to_list(), "K_H": K}
                for H, K in self.per_H
            ],
        }


def _k_h_job(args: Tuple[ModelParams, SimplicialComplex, SimplicialComplex, bool]) -> int:
    params, G, H, oracle = args
    return k_h_threshold(params, G, H, oracle=oracle)


def mstar(
    params: ModelParams,
    G: SimplicialComplex,
    *,
    oracle: bool = False,
    include_isolated: bool = False,
    threads: Optional[int] = None,
) -> MStarResult:
    """min of K_H over the non-empty subcomplexes H of G, one per isomorphism class."""
    k = G.dimension
    if k < 1:
        raise InvalidParameters("the pattern must have a positive-dimensional face")
    if k > params.k_max:
        raise InvalidParameters(f"pattern dimension {k} exceeds k_max={params.k_max}")
    if all(params.exponent(i) == 0 for i in range(1, k + 1)):
        logger.warning(f"No positive exponent up to dimension {k}; M* saturates at the cap")

    classes = enumerate_subcomplexes(G, include_isolated=include_isolated)
    jobs = [(params, G, H, oracle) for H in classes]
    workers = threads if threads is not None else get_settings().threads
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_k_h_job, jobs))
    else:
        values = [_k_h_job(job) for job in jobs]

    per_H = tuple(zip(classes, values))
    # ties go to the class with the most faces
    best = min(range(len(values)), key=lambda idx: (values[idx], -sum(classes[idx].simplex_counts())))
    result = MStarResult(
        value=values[best],
        argmin_subcomplex=classes[best],
        per_H=per_H,
        mode=MODE_ORACLE if oracle else MODE_SURROGATE,
        cap=threshold_cap(params.n, G),
        n=params.n,
    )
    logger.info(f"M*={result.value} at n={params.n} (argmin {classes[best]!r})")
    return result


# Sweeps ---------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    n: int
    mstar: int
    predicted_exponent: Optional[float]
    argmin_H: SimplicialComplex

    @property
    def ln_n(self) -> float:
        return math.log(self.n)

    @property
    def ln_mstar(self) -> float:
        return math.log(self.mstar) if self.mstar > 0 else -math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "mstar": self.mstar,
            "ln_n": self.ln_n,
            "ln_mstar": self.ln_mstar,
            "predicted_exponent": self.predicted_exponent,
            "argmin_H": ";".join(",".join(map(str, f)) for f in self.argmin_H.facets()),
        }


SWEEP_COLUMNS = ["n", "mstar", "ln_n", "ln_mstar", "predicted_exponent", "argmin_H"]


def _prediction(G: SimplicialComplex, alphas: Sequence[Any]) -> Optional[float]:
    k = G.dimension
    for q in range(1, k + 1):
        a = parse_real(alphas[q - 1]) if q <= len(alphas) else 0
        if a > 0:
            return float(predicted_exponent(k, q, a))
    return None


def sweep(
    G: SimplicialComplex,
    alphas: Sequence[Any],
    n_grid: Sequence[int],
    *,
    threads: Optional[int] = None,
) -> List[SweepRow]:
    """M* across an n grid at fixed exponents, one row per n."""
    k_max = max(G.dimension, len(alphas))
    predicted = _prediction(G, alphas)
    workers = threads if threads is not None else get_settings().threads
    rows: List[SweepRow] = []
    for n in n_grid:
        params = ModelParams(n=n, k_max=k_max, alphas=tuple(alphas))
        # Subcomplex thresholds are spread over the pool inside each n.
        result = mstar(params, G, threads=workers)
        rows.append(SweepRow(n=n, mstar=result.value, predicted_exponent=predicted, argmin_H=result.argmin_subcomplex))
        logger.info(f"sweep n={n}: M*={result.value}")
    return rows
