"""
Seeded Monte Carlo runs.

Trial t samples its complex from the stream ``(seed, t)``, so every trial is
reproducible on its own and results do not depend on how trials are split
across workers. Batches are reduced with ``TrialSummary.merge``.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..complexes import SimplicialComplex, is_full_simplex
from ..config import get_settings
from ..counting import count_ordered, expected_ordered
from ..exceptions import DegenerateMean, InvalidParameters, InvalidRange, NoPositiveExponent
from ..homology import betti_vector
from ..model import (
    ModelParams,
    Real,
    critical_profile,
    first_positive_index,
    is_infinite,
    mean_face_count,
    regime_verified,
    sample,
    tau,
)
from ..threshold import predicted_exponent
from .config import TailExperimentConfig, TailTarget
from .records import ExperimentRecord, ExponentWindow, TrialRow, TrialSummary
from .report import lower_bound_applicable
from .stats import edge_tail_probability, n_power

logger = logging.getLogger(__name__)

# Batches per worker; smaller batches even out uneven trial costs.
_BATCHES_PER_WORKER = 4

_Job = Tuple[ModelParams, SimplicialComplex, TailTarget, int, int, Optional[Real], int, int, int]


def _measure(K: SimplicialComplex, pattern: SimplicialComplex, target: TailTarget, dim: int, field_char: int) -> int:
    if target == TailTarget.ORDERED_COUNT:
        return count_ordered(K, pattern)
    if target == TailTarget.SIMPLEX_COUNT:
        return K.simplex_counts().get(dim)
    return betti_vector(K, field_char)[dim]


def _run_batch(job: _Job) -> List[TrialRow]:
    params, pattern, target, dim, field_char, threshold, seed, start, stop = job
    rows = []
    for trial in range(start, stop):
        K = sample(params, seed, stream=(trial,))
        count = _measure(K, pattern, target, dim, field_char)
        rows.append(TrialRow(trial, count, threshold is not None and count >= threshold))
    return rows


def run_trials(
    params: ModelParams,
    pattern: SimplicialComplex,
    target: TailTarget,
    dim: int,
    trials: int,
    seed: int,
    *,
    threshold: Optional[Real] = None,
    field_char: int = 2,
    threads: Optional[int] = None,
) -> List[TrialRow]:
    """Sample ``trials`` complexes and measure the target on each, sorted by trial index."""
    workers = threads if threads is not None else get_settings().threads
    size = max(1, -(-trials // (max(workers, 1) * _BATCHES_PER_WORKER)))
    jobs: List[_Job] = [
        (params, pattern, target, dim, field_char, threshold, seed, start, min(start + size, trials))
        for start in range(0, trials, size)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_batch, jobs))
    else:
        batches = [_run_batch(job) for job in jobs]
    rows = [row for batch in batches for row in batch]
    rows.sort(key=lambda r: r.trial)
    return rows


def _critical_dimension(params: ModelParams) -> int:
    profile = critical_profile(params.exponents(), params.k_max)
    if profile.k_star is None:
        raise InvalidParameters("no critical dimension k* for these exponents; betti target undefined")
    return profile.k_star


def _target_mean(params: ModelParams, pattern: SimplicialComplex, target: TailTarget) -> Tuple[int, Real]:
    """(measured dimension, reference mean) of the target."""
    if target == TailTarget.ORDERED_COUNT:
        return pattern.dimension, expected_ordered(params, pattern)
    if target == TailTarget.SIMPLEX_COUNT:
        return pattern.dimension, mean_face_count(params, pattern.dimension)
    k_star = _critical_dimension(params)
    return k_star, n_power(params.n, tau(params.exponents(), k_star)) / factorial(k_star + 1)


def _window(params: ModelParams, pattern: SimplicialComplex, target: TailTarget, dim: int) -> Optional[ExponentWindow]:
    alphas = params.exponents()
    try:
        q = first_positive_index(alphas)
    except NoPositiveExponent:
        return None
    if q > dim or is_infinite(alphas[q - 1]):
        return None
    if target == TailTarget.BETTI:
        profile = critical_profile(alphas, params.k_max)
        return ExponentWindow(
            exponent=float(predicted_exponent(dim, q, alphas[q - 1])),
            n=params.n,
            verified=bool(profile.new_cond2),
        )
    if target == TailTarget.ORDERED_COUNT and not is_full_simplex(pattern):
        return None
    return ExponentWindow(
        exponent=float(predicted_exponent(dim, q, alphas[q - 1])),
        n=params.n,
        verified=regime_verified(alphas, dim, q),
    )


def _is_single_edge(pattern: SimplicialComplex) -> bool:
    return pattern.simplex_counts().to_list() == [2, 1]


def tail_estimate(
    config: TailExperimentConfig,
    base_dir: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
) -> ExperimentRecord:
    """Empirical frequency of {X >= (1 + epsilon) * mean} over seeded trials.

    Raises:
        DegenerateMean: The reference mean is zero.
    """
    params = config.model_params()
    pattern = config.load_pattern(base_dir)
    target = config.target
    epsilon = config.epsilon_value()
    dim, mean = _target_mean(params, pattern, target)
    if mean == 0:
        raise DegenerateMean(f"mean of {target.value} is zero at n={params.n}")
    threshold = (1 + epsilon) * mean
    logger.info(
        f"Tail experiment: target={target.value} n={params.n} epsilon={epsilon} "
        f"trials={config.trials} seed={config.seed}"
    )

    rows = run_trials(
        params,
        pattern,
        target,
        dim,
        config.trials,
        config.seed,
        threshold=threshold,
        field_char=config.field_char,
        threads=threads,
    )
    summary = TrialSummary.of(rows)

    oracle = None
    edge_target = target == TailTarget.SIMPLEX_COUNT and dim == 1
    if (target == TailTarget.ORDERED_COUNT and _is_single_edge(pattern)) or edge_target:
        oracle = edge_tail_probability(params.n, params.probability(1), epsilon)

    record = ExperimentRecord(
        config=config.model_dump(mode="json"),
        mean=float(mean),
        threshold=float(threshold),
        rows=rows,
        summary=summary,
        oracle=oracle,
        window=_window(params, pattern, target, dim),
        extra={"lower_bound_applicable": lower_bound_applicable(params, pattern, epsilon)},
    )
    logger.info(
        f"Tail experiment done: {summary.exceed}/{summary.trials} exceed "
        f"(frequency {summary.frequency:.6g}, oracle {oracle})"
    )
    return record


@dataclass(frozen=True)
class MeanCheck:
    """Empirical versus exact mean of the ordered copy count."""

    expected: Real
    summary: TrialSummary
    face_dim: Optional[int] = None
    face_scale: Optional[float] = None

    @property
    def empirical(self) -> float:
        return self.summary.mean

    @property
    def z_score(self) -> float:
        diff = self.empirical - float(self.expected)
        se = self.summary.std_error
        if se == 0:
            return 0.0 if diff == 0 else float("inf")
        return diff / se

    @property
    def within_4se(self) -> bool:
        return abs(self.z_score) <= 4

    @property
    def face_ratio(self) -> Optional[float]:
        """Empirical face count N_o / (j+1)! relative to n^{tau_j}/(j+1)!."""
        if self.face_dim is None or not self.face_scale:
            return None
        return self.empirical / factorial(self.face_dim + 1) / self.face_scale

    def to_dict(self) -> Dict[str, Any]:
        return {
            "expected": float(self.expected),
            "expected_exact": str(self.expected),
            "empirical": self.empirical,
            "std_error": self.summary.std_error,
            "z_score": self.z_score,
            "within_4se": self.within_4se,
            "trials": self.summary.trials,
            "face_dim": self.face_dim,
            "face_scale": self.face_scale,
            "face_ratio": self.face_ratio,
        }


def mean_check(
    params: ModelParams,
    pattern: SimplicialComplex,
    trials: int,
    seed: int,
    threads: Optional[int] = None,
) -> MeanCheck:
    """Compare the empirical mean of N_o(K, pattern) with mu_o.

    For a full simplex sigma_j the report also carries n^{tau_j}/(j+1)!.

    Raises:
        InvalidRange: Fewer than 100 trials.
    """
    if trials < 100:
        raise InvalidRange(f"mean check needs at least 100 trials, got {trials}")
    expected = expected_ordered(params, pattern)
    rows = run_trials(
        params, pattern, TailTarget.ORDERED_COUNT, pattern.dimension, trials, seed, threads=threads
    )
    face_dim, face_scale = None, None
    j = pattern.dimension
    if j >= 1 and is_full_simplex(pattern) and not any(is_infinite(a) for a in params.exponents()[:j]):
        face_dim = j
        face_scale = float(n_power(params.n, tau(params.exponents(), j)) / factorial(j + 1))
    check = MeanCheck(
        expected=expected, summary=TrialSummary.of(rows), face_dim=face_dim, face_scale=face_scale
    )
    logger.info(f"Mean check: empirical={check.empirical:.6g} expected={float(expected):.6g} z={check.z_score:.3f}")
    return check


def epsilon_sweep(
    config: TailExperimentConfig,
    epsilons: Sequence[Real],
    base_dir: Optional[Union[str, Path]] = None,
    threads: Optional[int] = None,
) -> List[Tuple[Real, float]]:
    """Tail frequencies over several epsilons, reusing one set of sampled counts."""
    params = config.model_params()
    pattern = config.load_pattern(base_dir)
    dim, mean = _target_mean(params, pattern, config.target)
    if mean == 0:
        raise DegenerateMean(f"mean of {config.target.value} is zero at n={params.n}")
    rows = run_trials(
        params,
        pattern,
        config.target,
        dim,
        config.trials,
        config.seed,
        field_char=config.field_char,
        threads=threads,
    )
    out = []
    for eps in epsilons:
        threshold = (1 + Fraction(eps)) * mean
        out.append((eps, sum(1 for r in rows if r.count >= threshold) / len(rows)))
    return out
