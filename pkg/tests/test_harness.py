import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from uppertail.complexes import full_simplex
from uppertail.exceptions import DegenerateMean, InvalidParameters, InvalidRange, MalformedComplex
from uppertail.harness import (
    UNVERIFIED,
    ExponentWindow,
    PatternSpec,
    ReportMode,
    TailExperimentConfig,
    TailTarget,
    TrialRow,
    TrialSummary,
    edge_tail_probability,
    edge_threshold,
    epsilon_sweep,
    exponent_report,
    log_probability,
    lower_bound_applicable,
    mean_check,
    run_trials,
    tail_estimate,
    wilson_interval,
)
from uppertail.model import ModelParams

EDGE = {"n": 2, "facets": [[0, 1]]}


def make_config(**overrides) -> TailExperimentConfig:
    payload = {"n": 10, "k_max": 1, "probs": ["1/2"], "pattern": EDGE, "epsilon": "1/2", "trials": 50}
    payload.update(overrides)
    return TailExperimentConfig.model_validate(payload)


class TestStats:
    def test_wilson_symmetric(self):
        lo, hi = wilson_interval(5, 10)
        assert lo == pytest.approx(0.236592, abs=1e-4)
        assert hi == pytest.approx(0.763408, abs=1e-4)

    def test_wilson_edges(self):
        lo, hi = wilson_interval(0, 20)
        assert lo == 0.0
        assert 0 < hi < 0.2
        lo, hi = wilson_interval(20, 20)
        assert hi == pytest.approx(1.0)

    @pytest.mark.parametrize("args", [(0, 0), (5, 3), (-1, 3), (1, 3, 1.0)])
    def test_wilson_rejects(self, args):
        with pytest.raises(InvalidRange):
            wilson_interval(*args)

    def test_edge_oracle(self):
        assert edge_threshold(4, Fraction(1, 2), Fraction(1, 2)) == 5
        assert edge_tail_probability(4, Fraction(1, 2), Fraction(1, 2)) == pytest.approx(7 / 64)

    def test_edge_oracle_full_probability(self):
        assert edge_tail_probability(10, Fraction(1), Fraction(1, 10)) == 0.0

    def test_log_probability(self):
        assert log_probability(0, 10) is None
        assert log_probability(5, 10) == pytest.approx(math.log(0.5))

    def test_window(self):
        window = ExponentWindow(exponent=1.0, n=10, verified=True)
        assert window.upper == -10
        assert window.lower == pytest.approx(-10 * math.log(10))


class TestSummary:
    def test_of_rows(self):
        rows = [TrialRow(0, 2, False), TrialRow(1, 4, True), TrialRow(2, 6, True)]
        summary = TrialSummary.of(rows)
        assert (summary.trials, summary.exceed, summary.total) == (3, 2, 12)
        assert summary.mean == 4
        assert summary.variance == 4
        assert summary.frequency == pytest.approx(2 / 3)

    def test_merge_is_associative(self):
        a, b, c = TrialSummary(2, 1, 5, 13), TrialSummary(1, 0, 3, 9), TrialSummary(4, 4, 8, 20)
        assert a.merge(b).merge(c) == a.merge(b.merge(c))
        assert a.merge(b) == b.merge(a)
        assert TrialSummary().merge(a) == a

    def test_trial_row_dict(self):
        assert TrialRow(3, 7, True).to_dict() == {"trial": 3, "count": 7, "exceed": 1}


class TestConfig:
    def test_inline_pattern(self):
        config = make_config()
        assert isinstance(config.pattern, PatternSpec)
        assert config.load_pattern() == full_simplex(1)
        assert config.epsilon_value() == Fraction(1, 2)
        assert config.target == TailTarget.ORDERED_COUNT

    def test_pattern_file_relative_to_base(self, write_json, tmp_path):
        write_json("edge.json", EDGE)
        config = make_config(pattern="edge.json")
        assert config.load_pattern(tmp_path) == full_simplex(1)

    def test_missing_pattern_file(self, tmp_path):
        with pytest.raises(MalformedComplex):
            make_config(pattern="absent.json").load_pattern(tmp_path)

    def test_from_file(self, write_json):
        path = write_json("exp.json", {"n": 8, "k_max": 1, "alphas": [0.5], "pattern": EDGE, "epsilon": 1, "trials": 3})
        config = TailExperimentConfig.from_file(path)
        assert config.model_params().n == 8

    def test_from_missing_file(self, tmp_path):
        with pytest.raises(InvalidParameters):
            TailExperimentConfig.from_file(tmp_path / "nope.json")

    @pytest.mark.parametrize(
        "overrides",
        [
            {"epsilon": 0},
            {"epsilon": "-1/2"},
            {"epsilon": "abc"},
            {"alphas": [0.5]},
            {"probs": None},
            {"seed": -1},
            {"seed": 2**64},
            {"trials": 0},
            {"target": "mystery"},
        ],
    )
    def test_rejects(self, overrides):
        with pytest.raises(ValidationError):
            make_config(**overrides)


class TestTailEstimate:
    def test_full_probability_never_exceeds(self):
        record = tail_estimate(make_config(probs=["1"], trials=20))
        assert record.summary.exceed == 0
        assert record.oracle == 0.0
        assert record.oracle_in_band()
        assert record.log_probability is None

    def test_huge_epsilon(self):
        record = tail_estimate(make_config(epsilon=100, trials=30))
        assert record.summary.frequency == 0.0

    def test_threshold_scales_mean(self):
        record = tail_estimate(make_config(trials=10))
        assert record.mean == pytest.approx(45.0)
        assert record.threshold == pytest.approx(67.5)
        assert [r.trial for r in record.rows] == list(range(10))

    def test_deterministic(self):
        first = tail_estimate(make_config(seed=17))
        second = tail_estimate(make_config(seed=17))
        assert first.rows == second.rows
        assert first.to_dict() == second.to_dict()

    def test_seed_changes_samples(self):
        first = tail_estimate(make_config(seed=1, trials=40))
        second = tail_estimate(make_config(seed=2, trials=40))
        assert [r.count for r in first.rows] != [r.count for r in second.rows]

    def test_worker_count_does_not_change_rows(self):
        config = make_config(n=12, seed=5, trials=60)
        assert tail_estimate(config, threads=1).rows == tail_estimate(config, threads=3).rows

    def test_simplex_count_target_has_oracle(self):
        record = tail_estimate(make_config(target="simplex-count", trials=10))
        assert record.mean == pytest.approx(22.5)
        assert record.oracle == pytest.approx(edge_tail_probability(10, Fraction(1, 2), Fraction(1, 2)))

    def test_zero_mean(self):
        with pytest.raises(DegenerateMean):
            tail_estimate(make_config(probs=["0"]))

    def test_betti_target_uses_critical_dimension(self):
        config = make_config(n=12, k_max=3, probs=None, alphas=["0.6"], target="betti", trials=5)
        record = tail_estimate(config)
        # alpha_1 = 0.6 puts k* at 1 with q = 1, so the exponent is 2 - 0.6.
        assert record.window is not None
        assert record.window.exponent == pytest.approx(1.4)
        assert record.mean == pytest.approx(12**1.4 / 2)

    def test_betti_target_without_critical_dimension(self):
        config = make_config(n=12, k_max=2, probs=None, alphas=["0.1"], target="betti", trials=5)
        with pytest.raises(InvalidParameters):
            tail_estimate(config)

    def test_lower_bound_flag(self):
        record = tail_estimate(make_config(trials=5))
        assert record.to_dict()["lower_bound_applicable"] is True
        assert lower_bound_applicable(ModelParams(n=5, k_max=1, probs=(1,)), full_simplex(1), Fraction(1, 2)) is False

    @pytest.mark.slow
    def test_edge_frequency_matches_binomial(self):
        config = make_config(n=8, probs=["0.3"], epsilon="0.5", trials=100_000, seed=11)
        record = tail_estimate(config, threads=4)
        lo, hi = wilson_interval(record.summary.exceed, record.summary.trials, 0.999)
        assert lo <= record.oracle <= hi


class TestSweepAndMeans:
    def test_epsilon_sweep_is_monotone(self):
        config = make_config(n=12, trials=200, seed=3)
        results = epsilon_sweep(config, [Fraction(1, 20), Fraction(1, 10), Fraction(1, 5), Fraction(1, 2)])
        frequencies = [f for _, f in results]
        assert frequencies == sorted(frequencies, reverse=True)

    def test_run_trials_without_threshold(self):
        params = ModelParams(n=6, k_max=1, probs=("1",))
        rows = run_trials(params, full_simplex(1), TailTarget.ORDERED_COUNT, 1, 5, seed=0)
        assert [r.count for r in rows] == [30] * 5
        assert not any(r.exceed for r in rows)

    def test_mean_check_needs_trials(self):
        with pytest.raises(InvalidRange):
            mean_check(ModelParams(n=5, k_max=1, probs=("1/2",)), full_simplex(1), 99, seed=0)

    def test_mean_check_exact_on_complete(self):
        check = mean_check(ModelParams(n=6, k_max=2, probs=("1", "1")), full_simplex(2), 100, seed=0)
        assert check.empirical == 120
        assert check.z_score == 0.0
        assert check.within_4se

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_mean_check_random(self, k):
        params = ModelParams(n=25, k_max=3, alphas=("0.3",))
        check = mean_check(params, full_simplex(k), 10_000, seed=k, threads=4)
        assert check.within_4se
        assert check.face_dim == k


class TestExponentReport:
    def test_edge_report(self):
        report = exponent_report(full_simplex(1), [Fraction(2, 5)], [32, 243], Fraction(1, 2))
        assert report.exponent == pytest.approx(1.6)
        assert report.verified
        assert [r.mstar for r in report.rows] == [256, 6561]
        row = report.rows[0].to_dict()
        assert row["upper_scale"] == -256
        assert row["lower_scale"] == pytest.approx(-256 * 0.4 * math.log(32))
        assert row["flag"] == ""
        assert row["lower_bound_applicable"] is True

    def test_unverified_regime_is_flagged(self):
        report = exponent_report(full_simplex(1), [Fraction(6, 5)], [32], Fraction(1, 2))
        assert not report.verified
        assert report.rows[0].flags == (UNVERIFIED,)
        assert report.rows[0].mstar == 16

    def test_betti_mode(self):
        alphas = [Fraction(3, 10), 0, 0, 0]
        report = exponent_report(full_simplex(2), alphas, [20, 40], Fraction(1, 2), mode=ReportMode.BETTI)
        assert report.critical_dimension == 3
        assert report.exponent == pytest.approx(1.1)
        assert all(r.mstar is None for r in report.rows)
        assert report.rows[0].mean_scale == pytest.approx(20**2.2 / 24)
        assert report.to_dict()["mode"] == "betti"
