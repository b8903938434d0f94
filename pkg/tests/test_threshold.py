from fractions import Fraction

import pytest

from uppertail.complexes import from_facets, full_simplex
from uppertail.exceptions import InvalidParameters, InvalidRange, InvalidSubcomplex
from uppertail.model import ModelParams
from uppertail.threshold import (
    MODE_ORACLE,
    MODE_SURROGATE,
    SWEEP_COLUMNS,
    exponent_fit,
    k_h_threshold,
    mstar,
    predicted_exponent,
    skeleton_threshold,
    sweep,
    threshold_cap,
)
from uppertail.threshold.mstar import _ThresholdSearch


class TestPredictions:
    def test_predicted_exponent(self):
        assert predicted_exponent(1, 1, Fraction(2, 5)) == Fraction(8, 5)
        assert predicted_exponent(3, 1, Fraction(1, 5)) == Fraction(7, 5)
        assert predicted_exponent(3, 2, Fraction(1, 10)) == Fraction(27, 10)
        assert predicted_exponent(1, 1, 0.4) == pytest.approx(1.6)

    @pytest.mark.parametrize("k,q,a", [(1, 2, "1/2"), (2, 0, "1/2"), (2, 1, "0")])
    def test_predicted_exponent_rejects(self, k, q, a):
        with pytest.raises(InvalidParameters):
            predicted_exponent(k, q, Fraction(a))

    def test_skeleton_threshold_edge(self):
        params = ModelParams(n=100, k_max=1, alphas=("1/2",))
        assert skeleton_threshold(params, 1, 1) == 1000

    def test_skeleton_threshold_triangle_edges(self):
        # (3m)^5 <= 32^8 pins m to floor(256 / 3).
        params = ModelParams(n=32, k_max=2, alphas=("1/5",))
        assert skeleton_threshold(params, 2, 1) == 85

    def test_skeleton_threshold_is_capped_per_top_face(self):
        # n^{1.99} is far above C(10, 2), so the cap C(n, k+1) / s_k(sigma_k) binds.
        params = ModelParams(n=10, k_max=1, alphas=("1/100",))
        assert skeleton_threshold(params, 1, 1) == threshold_cap(10, full_simplex(1)) == 45


class TestMStar:
    def test_edge_threshold(self, edge):
        params = ModelParams(n=100, k_max=1, alphas=("1/2",))
        result = mstar(params, edge)
        assert result.value == 1000
        assert result.mode == MODE_SURROGATE
        assert result.cap == 4950
        assert result.argmin_subcomplex == edge

    def test_threshold_cap(self, triangle, hollow_triangle):
        assert threshold_cap(10, triangle) == 120
        assert threshold_cap(10, hollow_triangle) == 15

    def test_saturates_without_positive_exponent(self, edge):
        params = ModelParams(n=20, k_max=1, alphas=(0,))
        assert mstar(params, edge).value == threshold_cap(20, edge)

    def test_oracle_mode_tiny_instance(self, edge):
        params = ModelParams(n=5, k_max=1, alphas=("1/2",))
        result = mstar(params, edge, oracle=True)
        assert result.mode == MODE_ORACLE
        assert result.value == 10

    def test_mstar_is_min_over_subcomplexes(self, triangle):
        params = ModelParams(n=40, k_max=2, alphas=("1/5", "1/10"))
        result = mstar(params, triangle)
        assert result.value == min(K for _, K in result.per_H)
        assert 0 <= result.value <= result.cap
        for H, K in result.per_H:
            assert K == k_h_threshold(params, triangle, H)

    def test_rejects_foreign_subcomplex(self, edge, triangle):
        params = ModelParams(n=10, k_max=2, alphas=("1/2",))
        with pytest.raises(InvalidSubcomplex):
            k_h_threshold(params, edge, triangle)

    def test_rejects_vertex_pattern(self):
        params = ModelParams(n=10, k_max=1, alphas=("1/2",))
        with pytest.raises(InvalidParameters):
            mstar(params, from_facets(1, [(0,)]))

    def test_to_dict(self, edge):
        payload = mstar(ModelParams(n=100, k_max=1, alphas=("1/2",)), edge).to_dict()
        assert payload["mstar"] == 1000
        assert payload["per_H"][0]["K_H"] == 1000

    @pytest.mark.parametrize(
        "n,expected",
        [(50, 174), (200, 1601), pytest.param(800, 14717, marks=pytest.mark.slow)],
    )
    def test_ties_favor_the_skeleton(self, triangle, n, expected):
        params = ModelParams(n=n, k_max=2, alphas=("1/5", "1/10"))
        result = mstar(params, triangle)
        assert result.value == expected
        assert result.argmin_subcomplex.simplex_counts().to_list() == [3, 3]
        tied = [H.simplex_counts().to_list() for H, K in result.per_H if K == result.value]
        assert [3, 2] in tied

    @pytest.mark.parametrize("pattern", ["edge", "path3"])
    def test_surrogate_never_exceeds_oracle(self, request, pattern):
        G = request.getfixturevalue(pattern)
        params = ModelParams(n=5, k_max=1, alphas=("1/2",))
        surrogate = mstar(params, G)
        exact = mstar(params, G, oracle=True)
        assert 0 <= surrogate.value <= exact.value <= threshold_cap(5, G)
        for (H, K_surrogate), (H_exact, K_exact) in zip(surrogate.per_H, exact.per_H):
            assert H == H_exact
            assert K_surrogate <= K_exact

    def test_search_predicate_is_monotone(self, triangle):
        params = ModelParams(n=10, k_max=2, alphas=("1/5", "1/10"))
        cap = threshold_cap(10, triangle)
        search = _ThresholdSearch(params, triangle, triangle.skeleton(1), cap, False)
        verdicts = [search.holds(m) for m in range(0, cap + 1, 3)]
        assert verdicts[0]
        assert verdicts == sorted(verdicts, reverse=True)


class TestSweep:
    def test_rows_follow_grid(self, edge):
        rows = sweep(edge, ["1/2"], [16, 64, 256])
        assert [r.n for r in rows] == [16, 64, 256]
        assert [r.mstar for r in rows] == [64, 512, 4096]
        assert set(rows[0].to_dict()) == set(SWEEP_COLUMNS)
        assert rows[0].predicted_exponent == pytest.approx(1.5)

    def test_exact_power_law(self, edge):
        fit = exponent_fit(edge, [Fraction(1, 2)], [16, 64, 256, 1024])
        assert fit.slope == pytest.approx(1.5, abs=1e-9)
        assert fit.residual == pytest.approx(0.0, abs=1e-9)
        assert fit.verified
        assert fit.deviation == pytest.approx(0.0, abs=1e-9)

    def test_supercritical_is_flagged(self, edge):
        fit = exponent_fit(edge, [Fraction(6, 5)], [10, 20, 40, 80])
        assert not fit.subcritical
        assert not fit.verified
        assert fit.to_dict()["regime_verified"] is False

    def test_needs_four_points(self, edge):
        with pytest.raises(InvalidRange):
            exponent_fit(edge, ["1/2"], [10, 20, 40])

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "k,alphas",
        [
            (1, ["1/5"]),
            (1, ["2/5"]),
            (2, ["1/5", "0"]),
            (2, ["2/5", "0"]),
            (3, ["1/5", "0", "0"]),
        ],
    )
    def test_slope_matches_prediction(self, k, alphas):
        fit = exponent_fit(full_simplex(k), [Fraction(a) for a in alphas], [50, 100, 200, 400, 800])
        assert fit.verified
        assert abs(fit.slope - fit.predicted) <= 0.1

    @pytest.mark.slow
    def test_mixed_exponents_slope(self):
        fit = exponent_fit(full_simplex(2), [Fraction(1, 5), Fraction(1, 10)], [50, 100, 200, 400, 800])
        assert fit.predicted == pytest.approx(1.6)
        assert abs(fit.slope - 1.6) <= 0.1
