import math
from fractions import Fraction

import numpy as np
import pytest

from uppertail.complexes import boundary_of_simplex, from_facets, full_simplex
from uppertail.config import get_settings
from uppertail.counting import count_unordered, enumerate_subcomplexes
from uppertail.exceptions import InvalidRange, OracleTooLarge, WitnessBoundViolated
from uppertail.extremal import (
    ExtremalQuery,
    HighsBackend,
    LogValue,
    LPSolution,
    SolveMode,
    TableauBackend,
    blowup_witness,
    brute_force_N,
    compare_lemma_gap,
    create_lp_backend,
    n_hat_bounds,
    skeleton_dual_certificate,
    solve_gamma,
    verify_certificate,
    witness_constant,
)


def random_pattern(rng: np.random.Generator, max_vertices: int = 6, max_dim: int = 3):
    """A random pattern without isolated vertices."""
    n = int(rng.integers(2, max_vertices + 1))
    facets = []
    for _ in range(int(rng.integers(1, 5))):
        size = int(rng.integers(2, min(max_dim + 1, n) + 1))
        facets.append(tuple(int(v) for v in rng.choice(n, size=size, replace=False)))
    used = sorted({v for f in facets for v in f})
    label = {v: i for i, v in enumerate(used)}
    return from_facets(len(used), [tuple(label[v] for v in f) for f in facets])


class TestLogValue:
    def test_equalities(self):
        assert LogValue.log(4) == 2 * LogValue.log(2)
        assert LogValue.log(2) + LogValue.log(3) == LogValue.log(6)
        assert LogValue.log(8) / 3 == LogValue.log(2)
        assert LogValue.power(100, Fraction(1, 2)) == LogValue.log(10)

    def test_ordering(self):
        assert LogValue.log(2) < LogValue.log(3)
        assert LogValue.log(Fraction(1, 2)) < 0
        assert LogValue.zero() == 0
        # 2^10 = 1024 > 10^3
        assert 10 * LogValue.log(2) > 3 * LogValue.log(10)

    def test_near_ties_are_exact(self):
        big = Fraction(10**30 + 1, 10**30)
        assert LogValue.log(big) > 0
        assert (LogValue.log(big) - LogValue.log(big)).is_zero()

    def test_exp(self):
        assert (LogValue.log(12) - LogValue.log(3)).exp() == 4
        assert LogValue.power(2, Fraction(1, 2)).exp() is None

    def test_non_positive_atom(self):
        with pytest.raises(ValueError):
            LogValue.log(0)


class TestGamma:
    def test_edge(self, edge):
        solution = solve_gamma(ExtremalQuery(edge, (4, 4)))
        assert solution.mode == SolveMode.EXACT
        assert solution.gamma == LogValue.log(4)
        assert verify_certificate(solution).ok

    def test_edge_vertex_bound_binds(self, edge):
        assert solve_gamma(ExtremalQuery(edge, (2, 100))).gamma == LogValue.log(4)

    def test_triangle(self, triangle):
        assert solve_gamma(ExtremalQuery(triangle, (10, 10, 10))).gamma == LogValue.log(10)
        assert solve_gamma(ExtremalQuery(triangle, (100, 100, 10**6))).gamma == LogValue.log(1000)

    def test_documented_examples(self, edge, triangle):
        assert solve_gamma(ExtremalQuery(edge, (10, 4))).gamma == LogValue.log(4)
        assert solve_gamma(ExtremalQuery(triangle, (10, 100, 5))).gamma == LogValue.log(5)

    def test_exponent_base(self, edge):
        query = ExtremalQuery(edge, (1, "1/2"), exponent_base=100)
        assert solve_gamma(query).gamma == LogValue.log(10)

    def test_float_bounds(self, edge):
        solution = solve_gamma(ExtremalQuery(edge, (4.0, 4.0)))
        assert solution.mode == SolveMode.FLOAT
        assert solution.gamma_float() == pytest.approx(math.log(4))
        assert verify_certificate(solution).ok

    def test_highs_agrees(self, triangle):
        query = ExtremalQuery(triangle, (5, 7, 3))
        exact = solve_gamma(query, TableauBackend())
        approx = solve_gamma(query, HighsBackend())
        assert approx.gamma_float() == pytest.approx(float(exact.gamma), rel=1e-7)

    def test_backend_factory(self, monkeypatch):
        assert isinstance(create_lp_backend("highs"), HighsBackend)
        monkeypatch.setenv("UPTAIL_LP_BACKEND", "highs")
        get_settings.cache_clear()
        assert isinstance(create_lp_backend(), HighsBackend)
        with pytest.raises(ValueError):
            create_lp_backend("simplex-in-excel")

    def test_bound_validation(self, edge):
        with pytest.raises(InvalidRange):
            ExtremalQuery(edge, (4,))
        with pytest.raises(InvalidRange):
            ExtremalQuery(edge, (4, 0))
        with pytest.raises(InvalidRange):
            solve_gamma(ExtremalQuery(edge, (4, "1/2")))

    @pytest.mark.slow
    def test_randomized_strong_duality(self):
        rng = np.random.default_rng(2024)
        for _ in range(200):
            G = random_pattern(rng)
            bounds = tuple(int(b) for b in rng.integers(1, 60, size=G.dimension + 1))
            solution = solve_gamma(ExtremalQuery(G, bounds))
            report = verify_certificate(solution)
            assert report.primal_feasible and report.dual_feasible
            assert report.gap_exact is not None and report.gap_exact.is_zero()

            floats = solve_gamma(ExtremalQuery(G, tuple(float(b) for b in bounds)))
            float_report = verify_certificate(floats)
            assert float_report.ok
            assert abs(float_report.gap) <= 1e-9 * (1 + abs(float(float_report.primal_value)))


class TestDualCertificate:
    def test_skeleton_certificate_is_tight(self, triangle):
        point = skeleton_dual_certificate(triangle, 1)
        assert point.is_feasible()
        assert set(point.z.values()) == {Fraction(1, 3)}
        assert set(point.y.values()) == {Fraction(1, 3)}

    def test_certificate_bounds_gamma(self, triangle):
        query = ExtremalQuery(triangle, (10, 20, 50))
        point = skeleton_dual_certificate(triangle, 1)
        assert solve_gamma(query).gamma <= point.objective(query.log_bounds())


class TestOracle:
    @pytest.mark.parametrize(
        "pattern, bounds, expected",
        [
            (full_simplex(1), (3, 3), 3),
            (full_simplex(1), (4, 4), 4),
            (boundary_of_simplex(2), (4, 6), 4),
            (full_simplex(2), (4, 6, 4), 4),
            (full_simplex(2), (4, 6, 2), 2),
            (full_simplex(2), (4, 5, 4), 2),
            (full_simplex(2), (2, 1, 1), 0),
        ],
    )
    def test_known_values(self, pattern, bounds, expected):
        assert brute_force_N(ExtremalQuery(pattern, bounds)) == expected

    def test_guards(self, edge):
        with pytest.raises(OracleTooLarge):
            brute_force_N(ExtremalQuery(edge, (7, 10)))
        with pytest.raises(OracleTooLarge):
            brute_force_N(ExtremalQuery(full_simplex(3), (4, 6, 4, 1)))

    def test_edge_sandwich(self, edge):
        query = ExtremalQuery(edge, (4, 4))
        bounds = n_hat_bounds(query)
        assert bounds.upper == 16
        assert bounds.lower <= brute_force_N(query) <= bounds.upper

    @pytest.mark.slow
    def test_sandwich_on_small_queries(self):
        rng = np.random.default_rng(7)
        patterns = [full_simplex(1), full_simplex(2), boundary_of_simplex(2), from_facets(3, [(0, 1), (1, 2)])]
        checked = 0
        while checked < 60:
            G = patterns[checked % len(patterns)]
            m0 = int(rng.integers(G.vertex_count, 7))
            bounds = [m0, int(rng.integers(1, math.comb(m0, 2) + 1))]
            if G.dimension == 2:
                bounds.append(int(rng.integers(1, math.comb(m0, 3) + 1)))
            query = ExtremalQuery(G, tuple(bounds))
            lower, upper = n_hat_bounds(query)
            value = brute_force_N(query)
            assert float(lower) <= value * (1 + 1e-9)
            assert value <= float(upper) * (1 + 1e-9)
            checked += 1


class TestWitness:
    def test_hand_built_blowup(self, edge):
        query = ExtremalQuery(edge, (4, 4))
        instance = query.instance()
        half = LogValue.log(2)
        solution = LPSolution(
            gamma=half + half,
            primal=(half, half),
            dual=(Fraction(0),) * len(instance.rows),
            instance=instance,
            backend="manual",
            mode=SolveMode.EXACT,
        )
        F = blowup_witness(edge, solution, Fraction(1))
        assert F.simplex_counts().to_list() == [4, 4]
        assert count_unordered(F, edge) == 4

    def test_budget_violation(self, edge):
        solution = solve_gamma(ExtremalQuery(edge, (4, 4)))
        with pytest.raises(WitnessBoundViolated) as info:
            blowup_witness(edge, solution, Fraction(4))
        assert info.value.dimension is not None

    def test_witness_constant_is_exact(self, triangle):
        c = witness_constant(ExtremalQuery(triangle, (10, 10, 10)))
        assert c == Fraction(1, 26)
        counts = triangle.simplex_counts()
        for j in (1, 2):
            s = counts[j]
            assert (1 + c) ** (j + 1) - 1 <= Fraction(1, s * (s + 1))

    def test_witness_constant_for_tight_bounds(self, triangle):
        # No bound leaves room for a second point per block, so c = 1/m_j.
        c = witness_constant(ExtremalQuery(triangle, (3, 3, 1)))
        assert isinstance(c, Fraction)
        assert c == Fraction(1, 3)

    @pytest.mark.slow
    def test_witness_meets_lower_bound(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 50:
            G = random_pattern(rng, max_vertices=4, max_dim=2)
            bounds = tuple(int(b) for b in rng.integers(1, 30, size=G.dimension + 1))
            query = ExtremalQuery(G, bounds)
            if not query.admits_pattern():
                continue
            solution = solve_gamma(query)
            c = witness_constant(query)
            F = blowup_witness(G, solution, c)
            counts = F.simplex_counts()
            assert all(counts.get(j) <= bounds[j] for j in range(G.dimension + 1))
            lower, _ = n_hat_bounds(query, solution)
            assert count_unordered(F, G) >= float(lower) * (1 - 1e-9)
            checked += 1


class TestCompareLemma:
    def test_edge_gap(self, edge):
        gap = compare_lemma_gap(edge, edge, 10, 4, 9)
        assert gap == LogValue.log(Fraction(9, 4)) / 2

    def test_invalid_range(self, edge):
        with pytest.raises(InvalidRange):
            compare_lemma_gap(edge, edge, 3, 5, 4)

    @pytest.mark.slow
    def test_gap_nonnegative(self):
        rng = np.random.default_rng(5)
        cases = [(full_simplex(1), 1), (full_simplex(2), 2), (boundary_of_simplex(3), 2)]
        tops = {id(G): [H for H in enumerate_subcomplexes(G) if H.faces(k)] for G, k in cases}
        checked = 0
        while checked < 100:
            G, k = cases[checked % len(cases)]
            m0 = int(rng.integers(2, 9))
            top = Fraction(m0 ** (k + 1), G.simplex_counts()[k])
            m1 = Fraction(int(rng.integers(1, 40)), int(rng.integers(1, 5)))
            m2 = Fraction(int(rng.integers(1, 40)), int(rng.integers(1, 5)))
            m1, m2 = sorted((m1, m2))
            if m1 * min(G.simplex_counts().to_list()[1:]) < 1 or m2 > top:
                continue
            H_options = tops[id(G)]
            H = H_options[int(rng.integers(len(H_options)))]
            assert compare_lemma_gap(G, H, m0, m1, m2) >= 0
            checked += 1
