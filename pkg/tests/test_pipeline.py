import numpy as np
import pytest

import oracles
from dnumbers import (DecisionProblem, DNumber, LinguisticScale, Options, PipelineError,
                      SingletonDistribution, TriangularFuzzyNumber as T, run,
                      discount_by_exclusivity, fuse_criteria, msd, rank, tfn_to_dnumber,
                      weighted_rating, RATING_SCALE, WEIGHT_SCALE)
from dnumbers.pipeline import all_complete
from dnumbers.verify import random_problem

LABELS = RATING_SCALE.labels


def fs(*xs):
    return frozenset(xs)


def tiny(rating="F", weight="MH", candidates=("A1",), criteria=("C1",), experts=("E1",), **opts):
    return DecisionProblem(candidates, criteria, experts, WEIGHT_SCALE, RATING_SCALE,
                           {(c, e): weight for c in criteria for e in experts},
                           {(c, a, e): rating for c in criteria for a in candidates for e in experts},
                           Options(**opts))


class TestProblem:
    def test_case_study_shape(self, problem):
        assert problem.candidates == ("A1", "A2", "A3")
        assert len(problem.criteria) == 5 and len(problem.experts) == 3
        assert problem.threshold == "MG"

    def test_missing_rating(self):
        p = tiny()
        with pytest.raises(ValueError, match="missing"):
            DecisionProblem(p.candidates, p.criteria, p.experts, WEIGHT_SCALE, RATING_SCALE,
                            p.weights, {}, Options())

    def test_unknown_label(self):
        with pytest.raises(ValueError, match="GG"):
            tiny(rating="GG")

    def test_options_validated(self):
        with pytest.raises(ValueError):
            Options(epsilon=1.5)
        with pytest.raises(ValueError):
            Options(defuzzifier="median")


class TestWeightedRating:
    def test_symmetric_weight_row(self, problem):
        assert weighted_rating(problem, "C5", "A1").as_tuple() == pytest.approx((1.90, 3.17, 4.43), abs=0.005)

    def test_unit_weight_returns_rating(self):
        unit = LinguisticScale.from_pairs([("U", (1, 1, 1))])
        p = DecisionProblem(("A1",), ("C1",), ("E1", "E2"), unit, RATING_SCALE,
                            {("C1", "E1"): "U", ("C1", "E2"): "U"},
                            {("C1", "A1", "E1"): "F", ("C1", "A1", "E2"): "F"}, Options())
        for rule in ("centroid", "graded"):
            assert weighted_rating(p, "C1", "A1", rule) == RATING_SCALE["F"]

    def test_asymmetric_weight_row(self, problem, golden):
        printed = golden["aggregated_tfns"]["C1"]["A2"]
        assert weighted_rating(problem, "C1", "A2").as_tuple() == pytest.approx(printed, abs=0.1)
        graded = weighted_rating(problem, "C1", "A2", "graded").as_tuple()
        assert graded == pytest.approx((5.42, 7.13, 8.27), abs=0.005)


class TestTfnToDNumber:
    def test_printed_row(self):
        d = tfn_to_dnumber(T(4.87, 6.56, 7.92), RATING_SCALE)
        want = {fs("MP", "F"): 0.0015, fs("F"): 0.0744, fs("F", "MG"): 0.3279,
                fs("MG"): 0.4215, fs("MG", "G"): 0.0826}
        for s, v in want.items():
            assert d[s] == pytest.approx(v, abs=0.01)
        assert d.theta_mass == pytest.approx(0.0921, abs=0.01)

    def test_scale_term(self):
        d = tfn_to_dnumber(RATING_SCALE["MG"], RATING_SCALE)
        assert d.as_dict() == pytest.approx({"{F,MG}": 0.25, "{MG}": 0.5, "{MG,G}": 0.25})
        assert d.theta_mass == 0

    def test_single_term_region(self):
        scale = LinguisticScale.from_pairs([("A", (0, 2, 4)), ("B", (6, 8, 10))], (0, 10))
        d = tfn_to_dnumber(T(1, 2, 5), scale)
        assert d["A"] + d.theta_mass == pytest.approx(1.0)
        assert set(d.masses) == {fs("A")}

    def test_zero_area(self):
        with pytest.raises(ValueError, match="zero area"):
            tfn_to_dnumber(T(5, 5, 5), RATING_SCALE)

    def test_theta_matches_oracle(self):
        x = T(4.87, 6.56, 7.92)
        d = tfn_to_dnumber(x, RATING_SCALE)
        residual = oracles.envelope_residual(tuple(x), RATING_SCALE.shapes)
        assert d.theta_mass == pytest.approx(residual / 1.525, abs=1e-6)

    @pytest.mark.parametrize("seed", range(20))
    def test_unit_mass(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = np.sort(rng.uniform(0, 10, 3))
        if c - a < 1e-3:
            return
        d = tfn_to_dnumber(T(a, b, c), RATING_SCALE)
        assert d.total == pytest.approx(1.0, abs=1e-9)


class TestFusion:
    def test_single_criterion(self):
        p = tiny()
        d = tfn_to_dnumber(weighted_rating(p, "C1", "A1"), RATING_SCALE)
        out = fuse_criteria(p, {("C1", "A1"): d}, 0.05)
        assert out["A1"] == discount_by_exclusivity(d, 0.05)

    def test_total_conflict_propagates(self):
        p = tiny(criteria=("C1", "C2"))
        per = {("C1", "A1"): DNumber(LABELS, {fs("VP"): 1.0}),
               ("C2", "A1"): DNumber(LABELS, {fs("VG"): 1.0})}
        with pytest.raises(ValueError, match="conflict"):
            fuse_criteria(p, per, 0.0)


class TestMsd:
    def test_printed_distributions(self, golden):
        for a in ("A1", "A2"):
            dist = SingletonDistribution(golden["distributions"][a])
            assert msd(dist, RATING_SCALE, "MG") == pytest.approx(golden["msd"][a], abs=0.005)

    def test_lowest_threshold(self, golden):
        dist = SingletonDistribution(golden["distributions"]["A1"])
        assert msd(dist, RATING_SCALE, "VP") == pytest.approx(1.0, abs=1e-5)

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            msd(SingletonDistribution({"F": 1.0}), RATING_SCALE, "GG")


class TestRank:
    def test_case_study(self, golden):
        assert rank(golden["msd"]).order == ("A2", "A3", "A1")

    def test_single(self):
        assert rank({"A1": 0.3}).order == ("A1",)

    def test_identical_distributions(self):
        dist = SingletonDistribution({"F": 0.5, "MG": 0.5})
        r = rank({"B": 0.5, "A": 0.5}, {"B": dist, "A": dist}, RATING_SCALE)
        assert r.order == ("B", "A")
        assert r.ties == (("B", "A"),)

    def test_secondary_key(self):
        low = SingletonDistribution({"VP": 0.5, "MG": 0.5})
        high = SingletonDistribution({"F": 0.5, "MG": 0.5})
        r = rank({"A": 0.5, "B": 0.5}, {"A": low, "B": high}, RATING_SCALE)
        assert r.order == ("B", "A") and r.ties == ()


class TestRun:
    def test_case_study(self, problem):
        trace = run(problem)
        assert str(trace.ranking) == "A2 ≻ A3 ≻ A1"
        assert trace.epsilon == pytest.approx(0.043084, abs=1e-4)
        assert all_complete(trace)

    def test_trivial_problem(self):
        trace = run(tiny())
        assert trace.ranking.order == ("A1",)
        assert all_complete(trace)

    def test_overrides(self, problem):
        trace = run(problem, epsilon=0.0, msd_threshold="G", defuzzifier="graded")
        assert trace.epsilon == 0.0 and trace.threshold == "G" and trace.defuzzifier == "graded"

    def test_stage_tagged_error(self):
        # a zero weight collapses the weighted rating to a point
        zero = LinguisticScale.from_pairs([("Z", (0, 0, 0)), ("W", (0, 1, 1))])
        p = DecisionProblem(("A1",), ("C1",), ("E1",), zero, RATING_SCALE, {("C1", "E1"): "Z"},
                            {("C1", "A1", "E1"): "F"}, Options())
        with pytest.raises(PipelineError) as info:
            run(p)
        assert info.value.stage == "d-numbers"
        assert str(info.value).startswith("[d-numbers]")

    def test_bad_threshold(self, problem):
        with pytest.raises(PipelineError, match="ranking"):
            run(problem, msd_threshold="GG")

    def test_deterministic(self, problem):
        assert run(problem) == run(problem)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_problems_complete(self, seed):
        trace = run(random_problem(np.random.default_rng(seed)))
        assert all_complete(trace)
        for dist in trace.distributions.values():
            assert dist.total() == pytest.approx(1.0, abs=1e-9)
