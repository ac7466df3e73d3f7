import pytest

from dnumbers import parse_report, render_report, run, trace_to_dict
from dnumbers.report import TABLES


@pytest.fixture(scope="module")
def trace(problem):
    return run(problem)


def half_ulp(precision):
    # allowance for the decimal rounding plus binary noise in the cell value
    return 0.5 * 10 ** -precision + 1e-12


class TestRender:
    def test_all_tables(self, problem, trace):
        tables = parse_report(render_report(problem, trace))
        assert set(TABLES) <= set(tables)
        assert tables["ranking_line"] == "A2 ≻ A3 ≻ A1"
        assert tables["tie_break"].endswith("ties: none")

    def test_single_stage(self, problem, trace):
        text = render_report(problem, trace, stage="d-numbers")
        assert text.count("# table:") == 1 and text.startswith("# table: d-numbers")

    def test_unknown_stage(self, problem, trace):
        with pytest.raises(ValueError, match="stage"):
            render_report(problem, trace, stage="plots")

    def test_no_negative_zero(self, problem, trace):
        assert "-0.0000" not in render_report(problem, trace)

    def test_byte_identical(self, problem):
        assert render_report(problem, run(problem)) == render_report(problem, run(problem))


class TestRoundTrip:
    @pytest.mark.parametrize("precision", [2, 4, 6])
    def test_values_within_half_ulp(self, problem, trace, precision):
        tables = parse_report(render_report(problem, trace, precision=precision))
        tol = half_ulp(precision)
        for row in tables["aggregation"]:
            tfn = trace.aggregated_tfns[(row["criterion"], row["candidate"])]
            for name, value in zip("abc", tfn):
                assert abs(float(row[name]) - value) <= tol
        for row in tables["d-numbers"]:
            d = trace.per_criterion_d[(row["criterion"], row["candidate"])].as_dict()
            assert abs(float(row["mass"]) - d[row["focal"]]) <= tol
        for row in tables["fusion"]:
            assert abs(float(row["mass"]) - trace.fused_d[row["candidate"]].as_dict()[row["focal"]]) <= tol
        for row in tables["lvt"]:
            assert abs(float(row["weight"]) - trace.distributions[row["candidate"]][row["term"]]) <= tol
        for row in tables["ranking"]:
            assert abs(float(row["msd(MG)"]) - trace.msd[row["candidate"]]) <= tol
        summary = {row["key"]: row["value"] for row in tables["summary"]}
        assert abs(float(summary["epsilon"]) - trace.epsilon) <= tol


def test_json_view(problem, trace):
    data = trace_to_dict(problem, trace)
    assert data["ranking"] == ["A2", "A3", "A1"]
    assert data["fusion"]["A1"] == trace.fused_d["A1"].as_dict()
    assert data["epsilon"] == trace.epsilon
