"""Tab-delimited reports of a pipeline trace.

A report is a sequence of tables. Each starts with ``# table: <name>``,
followed by a header row and data rows, all tab separated. The ranking
table is followed by ``ranking:`` and ``tie-break:`` lines. Numbers are
printed with a fixed number of decimals; nothing time-dependent is
written, so the same input always gives the same bytes.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable

from .pipeline import STAGES, DecisionProblem, PipelineTrace

__all__ = ["render_report", "parse_report", "trace_to_dict", "TABLES"]

TABLES = ("summary",) + STAGES


def _fmt(x: float, precision: int) -> str:
    text = f"{x:.{precision}f}"
    # avoid "-0.0000"
    if text.lstrip("-").strip("0.") == "":
        text = text.lstrip("-")
    return text


def _write(out: io.StringIO, name: str, header: Iterable[str], rows: Iterable[Iterable]):
    out.write(f"# table: {name}\n")
    writer = csv.writer(out, delimiter="\t", lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def render_report(problem: DecisionProblem, trace: PipelineTrace, stage: str | None = None,
                  precision: int | None = None) -> str:
    """Render all tables, or only ``stage`` (one of :data:`TABLES`)."""
    if stage is not None and stage not in TABLES:
        raise ValueError(f"unknown stage {stage!r}; expected one of {', '.join(TABLES)}")
    p = problem.options.precision if precision is None else precision
    f = lambda x: _fmt(x, p)  # noqa: E731
    out = io.StringIO()
    wanted = TABLES if stage is None else (stage,)

    if "summary" in wanted:
        rows = [("epsilon", f(trace.epsilon)), ("msd_threshold", trace.threshold),
                ("defuzzifier", trace.defuzzifier)]
        rows += [(f"weight_factor[{c}]", f(trace.weight_factors[c])) for c in problem.criteria]
        _write(out, "summary", ("key", "value"), rows)
    if "aggregation" in wanted:
        rows = [(c, a, *(f(v) for v in trace.aggregated_tfns[(c, a)]))
                for c in problem.criteria for a in problem.candidates]
        _write(out, "aggregation", ("criterion", "candidate", "a", "b", "c"), rows)
    if "d-numbers" in wanted:
        rows = [(c, a, label, f(mass))
                for c in problem.criteria for a in problem.candidates
                for label, mass in trace.per_criterion_d[(c, a)].as_dict().items()]
        _write(out, "d-numbers", ("criterion", "candidate", "focal", "mass"), rows)
    if "fusion" in wanted:
        rows = [(a, label, f(mass)) for a in problem.candidates
                for label, mass in trace.fused_d[a].as_dict().items()]
        _write(out, "fusion", ("candidate", "focal", "mass"), rows)
    if "lvt" in wanted:
        rows = [(a, label, f(w)) for a in problem.candidates
                for label, w in trace.distributions[a].items()]
        _write(out, "lvt", ("candidate", "term", "weight"), rows)
    if "ranking" in wanted:
        rows = [(i, a, f(trace.msd[a])) for i, a in enumerate(trace.ranking.order, start=1)]
        _write(out, "ranking", ("rank", "candidate", f"msd({trace.threshold})"), rows)
        ties = "; ".join(" = ".join(group) for group in trace.ranking.ties) or "none"
        out.write(f"ranking: {trace.ranking}\n")
        out.write(f"tie-break: {trace.ranking.rule}; ties: {ties}\n")
    return out.getvalue()


def parse_report(text: str) -> dict:
    """Read a report back into ``{table: [row dicts]}``.

    Numeric cells stay strings; ``ranking`` and ``tie-break`` lines, when
    present, are returned under those keys.
    """
    tables: dict = {}
    current = None
    buffer: list[str] = []

    def flush():
        if current is not None:
            reader = csv.DictReader(io.StringIO("".join(buffer)), delimiter="\t")
            tables[current] = list(reader)

    for line in text.splitlines(keepends=True):
        if line.startswith("# table: "):
            flush()
            current = line[len("# table: "):].strip()
            buffer = []
        elif line.startswith("ranking: "):
            tables["ranking_line"] = line[len("ranking: "):].strip()
        elif line.startswith("tie-break: "):
            tables["tie_break"] = line[len("tie-break: "):].strip()
        elif current is not None:
            buffer.append(line)
    flush()
    return tables


def trace_to_dict(problem: DecisionProblem, trace: PipelineTrace) -> dict:
    """Full-precision, JSON-ready view of a trace."""
    return {
        "epsilon": trace.epsilon,
        "msd_threshold": trace.threshold,
        "defuzzifier": trace.defuzzifier,
        "weight_factors": dict(trace.weight_factors),
        "aggregation": {c: {a: list(trace.aggregated_tfns[(c, a)]) for a in problem.candidates}
                        for c in problem.criteria},
        "d_numbers": {c: {a: trace.per_criterion_d[(c, a)].as_dict() for a in problem.candidates}
                      for c in problem.criteria},
        "fusion": {a: trace.fused_d[a].as_dict() for a in problem.candidates},
        "lvt": {a: dict(trace.distributions[a].items()) for a in problem.candidates},
        "msd": dict(trace.msd),
        "ranking": list(trace.ranking.order),
        "ties": [list(g) for g in trace.ranking.ties],
        "tie_break_rule": trace.ranking.rule,
    }
