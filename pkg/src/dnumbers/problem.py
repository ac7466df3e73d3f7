"""Reading and writing decision problem files.

A problem file is line oriented. ``#`` starts a comment, blank lines are
ignored and ``[name]`` opens a section::

    [weight_scale]
    universe = 0, 1
    VL = (0, 0, 0.1)
    ...
    [rating_scale]
    VP = (0, 0, 1)
    ...
    [experts]
    E1, E2, E3
    [criteria]
    C1 C2 C3
    [candidates]
    A1, A2
    [weights]
    C1 = H, VH, MH          # one weight term per expert, in expert order
    [ratings]
    C1 A1 = MG, G, MG       # criterion candidate = one rating per expert
    [options]
    msd_threshold = MG
    epsilon = 0.05
    precision = 4
    defuzzifier = centroid

Every section except ``[options]`` is required. List items are separated
by commas and/or whitespace. ``universe`` is optional and is reserved, so
it cannot be used as a term label.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .fuzzy import LinguisticScale, TriangularFuzzyNumber
from .pipeline import DEFUZZIFIERS, DecisionProblem, Options

__all__ = ["ProblemFileError", "parse_problem", "load_problem", "render_problem",
           "case_study", "CASE_STUDY_PATH"]

SECTIONS = ("weight_scale", "rating_scale", "experts", "criteria", "candidates",
            "weights", "ratings", "options")
REQUIRED = SECTIONS[:-1]
OPTION_KEYS = ("msd_threshold", "epsilon", "precision", "defuzzifier")

_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")
_SECTION = re.compile(r"\[\s*([^\]]*?)\s*\]\Z")
_TRIPLET = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\Z")


class ProblemFileError(ValueError):
    """Malformed or inconsistent problem file, with its location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 section: str | None = None, source: str = "<problem>"):
        self.line, self.column, self.section, self.source = line, column, section, source
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        if section:
            where += f" [{section}]"
        super().__init__(f"{where}: {message}")
        self.message = message


class _Line:
    __slots__ = ("number", "text", "offset")

    def __init__(self, number: int, text: str, offset: int):
        self.number, self.text, self.offset = number, text, offset


def _strip(raw: str) -> tuple[str, int]:
    body = raw.split("#", 1)[0].rstrip()
    stripped = body.lstrip()
    return stripped, len(body) - len(stripped)


def _split_list(text: str) -> list[tuple[str, int]]:
    """Items of a comma/whitespace separated list with their 0-based columns."""
    return [(m.group(0), m.start()) for m in re.finditer(r"[^,\s]+", text)]


class _Parser:
    def __init__(self, text: str, source: str):
        self.source = source
        self.sections: dict[str, list[_Line]] = {}
        self.section_lines: dict[str, int] = {}
        self._split(text)

    def error(self, message, line=None, column=None, section=None):
        number = line.number if isinstance(line, _Line) else line
        return ProblemFileError(message, number, column, section, self.source)

    def _split(self, text: str):
        current = None
        for number, raw in enumerate(text.splitlines(), start=1):
            body, indent = _strip(raw)
            if not body:
                continue
            m = _SECTION.match(body)
            if m:
                name = m.group(1)
                if name not in SECTIONS:
                    raise self.error(f"unknown section [{name}]; expected one of "
                                     f"{', '.join(SECTIONS)}", number, indent + 1)
                if name in self.sections:
                    raise self.error(f"section [{name}] appears twice (first at line "
                                     f"{self.section_lines[name]})", number, indent + 1)
                current = name
                self.sections[name] = []
                self.section_lines[name] = number
                continue
            if current is None:
                raise self.error("content before the first section header", number, indent + 1)
            self.sections[current].append(_Line(number, body, indent))
        for name in REQUIRED:
            if name not in self.sections:
                raise self.error(f"missing section [{name}]", section=name)

    def key_value(self, line: _Line, section: str) -> tuple[str, str, int]:
        if "=" not in line.text:
            raise self.error("expected 'key = value'", line, line.offset + 1, section)
        key, value = line.text.split("=", 1)
        value_col = line.offset + len(key) + 1 + (len(value) - len(value.lstrip()))
        return key.strip(), value.strip(), value_col

    def label(self, text: str, line: _Line, column: int, section: str) -> str:
        if not _LABEL.match(text):
            raise self.error(f"invalid label {text!r}", line, column + 1, section)
        return text

    def number(self, text: str, line: _Line, column: int, section: str) -> float:
        try:
            return float(text)
        except ValueError:
            raise self.error(f"expected a number, got {text!r}", line, column + 1, section) from None

    def scale(self, name: str) -> LinguisticScale:
        terms = []
        universe = None
        seen: dict[str, int] = {}
        for line in self.sections[name]:
            key, value, col = self.key_value(line, name)
            if key == "universe":
                items = _split_list(value)
                if len(items) != 2:
                    raise self.error("universe needs two numbers", line, col + 1, name)
                universe = tuple(self.number(t, line, col + c, name) for t, c in items)
                continue
            self.label(key, line, line.offset, name)
            if key in seen:
                raise self.error(f"term {key} already defined on line {seen[key]}", line,
                                 line.offset + 1, name)
            m = _TRIPLET.match(value)
            if not m:
                raise self.error(f"expected a triplet (a, b, c) for term {key}", line, col + 1, name)
            a, b, c = (self.number(m.group(i), line, col + m.start(i), name) for i in (1, 2, 3))
            try:
                shape = TriangularFuzzyNumber(a, b, c)
            except ValueError as exc:
                raise self.error(f"term {key}: {exc}", line, col + 1, name) from None
            seen[key] = line.number
            terms.append((key, shape))
        if not terms:
            raise self.error(f"section [{name}] defines no terms", self.section_lines[name],
                             section=name)
        try:
            return LinguisticScale(tuple(terms), universe)
        except ValueError as exc:
            raise self.error(str(exc), self.section_lines[name], section=name) from None

    def labels(self, name: str) -> tuple[str, ...]:
        out: list[str] = []
        for line in self.sections[name]:
            for item, col in _split_list(line.text):
                label = self.label(item, line, line.offset + col, name)
                if label in out:
                    raise self.error(f"duplicate label {label}", line, line.offset + col + 1, name)
                out.append(label)
        if not out:
            raise self.error(f"section [{name}] is empty", self.section_lines[name], section=name)
        return tuple(out)

    def assessments(self, name: str, index_width: int, allowed: dict[int, tuple[str, ...]],
                    experts: tuple[str, ...], scale: LinguisticScale, scale_name: str):
        out: dict[tuple, str] = {}
        where: dict[tuple, int] = {}
        for line in self.sections[name]:
            key, value, col = self.key_value(line, name)
            index = tuple(key.split())
            if len(index) != index_width:
                raise self.error(f"expected {index_width} label(s) before '=', got {key!r}",
                                 line, line.offset + 1, name)
            for pos, item in enumerate(index):
                if item not in allowed[pos]:
                    kind = ("criterion", "candidate")[pos]
                    raise self.error(f"unknown {kind} {item!r}", line, line.offset + 1, name)
            if index in where:
                raise self.error(f"{' '.join(index)} already assessed on line {where[index]}",
                                 line, line.offset + 1, name)
            items = _split_list(value)
            if len(items) != len(experts):
                raise self.error(f"{' '.join(index)}: expected {len(experts)} terms "
                                 f"(one per expert), got {len(items)}", line, col + 1, name)
            for expert, (item, c) in zip(experts, items):
                if item not in scale:
                    raise self.error(f"cell {' '.join(index)} / {expert}: {item!r} is not a term of "
                                     f"{scale_name} ({', '.join(scale.labels)})",
                                     line, col + c + 1, name)
                out[index + (expert,)] = item
            where[index] = line.number
        for combo in _product(*(allowed[i] for i in range(index_width))):
            if combo not in where:
                raise self.error(f"missing assessment for {' '.join(combo)}",
                                 self.section_lines[name], section=name)
        return out

    def options(self, rating_scale: LinguisticScale) -> Options:
        values: dict = {}
        for line in self.sections.get("options", []):
            key, value, col = self.key_value(line, "options")
            if key not in OPTION_KEYS:
                raise self.error(f"unknown option {key!r}; expected one of {', '.join(OPTION_KEYS)}",
                                 line, line.offset + 1, "options")
            if key in values:
                raise self.error(f"option {key} set twice", line, line.offset + 1, "options")
            if key == "msd_threshold":
                if value not in rating_scale:
                    raise self.error(f"msd_threshold {value!r} is not a rating term", line,
                                     col + 1, "options")
                values[key] = value
            elif key == "epsilon":
                eps = self.number(value, line, col, "options")
                if not 0 <= eps <= 1:
                    raise self.error("epsilon must lie in [0, 1]", line, col + 1, "options")
                values[key] = eps
            elif key == "precision":
                if not value.isdigit() or int(value) > 15:
                    raise self.error("precision must be an integer in [0, 15]", line, col + 1,
                                     "options")
                values[key] = int(value)
            else:
                if value not in DEFUZZIFIERS:
                    raise self.error(f"defuzzifier must be one of {', '.join(DEFUZZIFIERS)}",
                                     line, col + 1, "options")
                values[key] = value
        return Options(**values)


def _product(*pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(*pools[1:]):
            yield (head,) + tail


def parse_problem(document: str, source: str = "<problem>") -> DecisionProblem:
    """Parse and validate a problem file's text."""
    p = _Parser(document, source)
    weight_scale = p.scale("weight_scale")
    rating_scale = p.scale("rating_scale")
    experts = p.labels("experts")
    criteria = p.labels("criteria")
    candidates = p.labels("candidates")
    weights = p.assessments("weights", 1, {0: criteria}, experts, weight_scale, "weight_scale")
    ratings = p.assessments("ratings", 2, {0: criteria, 1: candidates}, experts, rating_scale,
                            "rating_scale")
    options = p.options(rating_scale)
    return DecisionProblem(candidates, criteria, experts, weight_scale, rating_scale,
                           weights, ratings, options)


def load_problem(path) -> DecisionProblem:
    path = Path(path)
    return parse_problem(path.read_text(encoding="utf-8"), str(path))


def _num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def render_problem(problem: DecisionProblem) -> str:
    """Canonical problem-file text; parsing it gives back an equal problem."""
    out = []
    for name, scale in (("weight_scale", problem.weight_scale), ("rating_scale", problem.rating_scale)):
        out.append(f"[{name}]")
        out.append(f"universe = {_num(scale.universe[0])}, {_num(scale.universe[1])}")
        for label, shape in scale.terms:
            out.append(f"{label} = ({', '.join(_num(v) for v in shape)})")
        out.append("")
    for name in ("experts", "criteria", "candidates"):
        out += [f"[{name}]", ", ".join(getattr(problem, name)), ""]
    out.append("[weights]")
    for c in problem.criteria:
        out.append(f"{c} = " + ", ".join(problem.weights[(c, e)] for e in problem.experts))
    out += ["", "[ratings]"]
    for c in problem.criteria:
        for a in problem.candidates:
            out.append(f"{c} {a} = " + ", ".join(problem.ratings[(c, a, e)] for e in problem.experts))
    opts = problem.options
    out += ["", "[options]"]
    if opts.msd_threshold is not None:
        out.append(f"msd_threshold = {opts.msd_threshold}")
    if opts.epsilon is not None:
        out.append(f"epsilon = {opts.epsilon!r}")
    out.append(f"precision = {opts.precision}")
    out.append(f"defuzzifier = {opts.defuzzifier}")
    return "\n".join(out) + "\n"


CASE_STUDY_PATH = "data/case_study.dnp"


def case_study() -> DecisionProblem:
    """The bundled engineer-hiring problem: 3 candidates, 5 criteria, 3 experts."""
    text = resources.files("dnumbers").joinpath(CASE_STUDY_PATH).read_text(encoding="utf-8")
    return parse_problem(text, "case_study.dnp")
