"""Group decision making with D numbers.

Stages, in order: aggregate expert ratings into weighted triangular numbers,
read each one as a D number against the rating scale, fuse the criteria
for every candidate, transform to single-term weights and rank candidates
by their maximum supported degree (MSD) at a threshold term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum
from typing import Callable, Mapping, Sequence

from .core import (DNumber, PairedDNumber, completeness, exclusive_coefficient,
                   fuse, integrate)
from .evidence import MASS_TOL, PRUNE_BELOW
from .fuzzy import (LinguisticScale, TriangularFuzzyNumber, area,
                    envelope_residual_area, graded_mean, mean_tfn, min_area,
                    scale_tfn)
from .lvt import SingletonDistribution, transform

__all__ = [
    "DEFUZZIFIERS",
    "DecisionProblem",
    "Options",
    "PipelineError",
    "PipelineTrace",
    "Ranking",
    "STAGES",
    "centroid",
    "fuse_criteria",
    "msd",
    "rank",
    "run",
    "tfn_to_dnumber",
    "weighted_rating",
]

STAGES = ("aggregation", "d-numbers", "fusion", "lvt", "ranking")


def centroid(t: TriangularFuzzyNumber) -> float:
    return (t.a + t.b + t.c) / 3.0


DEFUZZIFIERS: dict[str, Callable[[TriangularFuzzyNumber], float]] = {
    "centroid": centroid,
    "graded": graded_mean,
}


class PipelineError(RuntimeError):
    """A stage failed; ``stage`` names it and ``__cause__`` holds the original error."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass(frozen=True)
class Options:
    """Run settings. ``None`` means "use the default for this problem"."""

    msd_threshold: str | None = None
    epsilon: float | None = None
    precision: int = 4
    defuzzifier: str = "centroid"

    def __post_init__(self):
        if self.defuzzifier not in DEFUZZIFIERS:
            raise ValueError(f"unknown defuzzifier {self.defuzzifier!r}; "
                             f"expected one of {', '.join(DEFUZZIFIERS)}")
        if self.epsilon is not None and not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if not 0 <= self.precision <= 15:
            raise ValueError(f"precision must lie in [0, 15], got {self.precision}")


@dataclass(frozen=True)
class DecisionProblem:
    candidates: tuple[str, ...]
    criteria: tuple[str, ...]
    experts: tuple[str, ...]
    weight_scale: LinguisticScale
    rating_scale: LinguisticScale
    weights: Mapping[tuple[str, str], str]
    ratings: Mapping[tuple[str, str, str], str]
    options: Options = field(default_factory=Options)

    def __post_init__(self):
        for name in ("candidates", "criteria", "experts"):
            items = tuple(getattr(self, name))
            if not items:
                raise ValueError(f"{name} must not be empty")
            if len(set(items)) != len(items):
                raise ValueError(f"{name} contains duplicate labels")
            object.__setattr__(self, name, items)
        weights = dict(self.weights)
        ratings = dict(self.ratings)
        for c in self.criteria:
            for e in self.experts:
                label = weights.get((c, e))
                if label is None:
                    raise ValueError(f"missing weight for criterion {c}, expert {e}")
                if label not in self.weight_scale:
                    raise ValueError(f"weight {label!r} for ({c}, {e}) is not in the weight scale")
                for a in self.candidates:
                    label = ratings.get((c, a, e))
                    if label is None:
                        raise ValueError(f"missing rating for criterion {c}, candidate {a}, expert {e}")
                    if label not in self.rating_scale:
                        raise ValueError(f"rating {label!r} for ({c}, {a}, {e}) is not in the rating scale")
        extra = set(weights) - {(c, e) for c in self.criteria for e in self.experts}
        extra |= set(ratings) - {(c, a, e) for c in self.criteria for a in self.candidates
                                 for e in self.experts}
        if extra:
            raise ValueError(f"assessments for unknown indices: {sorted(extra)[:3]}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "ratings", ratings)

    @property
    def threshold(self) -> str:
        """MSD threshold term: the option if set, else the fifth rating term."""
        if self.options.msd_threshold is not None:
            return self.options.msd_threshold
        labels = self.rating_scale.labels
        return labels[4] if len(labels) > 4 else labels[-1]


@dataclass(frozen=True)
class Ranking:
    order: tuple[str, ...]
    ties: tuple[tuple[str, ...], ...] = ()
    rule: str = "msd desc; ties by integrated term modes desc, then input order"

    def __iter__(self):
        return iter(self.order)

    def __str__(self):
        return " ≻ ".join(self.order)


@dataclass(frozen=True)
class PipelineTrace:
    weight_factors: Mapping[str, float]
    aggregated_tfns: Mapping[tuple[str, str], TriangularFuzzyNumber]
    per_criterion_d: Mapping[tuple[str, str], DNumber]
    epsilon: float
    fused_d: Mapping[str, DNumber]
    distributions: Mapping[str, SingletonDistribution]
    msd: Mapping[str, float]
    ranking: Ranking
    threshold: str
    defuzzifier: str


def weight_factor(problem: DecisionProblem, criterion: str, defuzzifier: str = "centroid") -> float:
    shapes = [problem.weight_scale[problem.weights[(criterion, e)]] for e in problem.experts]
    return DEFUZZIFIERS[defuzzifier](mean_tfn(shapes))


def weighted_rating(problem: DecisionProblem, criterion: str, candidate: str,
                    defuzzifier: str | None = None) -> TriangularFuzzyNumber:
    """Mean expert rating scaled by the crisp mean expert weight of ``criterion``."""
    defuzzifier = defuzzifier or problem.options.defuzzifier
    rating = mean_tfn(problem.rating_scale[problem.ratings[(criterion, candidate, e)]]
                      for e in problem.experts)
    return scale_tfn(rating, weight_factor(problem, criterion, defuzzifier))


def tfn_to_dnumber(x: TriangularFuzzyNumber, scale: LinguisticScale) -> DNumber:
    """Read ``x`` as a D number over the terms of ``scale``.

    Each part of ``x``'s area is credited to the term it overlaps: the region
    shared with two neighbouring terms goes to that pair, the rest of a
    term's overlap to the term alone, and area outside every term to theta.
    """
    s = area(x)
    if s <= 0:
        raise ValueError(f"{x.as_tuple()} has zero area")
    labels, shapes = scale.labels, scale.shapes
    n = len(labels)
    pair = [min_area([x, shapes[i], shapes[i + 1]]) for i in range(n - 1)]
    masses: dict[frozenset, float] = {}
    for i in range(n - 1):
        masses[frozenset((labels[i], labels[i + 1]))] = pair[i] / s
    for i in range(n):
        own = min_area([x, shapes[i]])
        left = pair[i - 1] if i > 0 else 0.0
        right = pair[i] if i < n - 1 else 0.0
        masses[frozenset((labels[i],))] = (own - left - right) / s
    theta = envelope_residual_area(x, scale) / s
    masses = {k: v for k, v in masses.items() if v >= PRUNE_BELOW}
    total = fsum(masses.values()) + theta
    if abs(total - 1.0) > MASS_TOL:
        raise ValueError(f"masses sum to {total}: the scale has overlaps between "
                         "non-neighbouring terms, which this construction does not cover")
    return DNumber(labels, masses, theta)


def fuse_criteria(problem: DecisionProblem, per_criterion_d: Mapping[tuple[str, str], DNumber],
                  epsilon: float) -> dict[str, DNumber]:
    return {a: fuse([per_criterion_d[(c, a)] for c in problem.criteria], epsilon)
            for a in problem.candidates}


def msd(dist: SingletonDistribution, scale: LinguisticScale, threshold_label: str) -> float:
    """Total weight at or above ``threshold_label`` in scale order."""
    start = scale.index(threshold_label)
    return fsum(dist.weights.get(label, 0.0) for label in scale.labels[start:])


def _expected_mode(dist: SingletonDistribution, scale: LinguisticScale) -> float:
    by_mode: dict[float, float] = {}
    for label, shape in scale.terms:
        w = dist.weights.get(label, 0.0)
        if w > 0:
            by_mode[shape.b] = by_mode.get(shape.b, 0.0) + w
    if not by_mode:
        return 0.0
    return integrate(PairedDNumber(tuple((b, min(v, 1.0)) for b, v in by_mode.items())))


def rank(msd_values: Mapping[str, float],
         distributions: Mapping[str, SingletonDistribution] | None = None,
         scale: LinguisticScale | None = None, tol: float = 1e-12) -> Ranking:
    """Order candidates by descending MSD.

    Equal MSDs (within ``tol``) are separated by the integrated term modes of
    each distribution, when distributions are given, and then by input order.
    Candidates still equal after both keys are reported in ``ties``.
    """
    names = list(msd_values)
    if not names:
        raise ValueError("nothing to rank")

    def secondary(name):
        if distributions is None or scale is None:
            return 0.0
        return _expected_mode(distributions[name], scale)

    keyed = [(msd_values[n], secondary(n), i, n) for i, n in enumerate(names)]
    keyed.sort(key=lambda t: (-t[0], -t[1], t[2]))
    groups: list[list] = []
    for item in keyed:
        if groups and abs(groups[-1][0][0] - item[0]) <= tol:
            groups[-1].append(item)
        else:
            groups.append([item])
    ties = []
    for group in groups:
        if len(group) < 2:
            continue
        still_equal = [group[0]]
        for item in group[1:]:
            if abs(item[1] - still_equal[-1][1]) <= tol:
                still_equal.append(item)
            else:
                if len(still_equal) > 1:
                    ties.append(tuple(t[3] for t in still_equal))
                still_equal = [item]
        if len(still_equal) > 1:
            ties.append(tuple(t[3] for t in still_equal))
    return Ranking(tuple(t[3] for t in keyed), tuple(ties))


def run(problem: DecisionProblem, *, epsilon: float | None = None,
        msd_threshold: str | None = None, defuzzifier: str | None = None) -> PipelineTrace:
    """Execute every stage and keep all intermediate results.

    Keyword arguments override the problem's own options.
    """
    opts = problem.options
    defuzzifier = defuzzifier or opts.defuzzifier
    threshold = msd_threshold or problem.threshold
    if epsilon is None:
        epsilon = opts.epsilon
    if threshold not in problem.rating_scale:
        raise PipelineError("ranking", f"MSD threshold {threshold!r} is not a rating term")

    try:
        factors = {c: weight_factor(problem, c, defuzzifier) for c in problem.criteria}
        tfns = {(c, a): weighted_rating(problem, c, a, defuzzifier)
                for c in problem.criteria for a in problem.candidates}
    except (ValueError, KeyError) as exc:
        raise PipelineError("aggregation", str(exc)) from exc

    try:
        per_d = {key: tfn_to_dnumber(x, problem.rating_scale) for key, x in tfns.items()}
    except ValueError as exc:
        raise PipelineError("d-numbers", str(exc)) from exc

    try:
        if epsilon is None:
            epsilon = exclusive_coefficient(problem.rating_scale)
        fused = fuse_criteria(problem, per_d, epsilon)
    except ValueError as exc:
        raise PipelineError("fusion", str(exc)) from exc

    try:
        dists = {a: transform(fused[a], problem.rating_scale) for a in problem.candidates}
    except ValueError as exc:
        raise PipelineError("lvt", str(exc)) from exc

    scores = {a: msd(dists[a], problem.rating_scale, threshold) for a in problem.candidates}
    ranking = rank(scores, dists, problem.rating_scale)
    return PipelineTrace(factors, tfns, per_d, epsilon, fused, dists, scores, ranking,
                         threshold, defuzzifier)


def all_complete(trace: PipelineTrace) -> bool:
    """True when every D number in the trace carries unit mass."""
    ds: Sequence[DNumber] = [*trace.per_criterion_d.values(), *trace.fused_d.values()]
    return all(completeness(d).complete for d in ds)
