"""Reproduction checks against the reference case-study tables.

``run_checks`` evaluates every check and returns one :class:`Check` per
criterion with the largest deviation found. The golden tables ship in
``data/golden.json``; another file can be passed to test the checker itself.
Randomized checks use a fixed seed.
"""

from __future__ import annotations

import functools
import json
import time
import timeit
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path

import numpy as np

from .core import (DNumber, combine, completeness, discount_by_exclusivity,
                   exclusive_coefficient, fuse)
from .evidence import MassFunction, dempster_combine, pignistic
from .fuzzy import LinguisticScale, TriangularFuzzyNumber, area, min_area, union_area
from .lvt import SingletonDistribution, transform
from .pipeline import (DecisionProblem, Options, msd, rank, run, tfn_to_dnumber,
                       weighted_rating)
from .problem import case_study
from .scales import RATING_SCALE, WEIGHT_SCALE

__all__ = ["Check", "run_checks", "load_golden", "trapezoid_area", "random_problem"]

SEED = 20140101
GRID_STEP = 1e-4


@dataclass
class Check:
    name: str
    title: str
    passed: bool = True
    max_delta: float = 0.0
    tolerance: float | None = None
    seconds: float = 0.0
    details: list[str] = field(default_factory=list)

    def record(self, label: str, got: float, want: float, tol: float):
        delta = abs(got - want)
        self.max_delta = max(self.max_delta, delta)
        if not delta <= tol:
            self.passed = False
            self.details.append(f"{label}: got {got:.6g}, expected {want:.6g} ± {tol:g} "
                                f"(delta {delta:.3g})")

    def fail(self, message: str):
        self.passed = False
        self.details.append(message)

    def as_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = "" if self.tolerance is None else f" tol={self.tolerance:g}"
        return f"{status} {self.name}: {self.title} (max delta {self.max_delta:.3g}{tol}, {self.seconds:.3f}s)"


def load_golden(path=None) -> dict:
    if path is None:
        text = resources.files("dnumbers").joinpath("data/golden.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _dnumber(spec: dict, domain) -> DNumber:
    masses = {}
    for key, value in spec.items():
        subset = frozenset(domain) if key == "Theta" else frozenset(key.split())
        masses[subset] = masses.get(subset, 0.0) + value
    return DNumber(tuple(domain), masses)


def _compare_masses(check: Check, label: str, got: DNumber, want: dict, tol: float):
    got_map = {("Theta" if s == frozenset(got.domain) else " ".join(
        e for e in got.domain if e in s)): v for s, v in got.items()}
    for key in sorted(set(got_map) | set(want)):
        check.record(f"{label} {key}", got_map.get(key, 0.0), want.get(key, 0.0), tol)


# -- trapezoid oracle ------------------------------------------------------

def _grid(lo: float, hi: float, step: float = GRID_STEP) -> np.ndarray:
    n = int(round((hi - lo) / step))
    return np.linspace(lo, hi, n + 1)


def _mu(t: TriangularFuzzyNumber, xs: np.ndarray) -> np.ndarray:
    a, b, c = t.a, t.b, t.c
    rise = (xs - a) / (b - a) if b > a else (xs >= a).astype(float)
    fall = (c - xs) / (c - b) if c > b else (xs <= c).astype(float)
    y = np.minimum(rise, fall)
    y[(xs < a) | (xs > c)] = 0.0
    return np.clip(y, 0.0, 1.0)


def trapezoid_area(ys: np.ndarray, xs: np.ndarray) -> float:
    return float(np.trapezoid(ys, xs))


def _oracle_epsilon(scale: LinguisticScale) -> float:
    xs = _grid(*scale.universe, step=GRID_STEP * (scale.universe[1] - scale.universe[0]) / 10)
    ys = [_mu(s, xs) for s in scale.shapes]
    degrees = []
    for i, j in combinations(range(len(ys)), 2):
        inter = trapezoid_area(np.minimum(ys[i], ys[j]), xs)
        union = trapezoid_area(np.maximum(ys[i], ys[j]), xs)
        degrees.append(inter / union)
    return float(np.mean(degrees))


def _random_triangle(rng, lo=0.0, hi=10.0, min_edge=0.05) -> TriangularFuzzyNumber:
    # edges narrower than min_edge would let the grid error of a kink exceed 1e-6
    while True:
        a, b, c = np.sort(rng.uniform(lo, hi, 3))
        if b - a >= min_edge and c - b >= min_edge:
            return TriangularFuzzyNumber(a, b, c)


# -- random problems ---------------------------------------------------------

def random_problem(rng, max_candidates=3, max_criteria=4, max_experts=3) -> DecisionProblem:
    candidates = tuple(f"A{i + 1}" for i in range(rng.integers(1, max_candidates + 1)))
    criteria = tuple(f"C{i + 1}" for i in range(rng.integers(1, max_criteria + 1)))
    experts = tuple(f"E{i + 1}" for i in range(rng.integers(1, max_experts + 1)))
    wl, rl = WEIGHT_SCALE.labels, RATING_SCALE.labels
    # weights must not all be VL, which would give a zero-area weighted rating
    weights = {(c, e): wl[rng.integers(1, len(wl))] for c in criteria for e in experts}
    ratings = {(c, a, e): rl[rng.integers(0, len(rl))]
               for c in criteria for a in candidates for e in experts}
    return DecisionProblem(candidates, criteria, experts, WEIGHT_SCALE, RATING_SCALE,
                           weights, ratings, Options())


def _permuted(problem: DecisionProblem, experts=None, criteria=None) -> DecisionProblem:
    return DecisionProblem(problem.candidates, tuple(criteria or problem.criteria),
                           tuple(experts or problem.experts), problem.weight_scale,
                           problem.rating_scale, problem.weights, problem.ratings, problem.options)


def _max_trace_gap(t1, t2) -> float:
    gap = abs(t1.epsilon - t2.epsilon)
    for key in t1.aggregated_tfns:
        gap = max(gap, *(abs(u - v) for u, v in zip(t1.aggregated_tfns[key], t2.aggregated_tfns[key])))
    for group1, group2 in ((t1.per_criterion_d, t2.per_criterion_d), (t1.fused_d, t2.fused_d)):
        for key, d in group1.items():
            other = group2[key]
            keys = set(d.masses) | set(other.masses)
            gap = max(gap, abs(d.theta_mass - other.theta_mass),
                      *(abs(d.masses.get(k, 0.0) - other.masses.get(k, 0.0)) for k in keys))
    for a, dist in t1.distributions.items():
        gap = max(gap, *(abs(w - t2.distributions[a][k]) for k, w in dist.items()))
    return gap


# -- checks ------------------------------------------------------------------

def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        check = fn(*args, **kwargs)
        check.seconds = time.perf_counter() - start
        return check
    return wrapper


@_timed
def check_epsilon(golden: dict) -> Check:
    check = Check("c1_epsilon", "exclusive coefficient of both scales", tolerance=1e-3)
    eps2 = exclusive_coefficient(RATING_SCALE)
    eps1 = exclusive_coefficient(WEIGHT_SCALE)
    check.record("epsilon(rating scale)", eps2, golden["epsilon"], 1e-3)
    check.record("epsilon(weight scale) - epsilon(rating scale)", eps1, eps2, 1e-6)
    check.record("epsilon vs trapezoid oracle", eps2, _oracle_epsilon(RATING_SCALE), 1e-6)
    best = min(timeit.repeat(lambda: exclusive_coefficient(RATING_SCALE), number=20, repeat=5)) / 20
    if best >= 1e-3:
        check.fail(f"epsilon took {best * 1e3:.3f} ms, limit 1 ms")
    check.details.append(f"epsilon = {eps2:.6f}, {best * 1e6:.0f} us per call")
    return check


@_timed
def check_lvt_example(golden: dict) -> Check:
    check = Check("c2_lvt_example", "two-term LVT worked example", tolerance=1e-9)
    spec = golden["lvt_example"]
    d = _dnumber(spec["input"], RATING_SCALE.labels)
    out = transform(d, RATING_SCALE)
    for label in RATING_SCALE.labels:
        check.record(label, out[label], spec["expected"].get(label, 0.0), 1e-9)
    return check


@_timed
def check_table5(golden: dict, problem: DecisionProblem | None = None) -> Check:
    check = Check("c3_aggregation", "weighted ratings vs reference aggregation", tolerance=0.1)
    problem = problem or case_study()
    table = golden["aggregated_tfns"]
    for c, row in table.items():
        # a symmetric mean weight defuzzifies the same way under any rule
        symmetric = _symmetric_mean([problem.weight_scale[problem.weights[(c, e)]]
                                     for e in problem.experts])
        for a, want in row.items():
            tol = 0.01 if symmetric or (c, a) == ("C4", "A2") else 0.1
            got = weighted_rating(problem, c, a)
            for name, g, w in zip("abc", got, want):
                check.record(f"{c}/{a}.{name}", g, w, tol)
    return check


def _symmetric_mean(shapes) -> bool:
    a = sum(s.a for s in shapes) / len(shapes)
    b = sum(s.b for s in shapes) / len(shapes)
    c = sum(s.c for s in shapes) / len(shapes)
    return abs((b - a) - (c - b)) < 1e-9


@_timed
def check_table6(golden: dict) -> Check:
    check = Check("c4_dnumbers", "D numbers from reference weighted ratings", tolerance=0.01)
    for c, row in golden["aggregated_tfns"].items():
        for a, tfn in row.items():
            got = tfn_to_dnumber(TriangularFuzzyNumber(*tfn), RATING_SCALE)
            _compare_masses(check, f"{c}/{a}", got, golden["d_numbers"][c][a], 0.01)
    return check


@_timed
def check_table7(golden: dict) -> Check:
    check = Check("c5_fusion", "fusion of reference D numbers", tolerance=0.01)
    eps = exclusive_coefficient(RATING_SCALE)
    table6 = golden["d_numbers"]
    for a, want in golden["fused"].items():
        try:
            inputs = [_dnumber(table6[c][a], RATING_SCALE.labels) for c in table6]
        except ValueError as exc:
            check.fail(f"{a}: printed input is not a valid D number ({exc})")
            continue
        _compare_masses(check, a, fuse(inputs, eps), want, 0.01)
    return check


@_timed
def check_table8(golden: dict) -> Check:
    check = Check("c6_lvt", "LVT of reference fused D numbers", tolerance=5e-4)
    for a, spec in golden["fused"].items():
        got = transform(_dnumber(spec, RATING_SCALE.labels), RATING_SCALE)
        for label, want in golden["distributions"][a].items():
            check.record(f"{a} {label}", got[label], want, 5e-4)
    return check


@_timed
def check_msd(golden: dict, problem: DecisionProblem | None = None) -> Check:
    check = Check("c7_msd_ranking", "MSD and ranking", tolerance=5e-3)
    threshold = golden["msd_threshold"]
    scores = {}
    dists = {}
    for a, dist in golden["distributions"].items():
        dists[a] = SingletonDistribution(dist)
        scores[a] = msd(dists[a], RATING_SCALE, threshold)
        check.record(f"MSD {a}", scores[a], golden["msd"][a], 5e-3)
    want = list(golden["ranking"])
    order = list(rank(scores, dists, RATING_SCALE).order)
    if order != want:
        check.fail(f"ranking from reference distributions is {order}, expected {want}")
    trace = run(problem or case_study())
    if list(trace.ranking.order) != want:
        check.fail(f"end-to-end ranking is {list(trace.ranking.order)}, expected {want}")
    check.details.append("end-to-end MSD: " + ", ".join(f"{a}={v:.4f}" for a, v in trace.msd.items()))
    return check


def _random_mass(rng, domain, theta_only_singletons=False) -> MassFunction:
    n = len(domain)
    if theta_only_singletons:
        pool = list(dict.fromkeys([frozenset((e,)) for e in domain] + [frozenset(domain)]))
    else:
        pool = [frozenset(domain[i] for i in range(n) if mask >> i & 1) for mask in range(1, 2 ** n)]
    k = int(rng.integers(1, len(pool) + 1))
    chosen = rng.choice(len(pool), size=k, replace=False)
    weights = rng.random(k) + 1e-3
    weights /= weights.sum()
    return MassFunction(tuple(domain), {pool[i]: float(w) for i, w in zip(chosen, weights)})


@_timed
def check_degeneration(golden: dict | None = None, trials: int = 1000) -> Check:
    check = Check("c8_degeneration", "epsilon = 0 reduces to Dempster's rule and BetP",
                  tolerance=1e-12)
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    for t in range(trials):
        domain = tuple(f"h{i}" for i in range(int(rng.integers(1, 5))))
        m1, m2 = _random_mass(rng, domain), _random_mass(rng, domain)
        d1 = discount_by_exclusivity(DNumber.from_mass_function(m1), 0.0)
        d2 = discount_by_exclusivity(DNumber.from_mass_function(m2), 0.0)
        try:
            want = dempster_combine(m1, m2)
        except ValueError:
            try:
                combine(d1, d2)
            except ValueError:
                continue
            check.fail(f"trial {t}: combine accepted a totally conflicting pair")
            continue
        got = combine(d1, d2).to_mass_function()
        for s in set(got.masses) | set(want.masses):
            check.record(f"trial {t} {sorted(s)}", got.masses.get(s, 0.0), want.masses.get(s, 0.0), 1e-12)
        # LVT on equal-area disjoint terms against the pignistic transform
        scale = LinguisticScale(tuple((h, TriangularFuzzyNumber(2 * i, 2 * i + 0.5, 2 * i + 1))
                                      for i, h in enumerate(domain)))
        m = _random_mass(rng, domain, theta_only_singletons=True)
        lvt = transform(DNumber.from_mass_function(m), scale)
        bet = pignistic(m)
        for h in domain:
            check.record(f"trial {t} LVT/BetP {h}", lvt[h], bet[h], 1e-12)
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        check.fail(f"{trials} trials took {elapsed:.2f} s, limit 1 s")
    return check


@_timed
def check_geometry(golden: dict | None = None, trials: int = 1000) -> Check:
    check = Check("c9_geometry_oracle", "closed-form areas vs trapezoid integration",
                  tolerance=1e-6)
    rng = np.random.default_rng(SEED + 1)
    xs = _grid(0.0, 10.0)
    start = time.perf_counter()
    for t in range(trials):
        s, u = _random_triangle(rng), _random_triangle(rng)
        ys, yu = _mu(s, xs), _mu(u, xs)
        check.record(f"pair {t} area", area(s), trapezoid_area(ys, xs), 1e-6)
        check.record(f"pair {t} min_area", min_area([s, u]), trapezoid_area(np.minimum(ys, yu), xs), 1e-6)
        check.record(f"pair {t} union_area", union_area(s, u), trapezoid_area(np.maximum(ys, yu), xs), 1e-6)
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        check.fail(f"{trials} pairs took {elapsed:.2f} s, limit 10 s")
    return check


@_timed
def check_conservation(golden: dict | None = None, trials: int = 100) -> Check:
    check = Check("c10_mass_conservation", "unit mass and permutation invariance on random problems",
                  tolerance=1e-9)
    rng = np.random.default_rng(SEED + 2)
    for t in range(trials):
        problem = random_problem(rng)
        trace = run(problem)
        for key, d in [*trace.per_criterion_d.items(), *trace.fused_d.items()]:
            if not completeness(d).complete:
                check.fail(f"problem {t}: D number {key} is {completeness(d)}")
            check.record(f"problem {t} {key} total", d.total, 1.0, 1e-9)
        for a, dist in trace.distributions.items():
            check.record(f"problem {t} {a} distribution total", dist.total(), 1.0, 1e-9)
        experts = list(problem.experts)[::-1]
        criteria = list(rng.permutation(problem.criteria))
        gap_e = _max_trace_gap(trace, run(_permuted(problem, experts=experts)))
        gap_c = _max_trace_gap(trace, run(_permuted(problem, criteria=criteria)))
        check.record(f"problem {t} expert permutation", gap_e, 0.0, 1e-9)
        check.record(f"problem {t} criterion permutation", gap_c, 0.0, 1e-9)
    return check


CHECKS = (check_epsilon, check_lvt_example, check_table5, check_table6, check_table7,
          check_table8, check_msd, check_degeneration, check_geometry, check_conservation)


def run_checks(golden_path=None) -> list[Check]:
    try:
        golden = load_golden(golden_path)
    except (OSError, ValueError) as exc:
        return [Check("golden", "load golden data", passed=False, details=[str(exc)])]
    results = []
    for fn in CHECKS:
        try:
            check = fn(golden)
        except (KeyError, TypeError, ValueError) as exc:
            name = fn.__name__.replace("check_", "")
            check = Check(name, "check raised", passed=False,
                          details=[f"{type(exc).__name__}: {exc}"])
        results.append(check)
    return results
