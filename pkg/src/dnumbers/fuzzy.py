"""Triangular fuzzy numbers, linguistic scales and exact area geometry.

Every area here is computed in closed form. Membership curves are
piecewise linear, so the domain is cut at all breakpoints and at every
crossing between two curves; on each resulting piece any min/max
composition of the curves is itself linear and the trapezoid rule is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import fsum
from typing import Callable, Iterable, Sequence

__all__ = [
    "TriangularFuzzyNumber",
    "PiecewiseLinearCurve",
    "LinguisticScale",
    "membership",
    "area",
    "min_area",
    "max_area",
    "union_area",
    "envelope_residual_area",
    "mean_tfn",
    "graded_mean",
    "scale_tfn",
]

# relative tolerance used when deciding whether two x positions coincide
_REL_TOL = 1e-12


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Triangular fuzzy number ``(a, b, c)`` with ``a <= b <= c``.

    Degenerate edges are allowed: ``(0, 0, 1)`` jumps to 1 at ``x = 0`` and
    ``(5, 5, 5)`` is a point with zero area.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if value != value or value in (float("inf"), float("-inf")):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if not self.a <= self.b <= self.c:
            raise ValueError(f"expected a <= b <= c, got {self.as_tuple()}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def __iter__(self):
        return iter(self.as_tuple())

    def __call__(self, x: float) -> float:
        return membership(self, x)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.c)

    def curve(self) -> PiecewiseLinearCurve:
        if self.a == self.c:
            return PiecewiseLinearCurve(((self.b, 1.0),))
        points = []
        if self.a < self.b:
            points.append((self.a, 0.0))
        points.append((self.b, 1.0))
        if self.b < self.c:
            points.append((self.c, 0.0))
        return PiecewiseLinearCurve(tuple(points))


TFN = TriangularFuzzyNumber


@dataclass(frozen=True)
class PiecewiseLinearCurve:
    """Linear interpolation through ``breakpoints``, zero outside their range.

    A curve whose first or last breakpoint has a positive ``y`` jumps there,
    which is how degenerate triangle edges are represented.
    """

    breakpoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.breakpoints)
        if not pts:
            raise ValueError("a curve needs at least one breakpoint")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("breakpoint x values must be strictly increasing")
        if any(y < 0 for _, y in pts):
            raise ValueError("breakpoint y values must be non-negative")
        object.__setattr__(self, "breakpoints", pts)

    @property
    def xs(self) -> tuple[float, ...]:
        return tuple(x for x, _ in self.breakpoints)

    def __call__(self, x: float) -> float:
        pts = self.breakpoints
        if x < pts[0][0] or x > pts[-1][0]:
            return 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[0][1]

    def line_on(self, lo: float, hi: float) -> tuple[float, float]:
        """Values at ``lo`` and ``hi`` of the linear piece covering ``(lo, hi)``.

        ``(lo, hi)`` must not contain a breakpoint in its interior. Values are
        one-sided limits taken from inside the interval, so jumps at the ends
        of the curve do not leak into neighbouring intervals.
        """
        pts = self.breakpoints
        mid = 0.5 * (lo + hi)
        if mid < pts[0][0] or mid > pts[-1][0]:
            return 0.0, 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= mid <= x1:
                slope = (y1 - y0) / (x1 - x0)
                return y0 + slope * (lo - x0), y0 + slope * (hi - x0)
        return 0.0, 0.0


def _as_curve(item) -> PiecewiseLinearCurve:
    if isinstance(item, PiecewiseLinearCurve):
        return item
    if isinstance(item, TriangularFuzzyNumber):
        return item.curve()
    return TriangularFuzzyNumber(*item).curve()


def _close(x: float, y: float) -> bool:
    return abs(x - y) <= _REL_TOL * max(1.0, abs(x), abs(y))


def _integrate(curves: Sequence[PiecewiseLinearCurve],
               combine: Callable[[Sequence[float]], float]) -> float:
    """Exact integral of ``combine(values of curves)`` over the real line.

    ``combine`` must be built from min/max (and constants) so that it is
    linear wherever the curves keep a fixed order.
    """
    xs = sorted({x for c in curves for x in c.xs})
    if len(xs) < 2:
        return 0.0
    pieces = []
    for lo, hi in zip(xs, xs[1:]):
        if _close(lo, hi):
            continue
        lines = [c.line_on(lo, hi) for c in curves]
        cuts = [lo, hi]
        for (p0, p1), (q0, q1) in combinations(lines, 2):
            d0, d1 = p0 - q0, p1 - q1
            if d0 * d1 < 0:
                t = d0 / (d0 - d1)
                x = lo + t * (hi - lo)
                if not (_close(x, lo) or _close(x, hi)):
                    cuts.append(x)
        cuts.sort()
        width = hi - lo
        for u, v in zip(cuts, cuts[1:]):
            if v <= u:
                continue
            tu, tv = (u - lo) / width, (v - lo) / width
            fu = combine([y0 + (y1 - y0) * tu for y0, y1 in lines])
            fv = combine([y0 + (y1 - y0) * tv for y0, y1 in lines])
            pieces.append(0.5 * (fu + fv) * (v - u))
    return fsum(pieces)


def membership(t: TriangularFuzzyNumber, x: float) -> float:
    a, b, c = t.a, t.b, t.c
    if x < a or x > c:
        return 0.0
    if x == b:
        return 1.0
    if x < b:
        return (x - a) / (b - a)
    return (c - x) / (c - b)


def area(t: TriangularFuzzyNumber) -> float:
    return 0.5 * (t.c - t.a)


def min_area(curves: Iterable) -> float:
    """Area under the pointwise minimum of all ``curves``.

    Accepts triangular numbers, ``(a, b, c)`` tuples or
    :class:`PiecewiseLinearCurve` objects.
    """
    cs = [_as_curve(c) for c in curves]
    if not cs:
        raise ValueError("min_area needs at least one curve")
    if max(c.xs[0] for c in cs) >= min(c.xs[-1] for c in cs):
        return 0.0
    return _integrate(cs, min)


def max_area(curves: Iterable) -> float:
    """Area under the pointwise maximum of all ``curves``."""
    cs = [_as_curve(c) for c in curves]
    if not cs:
        raise ValueError("max_area needs at least one curve")
    return _integrate(cs, max)


def union_area(s: TriangularFuzzyNumber, t: TriangularFuzzyNumber) -> float:
    return area(s) + area(t) - min_area([s, t])


def envelope_residual_area(x: TriangularFuzzyNumber, scale: LinguisticScale) -> float:
    """Part of ``x``'s area not covered by the upper envelope of the scale terms."""
    lo, hi = scale.universe
    if x.a < lo - _REL_TOL or x.c > hi + _REL_TOL:
        raise ValueError(f"{x.as_tuple()} is not inside the scale universe {scale.universe}")
    curves = [x.curve()] + [term.curve() for term in scale.shapes]
    covered = _integrate(curves, lambda v: min(v[0], max(v[1:])))
    return min(max(area(x) - covered, 0.0), area(x))


def mean_tfn(tfns: Iterable[TriangularFuzzyNumber]) -> TriangularFuzzyNumber:
    items = list(tfns)
    if not items:
        raise ValueError("mean_tfn needs at least one triangular number")
    n = len(items)
    a = fsum(t.a for t in items) / n
    b = fsum(t.b for t in items) / n
    c = fsum(t.c for t in items) / n
    # rounding in the division must not break a <= b <= c
    return TriangularFuzzyNumber(min(a, b), b, max(b, c))


def graded_mean(t: TriangularFuzzyNumber) -> float:
    return (t.a + 4.0 * t.b + t.c) / 6.0


def scale_tfn(t: TriangularFuzzyNumber, w: float) -> TriangularFuzzyNumber:
    if w < 0:
        raise ValueError(f"scale factor must be non-negative, got {w}")
    return TriangularFuzzyNumber(w * t.a, w * t.b, w * t.c)


@dataclass(frozen=True)
class LinguisticScale:
    """Ordered linguistic terms, each a triangular number on ``universe``."""

    terms: tuple[tuple[str, TriangularFuzzyNumber], ...]
    universe: tuple[float, float] | None = None

    def __post_init__(self):
        terms = tuple((str(label), shape if isinstance(shape, TriangularFuzzyNumber)
                       else TriangularFuzzyNumber(*shape)) for label, shape in self.terms)
        if not terms:
            raise ValueError("a scale needs at least one term")
        labels = [label for label, _ in terms]
        dupes = sorted({label for label in labels if labels.count(label) > 1})
        if dupes:
            raise ValueError(f"duplicate scale labels: {', '.join(dupes)}")
        modes = [shape.b for _, shape in terms]
        if any(m1 > m2 for m1, m2 in zip(modes, modes[1:])):
            raise ValueError("scale terms must be ordered by non-decreasing mode")
        universe = self.universe
        if universe is None:
            universe = (min(s.a for _, s in terms), max(s.c for _, s in terms))
        lo, hi = float(universe[0]), float(universe[1])
        for label, shape in terms:
            if shape.a < lo or shape.c > hi:
                raise ValueError(f"term {label} {shape.as_tuple()} lies outside universe ({lo}, {hi})")
        for (l1, s1), (l2, s2) in combinations(terms, 2):
            if _strictly_nested(s1, s2) or _strictly_nested(s2, s1):
                raise ValueError(f"terms {l1} and {l2} have nested supports")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "universe", (lo, hi))

    @classmethod
    def from_pairs(cls, pairs, universe=None) -> LinguisticScale:
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(tuple((label, TriangularFuzzyNumber(*shape)) for label, shape in pairs), universe)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    @property
    def shapes(self) -> tuple[TriangularFuzzyNumber, ...]:
        return tuple(shape for _, shape in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, label) -> bool:
        return label in self.labels

    def __getitem__(self, label: str) -> TriangularFuzzyNumber:
        for name, shape in self.terms:
            if name == label:
                return shape
        raise KeyError(label)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def rescaled(self, factor: float) -> LinguisticScale:
        """Same terms with the x axis stretched by ``factor > 0``."""
        if factor <= 0:
            raise ValueError("factor must be positive")
        lo, hi = self.universe
        return LinguisticScale(tuple((label, scale_tfn(shape, factor)) for label, shape in self.terms),
                               (lo * factor, hi * factor))


def _strictly_nested(inner: TriangularFuzzyNumber, outer: TriangularFuzzyNumber) -> bool:
    # sharing an endpoint (VP inside P on the rating scale) does not count as nesting
    return outer.a < inner.a and inner.c < outer.c
