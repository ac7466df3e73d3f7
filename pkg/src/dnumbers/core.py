"""D numbers: belief assignments over possibly non-exclusive hypotheses.

A :class:`DNumber` keeps the mass on the whole domain (``theta_mass``)
apart from the other focal elements so that discounting by the exclusive
coefficient is explicit. Only the closed world is modelled: the empty set
never carries mass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from math import fsum
from typing import Iterable, Mapping, NamedTuple, Sequence

from .evidence import (MASS_TOL, Frame, MassFunction, TotalConflictError,
                       _normalize, orthogonal_sum)
from .fuzzy import LinguisticScale, area, min_area

__all__ = [
    "DNumber",
    "PairedDNumber",
    "RelativeMatrix",
    "Completeness",
    "TotalConflictError",
    "completeness",
    "integrate",
    "relative_matrix",
    "exclusive_coefficient",
    "discount_by_exclusivity",
    "combine",
    "fuse",
]


class Completeness(NamedTuple):
    complete: bool
    deficit: float

    def __str__(self):
        return "complete" if self.complete else f"incomplete({self.deficit:g})"


@dataclass(frozen=True)
class DNumber:
    """Mass assignment on nonempty subsets of ``domain``, summing to at most 1.

    A key equal to the whole domain is folded into ``theta_mass``.
    """

    domain: tuple[str, ...]
    masses: Mapping[frozenset, float] = field(default_factory=dict)
    theta_mass: float = 0.0

    def __post_init__(self):
        frame = Frame(tuple(self.domain))
        full = frame.full
        theta = float(self.theta_mass)
        clean: dict[frozenset, float] = {}
        for subset, value in dict(self.masses).items():
            s = frame.subset(subset)
            value = float(value)
            if not s:
                if value != 0:
                    raise ValueError("closed world: the empty set cannot carry mass")
                continue
            if value < 0 or value > 1 + MASS_TOL:
                raise ValueError(f"mass {value} for {_fmt(s, frame)} is outside [0, 1]")
            if s == full:
                theta += value
            elif value > 0:
                clean[s] = clean.get(s, 0.0) + value
        if theta < 0 or theta > 1 + MASS_TOL:
            raise ValueError(f"theta mass {theta} is outside [0, 1]")
        total = fsum(clean.values()) + theta
        if total > 1 + MASS_TOL:
            raise ValueError(f"masses sum to {total}, which exceeds 1")
        ordered = dict(sorted(clean.items(), key=lambda kv: frame.key(kv[0])))
        object.__setattr__(self, "domain", frame.elements)
        object.__setattr__(self, "masses", ordered)
        object.__setattr__(self, "theta_mass", theta)

    @classmethod
    def vacuous(cls, domain: Sequence[str]) -> DNumber:
        return cls(tuple(domain), {}, 1.0)

    @classmethod
    def from_mass_function(cls, m: MassFunction) -> DNumber:
        return cls(tuple(m.frame.elements), dict(m.masses))

    @property
    def frame(self) -> Frame:
        return Frame(self.domain)

    @property
    def total(self) -> float:
        return fsum(self.masses.values()) + self.theta_mass

    def __getitem__(self, subset) -> float:
        s = self.frame.subset(subset)
        if s == frozenset(self.domain):
            return self.theta_mass
        return self.masses.get(s, 0.0)

    def items(self) -> list[tuple[frozenset, float]]:
        """Focal elements with their mass; the domain itself stands for theta."""
        out = list(self.masses.items())
        if self.theta_mass > 0:
            out.append((frozenset(self.domain), self.theta_mass))
        return out

    def completed(self) -> DNumber:
        """Closed-world completion: any missing mass is assigned to theta."""
        deficit = 1.0 - self.total
        if deficit <= 0:
            return self
        return DNumber(self.domain, self.masses, self.theta_mass + deficit)

    def to_mass_function(self) -> MassFunction:
        return MassFunction(self.frame, dict(self.items()))

    def label(self, subset: frozenset) -> str:
        return _fmt(subset, self.frame)

    def as_dict(self) -> dict[str, float]:
        """Readable ``{"{F,MG}": 0.33, ..., "Theta": 0.09}`` view in domain order."""
        out = {self.label(s): v for s, v in self.masses.items()}
        if self.theta_mass > 0:
            out["Theta"] = self.theta_mass
        return out


def _fmt(subset: frozenset, frame: Frame) -> str:
    if subset == frame.full and len(frame) > 1:
        return "Theta"
    return "{" + ",".join(str(e) for e in frame.elements if e in subset) + "}"


@dataclass(frozen=True, eq=False)
class PairedDNumber:
    """D number on distinct real values, written as ``(b_i, v_i)`` pairs.

    Equality ignores the order of the pairs.
    """

    pairs: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pairs = tuple((float(b), float(v)) for b, v in self.pairs)
        values = [b for b, _ in pairs]
        if len(set(values)) != len(values):
            raise ValueError("pair values b_i must be distinct")
        if any(not 0 < v <= 1 for _, v in pairs):
            raise ValueError("pair masses v_i must lie in (0, 1]")
        if fsum(v for _, v in pairs) > 1 + MASS_TOL:
            raise ValueError("pair masses must sum to at most 1")
        object.__setattr__(self, "pairs", pairs)

    def __eq__(self, other):
        if not isinstance(other, PairedDNumber):
            return NotImplemented
        return dict(self.pairs) == dict(other.pairs)

    def __hash__(self):
        return hash(frozenset(self.pairs))

    def __len__(self):
        return len(self.pairs)


def completeness(d: DNumber) -> Completeness:
    total = d.total
    if abs(total - 1.0) <= MASS_TOL:
        return Completeness(True, 0.0)
    return Completeness(False, 1.0 - total)


def integrate(d: PairedDNumber) -> float:
    return fsum(b * v for b, v in d.pairs)


@dataclass(frozen=True)
class RelativeMatrix:
    labels: tuple[str, ...]
    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        rows = tuple(tuple(float(x) for x in row) for row in self.entries)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError("relative matrix must be square and match its labels")
        for i in range(n):
            if rows[i][i] != 1.0:
                raise ValueError("relative matrix diagonal must be 1")
            for j in range(n):
                if not 0.0 <= rows[i][j] <= 1.0:
                    raise ValueError("relative matrix entries must lie in [0, 1]")
                if abs(rows[i][j] - rows[j][i]) > 1e-12:
                    raise ValueError("relative matrix must be symmetric")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "entries", rows)

    def __getitem__(self, pair) -> float:
        i, j = (self.labels.index(x) if isinstance(x, str) else x for x in pair)
        return self.entries[i][j]

    @classmethod
    def identity(cls, labels: Sequence[str]) -> RelativeMatrix:
        n = len(labels)
        return cls(tuple(labels), tuple(tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)))


def relative_matrix(scale: LinguisticScale) -> RelativeMatrix:
    """Pairwise non-exclusive degrees: intersection area over union area."""
    shapes = scale.shapes
    for label, shape in scale.terms:
        if area(shape) <= 0:
            raise ValueError(f"term {label} has zero area; its non-exclusive degree is undefined")
    n = len(shapes)
    rows = [[1.0] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        inter = min_area([shapes[i], shapes[j]])
        degree = inter / (area(shapes[i]) + area(shapes[j]) - inter)
        rows[i][j] = rows[j][i] = min(max(degree, 0.0), 1.0)
    return RelativeMatrix(scale.labels, tuple(tuple(r) for r in rows))


def exclusive_coefficient(r: RelativeMatrix | LinguisticScale) -> float:
    """Mean of the strictly upper-triangular entries; 0 for exclusive terms."""
    if isinstance(r, LinguisticScale):
        r = relative_matrix(r)
    n = len(r.labels)
    if n < 2:
        raise ValueError("the exclusive coefficient needs at least two propositions")
    upper = [r.entries[i][j] for i, j in combinations(range(n), 2)]
    return fsum(upper) / (n * (n - 1) / 2)


def discount_by_exclusivity(d: DNumber, epsilon: float) -> DNumber:
    """Scale every proper focal mass by ``1 - epsilon`` and move the rest to theta.

    An incomplete input is completed first, so the result is always complete.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"exclusive coefficient must lie in [0, 1], got {epsilon}")
    d = d.completed()
    if epsilon == 0:
        return d
    keep = 1.0 - epsilon
    return DNumber(d.domain, {s: v * keep for s, v in d.masses.items()},
                   d.theta_mass * keep + epsilon)


def combine(d1: DNumber, d2: DNumber) -> DNumber:
    """Normalized conjunctive combination of two D numbers on the same domain.

    No discounting happens here; pass inputs through
    :func:`discount_by_exclusivity` first. Incomplete inputs are completed
    with theta. On complete inputs this is exactly Dempster's rule.
    """
    if tuple(d1.domain) != tuple(d2.domain):
        raise ValueError(f"D numbers have different domains: {d1.domain} vs {d2.domain}")
    d1, d2 = d1.completed(), d2.completed()
    frame = d1.frame
    products, k = orthogonal_sum(d1.items(), d2.items(), key=frame.key)
    return DNumber(d1.domain, _normalize(products, k))


def fuse(dnumbers: Iterable[DNumber], epsilon: float) -> DNumber:
    """Discount each D number once by ``epsilon``, then fold them with :func:`combine`."""
    discounted = [discount_by_exclusivity(d, epsilon) for d in dnumbers]
    if not discounted:
        raise ValueError("nothing to fuse")
    return reduce(combine, discounted)
