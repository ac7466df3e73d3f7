"""Classical Dempster-Shafer belief functions over a finite frame.

Subsets are ``frozenset`` objects of frame elements. Sums go through
``math.fsum`` so results do not depend on dictionary iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum
from typing import Hashable, Iterable, Mapping

__all__ = [
    "Frame",
    "MassFunction",
    "TotalConflictError",
    "belief",
    "plausibility",
    "discount",
    "dempster_combine",
    "conflict",
    "pignistic",
    "orthogonal_sum",
]

MASS_TOL = 1e-9
PRUNE_BELOW = 1e-12


class TotalConflictError(ValueError):
    """Raised when two bodies of evidence are in total conflict (k = 1)."""


@dataclass(frozen=True)
class Frame:
    elements: tuple[Hashable, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise ValueError("a frame needs at least one element")
        if len(set(elements)) != len(elements):
            raise ValueError("frame elements must be unique")
        object.__setattr__(self, "elements", elements)

    @property
    def full(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def subset(self, items: Iterable[Hashable]) -> frozenset:
        """Validated ``frozenset`` of ``items``; a bare string counts as one element."""
        if isinstance(items, str):
            items = (items,)
        s = frozenset(items)
        unknown = s - self.full
        if unknown:
            raise ValueError(f"not in frame: {sorted(map(str, unknown))}")
        return s

    def key(self, subset: frozenset) -> int:
        """Bitmask of ``subset`` in frame order; gives a canonical sort key."""
        return sum(1 << i for i, e in enumerate(self.elements) if e in subset)


@dataclass(frozen=True)
class MassFunction:
    """A normalized basic probability assignment on ``frame``.

    ``masses`` maps nonempty subsets to positive mass; zero entries are
    dropped on construction and the total must be 1 within ``1e-9``.
    """

    frame: Frame
    masses: Mapping[frozenset, float] = field(default_factory=dict)

    def __post_init__(self):
        frame = self.frame if isinstance(self.frame, Frame) else Frame(tuple(self.frame))
        clean: dict[frozenset, float] = {}
        for subset, value in dict(self.masses).items():
            s = frame.subset(subset)
            value = float(value)
            if not s:
                if value != 0:
                    raise ValueError("the empty set cannot carry mass")
                continue
            if value < 0 or value > 1 + MASS_TOL:
                raise ValueError(f"mass {value} for {sorted(map(str, s))} is outside [0, 1]")
            if value > 0:
                clean[s] = clean.get(s, 0.0) + value
        total = fsum(clean.values())
        if abs(total - 1.0) > MASS_TOL:
            raise ValueError(f"masses sum to {total}, expected 1")
        ordered = dict(sorted(clean.items(), key=lambda kv: frame.key(kv[0])))
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "masses", ordered)

    @classmethod
    def vacuous(cls, frame) -> MassFunction:
        frame = frame if isinstance(frame, Frame) else Frame(tuple(frame))
        return cls(frame, {frame.full: 1.0})

    def __getitem__(self, subset) -> float:
        return self.masses.get(self.frame.subset(subset), 0.0)

    def focal(self) -> list[frozenset]:
        return list(self.masses)

    def items(self):
        return self.masses.items()

    def bel(self, subset) -> float:
        return belief(self, subset)

    def pl(self, subset) -> float:
        return plausibility(self, subset)


def belief(m: MassFunction, a) -> float:
    a = m.frame.subset(a)
    return fsum(v for s, v in m.masses.items() if s <= a)


def plausibility(m: MassFunction, a) -> float:
    a = m.frame.subset(a)
    return fsum(v for s, v in m.masses.items() if s & a)


def discount(m: MassFunction, alpha: float) -> MassFunction:
    """Shafer discounting by reliability ``alpha``; the lost mass moves to the frame."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"discount coefficient must lie in [0, 1], got {alpha}")
    full = m.frame.full
    out = {s: alpha * v for s, v in m.masses.items() if s != full}
    out[full] = 1.0 - alpha + alpha * m.masses.get(full, 0.0)
    return MassFunction(m.frame, out)


def orthogonal_sum(items1, items2, key=None):
    """Unnormalized conjunctive combination of two focal-element lists.

    Returns ``(products, k)`` where ``products`` maps each nonempty
    intersection to its accumulated mass and ``k`` is the mass that fell on
    the empty set. Shared by Dempster's rule and the D-number rule.
    """
    acc: dict[frozenset, list[float]] = {}
    clash: list[float] = []
    for b, vb in items1:
        for c, vc in items2:
            inter = b & c
            if inter:
                acc.setdefault(inter, []).append(vb * vc)
            else:
                clash.append(vb * vc)
    products = {s: fsum(vals) for s, vals in acc.items()}
    if key is not None:
        products = dict(sorted(products.items(), key=lambda kv: key(kv[0])))
    return products, fsum(clash)


def _normalize(products: dict, k: float) -> dict:
    if 1.0 - k <= 1e-15:
        raise TotalConflictError(f"total conflict (k = {k}); combination is undefined")
    scale = 1.0 - k
    return {s: v / scale for s, v in products.items() if v / scale >= PRUNE_BELOW}


def conflict(m1: MassFunction, m2: MassFunction) -> float:
    """Mass the conjunctive combination of ``m1`` and ``m2`` assigns to the empty set."""
    _, k = orthogonal_sum(m1.items(), m2.items())
    return k


def dempster_combine(m1: MassFunction, m2: MassFunction) -> MassFunction:
    if m1.frame != m2.frame:
        raise ValueError("mass functions are defined on different frames")
    products, k = orthogonal_sum(m1.items(), m2.items(), key=m1.frame.key)
    return MassFunction(m1.frame, _normalize(products, k))


def pignistic(m: MassFunction) -> dict:
    """Betting probability: each focal mass is shared equally by its elements."""
    shares: dict = {e: [] for e in m.frame}
    for s, v in m.masses.items():
        part = v / len(s)
        for e in s:
            shares[e].append(part)
    return {e: fsum(vals) for e, vals in shares.items()}
