"""Linguistic variable transformation (LVT).

Turns a D number over overlapping linguistic terms into weights on single
terms. Mass on a pair of terms is split by how much of each term the
pair's overlap covers; mass on the whole domain is spread in proportion to
the inverse area of each term.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Mapping

from .core import DNumber
from .fuzzy import LinguisticScale, area, min_area

__all__ = ["SingletonDistribution", "LVTError", "pair_split", "theta_split", "transform"]


class LVTError(ValueError):
    """The transformation is not defined for this input."""


@dataclass(frozen=True)
class SingletonDistribution:
    weights: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "weights", {str(k): float(v) for k, v in dict(self.weights).items()})

    def __getitem__(self, label: str) -> float:
        return self.weights[label]

    def __iter__(self):
        return iter(self.weights)

    def total(self) -> float:
        return fsum(self.weights.values())

    def items(self):
        return self.weights.items()


def _nested(s, t) -> bool:
    return (s.a < t.a and t.c < s.c) or (t.a < s.a and s.c < t.c)


def pair_split(label_a: str, label_b: str, mass: float, scale: LinguisticScale) -> tuple[float, float]:
    """Share ``mass`` between two overlapping terms.

    Each term's share is proportional to the fraction of its own area covered
    by the overlap, so terms of equal area split evenly.
    """
    sa, sb = scale[label_a], scale[label_b]
    if _nested(sa, sb):
        raise LVTError(f"{label_a} and {label_b} are nested; LVT does not apply")
    overlap = min_area([sa, sb])
    if overlap <= 0:
        raise LVTError(f"{label_a} and {label_b} do not intersect")
    ra, rb = overlap / area(sa), overlap / area(sb)
    share_a = mass * ra / (ra + rb)
    return share_a, mass - share_a


def theta_split(mass: float, scale: LinguisticScale) -> dict[str, float]:
    """Spread mass on the whole domain over all terms, weight proportional to 1/area."""
    inverse = {}
    for label, shape in scale.terms:
        a = area(shape)
        if a <= 0:
            raise LVTError(f"term {label} has zero area")
        inverse[label] = 1.0 / a
    norm = fsum(inverse.values())
    return {label: mass * w / norm for label, w in inverse.items()}


def transform(d: DNumber, scale: LinguisticScale) -> SingletonDistribution:
    if tuple(d.domain) != scale.labels:
        raise LVTError(f"D number domain {d.domain} does not match scale labels {scale.labels}")
    parts: dict[str, list[float]] = {label: [] for label in scale.labels}
    for subset, mass in d.masses.items():
        members = [label for label in scale.labels if label in subset]
        if len(members) == 1:
            parts[members[0]].append(mass)
        elif len(members) == 2:
            share_a, share_b = pair_split(members[0], members[1], mass, scale)
            parts[members[0]].append(share_a)
            parts[members[1]].append(share_b)
        else:
            raise LVTError(f"focal element {d.label(subset)} has {len(members)} terms; "
                           "only singletons, pairs and the whole domain are supported")
    if d.theta_mass > 0:
        for label, share in theta_split(d.theta_mass, scale).items():
            parts[label].append(share)
    return SingletonDistribution({label: fsum(v) for label, v in parts.items()})
