"""Slow, obviously-correct reference implementations used by the tests.

Nothing here imports the package under test, so agreement is evidence
rather than a tautology.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

STEP = 1e-4


def grid(lo, hi, step=STEP):
    n = int(round((hi - lo) / step))
    return np.linspace(lo, hi, n + 1)


def mu(tri, xs):
    """Triangular membership on a grid, degenerate edges as jumps."""
    a, b, c = tri
    with np.errstate(divide="ignore", invalid="ignore"):
        rise = np.where(xs < b, (xs - a) / (b - a) if b > a else 0.0, 1.0)
        fall = np.where(xs > b, (c - xs) / (c - b) if c > b else 0.0, 1.0)
    y = np.minimum(rise, fall)
    y = np.where((xs < a) | (xs > c), 0.0, y)
    return np.clip(y, 0.0, 1.0)


def integral(ys, xs):
    return float(np.sum((ys[1:] + ys[:-1]) * np.diff(xs)) / 2)


def area(tri, lo=None, hi=None):
    lo = tri[0] - 1 if lo is None else lo
    hi = tri[2] + 1 if hi is None else hi
    xs = grid(lo, hi)
    return integral(mu(tri, xs), xs)


def min_area(tris, lo=0.0, hi=10.0):
    xs = grid(lo, hi)
    return integral(np.min([mu(t, xs) for t in tris], axis=0), xs)


def max_area(tris, lo=0.0, hi=10.0):
    xs = grid(lo, hi)
    return integral(np.max([mu(t, xs) for t in tris], axis=0), xs)


def envelope_residual(x, terms, lo=0.0, hi=10.0):
    xs = grid(lo, hi)
    yx = mu(x, xs)
    env = np.max([mu(t, xs) for t in terms], axis=0)
    return integral(yx - np.minimum(yx, env), xs)


def epsilon(terms, lo, hi):
    step = STEP * (hi - lo) / 10
    xs = grid(lo, hi, step)
    ys = [mu(t, xs) for t in terms]
    degrees = [integral(np.minimum(p, q), xs) / integral(np.maximum(p, q), xs)
               for p, q in combinations(ys, 2)]
    return float(np.mean(degrees))


def dempster(m1: dict, m2: dict) -> tuple[dict, float]:
    """Brute-force Dempster rule on ``{frozenset: mass}`` dicts."""
    joint: dict = {}
    k = 0.0
    for a, x in m1.items():
        for b, y in m2.items():
            c = a & b
            if c:
                joint[c] = joint.get(c, 0.0) + x * y
            else:
                k += x * y
    return {s: v / (1 - k) for s, v in joint.items()}, k


def betp(m: dict) -> dict:
    out: dict = {}
    for s, v in m.items():
        for e in s:
            out[e] = out.get(e, 0.0) + v / len(s)
    return out
