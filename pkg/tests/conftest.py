"""Shared independent oracles for the test suite.

These deliberately re-derive quantities from first principles (definition
sums, exhaustive enumeration, shoelace areas) so they cannot inherit a bug
from the code paths they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest


def excess_oracle(entries, subset):
    """Definition: sum over the subset minus sum over the complement."""
    inside = sum(Fraction(entries[i - 1]) for i in subset)
    outside = sum(Fraction(e) for e in entries) - inside
    return inside - outside


def generic_oracle(entries):
    """Exhaustive subset-sum check over all index sets."""
    n = len(entries)
    for size in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            if excess_oracle(entries, subset) == 0:
                return False
    return True


def short_sets_oracle(entries):
    n = len(entries)
    out = set()
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            if excess_oracle(entries, subset) < 0:
                out.add(frozenset(subset))
    return out


def shoelace_area(points):
    """Exact area of a convex polygon given as an unordered vertex set."""
    pts = list(points)
    cx = sum((p[0] for p in pts), Fraction(0)) / len(pts)
    cy = sum((p[1] for p in pts), Fraction(0)) / len(pts)

    def key(p):
        dx, dy = p[0] - cx, p[1] - cy
        return (0 if (dy > 0 or (dy == 0 and dx > 0)) else 1, dx * 0)

    # angular order around the centroid via pairwise cross products
    import functools

    def cmp(p, q):
        hp = 0 if (p[1] - cy > 0 or (p[1] - cy == 0 and p[0] - cx > 0)) else 1
        hq = 0 if (q[1] - cy > 0 or (q[1] - cy == 0 and q[0] - cx > 0)) else 1
        if hp != hq:
            return -1 if hp < hq else 1
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ordered = sorted(pts, key=functools.cmp_to_key(cmp))
    twice = Fraction(0)
    for i, p in enumerate(ordered):
        q = ordered[(i + 1) % len(ordered)]
        twice += p[0] * q[1] - q[0] * p[1]
    return abs(twice) / 2


def relation_oracle(rays, offsets, cap):
    """Brute-force minimum positive relation value via itertools products."""
    best = None
    nrays = len(rays)
    dim = len(rays[0])
    for coeffs in itertools.product(range(cap + 1), repeat=nrays):
        if sum(coeffs) == 0 or sum(coeffs) > cap:
            continue
        if any(
            sum(a * u[k] for a, u in zip(coeffs, rays)) != 0 for k in range(dim)
        ):
            continue
        value = -sum(Fraction(o) * a for o, a in zip(offsets, coeffs))
        if value > 0 and (best is None or value < best):
            best = value
    return best


@pytest.fixture
def oracles():
    class Oracles:
        excess = staticmethod(excess_oracle)
        generic = staticmethod(generic_oracle)
        short_sets = staticmethod(short_sets_oracle)
        shoelace = staticmethod(shoelace_area)
        relation = staticmethod(relation_oracle)

    return Oracles
