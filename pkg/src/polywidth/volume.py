"""Symplectic volume of polygon moduli spaces, exactly.

The combinatorial formula sums, over all compositions k of n-3 and all
long index sets, signed monomials in the edge lengths; it collapses to a
closed form on the projective chamber.  Volumes carry their power of 2*pi
symbolically: a VolumeValue means coefficient * (2*pi)**power.

The ratio of the combinatorial coefficient to the Euclidean volume of the
bending moment polytope is a dimension constant (it turns out to be 1),
derived on the projective chamber and then asserted on every toric sample;
this single check ties the volume formula, the moment polytopes, and the
vertex enumeration together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from .bending import MomentImage, caterpillar_polytope, is_bending_toric
from .errors import CapabilityError
from .lengths import (
    LengthVector,
    assert_generic,
    assert_nonempty,
    is_long,
    perimeter_slack,
)
from .rationals import format_rational

VOLUME_ARITY_CAP = 12


@dataclass(frozen=True)
class VolumeValue:
    """coefficient * (2*pi)**power, with power = n - 3."""

    coefficient: Fraction
    power: int

    def to_json(self) -> dict:
        return {"coefficient": format_rational(self.coefficient), "power": self.power}


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def combinatorial_volume(r: LengthVector) -> VolumeValue:
    """Signed double sum over degree splittings and long index sets.

    Returns the exact coefficient of (2*pi)**(n-3).  Exhaustive over the
    2**n index sets and all C(2n-4, n-1) compositions, hence the arity cap.
    """
    n = r.n
    if n > VOLUME_ARITY_CAP:
        raise CapabilityError(f"volume formula capped at n <= {VOLUME_ARITY_CAP}")
    assert_generic(r)
    assert_nonempty(r)
    m = n - 3

    longs: list[tuple[int, int]] = []  # (membership mask, |I|)
    total = r.total()
    for mask in range(1, 1 << n):
        inside = sum(
            (r.entries[i] for i in range(n) if mask >> i & 1), Fraction(0)
        )
        if 2 * inside - total > 0:
            longs.append((mask, bin(mask).count("1")))

    fact_m = factorial(m)
    acc = Fraction(0)
    for k in _compositions(m, n):
        multinom = fact_m
        for ki in k:
            multinom //= factorial(ki)
        prod_r = Fraction(1)
        for ki, ri in zip(k, r.entries):
            if ki:
                prod_r *= ri**ki
        inner = 0
        for mask, size in longs:
            inside_degree = sum(ki for i, ki in enumerate(k) if mask >> i & 1)
            sign = -1 if (n - size + m - inside_degree) % 2 else 1
            inner += sign
        if inner:
            acc += multinom * prod_r * inner
    coefficient = -acc / (2 * fact_m)
    return VolumeValue(coefficient=coefficient, power=m)


def projective_volume(r_sorted: LengthVector) -> VolumeValue:
    """Closed form on the projective chamber: slack**(n-3) / (n-3)!.

    Asserted equal to the combinatorial formula, which is the identity
    that pins the closed form down.
    """
    assert_generic(r_sorted)
    assert_nonempty(r_sorted)
    if not r_sorted.is_sorted():
        raise ValueError("projective volume expects a sorted vector")
    if not is_long(r_sorted, {1, r_sorted.n}):
        raise ValueError("projective volume needs {1,n} long")
    m = r_sorted.n - 3
    gamma = perimeter_slack(r_sorted)
    value = VolumeValue(coefficient=gamma**m / factorial(m), power=m)
    full = combinatorial_volume(r_sorted)
    if full != value:
        raise AssertionError(
            f"closed form {value} disagrees with the full sum {full} on {r_sorted!r}"
        )
    return value


def reference_projective_vector(n: int) -> LengthVector:
    """(1, ..., 1, n-2): generic (odd total), projective, nonempty."""
    return LengthVector([1] * (n - 1) + [n - 2])


_RATIO_CACHE: dict[int, Fraction] = {}


def dimension_ratio_constant(dim: int) -> Fraction:
    """Combinatorial coefficient / polytope volume, fixed per dimension.

    Derived once on the reference projective vector, where the moment
    polytope is a mapped simplex of known volume.
    """
    if dim not in _RATIO_CACHE:
        ref = reference_projective_vector(dim + 3)
        coeff = combinatorial_volume(ref).coefficient
        vol = caterpillar_polytope(ref).polytope.volume()
        if vol <= 0:
            raise AssertionError("reference moment polytope degenerated")
        _RATIO_CACHE[dim] = coeff / vol
    return _RATIO_CACHE[dim]


def volume_ratio_check(r: LengthVector, image: MomentImage) -> Fraction:
    """Ratio of formula volume to polytope volume; asserted dimension-constant.

    Requires the bending action for the image's system to be toric on r
    (otherwise the polytope is only the closure of the open dense part's
    image and the comparison is meaningless).
    """
    if image.lengths != r:
        raise ValueError("moment image was built from a different vector")
    report = is_bending_toric(r, image.system)
    if not report.toric:
        raise ValueError(f"bending action is not toric for {r!r}")
    vol = image.polytope.volume()
    if vol == 0:
        raise ValueError("moment polytope has zero volume")
    ratio = combinatorial_volume(r).coefficient / vol
    expected = dimension_ratio_constant(image.polytope.dim)
    if ratio != expected:
        raise AssertionError(
            f"volume ratio {ratio} deviates from the dimension constant "
            f"{expected} on {r!r}"
        )
    return ratio
