"""Deterministic sampling of length vectors for tests and verification.

Draws are addressed by (seed, attempt, position) through the counter-based
generator, so sample i is reproducible in isolation; rejection (of
non-generic or empty-space vectors) just advances the attempt index.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .errors import CapabilityError
from .lengths import LengthVector, is_generic
from .prng import uniform_int

DEFAULT_MAX_DENOMINATOR = 8
REJECTION_CAP = 10_000


def _draw(n: int, seed: int, attempt: int, max_denominator: int) -> LengthVector:
    entries = []
    base = attempt * 2 * n
    for i in range(n):
        p = uniform_int(seed, base + 2 * i, 1, 4 * max_denominator)
        q = uniform_int(seed, base + 2 * i + 1, 1, max_denominator)
        entries.append(Fraction(p, q))
    return LengthVector(entries)


def sample_generic(
    n: int,
    seed: int,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    require_nonempty: bool = True,
    predicate: Optional[Callable[[LengthVector], bool]] = None,
    start_attempt: int = 0,
) -> tuple[LengthVector, int]:
    """First accepted draw at or after `start_attempt`; returns (vector, attempt).

    Rejects non-generic vectors, empty-space vectors (unless disabled),
    and anything failing the extra predicate.  Raises after 10^4 attempts.
    """
    if n < 4:
        raise ValueError("length vectors need n >= 4")
    attempt = start_attempt
    for _ in range(REJECTION_CAP):
        r = _draw(n, seed, attempt, max_denominator)
        attempt += 1
        if not is_generic(r):
            continue
        if require_nonempty and 2 * max(r.entries) - r.total() > 0:
            continue
        if predicate is not None and not predicate(r):
            continue
        return r, attempt
    raise CapabilityError(
        f"rejection sampling exhausted {REJECTION_CAP} draws (n={n}, seed={seed})"
    )


def sample_many(
    n: int,
    seed: int,
    count: int,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
    require_nonempty: bool = True,
    predicate: Optional[Callable[[LengthVector], bool]] = None,
) -> list[LengthVector]:
    out = []
    attempt = 0
    for _ in range(count):
        r, attempt = sample_generic(
            n,
            seed,
            max_denominator=max_denominator,
            require_nonempty=require_nonempty,
            predicate=predicate,
            start_attempt=attempt,
        )
        out.append(r)
    return out


def sample_raw(n: int, seed: int, attempt: int, max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> LengthVector:
    """Unfiltered draw (may be non-generic or empty-space); for invariants
    that must see both sides of a condition."""
    return _draw(n, seed, attempt, max_denominator)


def sample_integer_vector(n: int, seed: int, attempt: int, hi: int = 6) -> LengthVector:
    """Small integer draws; ties are common, which exercises perturbation paths."""
    base = attempt * n
    return LengthVector(
        [uniform_int(seed ^ 0x5EED, base + i, 1, hi) for i in range(n)]
    )
