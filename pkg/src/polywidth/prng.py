"""Counter-based deterministic 64-bit PRNG.

The generator is pure arithmetic so that any reimplementation reproduces the
stream bit-exactly.  Word i of the stream for a given seed is

    word(seed, i) = mix(mix(seed * M0 + C0) + i * C1)  mod 2**64

where mix is the xorshift-multiply finalizer

    x ^= x >> 30;  x = x * 0xBF58476D1CE4E5B9  mod 2**64
    x ^= x >> 27;  x = x * 0x94D049BB133111EB  mod 2**64
    x ^= x >> 31

with M0 = 0x2545F4914F6CDD1D, C0 = 0x9E3779B97F4A7C15 and
C1 = 0xD1B54A32D192ED03.  Being counter-based, word i is O(1) addressable:
there is no sequential state to advance.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_M0 = 0x2545F4914F6CDD1D
_C0 = 0x9E3779B97F4A7C15
_C1 = 0xD1B54A32D192ED03
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix(x: int) -> int:
    """Finalizer scrambling a 64-bit word."""
    x &= _MASK64
    x ^= x >> 30
    x = (x * _MIX1) & _MASK64
    x ^= x >> 27
    x = (x * _MIX2) & _MASK64
    x ^= x >> 31
    return x


def word(seed: int, counter: int) -> int:
    """64-bit word at position `counter` of the stream for `seed`."""
    if counter < 0:
        raise ValueError("counter must be nonnegative")
    base = mix((seed * _M0 + _C0) & _MASK64)
    return mix((base + counter * _C1) & _MASK64)


def uniform_int(seed: int, counter: int, lo: int, hi: int) -> int:
    """Integer in [lo, hi] drawn from stream word `counter`.

    Uses plain reduction modulo the range size; the bias is at most
    range/2**64 and irrelevant for test sampling.
    """
    if hi < lo:
        raise ValueError("empty range")
    span = hi - lo + 1
    return lo + word(seed, counter) % span
