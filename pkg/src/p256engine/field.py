"""Arithmetic modulo the P-256 prime.

Reduction of 512-bit products uses the sparse structure of the prime:
nine word-rearranged terms are accumulated with a correction against p
interleaved after every addition and subtraction, so intermediates stay
within one extra bit. The comparison against p itself is bit-sliced
(ge_p256) instead of a full-width magnitude comparator.
"""

from __future__ import annotations

from .words import MASK32, MASK256, add_mod, mul_256, sub_mod

# FIPS 186-4 domain parameters for P-256
P = 0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF

# the four slices of p the comparator conditions are built from
P0 = P & ((1 << 96) - 1)          # bits 95..0, all ones
P1 = (P >> 96) & ((1 << 96) - 1)  # bits 191..96, zero
P2 = (P >> 192) & MASK32          # bits 223..192, one
P3 = P >> 224                     # bits 255..224, all ones

GREATER = 1
EQUAL = 0
LESS = -1

_MASK96 = (1 << 96) - 1
_MASK128 = (1 << 128) - 1
_MASK160 = (1 << 160) - 1
_LIMIT257 = 1 << 257


def ge_p256(r: int) -> int:
    """Ordering of r versus p from bit slices only.

    Intended domain is 0 <= r < 2p; the decision tree remains exact for
    any r below 2^257, which the reduction loop relies on.
    """
    r4 = r >> 256
    r3_ones = ((r >> 224) & MASK32) == MASK32  # AND-reduction of r[255:224]
    r2 = (r >> 192) & MASK32
    r1 = (r >> 96) & _MASK96
    r0_ones = (r & _MASK96) == _MASK96         # AND-reduction of r[95:0]
    if r4 == 1 or (r3_ones and (r2 > 1 or (r2 == 1 and r1 > 0))):
        return GREATER
    if r4 == 0 and r3_ones and r2 == 1 and r1 == 0 and r0_ones:
        return EQUAL
    return LESS


def _correct_down(r: int) -> int:
    # subtract p while the comparator reports >= p; two rounds suffice
    # for any 512-bit input's term sums
    rounds = 0
    while ge_p256(r) != LESS:
        r -= P
        rounds += 1
        assert rounds <= 2
    return r


def _correct_up(r: int) -> int:
    # the borrow of the subtraction shows as a negative value here
    rounds = 0
    while r < 0:
        r += P
        rounds += 1
        assert rounds <= 2
    return r


def reduce_p256(c: int, trace=None) -> int:
    """c mod p for c < 2^512.

    The nine terms below are fixed rearrangements of the sixteen 32-bit
    words of c; five are added (one shifted left once) and four
    subtracted, with a correction after every step.
    """
    if trace is not None:
        trace.record("reduce_p")
    w8 = (c >> 256) & MASK32
    w9 = (c >> 288) & MASK32
    w10 = (c >> 320) & MASK32
    w11 = (c >> 352) & MASK32
    w12 = (c >> 384) & MASK32
    w13 = (c >> 416) & MASK32
    w14 = (c >> 448) & MASK32
    w15 = (c >> 480) & MASK32

    s1 = c & MASK256
    s2 = ((c >> 352) & _MASK160) << 96            # (c15,c14,c13,c12,c11,0,0,0)
    s3 = ((c >> 384) & _MASK128) << 96            # (0,c15,c14,c13,c12,0,0,0)
    s4 = ((c >> 256) & _MASK96) | (w14 << 192) | (w15 << 224)
    s5 = (w9 | (w10 << 32) | (w11 << 64) | (w13 << 96)
          | (w14 << 128) | (w15 << 160) | (w13 << 192) | (w8 << 224))
    s6 = w11 | (w12 << 32) | (w13 << 64) | (w8 << 192) | (w10 << 224)
    s7 = (w12 | (w13 << 32) | (w14 << 64) | (w15 << 96)
          | (w9 << 192) | (w11 << 224))
    s8 = (w13 | (w14 << 32) | (w15 << 64) | (w8 << 96) | (w9 << 128)
          | (w10 << 160) | (w12 << 224))
    s9 = (w14 | (w15 << 32) | (w9 << 96) | (w10 << 128)
          | (w11 << 160) | (w13 << 224))

    r = s1 + s2
    assert r < _LIMIT257
    r = _correct_down(r)
    r += s2
    assert r < _LIMIT257
    r = _correct_down(r)
    r += s3 << 1
    assert r < _LIMIT257
    r = _correct_down(r)
    r += s4
    assert r < _LIMIT257
    r = _correct_down(r)
    r += s5
    assert r < _LIMIT257
    r = _correct_down(r)
    r = _correct_up(r - s6)
    r = _correct_up(r - s7)
    r = _correct_up(r - s8)
    r = _correct_up(r - s9)
    return r


def mul_mod_p(a: int, b: int, trace=None) -> int:
    """(a * b) mod p: full multiplication followed by fast reduction."""
    if trace is not None:
        trace.record("mul256")
    return reduce_p256(mul_256(a, b), trace)


def sqr_mod_p(a: int, trace=None) -> int:
    """(a * a) mod p; same datapath as mul_mod_p."""
    if trace is not None:
        trace.record("mul256")
    return reduce_p256(mul_256(a, a), trace)


def add_mod_p(a: int, b: int, trace=None) -> int:
    """(a + b) mod p through the shared subtract unit."""
    if trace is not None:
        trace.record("sub")
    return add_mod(a, b, P)


def sub_mod_p(a: int, b: int, trace=None) -> int:
    """(a - b) mod p."""
    if trace is not None:
        trace.record("sub")
    return sub_mod(a, b, P)
