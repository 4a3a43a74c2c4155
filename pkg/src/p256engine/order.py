"""Arithmetic modulo the group order n via Barrett reduction.

Radix 4 makes every division a right shift and every interior modular
reduction an AND mask; the two large multiplications run through the
258-bit multiplier. The reciprocal constant and the word count are
derived from n at import time rather than hard-coded.
"""

from __future__ import annotations

from .field import P
from .words import mul_256, mul_258, u258_words

N = 0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551

B_RADIX = 4
K_WORDS = (N.bit_length() - 1) // 2 + 1        # floor(log4 n) + 1
MU = B_RADIX ** (2 * K_WORDS) // N             # 257 bits, zero-padded to 258
MU_WORDS = u258_words(MU)

_SHIFT_Q = 2 * (K_WORDS - 1)
_SHIFT_R = 2 * (K_WORDS + 1)
_MASK_K1 = (1 << _SHIFT_R) - 1                 # b^(k+1) - 1

# single-conditional-subtraction reduction from the field prime range
# (reduce_once_n) is only sound while n <= p < 2n
assert N <= P < 2 * N


def barrett_reduce(z: int, trace=None) -> int:
    """z mod n for 0 <= z < b^(2k).

    q_hat = ((z >> 2(k-1)) * mu) >> 2(k+1) estimates the quotient within
    two, so the trailing subtraction loop runs at most twice.
    """
    if trace is not None:
        trace.record("barrett")
    q1 = z >> _SHIFT_Q
    q_hat = mul_258(q1, MU) >> _SHIFT_R
    r = (z & _MASK_K1) - (mul_258(q_hat, N) & _MASK_K1)
    if r < 0:
        r += 1 << _SHIFT_R
    rounds = 0
    while r >= N:
        r -= N
        rounds += 1
        assert rounds <= 2
    return r


def mul_mod_n(a: int, b: int, trace=None) -> int:
    """(a * b) mod n: full multiplication, then Barrett reduction."""
    if trace is not None:
        trace.record("mul256")
    return barrett_reduce(mul_256(a, b), trace)


def reduce_once_n(x: int, trace=None) -> int:
    """x mod n by a single conditional subtraction; requires x < 2n.

    Covers both field-element inputs (x < p < 2n) and raw 256-bit
    digests (x < 2^256 < 2n).
    """
    if trace is not None:
        trace.record("sub")
    return x - N if x >= N else x
