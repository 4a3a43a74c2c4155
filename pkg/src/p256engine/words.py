"""Fixed-width multiword integers and the custom multipliers built on them.

Values cross function boundaries as plain Python ints; internally every
operation walks the little-endian word decomposition a hardware datapath
would see: 32-bit words for 256/512-bit values and 43-bit words for the
258-bit operands of the order-reduction multiplier.
"""

from __future__ import annotations

from typing import Sequence

WORD_BITS = 32
U256_WORDS = 8
U512_WORDS = 16
MASK16 = 0xFFFF
MASK32 = 0xFFFFFFFF
MASK256 = (1 << 256) - 1

U258_WORD_BITS = 43
U258_WORDS = 6
MASK11 = (1 << 11) - 1
MASK43 = (1 << 43) - 1

_HEX_DIGITS = frozenset("0123456789abcdefABCDEF")


def u256_words(x: int) -> list[int]:
    """Split x < 2^256 into 8 little-endian 32-bit words."""
    if not 0 <= x <= MASK256:
        raise ValueError("value out of range for 8x32-bit words")
    return [(x >> (WORD_BITS * i)) & MASK32 for i in range(U256_WORDS)]


def u256_pack(words: Sequence[int]) -> int:
    """Inverse of u256_words."""
    if len(words) != U256_WORDS:
        raise ValueError("expected exactly 8 words")
    x = 0
    for i, w in enumerate(words):
        if not 0 <= w <= MASK32:
            raise ValueError("word out of 32-bit range")
        x |= w << (WORD_BITS * i)
    return x


def u512_words(x: int) -> list[int]:
    """Split x < 2^512 into 16 little-endian 32-bit words."""
    if not 0 <= x < (1 << 512):
        raise ValueError("value out of range for 16x32-bit words")
    return [(x >> (WORD_BITS * i)) & MASK32 for i in range(U512_WORDS)]


def u512_pack(words: Sequence[int]) -> int:
    """Inverse of u512_words."""
    if len(words) != U512_WORDS:
        raise ValueError("expected exactly 16 words")
    x = 0
    for i, w in enumerate(words):
        if not 0 <= w <= MASK32:
            raise ValueError("word out of 32-bit range")
        x |= w << (WORD_BITS * i)
    return x


def u258_words(x: int) -> list[int]:
    """Split x < 2^258 into 6 little-endian 43-bit words."""
    if not 0 <= x < (1 << 258):
        raise ValueError("value out of range for 6x43-bit words")
    return [(x >> (U258_WORD_BITS * i)) & MASK43 for i in range(U258_WORDS)]


def u258_pack(words: Sequence[int]) -> int:
    """Inverse of u258_words."""
    if len(words) != U258_WORDS:
        raise ValueError("expected exactly 6 words")
    x = 0
    for i, w in enumerate(words):
        if not 0 <= w <= MASK43:
            raise ValueError("word out of 43-bit range")
        x |= w << (U258_WORD_BITS * i)
    return x


def split_43(x: int) -> tuple[int, int]:
    """Split a 43-bit value into its 11-bit low and 32-bit high parts."""
    if not 0 <= x <= MASK43:
        raise ValueError("value out of 43-bit range")
    return x & MASK11, x >> 11


def u256_to_hex(x: int) -> str:
    """Big-endian lowercase hex, fixed 64 digits, no prefix."""
    if not 0 <= x <= MASK256:
        raise ValueError("value out of 256-bit range")
    return f"{x:064x}"


def u512_to_hex(x: int) -> str:
    """Big-endian lowercase hex, fixed 128 digits, no prefix."""
    if not 0 <= x < (1 << 512):
        raise ValueError("value out of 512-bit range")
    return f"{x:0128x}"


def _from_hex(text: str, max_digits: int) -> int:
    if not text:
        raise ValueError("empty hex string")
    if len(text) % 2 != 0:
        raise ValueError("odd-length hex string")
    if len(text) > max_digits:
        raise ValueError(f"hex string longer than {max_digits} digits")
    if not set(text) <= _HEX_DIGITS:
        raise ValueError("invalid hex digit")
    return int(text, 16)


def u256_from_hex(text: str) -> int:
    """Parse big-endian hex (any case, even length, at most 64 digits)."""
    return _from_hex(text, 64)


def u512_from_hex(text: str) -> int:
    """Parse big-endian hex (any case, even length, at most 128 digits)."""
    return _from_hex(text, 128)


def _sub_words(a: int, b: int) -> tuple[int, int]:
    """8-word borrow-chain subtraction; returns (a - b mod 2^256, borrow)."""
    out = 0
    borrow = 0
    for i in range(U256_WORDS):
        shift = WORD_BITS * i
        d = ((a >> shift) & MASK32) - ((b >> shift) & MASK32) - borrow
        borrow = 1 if d < 0 else 0
        out |= (d & MASK32) << shift
    return out, borrow


def sub_mod(a: int, b: int, m: int) -> int:
    """(a - b) mod m for canonical a, b: borrow chain, then one add of m.

    The internal chain tolerates b == m, which the addition path relies on.
    """
    c, borrow = _sub_words(a, b)
    if borrow:
        # wrapped below zero: fold the modulus back in, carry out discarded
        c = (c + m) & MASK256
    return c


def add_mod(a: int, b: int, m: int) -> int:
    """(a + b) mod m routed through the shared subtract unit.

    The second operand is complemented against the modulus (the two's
    complement adjusted by 2^256 - m), so one borrow-chain pass plus the
    usual conditional correction covers addition as well.
    """
    return sub_mod(a, m - b, m)


def mul_256(a: int, b: int) -> int:
    """Full 512-bit product of two 256-bit integers.

    Operand-scanning schoolbook over 8 32-bit words with a 64-bit (U,V)
    carry accumulator; each 32x32 partial product is formed from three
    16-bit multiplications via the one-level Karatsuba identity
    a1*b1*2^32 + ((a0+a1)(b0+b1) - a1*b1 - a0*b0)*2^16 + a0*b0.
    The 16-bit halves of b are hoisted out of the inner loop.
    """
    b_lo = []
    b_hi = []
    b_sum = []
    x = b
    for _ in range(U256_WORDS):
        w = x & MASK32
        lo = w & MASK16
        hi = w >> 16
        b_lo.append(lo)
        b_hi.append(hi)
        b_sum.append(lo + hi)
        x >>= WORD_BITS
    c = [0] * (2 * U256_WORDS)
    x = a
    for i in range(U256_WORDS):
        w = x & MASK32
        x >>= WORD_BITS
        a_lo = w & MASK16
        a_hi = w >> 16
        a_sum = a_lo + a_hi
        carry = 0
        k = i
        for lo, hi, s in zip(b_lo, b_hi, b_sum):
            hh = a_hi * hi
            ll = a_lo * lo
            ab = (hh << 32) + ((a_sum * s - hh - ll) << 16) + ll
            acc = c[k] + ab + carry  # fits in 64 bits: (U,V) accumulator
            c[k] = acc & MASK32
            carry = acc >> 32
            k += 1
        c[k] = carry
    out = 0
    for i in range(2 * U256_WORDS - 1, -1, -1):
        out = (out << WORD_BITS) | c[i]
    return out


def _mul_32(a: int, b: int) -> int:
    """32x32 product from three 16-bit multiplications (Karatsuba split)."""
    a0 = a & MASK16
    a1 = a >> 16
    b0 = b & MASK16
    b1 = b >> 16
    hh = a1 * b1
    ll = a0 * b0
    return (hh << 32) + (((a0 + a1) * (b0 + b1) - hh - ll) << 16) + ll


def mul_11x32(wide: int, narrow: int) -> int:
    """11-bit by 32-bit product assembled from two 16x12 partials.

    The wide operand is split at bit 16; the narrow one is zero-padded to
    12 bits. The 13th bit of the middle limb is the carry of the partial
    sums, folded into the high limb.
    """
    if not 0 <= wide <= MASK32:
        raise ValueError("wide operand out of 32-bit range")
    if not 0 <= narrow <= MASK11:
        raise ValueError("narrow operand out of 11-bit range")
    lower = (wide & MASK16) * narrow      # 28 bits
    higher = (wide >> 16) * narrow        # 28 bits
    mid = (lower >> 16) + (higher & 0xFFF)            # 13 bits with carry
    high = (higher >> 12) + (mid >> 12)
    return (high << 28) | ((mid & 0xFFF) << 16) | (lower & MASK16)


def mul_43(a: int, b: int) -> int:
    """43x43 product via the 32/11 split.

    One 11x11 partial, two 11x32 partials (mul_11x32) and one 32x32
    partial (_mul_32); intermediate (U, c) pairs split at 11 bits so the
    86-bit result assembles as (U3, c3, c2, c0).
    """
    a0, a1 = split_43(a)
    b0, b1 = split_43(b)
    t0 = a0 * b0                          # 11x11
    c0 = t0 & MASK11
    u0 = t0 >> 11
    t1 = mul_11x32(b1, a0) + u0           # 11x32
    c1 = t1 & MASK11
    u1 = t1 >> 11
    t2 = c1 + mul_11x32(a1, b0)           # 11x32
    c2 = t2 & MASK11
    u2 = t2 >> 11
    t3 = _mul_32(a1, b1) + u1 + u2        # 32x32
    c3 = t3 & MASK11
    u3 = t3 >> 11
    return (u3 << 33) | (c3 << 22) | (c2 << 11) | c0


def mul_258(a: int, b: int) -> int:
    """Full 516-bit product of two 258-bit integers.

    Same operand-scanning schedule as mul_256, but over 6 words of 43
    bits with mul_43 supplying the partial products.
    """
    aw = u258_words(a)
    bw = u258_words(b)
    c = [0] * (2 * U258_WORDS)
    for i in range(U258_WORDS):
        ai = aw[i]
        carry = 0
        k = i
        for j in range(U258_WORDS):
            acc = c[k] + mul_43(ai, bw[j]) + carry
            c[k] = acc & MASK43
            carry = acc >> 43
            k += 1
        c[k] = carry
    out = 0
    for i in range(2 * U258_WORDS - 1, -1, -1):
        out = (out << U258_WORD_BITS) | c[i]
    return out
