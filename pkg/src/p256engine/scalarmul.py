"""Scalar recoding and the point-multiplication strategies.

Three online strategies are provided:

* binary_pm: plain left-to-right double-and-add.
* spm: simultaneous multiplication k1*G + k2*Q over width-4 NAF digits,
  with per-point odd-multiple tables (the generator's table is a baked
  constant, the key's is built online with one double and seven adds).
* fpm: fixed-base NAF windowing over a precomputed table of 2^(4i)
  multiples; the online phase consists of point additions only.

Joint-table sweeps for the binary/NAF/JSF recodings (spm_joint) exist to
reproduce the per-representation operation budgets; spm is the width-4
NAF engine the verifier uses.

Doubling cadence: every sweep performs exactly 256 accumulator
doublings for 256-bit scalars, independent of representation. Signed
recodings carry one extra top digit position, which is consumed before
the doubling cadence begins (the accumulator is necessarily empty
there). Operations are counted per call, including those whose operand
is the identity, matching a fixed hardware schedule.
"""

from __future__ import annotations

import functools
import struct
from typing import NamedTuple

from .curve import (
    G,
    IDENTITY,
    ChudnovskyPoint,
    negate,
    point_add,
    point_double,
    to_affine,
)
from .order import N

TABLE_MAGIC = b"P256PCT1"
POINT_BYTES = 5 * 32


class OddMultipleTable(NamedTuple):
    """points[i] = (2i+1) * P for i in 0..7 (width-4 digit range)."""
    points: tuple[ChudnovskyPoint, ...]


class FixedBaseTable(NamedTuple):
    """points[i] = 2^(width*i) * P covering one window per entry."""
    width: int
    points: tuple[ChudnovskyPoint, ...]


def wnaf_encode(k: int, w: int = 4) -> list[int]:
    """Canonical width-w NAF digits, least significant first.

    Nonzero digits are odd with |d| <= 2^(w-1) - 1 and at most one
    nonzero appears in any w consecutive positions.
    """
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if w < 2:
        raise ValueError("width must be at least 2")
    digits = []
    half = 1 << (w - 1)
    full = 1 << w
    while k:
        if k & 1:
            d = k % full
            if d >= half:
                d -= full
            k -= d
        else:
            d = 0
        digits.append(d)
        k >>= 1
    return digits


def naf_encode(k: int) -> list[int]:
    """Plain NAF: digits in {-1, 0, 1}, no two adjacent nonzeros."""
    return wnaf_encode(k, 2)


def jsf_encode(k1: int, k2: int) -> tuple[list[int], list[int]]:
    """Joint sparse form of two scalars (equal-length digit vectors).

    Minimizes the joint weight: on average half of the digit columns are
    nonzero, against 3/4 for the plain binary expansion.
    """
    if k1 < 0 or k2 < 0:
        raise ValueError("scalars must be non-negative")
    d1 = d2 = 0
    out1: list[int] = []
    out2: list[int] = []
    while k1 + d1 > 0 or k2 + d2 > 0:
        l1 = d1 + k1
        l2 = d2 + k2
        if l1 & 1:
            u1 = 2 - (l1 % 4)
            if (l1 % 8 in (3, 5)) and (l2 % 4 == 2):
                u1 = -u1
        else:
            u1 = 0
        if l2 & 1:
            u2 = 2 - (l2 % 4)
            if (l2 % 8 in (3, 5)) and (l1 % 4 == 2):
                u2 = -u2
        else:
            u2 = 0
        if 2 * d1 == 1 + u1:
            d1 = 1 - d1
        if 2 * d2 == 1 + u2:
            d2 = 1 - d2
        out1.append(u1)
        out2.append(u2)
        k1 >>= 1
        k2 >>= 1
    return out1, out2


def binary_pm(k: int, pt: ChudnovskyPoint, trace=None) -> ChudnovskyPoint:
    """k * P by left-to-right double-and-add over 256 bit positions.

    Exactly 256 doublings and one addition per set bit of k.
    """
    if not 0 <= k < N:
        raise ValueError("scalar out of range")
    acc = IDENTITY
    for i in range(255, -1, -1):
        acc = point_double(acc, trace)
        if (k >> i) & 1:
            acc = point_add(acc, pt, trace)
    return acc


def build_odd_multiples(pt: ChudnovskyPoint, trace=None) -> OddMultipleTable:
    """{1,3,...,15} * P with one doubling and seven additions.

    2P is computed once and kept; each further odd multiple is the
    previous one plus 2P.
    """
    twice = point_double(pt, trace)
    points = [pt]
    cur = pt
    for _ in range(7):
        cur = point_add(cur, twice, trace)
        points.append(cur)
    return OddMultipleTable(tuple(points))


def _table_entry(table: OddMultipleTable, digit: int) -> ChudnovskyPoint:
    # digit is odd, |digit| <= 15; negation is free operand prep
    if digit > 0:
        return table.points[(digit - 1) >> 1]
    return negate(table.points[(-digit - 1) >> 1])


def spm(k1: int, k2: int, q: ChudnovskyPoint,
        gen_table: OddMultipleTable | None = None, *,
        trace=None) -> ChudnovskyPoint:
    """k1*G + k2*Q by a joint width-4 NAF sweep.

    The generator's odd-multiple table is a baked constant; the key's is
    built online (its double and seven adds land in the trace). Each
    nonzero digit of either scalar costs one table addition or
    subtraction; zero digits are skipped. The recodings themselves are
    overlapped with the preceding modular multiplications, so they are
    recorded as free events.
    """
    if gen_table is None:
        gen_table = generator_odd_multiples()
    q_table = build_odd_multiples(q, trace)
    naf1 = wnaf_encode(k1, 4)
    naf2 = wnaf_encode(k2, 4)
    if trace is not None:
        trace.record("naf", 2)
    len1 = len(naf1)
    len2 = len(naf2)
    acc = IDENTITY
    for i in range(256, -1, -1):
        if i < 256:
            acc = point_double(acc, trace)
        d = naf1[i] if i < len1 else 0
        if d:
            acc = point_add(acc, _table_entry(gen_table, d), trace)
        d = naf2[i] if i < len2 else 0
        if d:
            acc = point_add(acc, _table_entry(q_table, d), trace)
    return acc


def spm_joint(k1: int, k2: int, q: ChudnovskyPoint, recoding: str = "binary",
              *, trace=None) -> ChudnovskyPoint:
    """k1*G + k2*Q with a shared lookup table per digit column.

    recoding selects the representation: "binary" (table {G, Q, G+Q},
    one add per nonzero column of the bit matrix), "naf" or "jsf" (table
    {G+Q, G-Q}, signed columns). Used for the operation-budget study;
    results are identical to spm.
    """
    if recoding == "binary":
        if not 0 <= k1 < N or not 0 <= k2 < N:
            raise ValueError("scalar out of range")
        both = point_add(G, q, trace)
        acc = IDENTITY
        for i in range(255, -1, -1):
            acc = point_double(acc, trace)
            b1 = (k1 >> i) & 1
            b2 = (k2 >> i) & 1
            if b1 and b2:
                acc = point_add(acc, both, trace)
            elif b1:
                acc = point_add(acc, G, trace)
            elif b2:
                acc = point_add(acc, q, trace)
        return acc
    if recoding == "naf":
        digits1 = naf_encode(k1)
        digits2 = naf_encode(k2)
    elif recoding == "jsf":
        digits1, digits2 = jsf_encode(k1, k2)
    else:
        raise ValueError(f"unknown recoding {recoding!r}")
    if trace is not None:
        trace.record("naf", 2)
    p_sum = point_add(G, q, trace)
    p_diff = point_add(G, negate(q), trace)
    lookup = {
        (1, 0): G, (-1, 0): negate(G),
        (0, 1): q, (0, -1): negate(q),
        (1, 1): p_sum, (-1, -1): negate(p_sum),
        (1, -1): p_diff, (-1, 1): negate(p_diff),
    }
    len1 = len(digits1)
    len2 = len(digits2)
    acc = IDENTITY
    for i in range(256, -1, -1):
        if i < 256:
            acc = point_double(acc, trace)
        d1 = digits1[i] if i < len1 else 0
        d2 = digits2[i] if i < len2 else 0
        if d1 or d2:
            acc = point_add(acc, lookup[(d1, d2)], trace)
    return acc


def precompute_fixed_base(pt: ChudnovskyPoint, trace=None,
                          width: int = 4) -> FixedBaseTable:
    """Window table {2^(width*i) * P}: doublings only.

    Each entry is width doublings of the previous one, so the whole
    table costs width * (256/width - 1) doublings (252 for width 4) and
    no additions.
    """
    entries = 256 // width
    points = [pt]
    cur = pt
    for _ in range(entries - 1):
        for _ in range(width):
            cur = point_double(cur, trace)
        points.append(cur)
    return FixedBaseTable(width, tuple(points))


def fpm(k: int, table: FixedBaseTable, *, trace=None) -> ChudnovskyPoint:
    """k * P from a fixed-base table: point additions only.

    NAF digits are grouped into 256/width windows; when the NAF spills
    into a 257th digit, k - n is encoded instead (same point, since the
    base has order n) to keep the window count fixed. The two
    accumulators sweep the window magnitudes from largest to smallest;
    A = A + B runs on every magnitude.
    """
    if not 0 <= k < N:
        raise ValueError("scalar out of range")
    width = table.width
    entries = 256 // width
    digits = naf_encode(k)
    if len(digits) > entries * width:
        digits = [-d for d in naf_encode(N - k)]
        assert len(digits) <= entries * width
    if trace is not None:
        trace.record("naf")
    windows = [0] * entries
    for pos, d in enumerate(digits):
        if d:
            windows[pos // width] += d << (pos % width)
    magnitude_cap = (2 ** (width + 1) - 2) // 3
    a = IDENTITY
    b = IDENTITY
    for j in range(magnitude_cap, 0, -1):
        for i, v in enumerate(windows):
            if v == j:
                b = point_add(b, table.points[i], trace)
            elif v == -j:
                b = point_add(b, negate(table.points[i]), trace)
        a = point_add(a, b, trace)
    return a


def point_to_bytes(pt: ChudnovskyPoint) -> bytes:
    """Five 32-byte big-endian coordinates: X, Y, Z, Z^2, Z^3."""
    return b"".join(c.to_bytes(32, "big") for c in pt)


def point_from_bytes(raw: bytes) -> ChudnovskyPoint:
    if len(raw) != POINT_BYTES:
        raise ValueError("expected 160 bytes")
    return ChudnovskyPoint(*(int.from_bytes(raw[i:i + 32], "big")
                             for i in range(0, POINT_BYTES, 32)))


def fixed_base_to_bytes(table: FixedBaseTable) -> bytes:
    header = TABLE_MAGIC + struct.pack("<II", table.width, len(table.points))
    return header + b"".join(point_to_bytes(p) for p in table.points)


def fixed_base_from_bytes(raw: bytes) -> FixedBaseTable:
    if raw[:8] != TABLE_MAGIC:
        raise ValueError("bad table magic")
    width, count = struct.unpack("<II", raw[8:16])
    body = raw[16:]
    if len(body) != count * POINT_BYTES:
        raise ValueError("truncated table")
    points = tuple(point_from_bytes(body[i * POINT_BYTES:(i + 1) * POINT_BYTES])
                   for i in range(count))
    return FixedBaseTable(width, points)


def odd_multiples_to_bytes(table: OddMultipleTable) -> bytes:
    header = TABLE_MAGIC + struct.pack("<II", 4, len(table.points))
    return header + b"".join(point_to_bytes(p) for p in table.points)


def odd_multiples_from_bytes(raw: bytes) -> OddMultipleTable:
    loaded = fixed_base_from_bytes(raw)
    return OddMultipleTable(loaded.points)


def generator_constant_blob() -> bytes:
    """The baked odd-multiple ROM image: 3G..15G, 160 bytes per point.

    G itself lives with the domain parameters and is not duplicated, so
    the blob is 7 points (1120 bytes).
    """
    table = generator_odd_multiples()
    return b"".join(point_to_bytes(p) for p in table.points[1:])


def _check_affine_equal(a: ChudnovskyPoint, b: ChudnovskyPoint) -> bool:
    return to_affine(a) == to_affine(b)


@functools.lru_cache(maxsize=1)
def generator_odd_multiples() -> OddMultipleTable:
    """Baked odd multiples of G, cross-checked against binary_pm."""
    table = build_odd_multiples(G)
    assert _check_affine_equal(table.points[1], binary_pm(3, G))
    assert _check_affine_equal(table.points[7], binary_pm(15, G))
    return table


@functools.lru_cache(maxsize=1)
def generator_fixed_base() -> FixedBaseTable:
    """Baked fixed-base window table for G, cross-checked at build."""
    table = precompute_fixed_base(G)
    assert _check_affine_equal(table.points[1], binary_pm(16, G))
    return table
