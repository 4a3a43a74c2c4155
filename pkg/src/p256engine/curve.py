"""P-256 point arithmetic in projective Chudnovsky coordinates.

A point is the quintuple (X, Y, Z, Z^2, Z^3); Z == 0 encodes the
identity and the redundant coordinates are kept consistent by every
operation. The group formulas follow the uniform addition/doubling
schedules (no a = -3 shortcut, no mixed-addition fast path), so the
multiplication/subtraction event counts per operation are fixed.

Event recording: `trace` receives one point_add/point_double event per
call; `ftrace`, when given, additionally receives the field-level events
the schedule consumes (used to rebuild the per-operation cycle costs).
"""

from __future__ import annotations

from typing import NamedTuple

from .field import P, add_mod_p, mul_mod_p, sqr_mod_p, sub_mod_p
from .inverse import mod_inverse
from .words import u256_from_hex, u256_to_hex

A_COEFF = P - 3
B_COEFF = 0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B
GX = 0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296
GY = 0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5


class AffinePoint(NamedTuple):
    x: int
    y: int
    is_identity: bool = False


class ChudnovskyPoint(NamedTuple):
    X: int
    Y: int
    Z: int
    Z2: int
    Z3: int

    @property
    def is_identity(self) -> bool:
        return self.Z == 0


AFFINE_IDENTITY = AffinePoint(0, 0, True)
IDENTITY = ChudnovskyPoint(1, 1, 0, 0, 0)


def is_on_curve(pt: AffinePoint) -> bool:
    """Weierstrass equation check: y^2 == x^3 + a*x + b (mod p)."""
    if pt.is_identity:
        return True
    if not (0 <= pt.x < P and 0 <= pt.y < P):
        return False
    lhs = sqr_mod_p(pt.y)
    rhs = add_mod_p(mul_mod_p(sqr_mod_p(pt.x), pt.x),
                    add_mod_p(mul_mod_p(A_COEFF, pt.x), B_COEFF))
    return lhs == rhs


def from_affine(pt: AffinePoint, check: bool = True) -> ChudnovskyPoint:
    """Lift an affine point to Z = 1 coordinates; rejects off-curve input."""
    if pt.is_identity:
        return IDENTITY
    if check and not is_on_curve(pt):
        raise ValueError("not on curve")
    return ChudnovskyPoint(pt.x, pt.y, 1, 1, 1)


def to_affine(pt: ChudnovskyPoint, trace=None) -> AffinePoint:
    """(X/Z^2, Y/Z^3) with a single modular inverse of Z.

    Z^-2 and Z^-3 are derived from Z^-1 by multiplication, so the
    conversion costs one inverse and four modular multiplications.
    """
    if pt.is_identity:
        return AFFINE_IDENTITY
    z_inv = mod_inverse(pt.Z, P, trace)
    z2_inv = mul_mod_p(z_inv, z_inv, trace)
    z3_inv = mul_mod_p(z2_inv, z_inv, trace)
    return AffinePoint(mul_mod_p(pt.X, z2_inv, trace),
                       mul_mod_p(pt.Y, z3_inv, trace))


def negate(pt: ChudnovskyPoint) -> ChudnovskyPoint:
    """-P = (X, p - Y, Z, Z^2, Z^3); folded into the following addition."""
    if pt.is_identity:
        return IDENTITY
    return ChudnovskyPoint(pt.X, sub_mod_p(0, pt.Y), pt.Z, pt.Z2, pt.Z3)


def point_double(pt: ChudnovskyPoint, trace=None, ftrace=None) -> ChudnovskyPoint:
    """2P by the fixed doubling schedule (11 mul/sqr, 13 add/sub)."""
    if trace is not None:
        trace.record("point_double")
    if pt.Z == 0 or pt.Y == 0:
        return IDENTITY
    y2 = sqr_mod_p(pt.Y, ftrace)
    xy2 = mul_mod_p(pt.X, y2, ftrace)
    s = add_mod_p(xy2, xy2, ftrace)
    s = add_mod_p(s, s, ftrace)                      # S = 4*X*Y^2
    x_sq = sqr_mod_p(pt.X, ftrace)
    m = add_mod_p(add_mod_p(x_sq, x_sq, ftrace), x_sq, ftrace)
    z4 = sqr_mod_p(pt.Z2, ftrace)
    m = add_mod_p(m, mul_mod_p(A_COEFF, z4, ftrace), ftrace)  # M = 3*X^2 + a*(Z^2)^2
    two_s = add_mod_p(s, s, ftrace)
    x1 = sub_mod_p(sqr_mod_p(m, ftrace), two_s, ftrace)       # X1 = M^2 - 2*S
    y4 = sqr_mod_p(y2, ftrace)
    y8 = add_mod_p(y4, y4, ftrace)
    y8 = add_mod_p(y8, y8, ftrace)
    y8 = add_mod_p(y8, y8, ftrace)                   # 8*Y^4
    y1 = sub_mod_p(mul_mod_p(m, sub_mod_p(s, x1, ftrace), ftrace), y8, ftrace)
    yz = mul_mod_p(pt.Y, pt.Z, ftrace)
    z1 = add_mod_p(yz, yz, ftrace)                   # Z1 = 2*Y*Z
    z1_sq = sqr_mod_p(z1, ftrace)
    z1_cu = mul_mod_p(z1_sq, z1, ftrace)
    assert z1_sq == z1 * z1 % P and z1_cu == z1_sq * z1 % P
    return ChudnovskyPoint(x1, y1, z1, z1_sq, z1_cu)


def point_add(p1: ChudnovskyPoint, p2: ChudnovskyPoint,
              trace=None, ftrace=None) -> ChudnovskyPoint:
    """P + Q by the fixed addition schedule (14 mul/sqr, 7 add/sub).

    Degenerate dispatch: either identity passes the other operand
    through; H == 0 with R == 0 is a doubling, H == 0 with R != 0 is the
    identity (P == -Q).
    """
    if trace is not None:
        trace.record("point_add")
    if p1.Z == 0:
        return p2
    if p2.Z == 0:
        return p1
    u1 = mul_mod_p(p1.X, p2.Z2, ftrace)
    u2 = mul_mod_p(p2.X, p1.Z2, ftrace)
    s1 = mul_mod_p(p1.Y, p2.Z3, ftrace)
    s2 = mul_mod_p(p2.Y, p1.Z3, ftrace)
    h = sub_mod_p(u2, u1, ftrace)
    r = sub_mod_p(s2, s1, ftrace)
    if h == 0:
        if r == 0:
            return point_double(p1, None, ftrace)
        return IDENTITY
    h2 = sqr_mod_p(h, ftrace)
    h3 = mul_mod_p(h2, h, ftrace)
    u1h2 = mul_mod_p(u1, h2, ftrace)
    x3 = sub_mod_p(sub_mod_p(sqr_mod_p(r, ftrace), h3, ftrace),
                   add_mod_p(u1h2, u1h2, ftrace), ftrace)
    y3 = sub_mod_p(mul_mod_p(r, sub_mod_p(u1h2, x3, ftrace), ftrace),
                   mul_mod_p(s1, h3, ftrace), ftrace)
    z3 = mul_mod_p(h, mul_mod_p(p1.Z, p2.Z, ftrace), ftrace)
    z3_sq = sqr_mod_p(z3, ftrace)
    z3_cu = mul_mod_p(z3_sq, z3, ftrace)
    assert z3_sq == z3 * z3 % P and z3_cu == z3_sq * z3 % P
    return ChudnovskyPoint(x3, y3, z3, z3_sq, z3_cu)


G_AFFINE = AffinePoint(GX, GY)
G = ChudnovskyPoint(GX, GY, 1, 1, 1)


def affine_to_hex(pt: AffinePoint) -> str:
    """Uncompressed serialization: x || y, 64 bytes of big-endian hex."""
    if pt.is_identity:
        raise ValueError("identity has no uncompressed encoding")
    return u256_to_hex(pt.x) + u256_to_hex(pt.y)


def affine_from_hex(text: str) -> AffinePoint:
    """Inverse of affine_to_hex; validates the curve equation."""
    if len(text) != 128:
        raise ValueError("expected 128 hex digits")
    pt = AffinePoint(u256_from_hex(text[:64]), u256_from_hex(text[64:]))
    if not is_on_curve(pt):
        raise ValueError("not on curve")
    return pt
