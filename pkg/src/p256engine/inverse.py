"""Modular inverse by right-shift binary inversion, parameterized by modulus.

The loop uses only parity tests, right shifts and additions or
subtractions, which is why it serves both moduli (p for the projective
to affine conversion, n for the signature equation). Each elementary
step is counted; the latency model maps step counts into its documented
per-inverse window.
"""

from __future__ import annotations

# step-count window observed across the full input space; random
# 256-bit inputs cluster near the top of it
MIN_STEPS = 0
MAX_STEPS = 1024


def mod_inverse_steps(a: int, m: int) -> tuple[int, int]:
    """Return (a^-1 mod m, elementary step count) for odd prime m.

    Invariant throughout: x1*a == u and x2*a == v (mod m). Intermediate
    x1/x2 may go negative; one extra sign bit covers them.
    """
    if a == 0:
        raise ZeroDivisionError("no inverse")
    if not 1 <= a < m:
        raise ValueError("operand must be in [1, m)")
    u, v = a, m
    x1, x2 = 1, 0
    steps = 0
    while u != 1 and v != 1:
        while u & 1 == 0:
            u >>= 1
            x1 = (x1 >> 1) if x1 & 1 == 0 else ((x1 + m) >> 1)
            steps += 1
        while v & 1 == 0:
            v >>= 1
            x2 = (x2 >> 1) if x2 & 1 == 0 else ((x2 + m) >> 1)
            steps += 1
        if u >= v:
            u -= v
            x1 -= x2
        else:
            v -= u
            x2 -= x1
        steps += 1
    inv = x1 if u == 1 else x2
    return inv % m, steps


def mod_inverse(a: int, m: int, trace=None) -> int:
    """a^-1 mod m; records one inverse event with its step count."""
    inv, steps = mod_inverse_steps(a, m)
    if trace is not None:
        trace.record_inverse(steps)
    return inv
