import random

from hypothesis import given
from hypothesis import strategies as st

from p256engine.cycles import Trace
from p256engine.field import (
    EQUAL,
    GREATER,
    LESS,
    P,
    P0,
    P1,
    P2,
    P3,
    add_mod_p,
    ge_p256,
    mul_mod_p,
    reduce_p256,
    sqr_mod_p,
    sub_mod_p,
)

u512s = st.integers(min_value=0, max_value=(1 << 512) - 1)
fields = st.integers(min_value=0, max_value=P - 1)


def test_prime_slices():
    assert P0 == (1 << 96) - 1
    assert P1 == 0
    assert P2 == 1
    assert P3 == (1 << 32) - 1
    assert (P3 << 224) | (P2 << 192) | (P1 << 96) | P0 == P


def test_reduce_examples():
    assert reduce_p256(0) == 0
    assert reduce_p256(P) == 0
    assert reduce_p256(P - 1) == P - 1
    assert reduce_p256(P + 1) == 1
    assert reduce_p256((1 << 512) - 1) == ((1 << 512) - 1) % P


@given(u512s)
def test_reduce_matches_oracle(c):
    assert reduce_p256(c) == c % P


def test_reduce_word_activation_patterns():
    # per-word extremes drive every rearranged term through its
    # maximum and zero contributions
    top = (1 << 32) - 1
    for i in range(16):
        c = top << (32 * i)
        assert reduce_p256(c) == c % P
    rng = random.Random(0xACE)
    for _ in range(2000):
        c = 0
        for i in range(16):
            if rng.getrandbits(1):
                c |= top << (32 * i)
        assert reduce_p256(c) == c % P


def test_comparator_examples():
    assert ge_p256(P) == EQUAL
    assert ge_p256(P + 1) == GREATER
    assert ge_p256(P - 1) == LESS
    assert ge_p256(2 * P - 1) == GREATER
    assert ge_p256(0) == LESS


def test_comparator_boundary_slices():
    # exercise each decision input: bit 256, the AND-reduced slices,
    # and the middle equality slices
    ones96 = (1 << 96) - 1
    candidates = [
        1 << 256,
        (1 << 256) + 5,
        P | (1 << 96),          # r1 > 0
        P ^ 1,                  # r0 loses a bit
        P - (1 << 96),          # r1 wraps below
        (P2 << 192) | ones96,   # top slice zero
        ((1 << 32) - 1) << 224, # top slice only
        (2 << 192) | (((1 << 32) - 1) << 224) | ones96,  # r2 = 2
    ]
    for r in candidates:
        want = GREATER if r > P else (EQUAL if r == P else LESS)
        assert ge_p256(r) == want, hex(r)


@given(st.integers(min_value=0, max_value=2 * P - 1))
def test_comparator_matches_direct_compare(r):
    want = GREATER if r > P else (EQUAL if r == P else LESS)
    assert ge_p256(r) == want


@given(st.integers(min_value=0, max_value=(1 << 257) - 1))
def test_comparator_full_257_bit_domain(r):
    # the reduction loop feeds sums slightly above 2p; the decision
    # tree stays exact anywhere below 2^257
    want = GREATER if r > P else (EQUAL if r == P else LESS)
    assert ge_p256(r) == want


def test_wrapper_examples():
    assert sqr_mod_p(0) == 0
    assert sub_mod_p(0, 1) == P - 1
    assert add_mod_p(P - 1, 1) == 0
    assert mul_mod_p(1, 42) == 42
    assert mul_mod_p(P - 1, P - 1) == 1


@given(fields, fields)
def test_wrappers_match_oracle(a, b):
    assert mul_mod_p(a, b) == a * b % P
    assert sqr_mod_p(a) == a * a % P
    assert add_mod_p(a, b) == (a + b) % P
    assert sub_mod_p(a, b) == (a - b) % P


def test_wrapper_event_accounting():
    trace = Trace()
    mul_mod_p(3, 5, trace)
    assert trace.counts == {"mul256": 1, "reduce_p": 1}
    trace = Trace()
    sqr_mod_p(3, trace)
    assert trace.counts == {"mul256": 1, "reduce_p": 1}
    trace = Trace()
    add_mod_p(3, 5, trace)
    sub_mod_p(3, 5, trace)
    assert trace.counts == {"sub": 2}


def test_reduce_records_event():
    trace = Trace()
    reduce_p256(12345, trace)
    assert trace.counts == {"reduce_p": 1}
