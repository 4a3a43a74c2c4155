from hypothesis import given
from hypothesis import strategies as st

from p256engine.cycles import Trace
from p256engine.field import P
from p256engine.order import (
    B_RADIX,
    K_WORDS,
    MU,
    MU_WORDS,
    N,
    barrett_reduce,
    mul_mod_n,
    reduce_once_n,
)
from p256engine.words import u258_pack

u512s = st.integers(min_value=0, max_value=(1 << 512) - 1)
orders = st.integers(min_value=0, max_value=N - 1)


def test_constants_derivation():
    assert B_RADIX == 4
    assert K_WORDS == 128
    assert MU == (1 << 512) // N
    assert MU * N <= 1 << 512 < (MU + 1) * N
    assert MU.bit_length() == 257
    assert u258_pack(MU_WORDS) == MU
    assert N <= P < 2 * N


def test_barrett_examples():
    assert barrett_reduce(0) == 0
    assert barrett_reduce(N) == 0
    assert barrett_reduce(N - 1) == N - 1
    assert barrett_reduce(N + 1) == 1
    assert barrett_reduce((1 << 512) - 1) == ((1 << 512) - 1) % N


@given(u512s)
def test_barrett_matches_oracle(z):
    assert barrett_reduce(z) == z % N


def test_barrett_near_multiples():
    # quotient-estimate error is largest near multiples of n
    for q in (1, 2, 5, (1 << 256) - 3, (1 << 256) + 1):
        for delta in (-2, -1, 0, 1, 2):
            z = q * N + delta
            if 0 <= z < (1 << 512):
                assert barrett_reduce(z) == z % N


def test_mul_mod_n_examples():
    assert mul_mod_n(1, 42) == 42
    assert mul_mod_n(N - 1, N - 1) == 1


@given(orders, orders)
def test_mul_mod_n_matches_oracle(a, b):
    assert mul_mod_n(a, b) == a * b % N


def test_reduce_once_examples():
    assert reduce_once_n(0) == 0
    assert reduce_once_n(N) == 0
    assert reduce_once_n(N - 1) == N - 1
    assert reduce_once_n(P - 1) == P - 1 - N
    assert reduce_once_n((1 << 256) - 1) == ((1 << 256) - 1) % N


@given(st.integers(min_value=0, max_value=(1 << 256) - 1))
def test_reduce_once_matches_oracle_on_digests(x):
    assert reduce_once_n(x) == x % N


def test_event_accounting():
    trace = Trace()
    barrett_reduce(123456789, trace)
    assert trace.counts == {"barrett": 1}
    trace = Trace()
    mul_mod_n(3, 5, trace)
    assert trace.counts == {"mul256": 1, "barrett": 1}
    trace = Trace()
    reduce_once_n(5, trace)
    assert trace.counts == {"sub": 1}
