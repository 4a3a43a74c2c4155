import pytest

import oracle
from p256engine.curve import AffinePoint, G, from_affine, point_add, to_affine
from p256engine.cycles import Trace
from p256engine.order import N
from p256engine.scalarmul import (
    binary_pm,
    build_odd_multiples,
    fixed_base_from_bytes,
    fixed_base_to_bytes,
    fpm,
    generator_constant_blob,
    generator_fixed_base,
    generator_odd_multiples,
    jsf_encode,
    naf_encode,
    odd_multiples_from_bytes,
    odd_multiples_to_bytes,
    point_from_bytes,
    point_to_bytes,
    precompute_fixed_base,
    spm,
    spm_joint,
    wnaf_encode,
)


def as_tuple(pt):
    affine = to_affine(pt)
    return None if affine.is_identity else (affine.x, affine.y)


def lift(pt):
    return from_affine(AffinePoint(*pt))


def reconstruct(digits):
    return sum(d << i for i, d in enumerate(digits))


def nonzeros(digits):
    return sum(1 for d in digits if d)


def test_naf_examples():
    assert naf_encode(0) == []
    assert naf_encode(7) == [-1, 0, 0, 1]
    assert naf_encode(1) == [1]


def test_naf_exhaustive_small():
    for k in range(1 << 12):
        digits = naf_encode(k)
        assert reconstruct(digits) == k
        assert all(d in (-1, 0, 1) for d in digits)
        assert all(not (digits[i] and digits[i + 1])
                   for i in range(len(digits) - 1))


def test_wnaf_examples():
    assert wnaf_encode(0, 4) == []
    assert wnaf_encode(7, 4) == [7]
    assert wnaf_encode(16, 4) == [0, 0, 0, 0, 1]


def test_wnaf_exhaustive_small():
    for w in (2, 3, 4, 5):
        bound = 1 << (w - 1)
        for k in range(1 << 11):
            digits = wnaf_encode(k, w)
            assert reconstruct(digits) == k
            for i, d in enumerate(digits):
                if d:
                    assert d % 2 == 1 or d % 2 == -1
                    assert abs(d) <= bound - 1
                    assert not any(digits[i + 1:i + w])


def test_wnaf_random_reconstruction(rng):
    for _ in range(200):
        k = rng.randrange(N)
        assert reconstruct(wnaf_encode(k, 4)) == k
        assert len(wnaf_encode(k, 4)) <= 257


def test_wnaf_rejects_bad_args():
    with pytest.raises(ValueError):
        wnaf_encode(-1, 4)
    with pytest.raises(ValueError):
        wnaf_encode(5, 1)


def test_wnaf_nonzero_density(rng):
    # width-4 digits average one nonzero per five positions
    samples = 400
    total = sum(nonzeros(wnaf_encode(rng.getrandbits(256), 4))
                for _ in range(samples))
    mean = total / samples
    assert abs(mean - 51.2) / 51.2 < 0.05


def test_jsf_reconstruction_exhaustive_small():
    for k1 in range(64):
        for k2 in range(64):
            d1, d2 = jsf_encode(k1, k2)
            assert len(d1) == len(d2)
            assert reconstruct(d1) == k1
            assert reconstruct(d2) == k2
            assert all(d in (-1, 0, 1) for d in d1 + d2)


def test_jsf_random_joint_weight(rng):
    total_cols = 0
    total_nonzero = 0
    for _ in range(60):
        k1, k2 = rng.randrange(N), rng.randrange(N)
        d1, d2 = jsf_encode(k1, k2)
        assert reconstruct(d1) == k1 and reconstruct(d2) == k2
        total_cols += len(d1)
        total_nonzero += sum(1 for a, b in zip(d1, d2) if a or b)
    density = total_nonzero / total_cols
    assert 0.45 < density < 0.55


def test_binary_pm_trivial():
    assert binary_pm(0, G).is_identity
    assert as_tuple(binary_pm(1, G)) == oracle.G
    assert as_tuple(binary_pm(2, G)) == oracle.double(oracle.G)
    with pytest.raises(ValueError):
        binary_pm(N, G)


def test_binary_pm_small_scalars(rng):
    # brute-force repeated addition for the smallest scalars
    running = None
    for k in range(1, 24):
        running = oracle.add(running, oracle.G)
        assert as_tuple(binary_pm(k, G)) == running
    for k in [rng.randrange(1, 1 << 20) for _ in range(10)]:
        assert as_tuple(binary_pm(k, G)) == oracle.mul(k)


def test_binary_pm_event_counts(rng):
    for k in (1, 2, (1 << 255) + 1, rng.randrange(1, N)):
        trace = Trace()
        binary_pm(k, G, trace)
        assert trace.count("point_double") == 256
        assert trace.count("point_add") == bin(k).count("1")


def test_odd_multiple_build():
    trace = Trace()
    table = build_odd_multiples(G, trace)
    assert trace.counts == {"point_double": 1, "point_add": 7}
    for i, pt in enumerate(table.points):
        assert as_tuple(pt) == oracle.mul(2 * i + 1)


def test_spm_trivial():
    q = binary_pm(9, G)
    assert spm(0, 0, q).is_identity
    assert as_tuple(spm(1, 0, q)) == oracle.G
    assert as_tuple(spm(0, 1, q)) == as_tuple(q)


def test_spm_matches_oracle(rng):
    d = rng.randrange(1, N)
    q = lift(oracle.mul(d))
    for _ in range(4):
        k1, k2 = rng.randrange(N), rng.randrange(N)
        want = oracle.add(oracle.mul(k1), oracle.mul(k2 * d % N))
        assert as_tuple(spm(k1, k2, q)) == want


def test_spm_q_equals_g(rng):
    # shared table entries force the doubling dispatch inside additions
    k1, k2 = 5, 7
    assert as_tuple(spm(k1, k2, G)) == oracle.mul(12)


def test_spm_event_count_identity(rng):
    q = lift(oracle.mul(1234567))
    for _ in range(4):
        k1, k2 = rng.randrange(N), rng.randrange(N)
        trace = Trace()
        spm(k1, k2, q, trace=trace)
        expected_adds = 7 + nonzeros(wnaf_encode(k1, 4)) + nonzeros(wnaf_encode(k2, 4))
        assert trace.count("point_double") == 257
        assert trace.count("point_add") == expected_adds
        assert trace.count("naf") == 2


def test_spm_joint_matches_and_counts(rng):
    d = rng.randrange(1, N)
    q = lift(oracle.mul(d))
    k1, k2 = rng.randrange(1, N), rng.randrange(1, N)
    want = oracle.add(oracle.mul(k1), oracle.mul(k2 * d % N))
    trace = Trace()
    assert as_tuple(spm_joint(k1, k2, q, "binary", trace=trace)) == want
    joint_cols = sum(1 for i in range(256)
                     if ((k1 >> i) | (k2 >> i)) & 1)
    assert trace.count("point_double") == 256
    assert trace.count("point_add") == 1 + joint_cols

    trace = Trace()
    assert as_tuple(spm_joint(k1, k2, q, "naf", trace=trace)) == want
    d1, d2 = naf_encode(k1), naf_encode(k2)
    cols = max(len(d1), len(d2))
    joint = sum(1 for i in range(cols)
                if (d1[i] if i < len(d1) else 0) or (d2[i] if i < len(d2) else 0))
    assert trace.count("point_double") == 256
    assert trace.count("point_add") == 2 + joint

    trace = Trace()
    assert as_tuple(spm_joint(k1, k2, q, "jsf", trace=trace)) == want
    j1, j2 = jsf_encode(k1, k2)
    joint = sum(1 for a, b in zip(j1, j2) if a or b)
    assert trace.count("point_double") == 256
    assert trace.count("point_add") == 2 + joint

    with pytest.raises(ValueError):
        spm_joint(k1, k2, q, "grey")


def test_precompute_fixed_base():
    trace = Trace()
    table = precompute_fixed_base(G, trace)
    assert trace.counts == {"point_double": 252}
    assert trace.count("point_add") == 0
    assert len(table.points) == 64
    assert table.points[0] == G
    assert as_tuple(table.points[1]) == oracle.mul(16)
    assert as_tuple(table.points[2]) == oracle.mul(256)


def test_fpm_trivial():
    table = generator_fixed_base()
    assert fpm(0, table).is_identity
    assert as_tuple(fpm(1, table)) == oracle.G
    with pytest.raises(ValueError):
        fpm(N, table)


def test_fpm_matches_binary(rng):
    table = generator_fixed_base()
    for _ in range(4):
        k = rng.randrange(1, N)
        assert as_tuple(fpm(k, table)) == as_tuple(binary_pm(k, G))


def test_fpm_zero_doubles(rng):
    table = generator_fixed_base()
    trace = Trace()
    fpm(rng.randrange(1, N), table, trace=trace)
    assert trace.count("point_double") == 0
    assert trace.count("point_add") > 0
    assert trace.count("naf") == 1


def test_fpm_long_naf_fold():
    # scalars whose plain NAF takes a 257th digit get re-encoded as k-n
    k = (1 << 257) // 3
    while len(naf_encode(k)) <= 256:
        k += 1
    assert k < N
    table = generator_fixed_base()
    assert as_tuple(fpm(k, table)) == oracle.mul(k)


def test_generator_tables_cross_checked():
    odd = generator_odd_multiples()
    assert as_tuple(odd.points[3]) == oracle.mul(7)
    fixed = generator_fixed_base()
    assert as_tuple(fixed.points[3]) == oracle.mul(1 << 12)


def test_generator_blob_size():
    blob = generator_constant_blob()
    assert len(blob) == 1120  # seven 160-byte points beyond G itself


def test_point_serialization_roundtrip(rng):
    pt = binary_pm(rng.randrange(1, N), G)
    raw = point_to_bytes(pt)
    assert len(raw) == 160
    assert point_from_bytes(raw) == pt
    with pytest.raises(ValueError):
        point_from_bytes(raw[:-1])


def test_table_serialization_roundtrip():
    table = generator_fixed_base()
    raw = fixed_base_to_bytes(table)
    assert raw[:8] == b"P256PCT1"
    loaded = fixed_base_from_bytes(raw)
    assert loaded == table
    odd = generator_odd_multiples()
    assert odd_multiples_from_bytes(odd_multiples_to_bytes(odd)) == odd
    with pytest.raises(ValueError):
        fixed_base_from_bytes(b"WRONGMAG" + raw[8:])
    with pytest.raises(ValueError):
        fixed_base_from_bytes(raw[:100])
