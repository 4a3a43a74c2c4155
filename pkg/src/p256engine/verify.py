"""The two ECDSA verification engines and the precompute cache.

verify_generic runs the simultaneous-multiplication path; verify_fabric
runs two fixed-base multiplications against precomputed window tables
(the generator's is baked in, the key's is fetched from or built into a
cache keyed by public key), so its point arithmetic degenerates to
additions only. Both accept the same requests and agree on every
verdict; only the recorded traces differ.

Requests carry a precomputed 256-bit message digest; hashing happens
upstream.
"""

from __future__ import annotations

import json
import threading
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum

from .curve import AffinePoint, from_affine, is_on_curve, point_add, to_affine
from .inverse import mod_inverse
from .order import N, mul_mod_n, reduce_once_n
from .scalarmul import (
    FixedBaseTable,
    fpm,
    generator_fixed_base,
    precompute_fixed_base,
    spm,
)
from .words import u256_from_hex, u256_to_hex


class Reason(Enum):
    OK = "ok"
    RANGE_CHECK_FAILED = "range_check_failed"
    MISMATCH = "mismatch"
    KEY_NOT_ON_CURVE = "key_not_on_curve"


@dataclass(frozen=True)
class Signature:
    r: int
    s: int


@dataclass(frozen=True)
class PublicKey:
    x: int
    y: int


@dataclass(frozen=True)
class VerificationRequest:
    sig: Signature
    key: PublicKey
    digest: int


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    reason: Reason

    @staticmethod
    def ok() -> "VerifyResult":
        return VerifyResult(True, Reason.OK)

    @staticmethod
    def invalid(reason: Reason) -> "VerifyResult":
        return VerifyResult(False, reason)


class PrecomputeCache:
    """Bounded LRU map from serialized public key to its window table.

    Readers may run concurrently; table construction happens outside the
    lock so a missing key never blocks verifications against other keys.
    capacity None means unbounded; 0 disables storage (tables are still
    built and returned).
    """

    def __init__(self, capacity: int | None = None) -> None:
        if capacity is not None and capacity < 0:
            raise ValueError("capacity must be >= 0")
        self.capacity = capacity
        self._entries: OrderedDict[bytes, FixedBaseTable] = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _key_bytes(key: PublicKey) -> bytes:
        return key.x.to_bytes(32, "big") + key.y.to_bytes(32, "big")

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, key: PublicKey) -> FixedBaseTable | None:
        kb = self._key_bytes(key)
        with self._lock:
            table = self._entries.get(kb)
            if table is None:
                self.misses += 1
                return None
            self._entries.move_to_end(kb)
            self.hits += 1
            return table

    def put(self, key: PublicKey, table: FixedBaseTable) -> None:
        kb = self._key_bytes(key)
        with self._lock:
            if self.capacity == 0:
                return
            self._entries[kb] = table
            self._entries.move_to_end(kb)
            while self.capacity is not None and len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def evict(self, key: PublicKey) -> bool:
        with self._lock:
            return self._entries.pop(self._key_bytes(key), None) is not None

    def get_or_build(self, key: PublicKey, trace=None) -> FixedBaseTable:
        """Fetch the key's table, building (and caching) it on a miss.

        Build events land in `trace`; a cache hit records nothing.
        """
        table = self.get(key)
        if table is not None:
            return table
        built = precompute_fixed_base(from_affine(AffinePoint(key.x, key.y),
                                                  check=False), trace)
        self.put(key, built)
        return built


def _check_range(v: int) -> bool:
    return 1 <= v <= N - 1


def _scalars(req: VerificationRequest, trace) -> tuple[int, int]:
    # digests of 256 bits may exceed n; one conditional subtraction
    # canonicalizes them
    z = reduce_once_n(req.digest, trace)
    w = mod_inverse(req.sig.s, N, trace)
    k1 = mul_mod_n(z, w, trace)
    k2 = mul_mod_n(req.sig.r, w, trace)
    return k1, k2


def _finish(req: VerificationRequest, acc, trace) -> VerifyResult:
    if acc.is_identity:
        return VerifyResult.invalid(Reason.MISMATCH)
    affine = to_affine(acc, trace)
    v = reduce_once_n(affine.x, trace)
    if v == req.sig.r:
        return VerifyResult.ok()
    return VerifyResult.invalid(Reason.MISMATCH)


def _validate(req: VerificationRequest, check_on_curve: bool) -> VerifyResult | None:
    if not (_check_range(req.sig.r) and _check_range(req.sig.s)):
        return VerifyResult.invalid(Reason.RANGE_CHECK_FAILED)
    if not 0 <= req.digest < (1 << 256):
        raise ValueError("digest must be a 256-bit integer")
    if check_on_curve and not is_on_curve(AffinePoint(req.key.x, req.key.y)):
        return VerifyResult.invalid(Reason.KEY_NOT_ON_CURVE)
    return None


def verify_generic(req: VerificationRequest, *, trace=None,
                   check_on_curve: bool = True) -> VerifyResult:
    """Signature check via one simultaneous multiplication k1*G + k2*K.

    Ingestion checks (range, curve membership) happen before the engine
    starts and record no events. The on-curve check is an addition over
    the bare algorithm; disabling it recovers the strict behavior.
    """
    early = _validate(req, check_on_curve)
    if early is not None:
        return early
    k1, k2 = _scalars(req, trace)
    key_point = from_affine(AffinePoint(req.key.x, req.key.y), check=False)
    acc = spm(k1, k2, key_point, trace=trace)
    return _finish(req, acc, trace)


def verify_fabric(req: VerificationRequest, cache: PrecomputeCache, *,
                  trace=None, precompute_trace=None,
                  check_on_curve: bool = True) -> VerifyResult:
    """Signature check via two fixed-base multiplications and one add.

    Table construction for an unseen key goes to `precompute_trace`; the
    verification path itself performs no point doublings.
    """
    early = _validate(req, check_on_curve)
    if early is not None:
        return early
    k1, k2 = _scalars(req, trace)
    key_table = cache.get_or_build(req.key, precompute_trace)
    left = fpm(k1, generator_fixed_base(), trace=trace)
    right = fpm(k2, key_table, trace=trace)
    acc = point_add(left, right, trace)
    return _finish(req, acc, trace)


def request_from_json(line: str) -> VerificationRequest:
    """Parse one request object: {"r","s","qx","qy","hash"} hex fields."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("request must be a JSON object")
    missing = {"r", "s", "qx", "qy", "hash"} - obj.keys()
    if missing:
        raise ValueError(f"missing fields: {sorted(missing)}")
    return VerificationRequest(
        sig=Signature(r=u256_from_hex(obj["r"]), s=u256_from_hex(obj["s"])),
        key=PublicKey(x=u256_from_hex(obj["qx"]), y=u256_from_hex(obj["qy"])),
        digest=u256_from_hex(obj["hash"]),
    )


def request_to_json(req: VerificationRequest) -> str:
    return json.dumps({
        "r": u256_to_hex(req.sig.r),
        "s": u256_to_hex(req.sig.s),
        "qx": u256_to_hex(req.key.x),
        "qy": u256_to_hex(req.key.y),
        "hash": u256_to_hex(req.digest),
    })


def result_to_json(result: VerifyResult, cycles: int | None = None) -> str:
    return json.dumps({
        "valid": result.valid,
        "reason": result.reason.value,
        "cycles": cycles,
    })
