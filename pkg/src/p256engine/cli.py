"""Command-line surface: single and batch verification, CAVP vector
runner, precompute-table management, and cycle-model reports.

Exit codes: 0 success (verify: valid), 1 verification failure or vector
mismatch, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import sys
import time

from . import cycles as cycles_mod
from .curve import AffinePoint, G, from_affine, is_on_curve, to_affine
from .cycles import LatencyTable, Trace, estimate, model_point_op_cycles
from .order import N
from .scalarmul import (
    binary_pm,
    fixed_base_from_bytes,
    fixed_base_to_bytes,
    precompute_fixed_base,
    spm,
)
from .verify import (
    PrecomputeCache,
    PublicKey,
    Signature,
    VerificationRequest,
    request_from_json,
    result_to_json,
    verify_fabric,
    verify_generic,
)
from .words import u256_from_hex


def _load_latency_table(path: str | None) -> LatencyTable:
    if path is None:
        return LatencyTable()
    return LatencyTable.from_json_file(path)


def _parse_request(args) -> VerificationRequest:
    return VerificationRequest(
        sig=Signature(r=u256_from_hex(args.r), s=u256_from_hex(args.s)),
        key=PublicKey(x=u256_from_hex(args.qx), y=u256_from_hex(args.qy)),
        digest=u256_from_hex(args.hash),
    )


def cmd_verify(args) -> int:
    try:
        req = _parse_request(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    table = None
    if args.table:
        try:
            with open(args.table, "rb") as fh:
                table = fixed_base_from_bytes(fh.read())
        except (OSError, ValueError) as exc:
            print(f"error: cannot load table: {exc}", file=sys.stderr)
            return 2
    trace = Trace()
    if table is not None:
        cache = PrecomputeCache()
        cache.put(req.key, table)
        result = verify_fabric(req, cache, trace=trace,
                               check_on_curve=not args.strict_alg1)
    else:
        result = verify_generic(req, trace=trace,
                                check_on_curve=not args.strict_alg1)
    modeled = None
    if args.cycles:
        latencies = _load_latency_table(args.latency_table)
        modeled = estimate(trace, latencies).modeled_cycles
    print(result_to_json(result, modeled))
    return 0 if result.valid else 1


def _batch_worker(line, cache, check_on_curve):
    trace = Trace()
    try:
        req = request_from_json(line)
    except ValueError as exc:
        return None, str(exc), trace
    result = verify_fabric(req, cache, trace=trace,
                           check_on_curve=check_on_curve)
    return result, None, trace


def cmd_batch(args) -> int:
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 2
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [(i, ln) for i, ln in enumerate(lines) if ln]
    cache = PrecomputeCache(capacity=args.cache_cap)
    latencies = _load_latency_table(args.latency_table)
    started = time.perf_counter()
    outcomes: dict[int, tuple] = {}
    check = not args.strict_alg1
    with concurrent.futures.ThreadPoolExecutor(max_workers=args.workers) as pool:
        futures = {pool.submit(_batch_worker, ln, cache, check): i
                   for i, ln in lines}
        for fut in concurrent.futures.as_completed(futures):
            outcomes[futures[fut]] = fut.result()
    elapsed = time.perf_counter() - started
    valid = invalid = malformed = 0
    merged = Trace()
    for i, _ in lines:  # report in input order regardless of completion order
        result, error, trace = outcomes[i]
        merged.merge(trace)
        if error is not None:
            malformed += 1
            print(json.dumps({"line": i + 1, "error": error}))
            continue
        if result.valid:
            valid += 1
        else:
            invalid += 1
        modeled = estimate(trace, latencies).modeled_cycles if args.cycles else None
        print(result_to_json(result, modeled))
    total = valid + invalid
    lookups = cache.hits + cache.misses
    summary = {
        "requests": total,
        "valid": valid,
        "invalid": invalid,
        "malformed": malformed,
        "seconds": round(elapsed, 3),
        "rate_per_s": round(total / elapsed, 1) if elapsed > 0 else 0.0,
        "cache_hit_rate": round(cache.hits / lookups, 3) if lookups else 0.0,
        "modeled_cycles_total": estimate(merged, latencies).modeled_cycles,
    }
    print(json.dumps(summary), file=sys.stderr)
    return 0


def parse_rsp_sigver(text: str):
    """Parse CAVP SigVer records: ([section], {Msg,Qx,Qy,R,S,Result})."""
    section = None
    record: dict[str, str] = {}
    out = []

    def flush():
        nonlocal record
        if record:
            missing = {"Msg", "Qx", "Qy", "R", "S", "Result"} - record.keys()
            if missing:
                raise ValueError(f"incomplete record, missing {sorted(missing)}")
            out.append((section, record))
            record = {}

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            flush()
            section = line.strip("[]").replace(" ", "")
            continue
        if "=" not in line:
            raise ValueError(f"unparseable line: {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "Result":
            value = value[:1]  # P or F, reason text follows
            if value not in ("P", "F"):
                raise ValueError(f"bad Result value: {raw!r}")
        if key == "Msg" and "Msg" in record:
            flush()
        record[key] = value
    flush()
    return out


def cmd_nist(args) -> int:
    try:
        with open(args.rsp_file, "r", encoding="utf-8") as fh:
            records = parse_rsp_sigver(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    cache = PrecomputeCache()
    ran = skipped = mismatches = 0
    for section, rec in records:
        if section != "P-256,SHA-256":
            skipped += 1
            continue
        digest = int.from_bytes(
            hashlib.sha256(bytes.fromhex(rec["Msg"])).digest(), "big")
        req = VerificationRequest(
            sig=Signature(r=int(rec["R"], 16), s=int(rec["S"], 16)),
            key=PublicKey(x=int(rec["Qx"], 16), y=int(rec["Qy"], 16)),
            digest=digest,
        )
        expected = rec["Result"] == "P"
        got_generic = verify_generic(req).valid
        got_fabric = verify_fabric(req, cache).valid
        ran += 1
        if got_generic != expected or got_fabric != expected:
            mismatches += 1
            print(f"MISMATCH record {ran}: expected "
                  f"{'P' if expected else 'F'}, generic "
                  f"{'P' if got_generic else 'F'}, fabric "
                  f"{'P' if got_fabric else 'F'}")
    print(f"vectors: {ran} run, {skipped} skipped (other curve/hash), "
          f"{mismatches} mismatches")
    return 1 if mismatches else 0


def cmd_precompute(args) -> int:
    try:
        key = AffinePoint(u256_from_hex(args.qx), u256_from_hex(args.qy))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not is_on_curve(key):
        print("error: not on curve", file=sys.stderr)
        return 2
    table = precompute_fixed_base(from_affine(key))
    try:
        with open(args.out_file, "wb") as fh:
            fh.write(fixed_base_to_bytes(table))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(table.points)} points to {args.out_file}")
    return 0


def _row(label: str, modeled: float, target: int | None) -> str:
    if target is None:
        return f"{label:<38}{modeled:>14,.0f}"
    gap = (modeled - target) / target * 100.0
    return f"{label:<38}{modeled:>14,.0f}{target:>12,}{gap:>+9.1f}%"


def _sample_requests(count: int):
    # synthetic requests exercising the full datapath; verdicts are
    # irrelevant to the cycle accounting
    import random

    rng = random.Random(0xEC05)
    out = []
    for _ in range(count):
        key = to_affine(binary_pm(rng.randrange(1, N), G))
        out.append(VerificationRequest(
            sig=Signature(r=rng.randrange(1, N), s=rng.randrange(1, N)),
            key=PublicKey(key.x, key.y),
            digest=rng.getrandbits(256),
        ))
    return out


def cmd_model(args) -> int:
    latencies = _load_latency_table(args.latency_table)
    header = f"{'row':<38}{'modeled':>14}{'target':>12}{'gap':>10}"
    if args.mode == "point":
        model = model_point_op_cycles(latencies)
        print(header)
        print(_row("point add (configured)", model.pa_cycles, None))
        print(_row("point add (serial recomposition)",
                   model.pa_serial_cycles, model.pa_cycles))
        print(_row("point add (overlapped)",
                   model.pa_overlapped_cycles, model.pa_cycles))
        print(_row("point double (configured)", model.pd_cycles, None))
        print(_row("point double (serial recomposition)",
                   model.pd_serial_cycles, model.pd_cycles))
        print(_row("point double (overlapped)",
                   model.pd_overlapped_cycles, model.pd_cycles))
        print(f"add events: {model.pa_events}")
        print(f"double events: {model.pd_events}")
        return 0

    import random
    rng = random.Random(0xC0DE)
    print(header)
    if args.mode == "generic":
        synthetic = Trace()
        synthetic.record("point_double", 256)
        synthetic.record("point_add", 193)
        print(_row("binary SPM (256 PD, 193 PA)",
                   estimate(synthetic, latencies).modeled_cycles,
                   cycles_mod.TARGETS["spm_binary_cycles"]))
        synthetic = Trace()
        synthetic.record("point_double", 256)
        synthetic.record("point_add", 128)
        print(_row("binary PM (256 PD, 128 PA)",
                   estimate(synthetic, latencies).modeled_cycles,
                   cycles_mod.TARGETS["pm_binary_cycles"]))
        spm_traces = []
        for _ in range(args.samples):
            t = Trace()
            spm(rng.randrange(1, N), rng.randrange(1, N), G, trace=t)
            spm_traces.append(estimate(t, latencies).modeled_cycles)
        print(_row(f"wNAF-4 SPM (avg of {args.samples})",
                   sum(spm_traces) / len(spm_traces),
                   cycles_mod.TARGETS["spm_wnaf4_cycles"]))
        reports = []
        for req in _sample_requests(args.samples):
            t = Trace()
            verify_generic(req, trace=t)
            reports.append(estimate(t, latencies))
        avg = sum(r.modeled_cycles for r in reports) / len(reports)
        print(_row(f"generic verification (avg of {args.samples})", avg,
                   cycles_mod.TARGETS["generic_verify_cycles"]))
        print(_row("generic throughput /s",
                   latencies.clock_mhz * 1e6 / avg,
                   cycles_mod.TARGETS["generic_throughput_per_s"]))
        print("\nitemization of last run:")
        print(reports[-1].to_text())
        return 0
    if args.mode in ("fabric", "precompute"):
        cache = PrecomputeCache()
        verify_reports = []
        pre_reports = []
        for req in _sample_requests(args.samples):
            vt = Trace()
            pt = Trace()
            verify_fabric(req, cache, trace=vt, precompute_trace=pt)
            verify_reports.append(estimate(vt, latencies, mode="fabric"))
            pre_reports.append(estimate(pt, latencies, mode="precompute"))
        if args.mode == "fabric":
            avg = (sum(r.modeled_cycles for r in verify_reports)
                   / len(verify_reports))
            print(_row(f"fabric verification (avg of {args.samples})", avg,
                       cycles_mod.TARGETS["fabric_verify_cycles"]))
            print(_row("fabric throughput /s",
                       latencies.clock_mhz * 1e6 / avg,
                       cycles_mod.TARGETS["fabric_throughput_per_s"]))
            # cache-miss accounting both ways: the precompute block may
            # run serially before verification or overlap other requests
            serial = [v.modeled_cycles + p.modeled_cycles
                      for v, p in zip(verify_reports, pre_reports)]
            print(_row("cache miss, precompute serialized",
                       sum(serial) / len(serial), None))
            print(_row("cache miss, precompute overlapped", avg, None))
            print("\nitemization of last run:")
            print(verify_reports[-1].to_text())
        else:
            avg = sum(r.modeled_cycles for r in pre_reports) / len(pre_reports)
            print(_row("precompute (new key)", avg,
                       cycles_mod.TARGETS["precompute_cycles"]))
            print("\nitemization of last run:")
            print(pre_reports[-1].to_text())
        return 0
    print(f"error: unknown mode {args.mode!r}", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p256engine",
        description="ECDSA P-256 verification engines with cycle modeling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify one signature from hex arguments")
    for name in ("r", "s", "qx", "qy", "hash"):
        p.add_argument(name)
    p.add_argument("--cycles", action="store_true",
                   help="attach modeled cycle count to the result")
    p.add_argument("--strict-alg1", action="store_true",
                   help="skip the public-key on-curve ingestion check")
    p.add_argument("--table", help="precomputed key table file (fabric path)")
    p.add_argument("--latency-table", help="JSON latency overrides")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="verify a JSONL request file")
    p.add_argument("file")
    p.add_argument("--workers", type=int, default=1, metavar="K")
    p.add_argument("--cache-cap", type=int, default=None, metavar="CAP")
    p.add_argument("--cycles", action="store_true")
    p.add_argument("--strict-alg1", action="store_true")
    p.add_argument("--latency-table")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("nist", help="run CAVP SigVer vectors on both engines")
    p.add_argument("rsp_file")
    p.set_defaults(func=cmd_nist)

    p = sub.add_parser("precompute", help="write a key's window table")
    p.add_argument("qx")
    p.add_argument("qy")
    p.add_argument("out_file")
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("model", help="print cycle-model reproduction rows")
    p.add_argument("mode", choices=["point", "generic", "fabric", "precompute"])
    p.add_argument("--samples", type=int, default=4)
    p.add_argument("--latency-table")
    p.set_defaults(func=cmd_model)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cache_cap", None) is not None and args.cache_cap < 0:
        print("error: --cache-cap must be >= 0", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
