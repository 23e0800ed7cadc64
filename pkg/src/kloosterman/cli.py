"""Command-line front end: eval, verify, sweep, trace, bench.

Machine output is newline-delimited JSON records (schema_version "1"), one
self-contained record per line; --pretty switches to a human-readable layout.
Exit codes: 0 = success / all checks passed, 1 = an identity counterexample
was found, 2 = usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time

from .characters import enumerate_characters
from .cyclotomic import ModulusMismatch, NotDivisor
from .identities import (
    ExactBackendUnavailable,
    IdentityReport,
    TraceCapExceeded,
    DEFAULT_TRACE_CAP,
    explore_twisted,
    proof_trace_selberg,
    sweep,
    verify_selberg,
    verify_xi_reduces_to_s,
    verify_xi_selberg,
    verify_xi_symmetry,
)
from .modarith import (
    ModuliNotCoprime,
    NotInvertible,
    OutOfRange,
    euler_phi,
    factorize,
)
from .sums import (
    DEFAULT_EXACT_CAP,
    ModulusIncompatible,
    SumValue,
    kloosterman,
    kloosterman_crt,
    twisted_kloosterman,
    xi_sum,
)

SCHEMA_VERSION = "1"

_DOMAIN_ERRORS = (
    OutOfRange,
    NotInvertible,
    ModuliNotCoprime,
    ModulusMismatch,
    NotDivisor,
    ModulusIncompatible,
    TraceCapExceeded,
    ExactBackendUnavailable,
)


class _UsageError(ValueError):
    pass


def _record(command: str, params: dict, result, status: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "result": result,
        "status": status,
    }


def _sum_payload(sv: SumValue) -> dict:
    return {
        "re": sv.approx.real,
        "im": sv.approx.imag,
        "field_modulus": sv.field_modulus,
        "exact": list(sv.exact.coeffs) if sv.exact is not None else None,
    }


def _report_payload(r: IdentityReport) -> dict:
    return {
        "identity": r.identity_id,
        "params": r.params,
        "exact_equal": r.exact_equal,
        "abs_diff": r.abs_diff,
        "lhs": _sum_payload(r.lhs),
        "rhs": _sum_payload(r.rhs),
    }


class _Emitter:
    """Writes records to stdout or --output, as JSON lines or pretty text."""

    def __init__(self, path, pretty):
        self.pretty = pretty
        self.stream = open(path, "w", encoding="utf-8") if path else sys.stdout
        self.owns = path is not None

    def emit(self, rec: dict):
        if self.pretty:
            self.stream.write(self._pretty(rec) + "\n")
        else:
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")

    @staticmethod
    def _pretty(rec: dict) -> str:
        params = " ".join(f"{k}={v}" for k, v in rec["params"].items())
        body = json.dumps(rec["result"]) if not isinstance(rec["result"], str) else rec["result"]
        return f"[{rec['status']}] {rec['command']} {params} -> {body}"

    def close(self):
        self.stream.flush()
        if self.owns:
            self.stream.close()


def _parse_chi(spec: str):
    try:
        n_str, idx_str = spec.split(":", 1)
        N, idx = int(n_str), int(idx_str)
    except ValueError:
        raise _UsageError(f"bad character spec {spec!r}; expected N:index") from None
    if N < 1 or idx < 0 or idx >= euler_phi(N):
        raise _UsageError(f"character index out of range for modulus {N}")
    return enumerate_characters(N)[idx]


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kloosterman",
        description="Evaluate Kloosterman-type sums and verify their identities.",
    )
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p.add_argument("--output", metavar="PATH", help="write records to PATH instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one sum")
    ev.add_argument("kind", choices=["kloosterman", "xi", "twisted"])
    ev.add_argument("-m", type=int, required=True)
    ev.add_argument("-n", type=int, required=True)
    ev.add_argument("-k", type=int, default=None)
    ev.add_argument("-c", type=int, required=True)
    ev.add_argument("--chi", metavar="N:IDX", help="character for twisted sums")
    ev.add_argument("--backend", choices=["exact", "float", "crt"], default="exact")

    vf = sub.add_parser("verify", help="check one identity instance")
    vf.add_argument(
        "identity",
        choices=["selberg", "xi_selberg", "xi_symmetry", "xi_reduces_to_s"],
    )
    vf.add_argument("-m", type=int, required=True)
    vf.add_argument("-n", type=int, required=True)
    vf.add_argument("-k", type=int, default=None)
    vf.add_argument("-c", type=int, required=True)

    sw = sub.add_parser("sweep", help="check one identity over a parameter range")
    sw.add_argument(
        "identity",
        choices=[
            "selberg",
            "xi_selberg_mn",
            "xi_selberg_mk",
            "xi_symmetry",
            "xi_reduces_to_s",
            "twisted",
        ],
    )
    sw.add_argument("--c-max", type=int, required=True)
    sw.add_argument("--modulus", type=int, default=1, help="character modulus N (twisted only)")

    tr = sub.add_parser("trace", help="five-stage numeric replay of the Selberg proof")
    tr.add_argument("-m", type=int, required=True)
    tr.add_argument("-n", type=int, required=True)
    tr.add_argument("-c", type=int, required=True)
    tr.add_argument("--cap", type=int, default=DEFAULT_TRACE_CAP)

    be = sub.add_parser("bench", help="time the direct path against the CRT fast path")
    be.add_argument("--c-min", type=int, default=2)
    be.add_argument("--c-max", type=int, default=100_000)
    be.add_argument("--samples", type=int, default=20)
    be.add_argument("--csv", metavar="PATH", help="also write samples as CSV")
    return p


def _cmd_eval(args, out: _Emitter) -> int:
    params = {"kind": args.kind, "m": args.m, "n": args.n, "c": args.c,
              "backend": args.backend}
    if args.k is not None:
        params["k"] = args.k
    if args.chi is not None:
        params["chi"] = args.chi

    cap = DEFAULT_EXACT_CAP if args.backend == "exact" else 0
    if args.kind == "kloosterman":
        if args.backend == "crt":
            sv = kloosterman_crt(args.m, args.n, args.c)
        else:
            sv = kloosterman(args.m, args.n, args.c, exact_cap=cap)
    elif args.kind == "xi":
        if args.k is None:
            raise _UsageError("xi sums need -k")
        if args.backend == "crt":
            raise _UsageError("the crt backend only applies to plain Kloosterman sums")
        sv = xi_sum(args.m, args.n, args.k, args.c, exact_cap=cap)
    else:
        if args.chi is None:
            raise _UsageError("twisted sums need --chi N:IDX")
        if args.backend == "crt":
            raise _UsageError("the crt backend only applies to plain Kloosterman sums")
        chi = _parse_chi(args.chi)
        sv = twisted_kloosterman(chi, args.m, args.n, args.c, exact_cap=cap)
    if args.backend == "exact" and sv.exact is None:
        raise ExactBackendUnavailable(
            f"field degree at modulus {sv.field_modulus} exceeds the exactness cap; "
            "use --backend float"
        )
    out.emit(_record("eval", params, _sum_payload(sv), "ok"))
    return 0


def _cmd_verify(args, out: _Emitter) -> int:
    params = {"identity": args.identity, "m": args.m, "n": args.n, "c": args.c}
    if args.identity == "selberg":
        reports = [verify_selberg(args.m, args.n, args.c)]
    elif args.identity == "xi_reduces_to_s":
        reports = [verify_xi_reduces_to_s(args.m, args.n, args.c)]
    else:
        if args.k is None:
            raise _UsageError(f"{args.identity} needs -k")
        params["k"] = args.k
        if args.identity == "xi_symmetry":
            reports = [verify_xi_symmetry(args.m, args.n, args.k, args.c)]
        else:
            reports = list(verify_xi_selberg(args.m, args.n, args.k, args.c))
    ok = True
    for r in reports:
        out.emit(_record("verify", params, _report_payload(r), r.status))
        ok = ok and r.status == "pass"
    return 0 if ok else 1


def _cmd_sweep(args, out: _Emitter) -> int:
    if args.c_max < 0:
        raise _UsageError("--c-max must be >= 0")
    if args.identity == "twisted":
        return _cmd_sweep_twisted(args, out)
    summary = sweep(args.identity, args.c_max, jobs=args.jobs)
    params = {"identity": summary.identity_id, "c_max": args.c_max}
    for r in summary.failures:
        out.emit(_record("sweep", params, _report_payload(r), "fail"))
    status = "ok" if not summary.failures else "fail"
    out.emit(
        _record(
            "sweep",
            params,
            {"total_cases": summary.total_cases, "failures": len(summary.failures)},
            status,
        )
    )
    print(
        f"sweep {summary.identity_id} c<={args.c_max}: {summary.total_cases} cases, "
        f"{len(summary.failures)} failures in {summary.wall_time:.2f}s",
        file=sys.stderr,
    )
    return 0 if not summary.failures else 1


def _cmd_sweep_twisted(args, out: _Emitter) -> int:
    res = explore_twisted(args.modulus, args.c_max)
    params = {"identity": "twisted_candidate", "N": args.modulus, "c_max": args.c_max}
    for tally in res.tallies:
        for r in tally.counterexamples:
            out.emit(_record("sweep", params, _report_payload(r), "fail"))
        out.emit(
            _record(
                "sweep",
                {**params, "chi_index": tally.chi_index, "weight": tally.weight},
                {"holds": tally.holds, "fails": tally.fails, "cases": res.cases,
                 "filtered": res.filtered},
                "ok",
            )
        )
    return 0


def _cmd_trace(args, out: _Emitter) -> int:
    res = proof_trace_selberg(args.m, args.n, args.c, cap=args.cap)
    params = {"m": args.m, "n": args.n, "c": args.c}
    stages = dict(zip("ABCDE", res.stages))
    out.emit(
        _record(
            "trace",
            params,
            {"stages": stages, "max_deviation": res.max_deviation},
            "ok",
        )
    )
    return 0


def run_bench(c_min: int, c_max: int, samples: int, seed: int):
    """Time direct vs CRT float evaluation on seeded-random inputs.

    Returns (sample records, summary). Input selection is deterministic for a
    given seed; the timing fields themselves are wall-clock measurements.
    """
    rng = random.Random(seed)
    records = []
    for _ in range(samples):
        c = rng.randrange(max(1, c_min), c_max + 1)
        m = rng.randrange(c)
        n = rng.randrange(c)
        t0 = time.perf_counter()
        direct = kloosterman(m, n, c, exact_cap=0).approx
        t1 = time.perf_counter()
        via_crt = kloosterman_crt(m, n, c).approx
        t2 = time.perf_counter()
        records.append(
            {
                "c": c,
                "m": m,
                "n": n,
                "prime_factors": len(factorize(c).factors),
                "direct_s": t1 - t0,
                "crt_s": t2 - t1,
                "speedup": (t1 - t0) / (t2 - t1) if t2 > t1 else float("inf"),
                "abs_diff": abs(direct - via_crt),
            }
        )
    multi = sorted(r["speedup"] for r in records if r["prime_factors"] >= 2)
    summary = {
        "samples": len(records),
        "max_abs_diff": max((r["abs_diff"] for r in records), default=0.0),
        "median_speedup_multifactor": multi[len(multi) // 2] if multi else None,
    }
    return records, summary


def _cmd_bench(args, out: _Emitter) -> int:
    records, summary = run_bench(args.c_min, args.c_max, args.samples, args.seed)
    params = {"c_min": args.c_min, "c_max": args.c_max, "samples": args.samples,
              "seed": args.seed}
    for r in records:
        out.emit(_record("bench", params, r, "ok"))
    out.emit(_record("bench", params, summary, "ok"))
    if args.csv and records:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(records[0]))
            writer.writeheader()
            writer.writerows(records)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    out = _Emitter(args.output, args.pretty)
    try:
        if args.command == "eval":
            return _cmd_eval(args, out)
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "sweep":
            return _cmd_sweep(args, out)
        if args.command == "trace":
            return _cmd_trace(args, out)
        if args.command == "bench":
            return _cmd_bench(args, out)
        raise _UsageError(f"unknown command {args.command!r}")
    except (_UsageError, *_DOMAIN_ERRORS) as exc:
        out.emit(_record(args.command, {}, {"error": str(exc)}, "error"))
        return 2
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
