"""Command-line front end: ``dwbc <command> [options]``.

Exit codes: 0 success, 1 verification failure (including skipped oracle
checks), 2 usage or parse error, 3 degenerate parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import correlators as cr
from .config import (
    ConfigError,
    RunConfig,
    complex_pair,
    parse_config,
    parse_lambda_flag,
)
from .errors import CapExceeded, DegenerateRapidities, DWBCError, ZeroPartition
from .izergin import izergin_partition
from .lattice import brute_partition, count_configurations, dwbc
from .verify import FAIL, PASS, SKIPPED, summary_document, verify_suite
from .weights import DEFAULT_TOL, strict_rel_dev, ybe_residual, ybe_scalar_residual

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
COMMANDS = ("partition", "onepoint", "twopoint", "ybe-check", "count", "verify")


@dataclass
class ResultRecord:
    command: str
    input_digest: str
    label: str
    value: Any
    oracle: Any = None
    deviation: float | None = None
    status: str = "OK"
    wall_time: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self, timings: bool) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "label": self.label,
            "value": _encode(self.value),
            "status": self.status,
        }
        if self.status != "OK" or self.oracle is not None:
            out["oracle"] = _encode(self.oracle)
            out["deviation"] = self.deviation
        if timings:
            out["wall_time"] = self.wall_time
        out.update(self.extra)
        return out


def _encode(v):
    if isinstance(v, complex):
        return complex_pair(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dwbc", description="Domain-wall six-vertex model toolkit.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, help="lattice size for randomly drawn parameters")
    p.add_argument("--seed", type=int, help="seed for random parameters (default 0)")
    p.add_argument("--random", action="store_true", help="draw missing parameters from the seed (the default)")
    p.add_argument("--lambda", dest="lam", metavar="RE,IM", help="pin the crossing parameter")
    p.add_argument("--config", metavar="PATH", help="JSON run configuration")
    p.add_argument("--oracle", action="store_true", help="also brute-force the value and report the deviation")
    p.add_argument("--json", action="store_true", help="print the machine-readable document")
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4), help="2-point case")
    p.add_argument("--r", type=int, help="row (1 = top)")
    p.add_argument("--r2", type=int, help="second row (case 1: lower right arrow; case 3: left arrow)")
    p.add_argument("--col", type=int, help="column counted from the right (case 2)")
    p.add_argument("--all", action="store_true", help="every row (onepoint)")
    p.add_argument("--trials", type=int, default=1000, help="random triples for ybe-check")
    p.add_argument("--tol", type=float, help="tolerance (verify: overrides every criterion)")
    p.add_argument("--cap", type=int, help="enumeration cap in vertices")
    p.add_argument("--only", type=int, action="append", help="verify: run just this criterion (repeatable)")
    p.add_argument("--timings", action="store_true", help="include wall times in documents")
    return p


def _require(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def _timed(fn: Callable):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def _with_oracle(rec: ResultRecord, oracle: Callable[[], complex], tol: float) -> ResultRecord:
    try:
        rec.oracle = complex(oracle())
    except CapExceeded as exc:
        rec.status, rec.extra["note"] = SKIPPED, str(exc)
        return rec
    rec.deviation = strict_rel_dev(rec.value, rec.oracle)
    rec.status = PASS if rec.deviation <= tol else FAIL
    return rec


def _value_records(args, cfg: RunConfig, items) -> list[ResultRecord]:
    """``items``: (label, formula thunk, oracle thunk)."""
    tol = cfg.tolerance if cfg.tolerance is not None else DEFAULT_TOL
    digest = cfg.digest(args.command, args.case, args.r, args.r2, args.col, args.all)
    out = []
    for label, formula, oracle in items:
        value, secs = _timed(formula)
        rec = ResultRecord(args.command, digest, label, complex(value), wall_time=secs)
        if args.oracle:
            _with_oracle(rec, oracle, tol)
        out.append(rec)
    return out


def _partition(args, cfg):
    p, n, cap = cfg.params(), cfg.n, cfg.enumeration_cap
    return _value_records(
        args, cfg, [(f"Z_{n}", lambda: izergin_partition(p), lambda: brute_partition(dwbc(n), p, cap=cap))]
    )


def _onepoint(args, cfg):
    p, n, cap = cfg.params(), cfg.n, cfg.enumeration_cap
    if args.all:
        rows = range(1, n + 1)
    else:
        _require(args, "r")
        rows = [args.r]

    def oracle(r):
        return lambda: brute_partition(dwbc(n), p, filter=[(r, 1, "c")], cap=cap) / brute_partition(dwbc(n), p, cap=cap)

    return _value_records(args, cfg, [(f"H_{n}^{r}", lambda r=r: cr.bpz_onepoint(r, p), oracle(r)) for r in rows])


def _twopoint(args, cfg):
    _require(args, "case")
    p, n, cap = cfg.params(), cfg.n, cfg.enumeration_cap
    if args.case != 2 and n < 3:
        raise UsageError(f"case {args.case} lives on an N x (N-2) lattice and needs N >= 3")
    narrow = p.replace(y=p.y[2:])
    if args.case == 1:
        _require(args, "r", "r2")
        r1, r2 = args.r, args.r2
        label = f"case1(r1={r1}, r2={r2})"
        formula = lambda: cr.twopoint_case1(r1, r2, narrow)
        oracle = lambda: brute_partition(cr.case1_boundary(n, r1, r2), narrow, cap=cap)
    elif args.case == 2:
        _require(args, "r", "col")
        r, c = args.r, args.col
        label = f"case2(r={r}, col={c})"
        formula = lambda: cr.twopoint_case2(r, c, p)
        oracle = lambda: brute_partition(cr.case2_boundary(n, r, c), p, cap=cap)
    elif args.case == 3:
        _require(args, "r", "r2")
        r1, r2 = args.r, args.r2
        label = f"case3(right={r1}, left={r2})"
        formula = lambda: cr.twopoint_case3(r1, r2, narrow)
        oracle = lambda: brute_partition(cr.case3_boundary(n, r1, r2), narrow, cap=cap)
    else:
        _require(args, "r")
        i = args.r
        label = f"case4(i={i})"
        formula = lambda: cr.twopoint_case4(i, narrow)
        oracle = lambda: brute_partition(cr.case4_boundary(n, i), narrow, cap=cap)
    return _value_records(args, cfg, [(label, formula, oracle)])


def _ybe(args, cfg):
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-12
    rng = np.random.default_rng(cfg.seed)
    start = time.perf_counter()
    mat, sca = [], []
    for _ in range(args.trials):
        x, y, z = rng.uniform(0.05, 0.95, 3)
        mat.append(ybe_residual(x, y, z, cfg.lam))
        sca.append(ybe_scalar_residual(x, y, z, cfg.lam))
    secs = time.perf_counter() - start
    digest = cfg.digest(args.command, args.trials)
    out = []
    for label, res in (("matrix residual", mat), ("scalar residual", sca)):
        worst = float(max(res))
        out.append(
            ResultRecord(
                "ybe-check", digest, label, worst,
                status=PASS if worst <= tol else FAIL, wall_time=secs,
                extra={"mean": float(np.mean(res)), "trials": args.trials},
            )
        )
    return out


def _count(args, cfg):
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    digest = cfg.digest(args.command, n)
    try:
        value, secs = _timed(lambda: count_configurations(dwbc(n), cap=cfg.enumeration_cap))
    except CapExceeded as exc:
        return [ResultRecord("count", digest, f"dwbc({n})", None, status=SKIPPED, extra={"note": str(exc)})]
    return [ResultRecord("count", digest, f"dwbc({n})", value, wall_time=secs)]


_DISPATCH = {"partition": _partition, "onepoint": _onepoint, "twopoint": _twopoint, "ybe-check": _ybe, "count": _count}


def _fmt(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.15g}{v.imag:+.15g}j"
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def _print_table(records: list[ResultRecord], timings: bool, out) -> None:
    for r in records:
        line = f"{r.label:<24} {_fmt(r.value)}"
        if r.oracle is not None:
            line += f"  oracle {_fmt(r.oracle)}  dev {r.deviation:.3e}"
        if r.status != "OK":
            line += f"  [{r.status}]"
        if "note" in r.extra:
            line += f"  {r.extra['note']}"
        if timings and r.wall_time is not None:
            line += f"  {r.wall_time:.3f}s"
        print(line, file=out)


def _error_exit(args, kind: str, exc: Exception, code: int) -> int:
    doc = {"command": getattr(args, "command", None), "error": {"type": kind, "message": str(exc)}, "exit_code": code}
    if getattr(args, "json", False):
        print(json.dumps(doc, indent=2))
    print(f"dwbc: error: {kind}: {exc}", file=sys.stderr)
    return code


def _run_verify(args, cfg: RunConfig) -> int:
    only = set(args.only) if args.only else None
    results = verify_suite(
        cfg.seed, cfg.tolerance, cfg.enumeration_cap, only=only,
        on_result=lambda r: print(r.line(), file=sys.stderr, flush=True),
    )
    doc = summary_document(results, cfg.seed, cfg.tolerance, cfg.enumeration_cap, timings=args.timings)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if doc["status"] == PASS else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        lam = parse_lambda_flag(args.lam) if args.lam is not None else None
        if args.command in ("verify", "count", "ybe-check"):
            # these need no rapidities; the draw only fixes the recorded config
            n = None if args.command == "count" else args.n
            cfg = parse_config(args.config, n=n, seed=args.seed, lam=lam, tolerance=args.tol,
                               enumeration_cap=args.cap, n_default=1)
        else:
            cfg = parse_config(args.config, n=args.n, seed=args.seed, lam=lam, tolerance=args.tol,
                               enumeration_cap=args.cap, require_square=True)
        if args.command == "count" and args.n is None:
            raise UsageError("count needs --n")
        if args.command == "verify":
            return _run_verify(args, cfg)
        records = _DISPATCH[args.command](args, cfg)
    except (ConfigError, UsageError) as exc:
        return _error_exit(args, type(exc).__name__, exc, EXIT_USAGE)
    except (DegenerateRapidities, ZeroPartition) as exc:
        return _error_exit(args, type(exc).__name__, exc, EXIT_DEGENERATE)
    except DWBCError as exc:
        return _error_exit(args, type(exc).__name__, exc, EXIT_USAGE)

    ok = all(r.status in ("OK", PASS) for r in records)
    code = EXIT_OK if ok else EXIT_FAIL
    if args.json:
        doc = {
            "command": args.command,
            "config": cfg.to_json(),
            "records": [r.to_json(args.timings) for r in records],
            "exit_code": code,
        }
        print(json.dumps(doc, indent=2))
    else:
        _print_table(records, args.timings, sys.stdout)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
