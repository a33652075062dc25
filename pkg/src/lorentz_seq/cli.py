"""Command-line interface: ``lorentz-seq {norm,level,dual,constants,check,sweep}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from .constants import DEFAULT_KS, SWEEP_TARGETS, const_A, const_B, const_S, const_zeta_hardy, sharpness_sweep
from .dual import OracleNotConverged, dual_norm, dual_norm_oracle
from .harness import SUITE_GROUPS, SuiteConfig, run_full_suite, suite_passed
from .level import WeightSeq, level_sequence
from .norms import Exponents, lorentz_maximal_norm, lorentz_norm, weighted_lp_norm
from .seq import DISTRIBUTIONS, Seq, decreasing_rearrangement, random_decreasing
from .tails import DEFAULT_TOL

TOL_ENV = "LORENTZ_SEQ_TOL"
FORMATS = ("json", "csv", "text")
SWEEP_COLUMNS = ("K", "lhs", "rhs", "ratio", "target", "gap")
REPORT_COLUMNS = ("check_id", "params", "n_cases", "n_pass", "worst_margin", "n_tight", "asserted", "passed", "error")


class UsageError(Exception):
    """Bad arguments detected after parsing; reported with exit status 2."""


# ------------------------------------------------------------ serialization

def fmt_float(v: float) -> str:
    return format(v, ".17g")


def to_json(obj) -> str:
    """JSON with floats at 17 significant digits; non-finite floats become null."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        text = fmt_float(obj)
        # keep floats distinguishable from integers on reparse
        return text if any(c in text for c in ".en") else text + ".0"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return to_json(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, (dict, list)):
        return to_json(v)
    return "" if v is None else str(v)


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def to_text(obj) -> str:
    if isinstance(obj, list):
        return "\n".join(to_text(o) for o in obj)
    return "\n".join(f"{k}: {_cell(v)}" for k, v in obj.items())


def _emit(obj, fmt: str, columns=None) -> str:
    if fmt == "json":
        return to_json(obj)
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        return to_csv(rows, columns or list(rows[0].keys())).rstrip("\n")
    return to_text(obj)


# -------------------------------------------------------------------- input

def parse_floats(text: str) -> list[float]:
    parts = text.replace(",", " ").split()
    try:
        return [float(t) for t in parts]
    except ValueError as exc:
        raise UsageError(f"could not parse sequence values: {exc}") from None


def parse_gen(spec: str, seed: int) -> Seq:
    """``random:n=50,dist=heavy-tail``."""
    kind, _, rest = spec.partition(":")
    if kind != "random":
        raise UsageError(f"unknown generator {kind!r}; expected 'random:n=...,dist=...'")
    opts = dict(item.split("=", 1) for item in rest.split(",") if "=" in item)
    try:
        n = int(opts.get("n", 50))
    except ValueError:
        raise UsageError("generator n must be an integer") from None
    dist = opts.get("dist", DISTRIBUTIONS[0])
    if dist not in DISTRIBUTIONS:
        raise UsageError(f"unknown dist {dist!r}; expected one of {DISTRIBUTIONS}")
    return random_decreasing(n, seed, dist)


def read_sequence(args) -> Seq:
    given = [v for v in (args.x, args.input, args.gen) if v is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --x, --input, --gen")
    if args.x is not None:
        values = parse_floats(args.x)
    elif args.input is not None:
        try:
            values = parse_floats(Path(args.input).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
    else:
        return parse_gen(args.gen, args.seed)
    if not values:
        raise UsageError("empty sequence")
    try:
        return Seq(values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_K(text: str | None) -> list[int]:
    if text is None:
        return list(DEFAULT_KS)
    try:
        Ks = [int(float(t)) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad K grid {text!r}") from None
    if not Ks or min(Ks) < 1:
        raise UsageError("K grid must be nonempty with K >= 1")
    return Ks


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m for m in missing))


def _exponents(args) -> Exponents:
    _need(args, "p", "s")
    try:
        return Exponents(args.p, args.s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ----------------------------------------------------------------- commands

def cmd_norm(args) -> tuple[int, str]:
    e = _exponents(args)
    x = read_sequence(args)
    a = 0.0 if args.a is None else args.a
    out = {
        "p": e.p, "s": e.s, "a": a,
        "standard": lorentz_norm(x, e),
        "maximal": lorentz_maximal_norm(x, e, args.tol).as_list(),
        "weighted_lp": weighted_lp_norm(x, e.p, a),
        "dual": dual_norm(x, e),
    }
    return 0, _emit(out, args.format)


def cmd_level(args) -> tuple[int, str]:
    x = read_sequence(args)
    if args.alpha is not None:
        alpha = args.alpha
    else:
        e = _exponents(args)
        if not e.p < e.s:
            raise UsageError("the level sequence of the dual norm needs p < s (or pass --alpha)")
        alpha = e.alpha
    try:
        phi = WeightSeq.power(alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.rearrange:
        x = decreasing_rearrangement(x)
    xo, decomp = level_sequence(x, phi)
    segs = [{"M": s.M, "N": s.N, "lam": s.lam} for s in decomp]
    if args.format == "csv":
        rows = [{"n": i + 1, "x": float(v), "level": float(w)} for i, (v, w) in enumerate(zip(x.values, xo.values))]
        return 0, _emit(rows, "csv", ("n", "x", "level"))
    return 0, _emit({"alpha": alpha, "level": xo.tolist(), "segments": segs}, args.format)


def cmd_dual(args) -> tuple[int, str]:
    e = _exponents(args)
    x = read_sequence(args)
    out = {"p": e.p, "s": e.s, "dual": dual_norm(x, e)}
    status = 0
    if args.oracle:
        xs = decreasing_rearrangement(x)
        try:
            val = dual_norm_oracle(xs, e, restarts=args.restarts, tol=args.oracle_tol, seed=args.seed)
            out["oracle_converged"] = True
        except OracleNotConverged as exc:
            val = exc.best
            out["oracle_converged"] = False
            status = 1
        out["oracle"] = val
        out["rel_gap"] = abs(out["dual"] - val) / out["dual"] if out["dual"] else 0.0
    return status, _emit(out, args.format)


def cmd_constants(args) -> tuple[int, str]:
    _need(args, "p")
    p = args.p
    if not p > 1.0:
        raise UsageError("p must exceed 1")
    out: dict = {"p": p}
    if args.a is not None:
        a = args.a
        out["a"] = a
        out["zeta_hardy"] = const_zeta_hardy(p, a, args.tol).as_list() if 0.0 <= a < p - 1.0 else None
        out["S"] = const_S(p, a) if -1.0 < a < 0.0 else None
    if args.s is not None:
        e = _exponents(args)
        out["s"] = e.s
        out["B"] = const_B(e) if e.p <= e.s else None
        out["A"] = const_A(e)
    if args.a is None and args.s is None:
        raise UsageError("constants needs --a and/or --s")
    return 0, _emit(out, args.format)


def cmd_check(args) -> tuple[int, str]:
    only = tuple(g for g in (args.only or "").replace(",", " ").split())
    bad = [g for g in only if g not in SUITE_GROUPS]
    if bad:
        raise UsageError(f"unknown check group(s) {bad}; expected from {SUITE_GROUPS}")
    cfg = SuiteConfig(only=only, tol=args.tol)
    if args.cases is not None:
        cfg.cases_per_point = args.cases
        cfg.holder_pairs = max(1, args.cases // 2)
        cfg.level_cases = max(1, args.cases // 5)
    if args.support is not None:
        cfg.max_support = args.support
    reports = run_full_suite(args.seed, cfg)
    rows = [r.to_dict() for r in reports]
    status = 0 if suite_passed(reports) else 1
    if args.format == "json":
        return status, to_json(rows)
    if args.format == "csv":
        return status, _emit(rows, "csv", REPORT_COLUMNS)
    lines = []
    for r in reports:
        tag = "PASS" if r.passed else ("DATA" if not r.asserted else "FAIL")
        if r.error:
            tag = "ERROR"
        margin = fmt_float(r.worst_margin) if r.n_cases else "-"
        lines.append(f"{tag:5s} {r.check_id} {to_json(r.params)} {r.n_pass}/{r.n_cases} "
                     f"tight={r.n_tight} worst_margin={margin}" + (f" error={r.error}" if r.error else ""))
    return status, "\n".join(lines)


def cmd_sweep(args) -> tuple[int, str]:
    _need(args, "target", "p")
    Ks = parse_K(args.K)
    if args.target in ("hardy_inc", "S_ratio"):
        _need(args, "a")
        params = (args.p, args.a)
    else:
        params = _exponents(args)
    try:
        rows = sharpness_sweep(args.target, params, Ks, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    dicts = [r.as_dict() for r in rows]
    return 0, _emit(dicts, args.format, SWEEP_COLUMNS)


COMMANDS = {
    "norm": cmd_norm, "level": cmd_level, "dual": cmd_dual,
    "constants": cmd_constants, "check": cmd_check, "sweep": cmd_sweep,
}


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None
    return tol


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float)
    common.add_argument("--s", type=float)
    common.add_argument("--a", type=float)
    common.add_argument("--x", help="inline sequence, e.g. 3,2,1")
    common.add_argument("--input", help="file of whitespace/newline separated values")
    common.add_argument("--gen", help="generator, e.g. random:n=50,dist=heavy-tail")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help=f"enclosure tolerance (env {TOL_ENV}, default 1e-12)")
    common.add_argument("--format", choices=FORMATS, default="json")

    parser = argparse.ArgumentParser(prog="lorentz-seq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("norm", parents=[common], help="standard, maximal, weighted and dual norms")
    lv = sub.add_parser("level", parents=[common], help="level sequence and its segments")
    lv.add_argument("--alpha", type=float, help="weight n^-alpha (default 1 - s'/p')")
    lv.add_argument("--rearrange", action="store_true", help="use the nonincreasing rearrangement of x")
    du = sub.add_parser("dual", parents=[common], help="dual norm, optionally against the oracle")
    du.add_argument("--oracle", action="store_true")
    du.add_argument("--restarts", type=int, default=32)
    du.add_argument("--oracle-tol", type=float, default=1e-5)
    sub.add_parser("constants", parents=[common], help="sharp constants for the given exponents")
    ch = sub.add_parser("check", parents=[common], help="run the inequality suite")
    ch.add_argument("--only", help=f"comma list of groups from {','.join(SUITE_GROUPS)}")
    ch.add_argument("--cases", type=int, help="random cases per parameter point")
    ch.add_argument("--support", type=int, help="maximum random support length")
    sw = sub.add_parser("sweep", parents=[common], help="sharpness ratios along u^K")
    sw.add_argument("--target", choices=SWEEP_TARGETS)
    sw.add_argument("--K", help="comma list of K (default 1,2,4,...,2^20)")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.tol is None:
            args.tol = _default_tol()
        if not args.tol > 0:
            raise UsageError("tol must be positive")
        status, text = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"lorentz-seq: error: {exc}", file=stderr)
        return 2
    print(text, file=stdout)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
