"""Command-line front end.

Results go to stdout as compact JSON (or CSV for ``sample --format csv``);
diagnostics go to stderr. Exit status: 0 success, 1 domain error or failed
check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import selftest as selftest_mod
from .asymptotics import classify, ml_subsequence, p_sequence
from .bounds import exact_bound
from .capacity import capacity, capacity_bruteforce
from .choquet import CapacityOracle, invert
from .core import format_clopen, parse_clopen
from .errors import CantorCapError, UsageError
from .measure import parse_measure
from .pi01 import DEFAULT_LEVEL_CAP, Pi01Construction, construct, verify
from .rational import decimal, fmt, parse_rational
from .sampler import SampleConfig, empirical_capacity, empirical_pair_hit, growth_stats

__all__ = ["main", "run", "build_parser"]


def _arg(parse):
    def convert(text):
        try:
            return parse(text)
        except UsageError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    convert.__name__ = parse.__name__.replace("parse_", "")
    return convert


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"UsageError: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cantorcap", description=__doc__.splitlines()[0])
    p.add_argument("--decimal", action="store_true",
                   help="add 12-significant-digit decimal renderings to exact results")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("capacity", help="capacity of a clopen set")
    c.add_argument("--measure", default="regular: 1/3 1/3 1/3")
    c.add_argument("--clopen", type=_arg(parse_clopen), required=True)
    c.add_argument("--height", type=_nonneg)
    c.add_argument("--engine", choices=("dp", "brute"), default="dp")

    c = sub.add_parser("invert", help="reconstruct the branching table from capacity values")
    c.add_argument("--depth", type=_nonneg, required=True)
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--oracle", metavar="FILE", help="lines '<clopen> <value>'")
    src.add_argument("--measure", help="use this spec's capacity as the oracle")

    c = sub.add_parser("iterate", help="pair-intersection probabilities p_1..p_n")
    c.add_argument("--b", type=_arg(parse_rational), required=True)
    c.add_argument("--n", type=_nonneg, required=True)
    c.add_argument("--mode", choices=("exact", "interval"), default="exact")
    c.add_argument("--precision", type=_nonneg, default=128)

    c = sub.add_parser("classify", help="zero/positive capacity regime for symmetric b")
    c.add_argument("--b", type=_arg(parse_rational), required=True)

    c = sub.add_parser("subsequence", help="indices m_n with p_{m_n} < 2^(-2n-1)")
    c.add_argument("--b", type=_arg(parse_rational), required=True)
    c.add_argument("--count", type=_nonneg, required=True)

    c = sub.add_parser("construct", help="constraint levels of a measure-zero, positive-capacity class")
    c.add_argument("--b", type=_arg(parse_rational), required=True)
    c.add_argument("--k", type=_nonneg, required=True)
    c.add_argument("--precision", type=_nonneg, default=128)
    c.add_argument("--level-cap", type=_nonneg, default=DEFAULT_LEVEL_CAP)

    c = sub.add_parser("verify", help="recheck a construction file")
    c.add_argument("--file", required=True)

    c = sub.add_parser("sample", help="Monte Carlo estimates from sampled random closed sets")
    c.add_argument("--measure", required=True)
    c.add_argument("--depth", type=_nonneg, required=True)
    c.add_argument("--trials", type=_nonneg, required=True)
    c.add_argument("--seed", type=_nonneg, required=True)
    c.add_argument("--target", type=_arg(parse_clopen))
    c.add_argument("--format", choices=("json", "csv"), default="json")

    c = sub.add_parser("selftest", help="run the exhaustive oracle-equivalence suites")
    c.add_argument("--suite", choices=sorted(selftest_mod.SUITES))
    return p


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _exact(x, decimals: bool) -> dict:
    out = {"exact": fmt(x)}
    if decimals:
        out["decimal"] = decimal(x)
    return out


def _cmd_capacity(args) -> str:
    q = args.clopen
    if args.engine == "brute":
        height = q.height if args.height is None else args.height
        value = capacity_bruteforce(parse_measure(args.measure), q, height)
    else:
        value = capacity(parse_measure(args.measure), q)
    return _dump(_exact(value, args.decimal))


def _cmd_invert(args) -> str:
    if args.oracle is not None:
        with open(args.oracle) as fh:
            oracle = CapacityOracle.from_text(fh.read())
    else:
        oracle = CapacityOracle.from_spec(parse_measure(args.measure))
    return invert(oracle, args.depth).to_text().rstrip("\n")


def _cmd_iterate(args) -> str:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    values = p_sequence(args.b, args.n, args.mode, args.precision)
    terms = []
    for i, v in enumerate(values, 1):
        bound = exact_bound(v) if args.mode == "exact" else v
        terms.append({"n": i, **bound.to_json(decimals=True)})
    return _dump({"b": fmt(args.b), "mode": args.mode, "p": terms})


def _cmd_classify(args) -> str:
    regime = classify(args.b)
    out = regime.to_json()
    if args.decimal:
        out["g_decimal"] = decimal(regime.g)
        if regime.m_b is not None:
            out["m_b_decimal"] = decimal(regime.m_b)
    return _dump(out)


def _cmd_subsequence(args) -> str:
    return _dump({"b": fmt(args.b), "m": ml_subsequence(args.b, args.count)})


def _cmd_construct(args) -> str:
    result = construct(args.b, args.k, args.precision, args.level_cap)
    return result.dumps().rstrip("\n")


def _cmd_verify(args) -> tuple[str, int]:
    with open(args.file) as fh:
        try:
            construction = Pi01Construction.loads(fh.read())
        except (ValueError, KeyError) as exc:
            raise UsageError(f"malformed construction file: {exc}") from None
    report = verify(construction)
    return _dump(report.to_json()), 0 if report.ok else 1


def _cmd_sample(args) -> str:
    cfg = SampleConfig(parse_measure(args.measure), args.depth, args.trials, args.seed)
    if args.target is not None:
        reports = {"capacity": empirical_capacity(cfg, args.target)}
    else:
        reports = {"pair_hit": empirical_pair_hit(cfg)}
    if args.format == "csv":
        rows = ["quantity," + reports[next(iter(reports))].CSV_HEADER]
        rows += [f"{name},{r.to_csv_row()}" for name, r in reports.items()]
        return "\n".join(rows)
    out = {name: r.to_json() for name, r in reports.items()}
    if args.target is not None:
        out["target"] = format_clopen(args.target)
    elif args.depth >= 4:
        out["growth"] = growth_stats(cfg).to_json()
    return _dump(out)


def _cmd_selftest(args) -> tuple[str, int]:
    results = selftest_mod.run_suites([args.suite] if args.suite else None)
    lines = [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in results]
    return "\n".join(lines), 0 if all(ok for _, ok, _ in results) else 1


_COMMANDS = {
    "capacity": _cmd_capacity,
    "invert": _cmd_invert,
    "iterate": _cmd_iterate,
    "classify": _cmd_classify,
    "subsequence": _cmd_subsequence,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    except CantorCapError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # argument preconditions the parser cannot see (depth ranges etc.)
        print(f"UsageError: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
