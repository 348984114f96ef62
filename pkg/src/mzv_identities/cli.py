"""Command-line front end: ``eval``, ``check`` and ``table``.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 on a
usage, configuration or precondition error (one diagnostic line on stderr).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from .campaign import IDENTITIES, CampaignConfig, run_campaign, summarize
from .hyper import P3F2Params, f32_unit
from .mzv import HalfPolylogs, ZagierIndex, h_lhs, mzv, zeta_int
from .numerics import DEFAULT_BITS, PrecisionContext, bits_for_digits
from .report import REPORT_FIELDS
from .zagier import c_coeffs, c_coeff, h_rhs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 already; keep its message on one line
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_precision(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--prec-bits", type=int, metavar="P", help=f"target precision in bits (default {DEFAULT_BITS})")
    g.add_argument("--digits", type=int, metavar="D", help="target precision in decimal digits")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mzv-identities", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate a single quantity")
    ev.add_argument("subject", choices=("mzv", "zeta", "c-coeff", "h", "f32"))
    ev.add_argument("args", nargs="*", help="subject arguments (integers, decimals or p/q)")
    _add_precision(ev)

    ch = sub.add_parser("check", help="run a seeded verification campaign")
    ch.add_argument("--identities", default=",".join(IDENTITIES),
                    help="comma-separated identity ids (default: all)")
    ch.add_argument("--trials", type=int, default=50, help="draws per sampled identity")
    ch.add_argument("--seed", type=int, default=1)
    ch.add_argument("--max-ab", type=int, default=3, help="enumerate a+b <= MAX_AB for eq1")
    ch.add_argument("--tol", action="append", default=[], metavar="ID=VALUE",
                    help="tolerance override, repeatable")
    ch.add_argument("--jobs", type=int, default=1, help="worker processes")
    fmt = ch.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    _add_precision(ch)

    tb = sub.add_parser("table", help="tabulate both sides of the evaluation formula")
    tb.add_argument("max_ab", type=int)
    _add_precision(tb)
    return parser


def _precision(ns) -> tuple[int, int | None]:
    """(bits, digits to print); digits is None when bits were given."""
    if ns.digits is not None:
        if ns.digits < 1:
            raise UsageError("--digits must be positive")
        return bits_for_digits(ns.digits), ns.digits
    return (ns.prec_bits if ns.prec_bits is not None else DEFAULT_BITS), None


def _context(bits: int) -> PrecisionContext:
    try:
        return PrecisionContext(bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ints(args: Sequence[str], what: str) -> list[int]:
    try:
        return [int(a) for a in args]
    except ValueError:
        raise UsageError(f"{what} expects integer arguments, got {' '.join(args)}") from None


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number {text!r}") from None


def _arity(subject: str, args: Sequence[str], n: int) -> None:
    if len(args) != n:
        raise UsageError(f"eval {subject} takes {n} argument(s), got {len(args)}")


def cmd_eval(ns, out) -> int:
    bits, digits = _precision(ns)
    ctx = _context(bits)
    fmt = lambda v: ctx.decimal(v, digits)  # noqa: E731
    subject, args = ns.subject, ns.args
    if subject == "mzv":
        if not args:
            raise UsageError("eval mzv needs a composition, e.g. `eval mzv 2 3`")
        print(fmt(mzv(_ints(args, subject), ctx)), file=out)
    elif subject == "zeta":
        _arity(subject, args, 1)
        (s,) = _ints(args, subject)
        print(fmt(zeta_int(s, ctx)), file=out)
    elif subject == "c-coeff":
        _arity(subject, args, 3)
        c = c_coeff(*_ints(args, subject))
        print(c, file=out)
    elif subject == "h":
        _arity(subject, args, 2)
        idx = ZagierIndex(*_ints(args, subject))
        ev = HalfPolylogs(ctx, idx.weight)
        lhs, rhs = h_lhs(idx, ctx, ev), h_rhs(idx, ctx, ev)
        print(f"h_lhs {fmt(lhs)}", file=out)
        print(f"h_rhs {fmt(rhs)}", file=out)
        print(f"diff {ctx.mp.nstr(abs(lhs - rhs), 6)}", file=out)
    else:
        _arity(subject, args, 5)
        p = P3F2Params.of(ctx, *(_number(a) for a in args))
        print(fmt(f32_unit(p, ctx)), file=out)
    return EXIT_OK


def _tolerances(items: Sequence[str]) -> dict[str, float]:
    tols = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects ID=VALUE, got {item!r}")
        try:
            tols[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value in {item!r}") from None
    return tols


def config_from_args(ns) -> CampaignConfig:
    bits, _ = _precision(ns)
    identities = tuple(s.strip() for s in ns.identities.split(",") if s.strip())
    config = CampaignConfig(identities=identities, trials=ns.trials, seed=ns.seed, precision_bits=bits,
                            tolerances=_tolerances(ns.tol), output_format=ns.fmt or "text",
                            max_ab=ns.max_ab, jobs=ns.jobs)
    config.validate()
    return config


def _text_line(d: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in d["params"].items())
    verdict = "PASS" if d["pass"] else "FAIL"
    return f"{verdict} {d['identity_id']:<11} {params}  abs_diff={d['abs_diff']} tol={d['tolerance']}"


def cmd_check(ns, out, err) -> int:
    config = config_from_args(ns)
    reports = run_campaign(config)
    rows = [r.to_dict() for r in reports]
    summary = summarize(reports)
    line = f"{summary['passed']}/{summary['total']} checks passed"
    if config.output_format == "json":
        for d in rows:
            print(json.dumps(d), file=out)
        print(line, file=err)
    elif config.output_format == "csv":
        w = csv.DictWriter(out, fieldnames=REPORT_FIELDS, lineterminator="\n")
        w.writeheader()
        for d in rows:
            w.writerow({**d, "params": json.dumps(d["params"]), "pass": str(d["pass"]).lower()})
        print(line, file=err)
    else:
        for d in rows:
            print(_text_line(d), file=out)
        print(line, file=out)
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


def cmd_table(ns, out) -> int:
    if ns.max_ab < 0:
        raise UsageError(f"max_ab must be non-negative, got {ns.max_ab}")
    bits, digits = _precision(ns)
    ctx = _context(bits)
    ev = HalfPolylogs(ctx, 2 * ns.max_ab + 3)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["a", "b", "weight", "H_lhs", "H_rhs", "abs_diff", "c_coeffs"])
    for n in range(ns.max_ab + 1):
        for a in range(n, -1, -1):
            idx = ZagierIndex(a, n - a)
            lhs, rhs = h_lhs(idx, ctx, ev), h_rhs(idx, ctx, ev)
            coeffs = ";".join(str(c) for c in c_coeffs(idx.a, idx.b))
            w.writerow([idx.a, idx.b, idx.weight, ctx.decimal(lhs, digits), ctx.decimal(rhs, digits),
                        ctx.mp.nstr(abs(lhs - rhs), 6), coeffs])
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        if ns.command == "eval":
            return cmd_eval(ns, out)
        if ns.command == "check":
            return cmd_check(ns, out, err)
        return cmd_table(ns, out)
    except (UsageError, ValueError) as exc:
        # IdentityError is a ValueError
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
