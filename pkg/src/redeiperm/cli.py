"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 predicate false on construct,
64 usage error, 65 data or golden mismatch, 69 refused (field too large).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import checks
from .construct import (
    ConstructionParams,
    TableCell,
    brute_force_is_permutation,
    build_poly,
    generate_table,
    qualifying_n,
    render_reason,
    theorem_predicate,
)
from .errors import RedeiError, RefusedTooLarge
from .field import make_context
from .golden import render_table_text

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PREDICATE_FALSE = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_REFUSED = 69

DEFAULT_CAP = 1 << 20
CAP_ENV = "REDEI_EXHAUST_CAP"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def exhaust_cap(flag: Optional[int] = None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_CAP


def require_within_cap(t: int, cap: int) -> None:
    size = 1 << (2 * t)
    if size > cap:
        raise RefusedTooLarge(
            f"GF(2^{2 * t}) has {size} elements, above the exhaustion cap {cap}; "
            f"raise it with --cap or {CAP_ENV}"
        )


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="redeiperm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_args(sp):
        sp.add_argument("--t", type=int, required=True, help="odd extension degree, q = 2^t")
        sp.add_argument("--modulus", help="irreducible modulus as a bit string, e.g. 1011")

    def param_args(sp):
        field_args(sp)
        sp.add_argument("--n", type=_positive, required=True)
        sp.add_argument("--m", type=_positive, required=True)
        sp.add_argument("--family", choices=("M", "N"), default="M")

    sp = sub.add_parser("construct", help="build one polynomial and evaluate the theorem predicate")
    param_args(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("verify", help="compare the predicate with a brute-force permutation check")
    param_args(sp)
    sp.add_argument("--cap", type=int, help=f"max field size to exhaust (default {DEFAULT_CAP})")

    sp = sub.add_parser("table", help="emit a table of constructed polynomials")
    field_args(sp)
    sp.add_argument("--family", choices=("M", "N"), default="M")
    sp.add_argument("--n-max", type=_positive)
    sp.add_argument("--m-max", type=_positive)
    sp.add_argument("--n-values", type=_int_list, help="explicit n values, comma separated")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--out", help="output file (default stdout)")

    sp = sub.add_parser("lemmas", help="run the lemma-level identity suites")
    field_args(sp)
    sp.add_argument("--n-max", type=_positive)
    sp.add_argument("--cap", type=int)

    sub.add_parser("selftest", help="run every invariant suite at t = 3 and the golden tables")
    return p


def cmd_construct(args, out) -> int:
    ctx = make_context(args.t, args.modulus)
    params = ConstructionParams(args.t, args.n, args.m, args.family)
    verdict = theorem_predicate(params)
    poly = build_poly(ctx, params)
    if args.format == "json":
        cell = TableCell(params, poly=poly if verdict else None, reason=verdict.reason)
        d = cell.to_dict()
        if not verdict:
            d["poly"] = str(poly)
            d["exponents"] = poly.exponents
        print(json.dumps(d), file=out)
    else:
        print(poly, file=out)
        if verdict:
            print("predicate: permutes", file=out)
        else:
            print(f"excluded: {render_reason(verdict.reason)}", file=out)
    return EXIT_OK if verdict else EXIT_PREDICATE_FALSE


def cmd_verify(args, out) -> int:
    require_within_cap(args.t, exhaust_cap(args.cap))
    ctx = make_context(args.t, args.modulus)
    params = ConstructionParams(args.t, args.n, args.m, args.family)
    pred = theorem_predicate(params).holds
    brute = brute_force_is_permutation(ctx, build_poly(ctx, params))
    agree = pred == brute
    print(f"predicate={str(pred).lower()} bruteforce={str(brute).lower()} agree={str(agree).lower()}", file=out)
    return EXIT_OK if agree else EXIT_DATA


def cmd_table(args, out) -> int:
    ctx = make_context(args.t, args.modulus)
    q = ctx.q
    m_max = args.m_max or q - 1
    if args.n_values:
        ns = sorted(set(args.n_values))
        if args.n_max:
            ns = [n for n in ns if n <= args.n_max]
    else:
        ns = qualifying_n(q, args.family, args.n_max or 3 * (q - 1))
    cells = generate_table(ctx, args.family, ns, range(1, m_max + 1))
    if args.format == "json":
        text = "[\n" + ",\n".join("  " + json.dumps(c.to_dict()) for c in cells) + "\n]\n"
    else:
        text = render_table_text([c.to_dict() for c in cells])
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _report(results, out) -> bool:
    for r in results:
        print(r.line(), file=out)
    return all(r.ok for r in results)


def cmd_lemmas(args, out) -> int:
    ctx = make_context(args.t, args.modulus)
    require_within_cap(args.t, exhaust_cap(args.cap))
    n_max = args.n_max or 3 * (ctx.q - 1)
    ok = _report(checks.lemma_suite(ctx, n_max), out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args, out) -> int:
    ctx = make_context(3)
    results = checks.selftest_suite(ctx)
    golden_results, notes = checks.check_golden_tables()
    failed = [r for r in results + golden_results if not r.ok]
    for r in failed:
        print(r.line(), file=out)
    for note in notes:
        print(f"note: {note}", file=out)
    if failed:
        print(f"FAILED: {len(failed)} of {len(results) + len(golden_results)} checks", file=out)
        return EXIT_DATA if any(r in golden_results for r in failed) else EXIT_FAIL
    print(f"OK: {len(results) + len(golden_results)} checks passed", file=out)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "table": cmd_table,
    "lemmas": cmd_lemmas,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(e, file=err)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except RefusedTooLarge as e:
        print(f"error: RefusedTooLarge: {e}", file=err)
        return EXIT_REFUSED
    except UsageError as e:
        print(e, file=err)
        return EXIT_USAGE
    except RedeiError as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=err)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
