"""Command-line interface.

Four subcommands:

* ``verify``     -- run certified checks and report pass/fail per check.
* ``classify``   -- decide equivalence for one pair of rational parameters.
* ``grid``       -- classify every pair from a list of parameter values and
                    compare each verdict with the closed-form criterion.
* ``enumerate``  -- list the negative curves found on the five-point blow-up.

Exit codes: 0 when everything asked for passed, 1 when a check or a grid
comparison failed, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import checks, classification, intersection
from .errors import ForbiddenParameter
from .reports import ERROR, FAIL, PASS

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

DEFAULT_GRID_VALUES = (
    Fraction(-3), Fraction(-2), Fraction(-1, 2), Fraction(-1, 3),
    Fraction(1, 3), Fraction(2, 5), Fraction(1, 2), Fraction(2),
    Fraction(5, 2), Fraction(3),
)


def parameter(text: str):
    """Parse --alpha/--beta: an exact rational or the word ``symbolic``."""
    text = text.strip()
    if text == "symbolic":
        return text
    if not _RATIONAL_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an integer, a fraction like 3/4, or 'symbolic', got {text!r}"
        )
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def rational_parameter(text: str) -> Fraction:
    value = parameter(text)
    if isinstance(value, str):
        raise argparse.ArgumentTypeError(
            "this command needs an exact rational value, not 'symbolic'"
        )
    return value


def value_list(text: str) -> tuple[Fraction, ...]:
    parts = [piece for piece in text.split(",") if piece.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty value list")
    return tuple(rational_parameter(piece) for piece in parts)


def _dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _tool_version() -> str:
    from . import __version__

    return __version__


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    selected = [c for c in args.checks if c.strip().lower() != "all"]
    ids = selected or None
    suite = checks.run_suite(
        ids, alpha=args.alpha, beta=args.beta, d_max=args.d_max,
        jobs=args.jobs, version=_tool_version(),
    )
    if args.format == "json":
        print(_dump(suite.to_json()))
    else:
        width = max(len(e.check_id) for e in suite.entries)
        for entry in suite.sorted_entries():
            print(f"{entry.check_id:<{width}}  {entry.status:<5}  {entry.elapsed_ms} ms")
            if entry.status != PASS:
                for item in entry.witness.get("items", []):
                    if item["status"] != PASS:
                        print(f"  {item['status']}: {item['claim_id']}")
        counts = suite.summary()
        print(f"summary: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[ERROR]} error")
    return suite.exit_code


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _cmd_classify(args) -> int:
    result = classification.classify(args.alpha, args.beta, d_max=args.d_max)
    criterion = classification.equivalence_criterion(args.alpha, args.beta)
    payload = result.to_json()
    payload["criterion"] = criterion
    payload["agrees_with_criterion"] = result.equivalent == criterion
    if args.format == "json":
        print(_dump(payload))
    else:
        verdict = "equivalent" if result.equivalent else "not equivalent"
        print(f"alpha={args.alpha} beta={args.beta}: {verdict}")
        print(f"admissible matchings: {result.matchings_admissible}")
        if result.witness is not None:
            (p, q), (r, s) = result.witness.matrix
            print(f"witness matrix: [[{p}, {q}], [{r}, {s}]], scalar {result.witness.scalar}")
        print(f"closed-form criterion agrees: {payload['agrees_with_criterion']}")
    return 0


# ---------------------------------------------------------------------------
# grid
# ---------------------------------------------------------------------------


def run_grid(values, d_max: int = 6) -> dict:
    """Classify every ordered pair of values; flag verdict/criterion splits."""
    values = sorted(set(values))
    graphs = {v: classification.incidence_graph(v, d_max=d_max) for v in values}
    cells = []
    disagreements = 0
    for a in values:
        for b in values:
            result = classification.classify(
                a, b, d_max=d_max, src_graph=graphs[a], dst_graph=graphs[b]
            )
            criterion = classification.equivalence_criterion(a, b)
            agrees = result.equivalent == criterion
            disagreements += 0 if agrees else 1
            cells.append({
                "alpha": str(a),
                "beta": str(b),
                "equivalent": result.equivalent,
                "criterion": criterion,
                "agrees": agrees,
                "witness": None if result.witness is None
                else result.witness.to_json(),
            })
    return {
        "tool": "realforms",
        "version": _tool_version(),
        "d_max": d_max,
        "values": [str(v) for v in values],
        "cells": cells,
        "pairs": len(cells),
        "disagreements": disagreements,
        "exit_code": 0 if disagreements == 0 else 1,
    }


def _cmd_grid(args) -> int:
    values = args.values if args.values else DEFAULT_GRID_VALUES
    payload = run_grid(values, d_max=args.d_max)
    if args.format == "json":
        print(_dump(payload))
    else:
        values = payload["values"]
        width = max(len(v) for v in values)
        print(" " * (width + 2) + " ".join(f"{v:>{width}}" for v in values))
        it = iter(payload["cells"])
        for a in values:
            row = []
            for _ in values:
                cell = next(it)
                mark = "+" if cell["equivalent"] else "."
                if not cell["agrees"]:
                    mark = "!"
                row.append(f"{mark:>{width}}")
            print(f"{a:>{width}}: " + " ".join(row))
        print(f"pairs: {payload['pairs']}, disagreements: {payload['disagreements']}")
    return payload["exit_code"]


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def _cmd_enumerate(args) -> int:
    result = intersection.enumerate_negative_classes(args.alpha, d_max=args.d_max)
    if args.format == "json":
        payload = result.to_json()
        payload["tool"] = "realforms"
        payload["version"] = _tool_version()
        print(_dump(payload))
    else:
        for record in result.vertices():
            print(f"{record.label:<28} {record.cls}  {record.kind}")
        print(f"scanned {result.candidates_scanned} classes up to degree {result.d_max}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realforms",
        description="Exact verification of a family of real surface structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run certified checks")
    verify.add_argument(
        "checks", nargs="*", metavar="CHECK",
        help="check ids to run, or 'all' (default: all). "
             f"Known: {', '.join(checks.available_checks())}",
    )
    verify.add_argument("--alpha", type=parameter, default=None,
                        help="first parameter (rational or 'symbolic'; default 2)")
    verify.add_argument("--beta", type=parameter, default=None,
                        help="second parameter (rational or 'symbolic'; default 3)")
    verify.add_argument("--d-max", type=int, default=None,
                        help="degree bound for the curve sweep (default 6)")
    verify.add_argument("--jobs", type=int, default=1,
                        help="run checks in this many threads")
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.set_defaults(func=_cmd_verify)

    classify = sub.add_parser("classify", help="decide equivalence of one pair")
    classify.add_argument("alpha", type=rational_parameter,
                          help="exact rational, e.g. 2 or 1/2")
    classify.add_argument("beta", type=rational_parameter,
                          help="exact rational, e.g. 2 or 1/2")
    classify.add_argument("--d-max", type=int, default=6)
    classify.add_argument("--format", choices=("json", "text"), default="json")
    classify.set_defaults(func=_cmd_classify)

    grid = sub.add_parser("grid", help="classify all pairs from a value list")
    grid.add_argument("--values", type=value_list, default=None,
                      help="comma-separated rationals (default: a ten-value spread)")
    grid.add_argument("--d-max", type=int, default=6)
    grid.add_argument("--format", choices=("json", "text"), default="json")
    grid.set_defaults(func=_cmd_grid)

    enum = sub.add_parser("enumerate", help="list negative curves on the blow-up")
    enum.add_argument("--alpha", type=parameter, default=Fraction(2))
    enum.add_argument("--d-max", type=int, default=6)
    enum.add_argument("--format", choices=("json", "text"), default="json")
    enum.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except ForbiddenParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
