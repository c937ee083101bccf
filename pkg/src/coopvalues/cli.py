"""Command-line interface: ``coopvalues {compute,audit,demo,quotient}``.

Exit codes: 0 on success or a passing audit, 1 when an audit finds
failures, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import ROUND_DOWN, Decimal
from typing import Sequence

import numpy as np

from .audit import MATCHED, THEOREMS, ArityMismatch, audit
from .game import CSGame, GameError, quotient_game
from .gamefile import GameFileError, builtin_game, load_game_file, serialize_game
from .values import DISPLAY_NAMES, ValueKind, compute

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

POINT_KINDS = [k for k in ValueKind if not k.coalitional]
COALITIONAL_KINDS = [k for k in ValueKind if k.coalitional]


def truncate(x: float, places: int = 4) -> str:
    """Truncate toward zero at ``places`` decimals and drop trailing zeros.

    Payoffs are first rounded at 1e-9 so that float noise such as
    ``49.99999999999999`` prints as ``50`` rather than ``49.9999``.
    """
    d = Decimal(repr(round(float(x), 9))).quantize(
        Decimal(1).scaleb(-places), rounding=ROUND_DOWN
    )
    text = format(d.normalize(), "f")
    return "0" if text in ("-0", "0") else text


def render_table(labels: Sequence[str], columns: dict[str, np.ndarray], caption: str) -> str:
    lines = [caption, " | ".join(["Player", *columns])]
    for i, label in enumerate(labels):
        lines.append(" | ".join([label, *(truncate(col[i]) for col in columns.values())]))
    return "\n".join(lines) + "\n"


def _caption(kinds: Sequence[ValueKind], kind_tag: str | None, name: str) -> str:
    names = ", ".join(DISPLAY_NAMES[k] for k in kinds)
    what = {"cost": "cost shares", "benefit": "payoffs"}.get(kind_tag or "", "allocations")
    return f"{names} {what} for {name}"


def _parse_kinds(text: str | None) -> list[ValueKind]:
    if not text:
        return []
    try:
        return [ValueKind(tag.strip()) for tag in text.split(",") if tag.strip()]
    except ValueError as exc:
        choices = ", ".join(k.value for k in ValueKind)
        raise GameFileError(f"{exc}; choose from {choices}") from None


def cmd_compute(args: argparse.Namespace) -> int:
    gf = load_game_file(args.game)
    if args.all:
        kinds = POINT_KINDS + (COALITIONAL_KINDS if gf.partition else [])
    else:
        kinds = _parse_kinds(args.value)
    if not kinds:
        raise GameFileError("select values with --value or --all")
    if any(k.coalitional for k in kinds) and gf.partition is None:
        raise GameFileError("coalitional values need a 'partition' in the game file")
    columns = {k: compute(k, gf.target) for k in kinds}

    if args.format == "json":
        doc = {
            "players": list(gf.game.labels),
            "values": {str(k): [float(x) for x in col] for k, col in columns.items()},
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        named = {DISPLAY_NAMES[k]: col for k, col in columns.items()}
        sys.stdout.write(render_table(gf.game.labels, named, _caption(kinds, gf.kind, args.game)))
    return EXIT_OK


def cmd_audit(args: argparse.Namespace) -> int:
    kind = ValueKind(args.value)
    if MATCHED.get(kind) != args.theorem and not args.force:
        raise GameFileError(
            f"{kind} is not the value characterized by {args.theorem}; "
            "pass --force to run it as a negative control"
        )
    if args.trials == 0:
        print("warning: zero trials, the audit passes vacuously", file=sys.stderr)
    report = audit(kind, args.theorem, args.trials, args.seed, args.players)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        status = "PASS" if report.passed else "FAIL"
        print(
            f"{status} {kind} vs {args.theorem} ({', '.join(THEOREMS[args.theorem])}): "
            f"{len(report.failures)} failures in {report.trials} trials, "
            f"tolerance {report.tolerance:g}, {report.vacuous} vacuous checks"
        )
        for f in report.failures[:20]:
            print(f"  trial {f.trial} game {f.digest} {f.axiom}: {f.magnitude:.3e}")
        if len(report.failures) > 20:
            print(f"  ... {len(report.failures) - 20} more")
    return EXIT_OK if report.passed else EXIT_FAILED


DEMO_KINDS = [ValueKind.ED, ValueKind.SHAPLEY, ValueKind.BIG_GAMMA]


def cmd_demo(args: argparse.Namespace) -> int:
    for name, title in (("elevator_c", "(N,c)"), ("elevator_d", "(N,d)")):
        gf = builtin_game(name)
        columns = {DISPLAY_NAMES[k]: compute(k, gf.game) for k in DEMO_KINDS}
        caption = f"The Egalitarian value, the Shapley value and Gamma for {title}"
        sys.stdout.write(render_table(gf.game.labels, columns, caption))
        sys.stdout.write("\n")
    return EXIT_OK


def cmd_quotient(args: argparse.Namespace) -> int:
    gf = load_game_file(args.game)
    if gf.partition is None:
        raise GameFileError("the quotient game needs a 'partition' in the game file")
    q = quotient_game(CSGame(gf.game, gf.partition))
    sys.stdout.write(serialize_game(q, kind=gf.kind))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopvalues", description="Values of cooperative TU games."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute values for a game file")
    p.add_argument("--game", required=True, help="path to a JSON game file")
    p.add_argument("--value", help="comma-separated value tags, e.g. ed,shapley,big-gamma")
    p.add_argument("--all", action="store_true", help="every value applicable to the file")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("audit", help="check a value against a theorem's axioms")
    p.add_argument("--value", required=True, choices=[k.value for k in ValueKind])
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS))
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--players", type=int, default=None, help="fixed n (default: cycle 2..7)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="allow unmatched value/theorem pairs")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("demo", help="print the elevator cost-sharing tables")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("quotient", help="emit the quotient game of a game file")
    p.add_argument("--game", required=True)
    p.set_defaults(func=cmd_quotient)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GameError, ArityMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
