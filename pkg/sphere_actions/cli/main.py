#!/usr/bin/env python3
"""
Command-line entry point for sphere_actions.

Usage:
    python -m sphere_actions realizable group.json
    echo '1 0; 1 -1' | python -m sphere_actions canonical-form
    python -m sphere_actions covers S1xS2n --max-index 12 --pretty
    python -m sphere_actions selfcheck

JSON goes to stdout with sorted keys; logs go to stderr.
Exit codes: 0 decided, 1 invalid input or failed selfcheck, 2 unknown.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from ..core.constants import (
    DEFAULT_ACTION_SAMPLES, DEFAULT_MAX_COVER_INDEX, DEFAULT_SEED, DEFAULT_WITNESS_LENGTH,
    EXIT_DECIDED, EXIT_INVALID_INPUT, LOG_FORMAT, WITNESS_LENGTH_CAP, WITNESS_WORD_BUDGET
)
from ..core.exceptions import SphereActionsError
from ..utils.serialization import error_envelope
from .commands import JSON_COMMANDS, TEXT_COMMANDS, CommandResult, cmd_covers
from .selfcheck import run_selfcheck

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true",
                        help="Render a human-readable table instead of JSON")
    common.add_argument("--verbose", action="store_true", help="Log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog="sphere_actions",
        description="Decide realizability of free group actions on even-dimensional "
                    "homotopy spheres, with certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", nargs="?", default="-",
                       help="Input file (default: standard input)")
        return p

    p = with_input("realizable", "Decide whether (theta, phi) is realizable")
    p.add_argument("--max-witness-length", type=int, default=WITNESS_LENGTH_CAP,
                   help=f"Longest witness word searched (default: {WITNESS_LENGTH_CAP})")
    p.add_argument("--word-budget", type=int, default=WITNESS_WORD_BUDGET,
                   help=f"Words examined before giving up (default: {WITNESS_WORD_BUDGET})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed echoed in the output")

    p = with_input("canonical-form", "Conjugate an integral involution to A(k, r, s)")
    p.add_argument("--matrix", default=None, help="Matrix text such as '1 0; 1 -1'")

    with_input("classify-vc", "Classify a virtually cyclic group with orientation bits")

    p = sub.add_parser("covers", parents=[common], help="Finite groups covering a manifold")
    p.add_argument("cover", help="S1xS2n, S1twistS2n, S1xRP2n or RPsharpRP")
    p.add_argument("--max-index", type=int, default=DEFAULT_MAX_COVER_INDEX,
                   help=f"Largest subgroup index (default: {DEFAULT_MAX_COVER_INDEX})")

    with_input("free-product", "Present a free product of twisted groups as one F x| Z2")
    with_input("verify-dyer-scott", "Check a claimed free-factor decomposition of theta")

    p = with_input("verify-action", "Sample the explicit action behind a realization")
    p.add_argument("--samples", type=int, default=DEFAULT_ACTION_SAMPLES)
    p.add_argument("--max-length", type=int, default=DEFAULT_WITNESS_LENGTH)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    sub.add_parser("selfcheck", parents=[common], help="Run every reproduction suite")
    return parser


def configure_logging(level: int) -> None:
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as handle:
        return handle.read()


def _emit(result: CommandResult, pretty: bool) -> int:
    if pretty:
        print(result.text)
    else:
        print(json.dumps(result.payload, sort_keys=True, indent=2))
    return result.exit_code


def _selfcheck(pretty: bool) -> int:
    results = run_selfcheck()
    passed = all(r.passed for r in results)
    payload = {"passed": passed, "suites": [r.to_dict() for r in results]}
    text = "\n".join(f"{'ok  ' if r.passed else 'FAIL'} {r.name} ({r.checked} checked)"
                     for r in results)
    return _emit(CommandResult(payload, EXIT_DECIDED if passed else EXIT_INVALID_INPUT, text),
                 pretty)


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "selfcheck":
        return _selfcheck(args.pretty)
    if args.command == "covers":
        return _emit(cmd_covers(args.cover, args), args.pretty)
    if args.command in TEXT_COMMANDS:
        text = args.matrix if args.matrix is not None else _read_input(args.input)
        return _emit(TEXT_COMMANDS[args.command](text, args), args.pretty)

    raw = _read_input(args.input)
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as e:
        print(json.dumps({"at": "$", "error": f"Invalid JSON: {e.msg}"}, sort_keys=True, indent=2))
        return EXIT_INVALID_INPUT
    return _emit(JSON_COMMANDS[args.command](payload, args), args.pretty)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "selfcheck":
        configure_logging(logging.INFO)
    else:
        configure_logging(logging.DEBUG if args.verbose else logging.WARNING)

    try:
        return dispatch(args)
    except SphereActionsError as e:
        logger.info("Rejected input: %s", e)
        print(json.dumps(error_envelope(e), sort_keys=True, indent=2))
        return EXIT_INVALID_INPUT
    except OSError as e:
        print(json.dumps({"at": "$", "error": str(e)}, sort_keys=True, indent=2))
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
