"""Command-line driver: ``normcause --builtin b21``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import crashkb
from .engine import (
    ANOMALY_FOUND,
    DEFAULT_MAX_EXTENSIONS,
    NO_ANOMALY,
    EngineError,
    run_strata,
)
from .explain import collect_anomalies, render_report
from .kbformat import KbError, parse_rulebase, parse_scenario, validate_crossrefs

EXIT_ANOMALY = 0
EXIT_NO_ANOMALY = 1
EXIT_INPUT = 2
EXIT_ENGINE = 3


class _InputError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="normcause",
        description="Find the basic anomaly (violated norm) behind a crash scenario.",
    )
    p.add_argument("--rules", metavar="FILE", help="rule base (.nrk); default: shipped crash-norms base")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--scenario", metavar="FILE", help="scenario file (.scn)")
    src.add_argument("--builtin", metavar="NAME", choices=crashkb.SCENARIO_NAMES, help="bundled scenario")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true", help="include the derivation tree")
    p.add_argument("--all-extensions", action="store_true", help="enumerate every extension")
    p.add_argument("--no-strata", action="store_true", help="single global fixpoint instead of layer strata")
    p.add_argument("--max-extensions", type=int, default=DEFAULT_MAX_EXTENSIONS, metavar="N")
    p.add_argument("--check", action="store_true", help="parse and validate inputs only")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _InputError(f"error: cannot read {path}: {exc}") from None


def _load(args):
    if args.rules:
        source = args.rules
        try:
            rb = parse_rulebase(_read(args.rules))
        except KbError as exc:
            raise _InputError(exc.format(source)) from None
    else:
        rb = crashkb.builtin_rulebase()
    scenario = None
    if args.scenario or args.builtin:
        source = args.scenario or f"<builtin:{args.builtin}>"
        text = _read(args.scenario) if args.scenario else crashkb.scenario_text(args.builtin)
        try:
            scenario = parse_scenario(text)
        except KbError as exc:
            raise _InputError(exc.format(source)) from None
        diags = validate_crossrefs(rb, scenario)
        if diags:
            raise _InputError("\n".join(d.format(source) for d in diags))
    return rb, scenario


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if not args.check and not (args.scenario or args.builtin):
        print("error: one of --scenario or --builtin is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        rb, scenario = _load(args)
    except _InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    if args.check:
        print("ok")
        return 0

    try:
        result = run_strata(
            rb,
            scenario,
            strata=not args.no_strata,
            all_extensions=args.all_extensions,
            max_extensions=args.max_extensions,
        )
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENGINE

    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    reports = collect_anomalies(result)
    out = render_report(result, reports, args.format, trace=args.trace, per_extension=args.all_extensions)
    if result.error and args.format == "text":
        print(f"error: {result.error}", file=sys.stderr)
    else:
        sys.stdout.write(out)
    if result.status == ANOMALY_FOUND:
        return EXIT_ANOMALY
    if result.status == NO_ANOMALY:
        return EXIT_NO_ANOMALY
    return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
