"""Command-line front end: ``quasihopf verify|qdim|integrals``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import presentation_from_json
from .errors import ParseError, QuasiHopfError
from .gallery import example
from .reports import STAGES, build_report, dumps

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="quasihopf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "validate the axioms and run the identity suite"),
        ("qdim", "quantum dimension of H and D(H) by three routes"),
        ("integrals", "integrals, cointegrals, trace formula and rank formula"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", help="presentation JSON file")
        p.add_argument("--example", help="gallery name, e.g. group:Z2, dual-omega:Z3:1, dpr:Z2:1, sweedler")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for random endomorphisms")
        p.add_argument("--chi-trials", type=int, default=20, help="number of random endomorphisms")
        p.add_argument("--stage", help=f"comma-separated subset of: {', '.join(STAGES[name])}")
    return parser.parse_args(argv)


def load_target(args):
    if (args.file is None) == (args.example is None):
        raise ParseError("give exactly one of FILE or --example")
    if args.example is not None:
        return example(args.example), {"example": args.example}
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return presentation_from_json(text, name=path.stem), {"file": path.name}


def parse_stages(command: str, text):
    if text is None:
        return None
    stages = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in stages if s not in STAGES[command]]
    if unknown or not stages:
        raise ParseError(f"unknown stage(s) for {command}: {', '.join(unknown) or '(none)'}")
    return stages


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        if args.chi_trials < 0:
            raise ParseError("--chi-trials must be non-negative")
        stages = parse_stages(args.command, args.stage)
        target, descriptor = load_target(args)
    except (ParseError, QuasiHopfError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    report = build_report(args.command, target, descriptor, stages, seed=args.seed, trials=args.chi_trials)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
