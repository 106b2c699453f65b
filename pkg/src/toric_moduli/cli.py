"""``toric-moduli`` command line interface."""

from __future__ import annotations

import argparse
import difflib
import logging
import sys
from pathlib import Path

from .polytope import EmptyPolytopeError
from .problem import InputError, load_problem
from .report import (
    OK,
    VALIDATION,
    Analysis,
    build_report,
    to_json,
    to_table,
)

log = logging.getLogger("toric_moduli")

COMMANDS = {
    "analyze": ("polytope", "fine_interior", "canonical_closure", "roots", "polynomial", "kernel", "moduli", "subfamily"),
    "fine-interior": ("fine_interior",),
    "canonical-closure": ("canonical_closure",),
    "support": ("support",),
    "roots": ("roots",),
    "kernel": ("polynomial", "kernel"),
    "moduli": ("polynomial", "moduli"),
    "subfamily": ("polynomial", "subfamily"),
    "lattice-points": ("lattice_points",),
    "facets": ("polytope",),
}


def run_analysis(input_path, command: str = "analyze", variant: str = "family", scale: int = 1,
                 seed: int | None = None, coeff_range: int | None = None, fmt: str = "json") -> tuple[str, int]:
    """Run one subcommand and return (rendered report, exit code)."""
    problem = load_problem(input_path)
    analysis = Analysis(problem, variant=variant, scale=scale, seed=seed, coeff_range=coeff_range)
    sections = list(COMMANDS[command])
    if command == "analyze" and problem.subfamily is None:
        sections.remove("subfamily")
    report, code = build_report(analysis, sections)
    text = to_table(report) if fmt == "table" else to_json(report)
    return text, code


def run_corpus(corpus_dir, out=None) -> int:
    """Run every case of a golden corpus; nonzero exit on any mismatch.

    A case is a directory holding ``input.json`` and ``expected.json`` (the
    ``analyze`` report).  Each case is run at candidate scales 1 and 2 and
    both outputs must match the expected bytes.
    """
    out = out or sys.stdout
    root = Path(corpus_dir)
    if not root.is_dir():
        print(f"corpus directory {root} not found", file=sys.stderr)
        return VALIDATION
    cases = sorted(p for p in root.iterdir() if p.is_dir())
    if not cases:
        print(f"warning: corpus {root} is empty", file=sys.stderr)
        print("0 cases, 0 failed", file=out)
        return OK
    failed = 0
    for case in cases:
        inp, exp = case / "input.json", case / "expected.json"
        missing = [p.name for p in (inp, exp) if not p.is_file()]
        if missing:
            print(f"FAIL {case.name}: missing {', '.join(missing)}", file=out)
            failed += 1
            continue
        expected = exp.read_text()
        ok = True
        for scale in (1, 2):
            try:
                got, _ = run_analysis(inp, scale=scale)
            except (InputError, EmptyPolytopeError) as exc:
                print(f"FAIL {case.name} (scale {scale}): {exc}", file=out)
                ok = False
                break
            if got != expected:
                diff = difflib.unified_diff(expected.splitlines(True), got.splitlines(True),
                                            f"{case.name}/expected.json", f"{case.name}/actual (scale {scale})")
                print(f"FAIL {case.name} (scale {scale})", file=out)
                out.writelines(diff)
                ok = False
                break
        if ok:
            print(f"PASS {case.name}", file=out)
        else:
            failed += 1
    print(f"{len(cases)} cases, {failed} failed", file=out)
    return 1 if failed else OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-moduli", description="Fine interiors, canonical closures, Demazure roots and Kodaira-Spencer kernels of lattice polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="problem JSON file")
        p.add_argument("--map", dest="variant", choices=("ambient", "family"), default="family")
        p.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
        p.add_argument("--candidate-scale", dest="scale", type=int, default=1)
        p.add_argument("--seed", type=int, default=None, help="override the generic-coefficient seed")
        p.add_argument("--range", dest="coeff_range", type=int, default=None, help="override the generic-coefficient range")
    c = sub.add_parser("corpus")
    c.add_argument("corpus_dir")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = make_parser().parse_args(argv)
    if args.command == "corpus":
        return run_corpus(args.corpus_dir)
    if args.scale < 1:
        print("error: --candidate-scale must be >= 1", file=sys.stderr)
        return VALIDATION
    if args.coeff_range is not None and args.coeff_range < 1:
        print("error: --range must be >= 1", file=sys.stderr)
        return VALIDATION
    try:
        text, code = run_analysis(args.input, args.command, args.variant, args.scale, args.seed, args.coeff_range, args.fmt)
    except (InputError, EmptyPolytopeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION
    sys.stdout.write(text)
    if code != OK:
        log.warning("some sections were refused (exit code %d)", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
