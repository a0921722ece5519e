"""Command-line front end: ``run``, ``check-xi``, ``laws``, ``discriminate``.

Exit status is 0 on success, 1 for unreadable or invalid input and 2 when a
checked property fails.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .abstraction import check_xi, discriminate
from .denotational import Denotational
from .generators import random_program
from .laws import run_laws
from .operational import Operational
from .parser import ParseError, parse_program, parse_statement
from .syntax import Calculus, Program, render, render_program
from .traces import TraceSet, render_set, sorted_traces

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    calculus: Optional[str]
    nbar: int = 2
    budget: int = 48
    semantics: str = "both"
    format: str = "text"
    seed: int = 0
    max_depth: int = 2


def _traces_json(p: TraceSet) -> list:
    return [q.to_json() for q in sorted_traces(p)]


def _calculus_for(path: str, cfg: RunConfig) -> Calculus:
    if cfg.calculus is not None:
        return Calculus(cfg.calculus)
    return Calculus.CCSNPLUS if path.endswith(".ccsnp") else Calculus.CCSN


def load(path: str, cfg: RunConfig) -> Program:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_program(text, _calculus_for(path, cfg), cfg.nbar)
    except ParseError as exc:
        raise InputError(f"{path}: {type(exc).__name__}: {exc}") from None


class Report:
    """Collects results and prints them as text lines or one JSON document."""

    def __init__(self, cfg: RunConfig) -> None:
        self.cfg = cfg
        self.results: List[dict] = []
        self.lines: List[str] = []

    def add(self, result: dict, *lines: str) -> None:
        self.results.append(result)
        self.lines.extend(lines)

    def emit(self, out) -> None:
        if self.cfg.format == "json":
            json.dump({"config": asdict(self.cfg), "results": self.results}, out, indent=2)
            out.write("\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


# -- commands ------------------------------------------------------------------------

def cmd_run(args, cfg: RunConfig, report: Report) -> int:
    program = load(args.file, cfg)
    result = {"file": args.file}
    lines = []
    if cfg.semantics in ("op", "both"):
        o = Operational(program).semantics(program.main, cfg.budget)
        result["op"] = _traces_json(o)
        lines.append(f"O = {render_set(o)}")
    if cfg.semantics in ("den", "both"):
        d = Denotational(program).semantics(program.main, cfg.budget)
        result["den"] = _traces_json(d)
        lines.append(f"D = {render_set(d)}")
    report.add(result, *lines)
    return EXIT_OK


def cmd_check_xi(args, cfg: RunConfig, report: Report) -> int:
    if args.file is not None:
        programs = [(args.file, load(args.file, cfg))]
    elif args.random:
        rng = random.Random(cfg.seed)
        calculus = Calculus(cfg.calculus or Calculus.CCSN.value)
        programs = [(f"random#{k}", random_program(rng, calculus, cfg.nbar))
                    for k in range(args.random)]
    else:
        raise InputError("check-xi needs a file or --random N")
    failures = 0
    for name, program in programs:
        verdict = check_xi(program.main, program, cfg.budget)
        entry = {"program": name, "source": render_program(program), **verdict.to_json()}
        if verdict.ok:
            report.add(entry, f"{name}: equal")
        else:
            failures += 1
            report.add(entry, f"{name}: diff at {verdict.witness}",
                       f"  program: {render_program(program)}",
                       f"  xi(O) = {render_set(verdict.left)}",
                       f"  D     = {render_set(verdict.right)}")
    report.lines.append(f"{len(programs) - failures}/{len(programs)} equal")
    return EXIT_PROPERTY if failures else EXIT_OK


def cmd_laws(args, cfg: RunConfig, report: Report) -> int:
    results = run_laws(cfg.seed, args.cases, cfg.nbar, mutate=args.mutate_choice)
    for r in results:
        status = "ok" if r.ok else f"FAILED e.g. {r.example}"
        report.add(r.to_json(), f"{r.name}: {r.cases} cases, {r.failures} failures ({status})")
    return EXIT_OK if all(r.ok for r in results) else EXIT_PROPERTY


def _merge_programs(p1: Program, p2: Program) -> Program:
    decls = dict(p1.decls)
    for name, body in p2.decls.items():
        if name in decls and decls[name] != body:
            raise InputError(f"declaration {name!r} differs between the two programs")
        decls[name] = body
    return Program(p1.main, decls, p1.channels | p2.channels, p1.calculus, p1.nbar)


def cmd_discriminate(args, cfg: RunConfig, report: Report) -> int:
    p1 = load(args.file1, cfg)
    p2 = load(args.file2, cfg)
    if p1.calculus is not p2.calculus:
        raise InputError("the two programs are in different calculi")
    program = _merge_programs(p1, p2)
    verdict = discriminate(p1.main, p2.main, program, cfg.max_depth, cfg.budget)
    entry = verdict.to_json()
    if verdict.verdict == "found":
        report.add(entry, f"found: {render(verdict.witness)}",
                   f"  left  = {render_set(verdict.left)}",
                   f"  right = {render_set(verdict.right)}")
    else:
        report.add(entry, f"not_found up to depth {cfg.max_depth} (inconclusive)")
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--calculus", choices=[c.value for c in Calculus], default=None,
                        help="default: from the file extension (.ccsnp means ccsnplus)")
    common.add_argument("--nbar", type=_positive, default=2)
    common.add_argument("--budget", type=_positive, default=48)
    common.add_argument("--semantics", choices=["op", "den", "both"], default="both")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=_natural, default=0)
    common.add_argument("--max-depth", type=_natural, default=2)

    parser = argparse.ArgumentParser(prog="ccsn", description="Run and compare the two semantics of ccsn and ccsnplus programs.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="print trace sets")
    run.add_argument("file")
    run.set_defaults(handler=cmd_run)

    xi = sub.add_parser("check-xi", parents=[common], help="compare xi(O) with D")
    xi.add_argument("file", nargs="?")
    xi.add_argument("--random", type=_natural, default=0, metavar="N")
    xi.set_defaults(handler=cmd_check_xi)

    laws = sub.add_parser("laws", parents=[common], help="run the law suites")
    laws.add_argument("--cases", type=_positive, default=1000)
    laws.add_argument("--mutate-choice", action="store_true", help=argparse.SUPPRESS)
    laws.set_defaults(handler=cmd_laws)

    disc = sub.add_parser("discriminate", parents=[common], help="search for a separating context")
    disc.add_argument("file1")
    disc.add_argument("file2")
    disc.set_defaults(handler=cmd_discriminate)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.calculus, args.nbar, args.budget, args.semantics, args.format,
                    args.seed, args.max_depth)
    report = Report(cfg)
    try:
        status = args.handler(args, cfg, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report.emit(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
