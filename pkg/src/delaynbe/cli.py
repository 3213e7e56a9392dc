"""Command-line driver.

    delaynbe normalize [FILE] [--free NAME:TYPE ...] [--fuel N]
                       [--format text|json] [--show-steps] [--show-de-bruijn]
    delaynbe check [FILE] [--free NAME:TYPE ...]
    delaynbe steps [FILE] [--free NAME:TYPE ...] [--fuel N]

Reads the term from FILE, or stdin when FILE is absent or ``-``.

Exit status: 0 success, 1 parse/scope/type error, 2 fuel exhausted,
64 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from ._deep import run_deep
from .delay import DEFAULT_FUEL
from .frontend import FrontendError, parse, parse_type, print_nf, print_nf_de_bruijn, resolve
from .nbe import FuelExhausted, normalize
from .syntax import Ty, TypingError, infer_type

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FUEL = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    source: str = "-"
    free: list[tuple[str, Ty]] = field(default_factory=list)
    fuel: int = DEFAULT_FUEL
    output: str = "text"
    show_steps: bool = False
    show_de_bruijn: bool = False


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _declaration(text: str) -> tuple[str, Ty]:
    name, sep, ty = text.partition(":")
    name = name.strip()
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected NAME:TYPE, got {text!r}")
    try:
        return name, parse_type(ty)
    except FrontendError as exc:
        raise argparse.ArgumentTypeError(f"bad type in {text!r}: {exc}") from None


def _fuel(text: str) -> int:
    try:
        fuel = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"fuel must be an integer, got {text!r}") from None
    if fuel < 0:
        raise argparse.ArgumentTypeError("fuel must be non-negative")
    return fuel


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="delaynbe",
        description="Normalize simply-typed lambda terms by evaluation in the delay monad.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for name, help_ in [
        ("normalize", "print the eta-long beta-normal form"),
        ("check", "print the type of the term"),
        ("steps", "print only the delay-step report"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("source", nargs="?", default="-", help="input file (default: stdin)")
        p.add_argument(
            "--free",
            action="append",
            type=_declaration,
            default=[],
            metavar="NAME:TYPE",
            help="declare a free variable; repeat, outermost first",
        )
        p.add_argument("--fuel", type=_fuel, default=DEFAULT_FUEL)
        p.add_argument("--format", dest="output", choices=["text", "json"], default="text")
        p.add_argument("--show-steps", action="store_true")
        p.add_argument("--show-de-bruijn", action="store_true")
    return parser


def parse_args(argv: Sequence[str]) -> CliConfig:
    ns = build_parser().parse_args(list(argv))
    return CliConfig(
        command=ns.command,
        source=ns.source,
        free=ns.free,
        fuel=ns.fuel,
        output=ns.output,
        show_steps=ns.show_steps,
        show_de_bruijn=ns.show_de_bruijn,
    )


def _read_source(config: CliConfig, stdin: TextIO) -> str:
    if config.source == "-":
        return stdin.read()
    try:
        with open(config.source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {config.source}: {exc.strerror}") from None


def run(config: CliConfig, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    text = _read_source(config, stdin)
    try:
        checked = infer_type([ty for _, ty in config.free], resolve(config.free, parse(text)))
    except (FrontendError, TypingError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR

    type_text = str(checked.ty)
    if config.command == "check":
        if config.output == "json":
            print(json.dumps({"type": type_text}, sort_keys=True), file=stdout)
        else:
            print(type_text, file=stdout)
        return EXIT_OK

    try:
        report = normalize(checked, config.fuel)
    except FuelExhausted as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_FUEL

    names = [name for name, _ in config.free]
    normal = print_nf(names, report.normal, checked.ty)
    step_line = (
        f"steps: eval={report.eval_steps} readback={report.readback_steps} "
        f"total={report.total_steps}"
    )

    if config.output == "json":
        obj = {
            "normal": normal,
            "type": type_text,
            "evalSteps": report.eval_steps,
            "readbackSteps": report.readback_steps,
            "totalSteps": report.total_steps,
        }
        if config.show_de_bruijn:
            obj["deBruijn"] = print_nf_de_bruijn(report.normal, checked.ty)
        print(json.dumps(obj, sort_keys=True), file=stdout)
    elif config.command == "steps":
        print(step_line, file=stdout)
    else:
        print(normal, file=stdout)
        if config.show_de_bruijn:
            print(print_nf_de_bruijn(report.normal, checked.ty), file=stdout)
        if config.show_steps:
            print(step_line, file=stdout)
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
        return run_deep(run, config, stdin, stdout, stderr)
    except UsageError as exc:
        print(f"delaynbe: error: {exc}", file=stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
