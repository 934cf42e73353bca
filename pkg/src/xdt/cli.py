"""Command-line entry points: check, encode, and the demo pipeline.

Artifact output goes to stdout; diagnostics go to stderr. Exit codes:
0 clean, 1 diagnostics with at least one error (or a failed demo check),
2 usage errors. XDT_COLOR=never|auto controls diagnostic styling.
"""

from __future__ import annotations

import os
import re
import sys
import warnings
from pathlib import Path

import click

from . import __version__, growlang
from .core import Diagnostic, Program, Severity
from .dsl_parser import ParseFailure, parse_program
from .emitter import RenderConfig, emit_encoded, emit_lowered, emit_program_dsl
from .encoder import encode_compact, encode_naive, lower_extension
from .validator import has_errors, validate_program

_EXPECT_RE = re.compile(r"^\s*--\s*expect:\s*(.+?)\s*$", re.MULTILINE)


def _use_color() -> bool:
    mode = os.environ.get("XDT_COLOR", "auto")
    if mode == "never":
        return False
    return sys.stderr.isatty()


def _report(diagnostics: list[Diagnostic]) -> None:
    styled = _use_color()
    for d in diagnostics:
        text = str(d)
        if styled:
            color = "red" if d.severity is Severity.ERROR else "yellow"
            text = click.style(text, fg=color)
        click.echo(text, err=True)


def _load_program(path: str, partial: bool) -> tuple[Program, list[Diagnostic]]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        program = parse_program(text, file=path)
    except ParseFailure as failure:
        _report(failure.diagnostics)
        raise SystemExit(1)
    return program, validate_program(program, assume_partial=partial)


@click.group()
@click.version_option(__version__, prog_name="xdt")
def main() -> None:
    """Extensible data type declarations and their encodings."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--partial", is_flag=True, help="Treat every extension as partial.")
def check(file: str, partial: bool) -> None:
    """Parse and validate FILE, reporting diagnostics."""
    _, diagnostics = _load_program(file, partial)
    _report(diagnostics)
    raise SystemExit(1 if has_errors(diagnostics) else 0)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--mode",
    type=click.Choice(["compact", "naive"]),
    default="compact",
    show_default=True,
)
@click.option(
    "--backend",
    type=click.Choice(["haskell", "dsl-echo"]),
    default="haskell",
    show_default=True,
)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.option("--partial", is_flag=True, help="Treat every extension as partial.")
def encode(file: str, mode: str, backend: str, output: str | None, partial: bool) -> None:
    """Encode all extensible declarations and lower all extensions in FILE."""
    program, diagnostics = _load_program(file, partial)
    _report(diagnostics)
    if has_errors(diagnostics):
        raise SystemExit(1)
    cfg = RenderConfig(backend=backend)
    if backend == "dsl-echo":
        text = emit_program_dsl(program, cfg)
    else:
        pieces = []
        for decl in program.extensibles:
            if not decl.extensible:
                continue
            encoded = (
                encode_compact(decl, program)
                if mode == "compact"
                else encode_naive(decl, program)
            )
            pieces.append(emit_encoded(encoded, cfg))
        if mode == "compact":
            # Lowering is defined against the compact scheme only.
            for ext in program.extensions:
                pieces.append(emit_lowered(lower_extension(ext, program), cfg))
        text = "\n".join(pieces)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
    raise SystemExit(0)


@main.group()
def demo() -> None:
    """Run the demo language pipeline on a .gl file."""


def _read_demo(file: str) -> tuple[str, growlang.Node]:
    text = Path(file).read_text(encoding="utf-8")
    try:
        tree = growlang.parse_exp(text)
    except growlang.GlParseError as failure:
        _report(failure.diagnostics)
        raise SystemExit(1)
    return text, tree


@demo.command("print")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def demo_print(file: str) -> None:
    """Parse FILE and print it back."""
    _, tree = _read_demo(file)
    click.echo(growlang.print_exp(tree, growlang.DEFAULT_HANDLERS))
    raise SystemExit(0)


@demo.command("infer")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def demo_infer(file: str) -> None:
    """Infer FILE's type; print the decorated tree and its type."""
    text, tree = _read_demo(file)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", growlang.DefaultedTypeWarning)
        try:
            decorated, ty = growlang.infer_exp(tree)
        except growlang.TypeInferenceError as err:
            click.echo(growlang.format_type_error(err, text), err=True)
            raise SystemExit(1)
    click.echo(growlang.print_exp(decorated, growlang.DEFAULT_HANDLERS))
    click.echo(growlang.print_ty(ty, growlang.DEFAULT_HANDLERS))
    raise SystemExit(0)


@demo.command("check")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def demo_check(file: str) -> None:
    """Check FILE against the type in its `-- expect: TYPE` header."""
    text = Path(file).read_text(encoding="utf-8")
    match = _EXPECT_RE.search(text)
    if match is None:
        click.echo("error: no '-- expect: TYPE' header in file", err=True)
        raise SystemExit(2)
    try:
        goal = growlang.parse_ty(match.group(1))
    except growlang.GlParseError as failure:
        _report(failure.diagnostics)
        raise SystemExit(2)
    _, tree = _read_demo(file)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", growlang.DefaultedTypeWarning)
        try:
            decorated, _ = growlang.infer_exp(tree)
        except growlang.TypeInferenceError as err:
            click.echo(growlang.format_type_error(err, text), err=True)
            raise SystemExit(1)
    if growlang.chk_exp(decorated, [], goal):
        click.echo("OK")
        raise SystemExit(0)
    click.echo(
        "check failed: term does not have type "
        + growlang.print_ty(goal, growlang.DEFAULT_HANDLERS),
        err=True,
    )
    raise SystemExit(1)


if __name__ == "__main__":
    main()
