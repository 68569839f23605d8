"""Command line: parse inputs, run checks, print reports and renderings.

Every subcommand exits with :class:`ExitCode`: 0 when the check holds, 1 when
it is refuted (the witness is printed) and 2 on usage, parse or typing errors.
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import click
from pydantic import ValidationError

from kctapes.base_model import KCBaseModel
from kctapes.calculus import check_cr, parse_cr
from kctapes.encoding import encode_cmd
from kctapes.evaluator import check_theory, evaluate
from kctapes.exceptions import KCTapesException
from kctapes.exit_codes import EXIT_DESCRIPTIONS, ExitCode
from kctapes.formats import load_inequality, load_interpretation, load_signature, load_theory
from kctapes.laws import SUITES, run_suite
from kctapes.logics import Triple, check_quadruple, check_triple
from kctapes.options import DEFAULT_SEED, LawOptions, SearchOptions
from kctapes.program import ProgramSignature
from kctapes.program_parser import parse_context, parse_program, parse_triple
from kctapes.render import render_dot, render_text
from kctapes.reports import CheckReport, RelationReport, SuiteReport, TermReport, TypeReport
from kctapes.search import refute
from kctapes.sexpr import dump, parse_tape
from kctapes.terms import typecheck

_LOGGER = logging.getLogger(__name__)

_PATH = click.Path(exists=True, dir_okay=False, path_type=Path)


@dataclass(frozen=True, slots=True)
class _Settings:
    output: str


def _emit(ctx: click.Context, report: KCBaseModel, text: str) -> None:
    settings: _Settings = ctx.find_object(_Settings) or _Settings("text")
    click.echo(report.model_dump_json(indent=2) if settings.output == "json" else text)


def _check_text(report: CheckReport) -> str:
    if report.holds:
        lines = ["holds" + (f": {report.detail}" if report.detail else "")]
    else:
        assert report.witness is not None
        witness = report.witness
        lines = [f"fails: {witness.law}"]
        if witness.source is not None:
            lines.append(f"  witness: {witness.source} ↦ {witness.target}")
        lines.extend(f"  {key} = {value}" for key, value in witness.bindings.items())
    if report.seed is not None:
        lines.append(f"seed: {report.seed}")
    return "\n".join(lines)


def _verdict(ctx: click.Context, report: CheckReport) -> int:
    _emit(ctx, report, _check_text(report))
    return ExitCode.OK if report.holds else ExitCode.REFUTED


def _suite_text(report: SuiteReport) -> str:
    status = "ok" if report.holds else f"{len(report.failures)} failing laws"
    lines = [f"{report.suite}: {report.checked} checks, {status} (seed {report.seed})"]
    for witness in report.failures:
        lines.append(f"  fails: {witness.law}")
        lines.extend(f"    {key} = {value}" for key, value in witness.bindings.items())
    return "\n".join(lines)


_MAX_SIZE = click.option("--max-size", default=2, show_default=True, type=click.IntRange(1))
_BUDGET = click.option("--budget", default=100_000, show_default=True, type=click.IntRange(1))
_SEED = click.option("--seed", default=DEFAULT_SEED, show_default=True, type=int)


@click.group(epilog="Exit codes: " + "; ".join(f"{k} {v}" for k, v in EXIT_DESCRIPTIONS.items()))
@click.option(
    "--format",
    "output",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Report format on standard output.",
)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to standard error.")
@click.pass_context
def cli(ctx: click.Context, output: str, verbose: bool) -> None:
    """Kleene-Cartesian tape diagrams over finite relations."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = _Settings(output)


@cli.command("typecheck")
@click.argument("term_file", type=_PATH)
@click.option("--signature", "signature_file", type=_PATH, help="Signature JSON to check against.")
@click.pass_context
def typecheck_command(ctx: click.Context, term_file: Path, signature_file: Path | None) -> int:
    """Print the type of a term."""
    sig = load_signature(signature_file) if signature_file else None
    term = parse_tape(term_file.read_text(), sig)
    if sig is not None:
        typecheck(term, sig)
    _emit(ctx, TypeReport(dom=str(term.dom), cod=str(term.cod)), f"{term.dom} → {term.cod}")
    return ExitCode.OK


@cli.command("eval")
@click.argument("term_file", type=_PATH)
@click.argument("interp_file", type=_PATH)
@click.pass_context
def eval_command(ctx: click.Context, term_file: Path, interp_file: Path) -> int:
    """Evaluate a term in an interpretation."""
    interp = load_interpretation(interp_file)
    meaning = evaluate(parse_tape(term_file.read_text(), interp.signature), interp)
    report = RelationReport(
        dom=str(meaning.dom.shape),
        cod=str(meaning.cod.shape),
        pairs=[
            (meaning.dom.format(x), meaning.cod.format(y)) for x, y in meaning.sorted_pairs()
        ],
        relation=str(meaning),
    )
    _emit(ctx, report, str(meaning))
    return ExitCode.OK


@cli.command("encode")
@click.argument("program_file", type=_PATH)
@click.option("--context", "declaration", required=True, help='Variables, e.g. "x:A, y:A".')
@click.option("--signature", "signature_file", type=_PATH, help="Signature JSON of the program.")
@click.pass_context
def encode_command(
    ctx: click.Context, program_file: Path, declaration: str, signature_file: Path | None
) -> int:
    """Encode a program as a tape and print its dump."""
    context = parse_context(declaration)
    sig = (
        ProgramSignature.from_signature(load_signature(signature_file))
        if signature_file
        else ProgramSignature.build({sort for _, sort in context})
    )
    tape = encode_cmd(context, parse_program(program_file.read_text()), sig)
    text = dump(tape)
    _emit(ctx, TermReport(term=text, dom=str(tape.dom), cod=str(tape.cod)), text)
    return ExitCode.OK


@cli.command("check-triple")
@click.argument("triple_file", type=_PATH)
@click.argument("interp_file", type=_PATH)
@click.pass_context
def check_triple_command(ctx: click.Context, triple_file: Path, interp_file: Path) -> int:
    """Check a triple or quadruple in one interpretation."""
    interp = load_interpretation(interp_file)
    sig = ProgramSignature.from_signature(interp.signature)
    parsed = parse_triple(triple_file.read_text())
    if isinstance(parsed, Triple):
        return _verdict(ctx, check_triple(parsed, sig, interp))
    return _verdict(ctx, check_quadruple(parsed, sig, interp))


@cli.command("check-cr")
@click.argument("lhs")
@click.argument("rhs")
@_MAX_SIZE
@_BUDGET
@_SEED
@click.pass_context
def check_cr_command(
    ctx: click.Context, lhs: str, rhs: str, max_size: int, budget: int, seed: int
) -> int:
    """Search for a relational model refuting LHS ⊆ RHS."""
    options = SearchOptions(max_size=max_size, budget=budget, seed=seed)
    return _verdict(ctx, check_cr(parse_cr(lhs), parse_cr(rhs), options))


@cli.command("check-theory")
@click.argument("theory_file", type=_PATH)
@click.argument("interp_file", type=_PATH)
@click.pass_context
def check_theory_command(ctx: click.Context, theory_file: Path, interp_file: Path) -> int:
    """Check that an interpretation is a model of a theory."""
    return _verdict(ctx, check_theory(load_theory(theory_file), load_interpretation(interp_file)))


@cli.command("search")
@click.argument("ineq_file", type=_PATH)
@_MAX_SIZE
@_BUDGET
@_SEED
@click.option(
    "--restricted", is_flag=True, help="Interpret listed functions as functions, !R as complements."
)
@click.pass_context
def search_command(
    ctx: click.Context, ineq_file: Path, max_size: int, budget: int, seed: int, restricted: bool
) -> int:
    """Search for a countermodel of an inequality file."""
    doc = load_inequality(ineq_file)
    sig, lhs, rhs = doc.tapes()
    options = SearchOptions(max_size=max_size, budget=budget, seed=seed, restricted=restricted)
    return _verdict(ctx, refute(lhs, rhs, sig, options, functions=doc.functions))


@cli.command("render")
@click.argument("term_file", type=_PATH)
@click.option(
    "--format",
    "style",
    type=click.Choice(["dot", "text"]),
    default="dot",
    show_default=True,
)
def render_command(term_file: Path, style: str) -> int:
    """Render a term as DOT source or an indented tree."""
    term = parse_tape(term_file.read_text())
    click.echo(render_dot(term) if style == "dot" else render_text(term))
    return ExitCode.OK


@cli.command("laws")
@click.option(
    "--suite",
    type=click.Choice([*SUITES, "all"]),
    default="all",
    show_default=True,
)
@click.option("--samples", default=LawOptions().samples, show_default=True, type=click.IntRange(1))
@_SEED
@click.option(
    "--max-size", default=LawOptions().max_size, show_default=True, type=click.IntRange(1)
)
@click.pass_context
def laws_command(ctx: click.Context, suite: str, samples: int, seed: int, max_size: int) -> int:
    """Run acceptance suites of algebraic laws."""
    options = LawOptions(samples=samples, seed=seed, max_size=max_size)
    names = list(SUITES) if suite == "all" else [suite]
    failed = False
    for name in names:
        report = run_suite(name, options)
        _emit(ctx, report, _suite_text(report))
        failed = failed or not report.holds
    return ExitCode.REFUTED if failed else ExitCode.OK


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return its exit code."""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return ExitCode.USAGE
    except click.Abort:
        click.echo("aborted", err=True)
        return ExitCode.USAGE
    except (KCTapesException, ValidationError, OSError) as exc:
        _LOGGER.debug("Command failed", exc_info=exc)
        click.echo(f"error: {exc}", err=True)
        return ExitCode.USAGE
    return int(result) if isinstance(result, int) else ExitCode.OK
