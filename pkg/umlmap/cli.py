"""`umlmap` command group: parse, validate, trace, generate.

Exit codes: 0 ok, 1 validation errors, 2 parse/resolve failure, 3 I/O failure.
Command output goes to stdout; diagnostics and logging go to stderr.
"""
import json
import logging

import click

from umlmap import __version__
from umlmap.codegen import ConstructorPolicy, EmitOptions, map_model, write_skeletons
from umlmap.corpus import CORPUS_PREFIX, load_corpus
from umlmap.diagnostics import DiagnosticError, Severity, TraceError
from umlmap.parser import decode_source, parse_document
from umlmap.printer import print_canonical
from umlmap.queries import trace_matrix
from umlmap.resolver import resolve
from umlmap.validator import has_errors, validate

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 1
EXIT_SYNTAX = 2
EXIT_IO = 3

_SEVERITY_COLORS = {Severity.ERROR: "red", Severity.WARNING: "yellow"}


class CliFailure(click.ClickException):
    """A ClickException with an explicit exit status."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


# ----------------------------
# Helpers
# ----------------------------
def read_source(source: str):
    """Return (UTF-8 bytes, label) for a file path or a `corpus:<name>` pseudo-path."""
    if source.startswith(CORPUS_PREFIX):
        name = source[len(CORPUS_PREFIX):]
        try:
            return load_corpus(name).encode("utf-8"), source
        except KeyError as exc:
            raise CliFailure(exc.args[0], EXIT_IO) from exc
    try:
        with open(source, "rb") as handle:
            return handle.read(), source
    except OSError as exc:
        logger.error("cannot read %s: %s", source, exc)
        raise CliFailure(f"cannot read {source}: {exc.strerror or exc}", EXIT_IO) from exc


def echo_finding(rendered: str, severity: Severity, err: bool = True):
    click.secho(rendered, fg=_SEVERITY_COLORS[severity], err=err)


def _report(exc: DiagnosticError, exit_code: int, stage: str):
    for diagnostic in exc.diagnostics:
        echo_finding(diagnostic.render(), diagnostic.severity)
    raise CliFailure(f"{stage} failed with {len(exc.diagnostics)} diagnostic(s)", exit_code)


def load_tree(source: str):
    data, label = read_source(source)
    try:
        return parse_document(decode_source(data, label), file=label)
    except DiagnosticError as exc:
        _report(exc, EXIT_SYNTAX, "parse")


def load_model(source: str):
    tree = load_tree(source)
    try:
        return resolve(tree)
    except DiagnosticError as exc:
        _report(exc, EXIT_SYNTAX, "resolve")


format_option = click.option(
    "--format", "output_format", type=click.Choice(["text", "json"]), default="text",
    show_default=True, help="Output format.")


# ----------------------------
# Commands
# ----------------------------
@click.group()
@click.version_option(__version__, prog_name="umlmap")
@click.option("-v", "--verbose", count=True, help="Log more (repeat for debug).")
def cli(verbose):
    """Turn a textual UML model into validated, traceable skeletons."""
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.argument("source")
@format_option
def parse(source, output_format):
    """Print SOURCE in canonical form (or its syntax tree as JSON)."""
    tree = load_tree(source)
    if output_format == "json":
        click.echo(json.dumps(tree.to_dict(), indent=2))
    else:
        click.echo(print_canonical(tree), nl=False)


@cli.command(name="validate")
@click.argument("source")
@format_option
def validate_command(source, output_format):
    """Check SOURCE against the consistency rules."""
    model = load_model(source)
    findings = validate(model)
    for violation in findings:
        if output_format == "json":
            click.echo(json.dumps(violation.to_dict()))
        else:
            echo_finding(violation.render(), violation.severity, err=False)
    if has_errors(findings):
        errors = sum(v.is_error for v in findings)
        raise CliFailure(f"{model.name}: {errors} validation error(s)", EXIT_VALIDATION)


@cli.command()
@click.argument("source")
@format_option
def trace(source, output_format):
    """Print the use-case to operation matrix of SOURCE."""
    model = load_model(source)
    try:
        entries = trace_matrix(model)
    except TraceError as exc:
        _report(exc, EXIT_VALIDATION, "trace")
    if output_format == "json":
        for entry in entries:
            click.echo(json.dumps(entry.to_dict()))
        return
    rows = [(e.usecase, e.class_name, e.operation) for e in entries]
    widths = [max((len(row[i]) for row in rows), default=0) for i in range(3)]
    for row in rows:
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())


@cli.command()
@click.argument("source")
@click.option("-o", "--output-dir", required=True,
              help="Directory receiving the generated files.")
@click.option("--synthesize-accessors", is_flag=True, help="Add missing Set/Get pairs.")
@click.option("--constructor-policy",
              type=click.Choice([p.value for p in ConstructorPolicy]),
              default=ConstructorPolicy.INHERITANCE_PARTICIPANTS.value, show_default=True)
@click.option("--target", type=click.Choice(["skel", "cpp"]), default="skel", show_default=True,
              help="Canonical skeletons or C++ header transliteration.")
def generate(source, output_dir, synthesize_accessors, constructor_policy, target):
    """Write one skeleton per class of SOURCE into OUTPUT_DIR."""
    model = load_model(source)
    findings = validate(model)
    for violation in findings:
        echo_finding(violation.render(), violation.severity)
    if has_errors(findings):
        raise CliFailure(f"{model.name}: validation failed, nothing generated", EXIT_VALIDATION)

    opts = EmitOptions(synthesize_accessors=synthesize_accessors,
                       constructor_policy=ConstructorPolicy(constructor_policy))
    doc = map_model(model, opts)
    try:
        written = write_skeletons(doc, output_dir, model.name, target=target)
    except OSError as exc:
        logger.error("cannot write to %s: %s", output_dir, exc)
        raise CliFailure(f"cannot write to {output_dir}: {exc.strerror or exc}", EXIT_IO) from exc
    for path in written:
        click.echo(str(path))


def main():
    cli(prog_name="umlmap")


if __name__ == "__main__":
    main()
