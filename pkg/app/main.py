#!/usr/bin/env python3
"""
Command Line
click front end over the decision engine:

    python -m app.main decide --matrix "8,-5;4,-1" --digits "0,0;2,1;2,4"

Exit codes: 0 when a command finished (OPEN statuses included), 2 for input
and precondition errors, 1 when an output file cannot be written.
"""

import functools
from pathlib import Path
from typing import Optional

import click

from app.config import get_settings
from app.engine.decide import decide
from app.engine.hadamard import find_witness, is_hadamard, spectrum_truncated
from app.errors import InputError, NotExpandingError, WrongBranchError
from app.logger import get_logger, setup_logging
from app.modules import numverify
from app.modules.canonical import canonicalize
from app.modules.classify import decompose, reduce_class, region
from app.modules.exactalg import IMat2, is_expanding
from app.modules.maskzero import Digits3, normalize_digits
from app.tools import render as renderers
from app.tools.parse import parse_box, parse_digits, parse_matrix, parse_points
from app.tools.report import (
    build_report,
    canonical_block,
    classification_block,
    numeric_block,
    to_json,
    to_text,
)

log = get_logger("cli")

FORMATS = click.Choice(["json", "text"])


def precondition_errors(command):
    """Input and precondition failures become 'Error: ...' on stderr and exit code 2."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (InputError, WrongBranchError) as err:
            click.echo(f"Error: {err}", err=True)
            raise click.exceptions.Exit(2)

    return wrapper


def _expanding(text: str) -> IMat2:
    M = parse_matrix(text)
    if not is_expanding(M):
        raise NotExpandingError()
    return M


def _translated(raw) -> Digits3:
    """Digits moved so the first one sits at the origin, scale kept."""
    norm = normalize_digits(raw)
    return Digits3(norm.digits.d1.scale(norm.scale), norm.digits.d2.scale(norm.scale))


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text)
        return
    path = Path(out)
    try:
        path.write_text(text + "\n", encoding="utf-8")
    except OSError as err:
        raise click.FileError(str(path), hint=err.strerror or str(err)) from err
    log.info(f"[CLI] report written to {path}")


def _dump(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(payload)
    return "\n".join(f"{key}: {value}" for key, value in payload.items())


matrix_option = click.option("--matrix", "matrix_text", required=True, help='Integer matrix "a,b;c,d".')
digits_option = click.option("--digits", "digits_text", required=True, help='Digit set "x1,y1;x2,y2;x3,y3".')
format_option = click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to a file instead of stdout.")
shift_option = click.option("--bezout-shift", type=int, default=0, show_default=True, help="Alternative Bezout pair (p + k t2, q - k t1).")


# ------------------------------------------ Commands ----------------------------------------

@click.group()
@click.option("--log-level", default=None, help="Logging level (default from SPECTRAL_LOG_LEVEL or WARNING).")
def cli(log_level: Optional[str]):
    """Exact spectrality decisions for three-digit planar self-affine measures."""
    setup_logging(log_level or get_settings().log_level)


@cli.command("decide")
@matrix_option
@digits_option
@shift_option
@format_option
@out_option
@precondition_errors
def cmd_decide(matrix_text, digits_text, bezout_shift, fmt, out):
    """Decide spectrality and print the report with its certificate or reason."""
    raw = parse_digits(digits_text)
    verdict = decide(parse_matrix(matrix_text), raw, bezout_shift=bezout_shift)
    report = build_report(verdict, raw)
    _emit(to_json(report) if fmt == "json" else to_text(report), out)


@cli.command("verify")
@matrix_option
@digits_option
@click.option("--depth", type=click.IntRange(min=0), default=None, help="Completeness depth.")
@click.option("--grid", type=click.IntRange(min=1), default=None, help="Samples per axis in [0,1)^2.")
@format_option
@out_option
@precondition_errors
def cmd_verify(matrix_text, digits_text, depth, grid, fmt, out):
    """Decide, then add numeric orthogonality and completeness evidence for SPECTRAL verdicts."""
    raw = parse_digits(digits_text)
    verdict = decide(parse_matrix(matrix_text), raw)
    report = build_report(verdict, raw, numeric=numeric_block(verdict, depth=depth, grid=grid))
    _emit(to_json(report) if fmt == "json" else to_text(report), out)


@cli.command("canonicalize")
@matrix_option
@digits_option
@shift_option
@format_option
@precondition_errors
def cmd_canonicalize(matrix_text, digits_text, bezout_shift, fmt):
    """Print the canonical pair and its parameters."""
    M = _expanding(matrix_text)
    norm = normalize_digits(parse_digits(digits_text))
    block = canonical_block(canonicalize(M, norm.digits, bezout_shift=bezout_shift))
    click.echo(_dump(block.model_dump(mode="json"), fmt))


@cli.command("classify")
@matrix_option
@digits_option
@shift_option
@format_option
@precondition_errors
def cmd_classify(matrix_text, digits_text, bezout_shift, fmt):
    """Residue class, decomposition and region of the canonical matrix (det M in 3Z)."""
    M = _expanding(matrix_text)
    norm = normalize_digits(parse_digits(digits_text))
    cf = canonicalize(M, norm.digits, bezout_shift=bezout_shift)
    dec = decompose(cf.M_tilde)
    block = classification_block(
        dec,
        region(dec, cf.eta, cf.case),
        reduce_class(cf.M_tilde, cf.D_tilde, dec, cf.eta, cf.case),
    )
    payload = {"case": cf.case.value, "eta": cf.eta, **block.model_dump(mode="json")}
    click.echo(_dump(payload, fmt))


@cli.command("hadamard")
@matrix_option
@digits_option
@click.option("--s", "s_text", default=None, help='Candidate "0,0;s1;s2". Searched for when omitted.')
@click.option("--bound", type=click.IntRange(min=1), default=None, help="Search box for s1, s2.")
@format_option
@precondition_errors
def cmd_hadamard(matrix_text, digits_text, s_text, bound, fmt):
    """Test a Hadamard triple, or look for one."""
    M = _expanding(matrix_text)
    D = _translated(parse_digits(digits_text))

    if s_text is not None:
        S, source = parse_points(s_text), "given"
        result = is_hadamard(M, D, S)
    else:
        bound = bound or get_settings().search_bound_factor * max(abs(v) for p in D.points for v in p)
        found = find_witness(M, D, bound)
        source, S = found if found else (None, ())
        result = found is not None

    if fmt == "text":
        click.echo("true" if result else "false")
        return
    click.echo(to_json({"hadamard": result, "S": [p.as_list() for p in S], "witness_source": source}))


@cli.command("spectrum")
@matrix_option
@click.option("--s", "s_text", required=True, help='Seed "0,0;s1;s2".')
@click.option("--depth", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--digits", "digits_text", default=None, help="Check the Hadamard cardinality against these digits.")
@format_option
@out_option
@precondition_errors
def cmd_spectrum(matrix_text, s_text, depth, digits_text, fmt, out):
    """List the truncated spectrum S + M^* S + ... + M^{*(depth-1)} S."""
    M = _expanding(matrix_text)
    digits = _translated(parse_digits(digits_text)) if digits_text else None
    level = spectrum_truncated(M, parse_points(s_text), depth, digits=digits)

    if fmt == "text":
        _emit("\n".join(f"{p.x} {p.y}" for p in level.points), out)
        return
    _emit(to_json({"depth": level.k, "count": len(level.points), "points": [p.as_list() for p in level.points]}), out)


@cli.command("render")
@matrix_option
@digits_option
@click.option("--kind", type=click.Choice(["svg", "csv", "pgm"]), default="svg", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--depth", type=click.IntRange(min=1), default=None, help="Attractor depth (svg, csv).")
@click.option("--box", "box_text", default=None, help='Heatmap box "x0,x1,y0,y1" (pgm).')
@click.option("--eps", type=click.FloatRange(min=0, min_open=True), default=None, help="Fourier truncation tolerance (pgm).")
@precondition_errors
def cmd_render(matrix_text, digits_text, kind, out, depth, box_text, eps):
    """Attractor point cloud (svg, csv) or |mu_hat| heatmap (pgm)."""
    settings = get_settings()
    M = _expanding(matrix_text)
    D = _translated(parse_digits(digits_text))

    if kind == "pgm":
        box = parse_box(box_text) if box_text else settings.heatmap_box
        values = numverify.heatmap(M, D, box, settings.heatmap_size, eps)
        result = renderers.write_pgm(values, out)
    else:
        sample = numverify.attractor_points(M, D, depth or settings.attractor_depth)
        if kind == "svg":
            result = renderers.write_svg(sample.points, out, viewport=settings.svg_viewport)
        else:
            result = renderers.write_csv(sample.points, out)
    click.echo(to_json(result))


def main():
    cli()


if __name__ == "__main__":
    main()
