"""CLI interface for q-Rational Explorer."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from typing import Any, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, TextColumn

from .algebra.continued_fractions import negative_cf, regular_cf, regular_cf_odd
from .algebra.qmod import (
    QMatrix,
    canonical_trace,
    det,
    format_word,
    is_group_element,
    orthogonal_q_transpose,
    q_transpose,
    recognize,
    reduce_trace_type,
    trace,
    trace_type_polynomial,
    word_to_matrix,
)
from .algebra.qrat import left_qrat, right_qrat
from .combinatorics.quivers import closure_poly, closure_table
from .config import Settings
from .exceptions import DomainError, NotationError, QRationalError, QuiverError
from .knots.jones import iota, jones, trace_preserving_family
from .models import (
    CFKind,
    ClosureMethod,
    JonesRoute,
    MatrixOp,
    OutputFormat,
    Route,
    ScanKind,
    Side,
    SuiteName,
)
from .parsers.notation import NotationParser
from .scan.runner import ScanRunner
from .utils.logging import level_from_name, setup_logger
from .utils.rendering import Renderer
from .verification.suites import SuiteBounds, VerificationRunner

# Type-annotated Typer app
app: typer.Typer = typer.Typer(
    help="q-Rational Explorer - exact q-deformed rationals, quiver closures "
    "and Jones polynomials of rational links",
    no_args_is_help=True,
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True, soft_wrap=True)


def _format_option() -> Any:
    return typer.Option(
        OutputFormat.TEXT, "--format", help="Output format: text, json or csv"
    )


def _log_level_option() -> Any:
    return typer.Option(
        None,
        "--log-level",
        help="Set logging level (DEBUG, INFO, WARNING, ERROR); defaults to "
        "QRAT_LOG_LEVEL",
    )


def _frac_option() -> Any:
    return typer.Option(..., "--frac", help="Fraction r/s, e.g. 11/8, -3/2 or 1/0")


def _start(command: str, log_level: Optional[str]) -> tuple[Settings, logging.Logger]:
    """Load settings and configure the command logger."""
    try:
        settings = Settings()
    except ValidationError as e:
        err_console.print(f"[red]Error:[/red] Configuration error: {escape(str(e))}")
        err_console.print(
            "[yellow]Hint:[/yellow] Check the QRAT_* environment variables and .env"
        )
        raise typer.Exit(2) from e

    logger = setup_logger(
        "qrat_explorer", level=level_from_name(log_level or settings.log_level)
    )
    logger.debug(f"Starting {command} with settings {settings.model_dump()}")
    return settings, logger


@contextmanager
def _reporting_errors(logger: logging.Logger) -> Iterator[None]:
    """Map bad input to exit code 2 and failed computations to exit code 1."""
    try:
        yield
    except typer.Exit:
        raise
    except DomainError as e:
        logger.error(f"{type(e).__name__}: {e}")
        err_console.print(f"[red]Error:[/red] {escape(str(e))}")
        if isinstance(e, NotationError):
            err_console.print(
                "[yellow]Hint:[/yellow] See --help for the accepted notation"
            )
        elif isinstance(e, QuiverError):
            err_console.print(
                "[yellow]Hint:[/yellow] Use --method brute for quivers given by edges"
            )
        raise typer.Exit(2) from e
    except QRationalError as e:
        logger.error(f"{type(e).__name__}: {e}")
        err_console.print(f"[red]Error:[/red] {escape(str(e))}")
        raise typer.Exit(1) from e
    except Exception as e:
        error_msg = f"Unexpected error: {e}"
        logger.error(error_msg)
        err_console.print(f"[red]Error:[/red] {escape(error_msg)}")
        raise typer.Exit(1) from e


@app.command()
def qrat(
    frac: str = _frac_option(),
    side: Side = typer.Option(
        Side.RIGHT, "--side", help="right (sharp) or left (flat) deformation"
    ),
    route: Route = typer.Option(
        Route.REGULAR_CF,
        "--route",
        help="regular or negative continued fraction, or quiver closures",
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Compute the left or right q-deformed rational number of a fraction."""
    _, logger = _start("qrat", log_level)

    with _reporting_errors(logger):
        x = NotationParser(logger).parse_fraction(frac)
        if side is Side.LEFT:
            result = left_qrat(x, route)
        else:
            result = right_qrat(x, route)
        logger.info(f"Computed {side.value} q-rational of {x} via {route.value}")

        if fmt is OutputFormat.JSON:
            typer.echo(result.to_record().model_dump_json())
        else:
            Renderer(fmt, console).polys({"num": result.num, "den": result.den})


@app.command()
def cf(
    frac: str = _frac_option(),
    kind: CFKind = typer.Option(
        CFKind.REGULAR, "--kind", help="regular [a1,...] or negative [[c1,...]]"
    ),
    odd: bool = typer.Option(
        False, "--odd", help="Odd-length regular expansion instead of even"
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Print the continued fraction expansion of a fraction."""
    _, logger = _start("cf", log_level)

    with _reporting_errors(logger):
        x = NotationParser(logger).parse_fraction(frac)
        if kind is CFKind.NEGATIVE:
            if odd:
                raise DomainError("--odd applies to regular expansions only")
            expansion = negative_cf(x)
        else:
            expansion = regular_cf_odd(x) if odd else regular_cf(x)

        if fmt is OutputFormat.TEXT:
            typer.echo(str(expansion))
        else:
            Renderer(fmt, console).fields(
                {"fraction": str(x), "kind": kind.value, "terms": list(expansion.terms)}
            )


@app.command()
def matrix(
    word: Optional[str] = typer.Option(
        None, "--word", help='Generator word: "R^1 L^2 S", "cf:1,2,1,2" or "neg:2,2"'
    ),
    ints: Optional[str] = typer.Option(
        None, "--ints", help="Integer matrix a,b,c,d (with --op recognize)"
    ),
    op: MatrixOp = typer.Option(MatrixOp.SHOW, "--op", help="Operation to apply"),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Evaluate a word in R_q, L_q, S_q and transform or classify the matrix."""
    settings, logger = _start("matrix", log_level)

    with _reporting_errors(logger):
        renderer = Renderer(fmt, console)
        parser = NotationParser(logger)

        if (word is None) == (ints is None):
            raise DomainError("give exactly one of --word and --ints")
        if ints is not None:
            if op is not MatrixOp.RECOGNIZE:
                raise DomainError("--ints is only accepted with --op recognize")
            a, b, c, d = _four_entries(parser.parse_int_list(ints))
            found = recognize(((a, b), (c, d)))
            renderer.fields({"word": format_word(found)})
            return

        parsed = parser.parse_word(word or "")
        m = word_to_matrix(parsed)
        logger.info(f"Applying {op.value} to {format_word(parsed)}")

        if op is MatrixOp.SHOW:
            renderer.matrix(m, format_word(parsed))
        elif op is MatrixOp.Q_TRANSPOSE:
            renderer.matrix(q_transpose(m))
        elif op is MatrixOp.ORTHOGONAL:
            renderer.matrix(orthogonal_q_transpose(m))
        elif op is MatrixOp.TRACE:
            renderer.polys({"trace": trace(m)}, bare=True)
        elif op is MatrixOp.DET:
            renderer.polys({"det": det(m)}, bare=True)
        elif op is MatrixOp.CANONICAL_TRACE:
            renderer.polys({"canonical_trace": canonical_trace(m)}, bare=True)
        elif op is MatrixOp.TYPE:
            trace_type = reduce_trace_type(
                m, max_rounds=settings.trace_iteration_cap, log=logger
            )
            renderer.fields(
                {
                    "type": str(trace_type),
                    "canonical_trace": trace_type_polynomial(trace_type),
                }
            )
        else:
            found = recognize(m.evaluate_at_one())
            renderer.fields(
                {"word": format_word(found), "group_element": is_group_element(m)}
            )


def _four_entries(values: list[int]) -> tuple[int, int, int, int]:
    if len(values) != 4:
        raise DomainError(f"an integer matrix needs 4 entries, got {len(values)}")
    a, b, c, d = values
    return a, b, c, d


@app.command("trace")
def trace_command(
    word: str = typer.Option(..., "--word", help="Generator word, e.g. cf:1,2,1,2"),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Print the canonical trace of a word and which of the three types it has."""
    settings, logger = _start("trace", log_level)

    with _reporting_errors(logger):
        m: QMatrix = word_to_matrix(NotationParser(logger).parse_word(word))
        trace_type = reduce_trace_type(
            m, max_rounds=settings.trace_iteration_cap, log=logger
        )
        Renderer(fmt, console).fields(
            {"canonical_trace": canonical_trace(m), "type": str(trace_type)}
        )


@app.command()
def closure(
    quiver: str = typer.Option(
        ...,
        "--quiver",
        help='fence:b, flat:b, circ:a or "edges:n;1>2,..." (1-based vertices)',
    ),
    method: ClosureMethod = typer.Option(
        ClosureMethod.DP, "--method", help="dp (chain quivers) or brute force"
    ),
    table: bool = typer.Option(False, "--table", help="List the closures by size"),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Compute the closure polynomial of a quiver."""
    settings, logger = _start("closure", log_level)

    with _reporting_errors(logger):
        parsed = NotationParser(logger).parse_quiver(quiver)
        cap = settings.brute_force_max_vertices
        poly = closure_poly(parsed, method, max_vertices=cap)
        renderer = Renderer(fmt, console)
        if table:
            renderer.closure_table(closure_table(parsed, max_vertices=cap), poly)
        else:
            renderer.polys({"closure": poly}, bare=True)


@app.command("jones")
def jones_command(
    frac: str = _frac_option(),
    route: JonesRoute = typer.Option(
        JonesRoute.FLAT_RECIPROCAL,
        "--route",
        help="flat (reciprocal of the left numerator) or sharp formula",
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Print the normalized Jones polynomial of the rational link of r/s > 1."""
    _, logger = _start("jones", log_level)

    with _reporting_errors(logger):
        alpha = NotationParser(logger).parse_fraction(frac)
        Renderer(fmt, console).polys({"J": jones(alpha, route).J}, bare=True)


@app.command("iota")
def iota_command(
    frac: str = _frac_option(),
    family: int = typer.Option(
        0,
        "--family",
        min=0,
        help="Also evaluate the first N members of the trace-preserving family",
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Print the palindromicity defect I of the Jones polynomial of r/s > 1."""
    _, logger = _start("iota", log_level)

    with _reporting_errors(logger):
        alpha = NotationParser(logger).parse_fraction(frac)
        base = iota(alpha).iota
        renderer = Renderer(fmt, console)
        if not family:
            renderer.polys({"I": base}, bare=True)
            return

        rows = [{"alpha": str(alpha), "I": base, "matches": True}]
        for member in trace_preserving_family(alpha, family):
            value = iota(member).iota
            rows.append({"alpha": str(member), "I": value, "matches": value == base})
        renderer.rows(f"Trace-preserving family of {alpha}", rows)

        mismatches = [row["alpha"] for row in rows if not row["matches"]]
        if mismatches:
            logger.warning(f"I differs from I_{alpha} at {mismatches}")
            raise typer.Exit(1)


@app.command()
def verify(
    suite: SuiteName = typer.Option(..., "--suite", help="Suite to run, or all"),
    max_den: Optional[int] = typer.Option(
        None, "--max-den", min=2, help="Largest denominator/numerator checked"
    ),
    max_sum: Optional[int] = typer.Option(
        None, "--max-sum", min=1, help="Largest tuple sum for quiver checks"
    ),
    words: Optional[int] = typer.Option(
        None, "--words", min=1, help="Number of random generator words"
    ),
    seed: Optional[int] = typer.Option(
        None, "--seed", help="Random word seed (default QRAT_SEED)"
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Check identities over bounded inputs; exit 1 on any counterexample."""
    settings, logger = _start("verify", log_level)

    with _reporting_errors(logger):
        bounds = SuiteBounds.from_settings(
            settings, max_den=max_den, max_sum=max_sum, words=words, seed=seed
        )
        reports = VerificationRunner(logger).run(suite, bounds)
        Renderer(fmt, console).reports(reports)

        if not all(report.passed for report in reports):
            raise typer.Exit(1)


@app.command()
def scan(
    kind: ScanKind = typer.Option(..., "--kind", help="oguz or iota"),
    max_sum: int = typer.Option(
        14, "--max-sum", min=2, help="Largest tuple sum of an oguz scan"
    ),
    max_r: int = typer.Option(40, "--max-r", min=2, help="Largest r of an iota scan"),
    jobs: Optional[int] = typer.Option(
        None, "--jobs", min=1, help="Worker processes (default QRAT_JOBS)"
    ),
    out: Optional[str] = typer.Option(
        None, "--out", help="JSONL output path; bare names go under QRAT_OUTPUT_DIR"
    ),
    append: bool = typer.Option(
        False, "--append", help="Append to the output file instead of replacing it"
    ),
    show_progress: bool = typer.Option(
        True, "--show-progress/--no-progress", help="Show progress indicators"
    ),
    fmt: OutputFormat = _format_option(),
    log_level: Optional[str] = _log_level_option(),
) -> None:
    """Scan a conjecture exhaustively and write one JSON line per input."""
    settings, logger = _start("scan", log_level)

    with _reporting_errors(logger):
        bound = max_sum if kind is ScanKind.OGUZ else max_r
        out_path = settings.resolve_output(out, f"{kind.value}_scan.jsonl")
        runner = ScanRunner(settings, logger)
        workers = jobs or settings.default_jobs

        if show_progress:
            with Progress(
                SpinnerColumn(),
                TextColumn("[progress.description]{task.description}"),
                console=err_console,
                transient=True,
            ) as progress:
                progress.add_task(f"Scanning {kind.value} up to {bound}...", total=None)
                summary = runner.run(kind, bound, workers, out_path, append)
        else:
            summary = runner.run(kind, bound, workers, out_path, append)

        Renderer(fmt, console).scan_summary(summary)
        if not summary.passed:
            raise typer.Exit(1)


if __name__ == "__main__":
    app()
