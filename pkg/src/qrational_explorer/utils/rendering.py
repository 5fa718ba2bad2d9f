"""Text, JSON and CSV output for command results.

Data lines go through ``typer.echo`` so that bracketed values such as
``[[q + 1, q^-1], [1, q^-1]]`` are never read as rich markup; only tables use
the rich console.
"""

import json
from collections.abc import Mapping, Sequence
from typing import Any, Optional

import pandas as pd
import typer
from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..algebra.laurent import LaurentPoly
from ..algebra.qmod import QMatrix
from ..combinatorics.quivers import ClosureRow
from ..models import OutputFormat, ScanSummary, SuiteReport


def polys_frame(named: Mapping[str, LaurentPoly]) -> pd.DataFrame:
    """One row per polynomial: name, lowest_exp, then c0, c1, ... padded with 0."""
    width = max((len(p.coeffs) for p in named.values()), default=0)
    coeff_columns = [f"c{i}" for i in range(width)]
    rows = []
    for name, poly in named.items():
        row: dict[str, Any] = {"name": name, "lowest_exp": poly.lowest_exp}
        row.update({f"c{i}": c for i, c in enumerate(poly.coeffs)})
        rows.append(row)
    frame = pd.DataFrame(rows, columns=["name", "lowest_exp", *coeff_columns])
    if coeff_columns:
        frame[coeff_columns] = frame[coeff_columns].fillna(0).astype("int64")
    return frame


def _plain(value: Any) -> Any:
    """JSON-friendly form of a field value."""
    if isinstance(value, LaurentPoly):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _cell(value: Any) -> str:
    """Single-cell text form of a field value for text and csv output."""
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, bool):
        return str(value).lower()
    if value is None:
        return ""
    return str(value)


class Renderer:
    """Writes results to standard output in the selected format."""

    def __init__(self, fmt: OutputFormat, console: Optional[Console] = None):
        self.fmt = fmt
        self.console = console or Console()

    def _json(self, payload: Any) -> None:
        typer.echo(json.dumps(payload))

    def _csv(self, frame: pd.DataFrame) -> None:
        typer.echo(frame.to_csv(index=False, lineterminator="\n"), nl=False)

    def polys(self, named: Mapping[str, LaurentPoly], bare: bool = False) -> None:
        """Print named polynomials.

        Args:
            named: Label to polynomial, in output order
            bare: In text format print only the value of a single polynomial
        """
        if self.fmt is OutputFormat.JSON:
            self._json({name: poly.to_json() for name, poly in named.items()})
        elif self.fmt is OutputFormat.CSV:
            self._csv(polys_frame(named))
        elif bare and len(named) == 1:
            typer.echo(str(next(iter(named.values()))))
        else:
            for name, poly in named.items():
                typer.echo(f"{name}: {poly}")

    def fields(self, values: Mapping[str, Any]) -> None:
        """Print a flat record of labelled values."""
        if self.fmt is OutputFormat.JSON:
            self._json({key: _plain(value) for key, value in values.items()})
        elif self.fmt is OutputFormat.CSV:
            self._csv(pd.DataFrame([{k: _cell(v) for k, v in values.items()}]))
        else:
            for key, value in values.items():
                typer.echo(f"{key}: {_cell(value)}")

    def matrix(self, m: QMatrix, word: Optional[str] = None) -> None:
        entries = {"a": m.a, "b": m.b, "c": m.c, "d": m.d}
        if self.fmt is OutputFormat.JSON:
            payload: dict[str, Any] = {k: p.to_json() for k, p in entries.items()}
            if word is not None:
                payload["word"] = word
            self._json(payload)
        elif self.fmt is OutputFormat.CSV:
            self._csv(polys_frame(entries))
        else:
            typer.echo(str(m))
            if word is not None:
                typer.echo(f"word: {word}")

    def rows(self, title: str, rows: Sequence[Mapping[str, Any]]) -> None:
        """Print a list of records as a table (text) or a list (json, csv)."""
        if self.fmt is OutputFormat.JSON:
            self._json([{k: _plain(v) for k, v in row.items()} for row in rows])
        elif self.fmt is OutputFormat.CSV:
            records = [{k: _cell(v) for k, v in row.items()} for row in rows]
            self._csv(pd.DataFrame(records))
        else:
            table = Table(title=title)
            for column in rows[0] if rows else []:
                table.add_column(column)
            for row in rows:
                table.add_row(*(Text(_cell(v)) for v in row.values()))
            self.console.print(table)

    def closure_table(self, rows: Sequence[ClosureRow], poly: LaurentPoly) -> None:
        """Print the closures of every size followed by the closure polynomial."""
        if self.fmt is not OutputFormat.TEXT:
            self.rows(
                "closures",
                [
                    {
                        "l": row.size,
                        "count": row.count,
                        "closures": [_closure_text(c) for c in row.closures],
                    }
                    for row in rows
                ],
            )
            return

        table = Table(title="l-closures")
        table.add_column("l", justify="right", style="cyan")
        table.add_column("closures", style="green")
        table.add_column("count", justify="right", style="magenta")
        for row in rows:
            table.add_row(
                str(row.size),
                ", ".join(_closure_text(c) for c in row.closures),
                str(row.count),
            )
        self.console.print(table)
        typer.echo(f"closure polynomial: {poly}")

    def reports(self, reports: Sequence[SuiteReport]) -> None:
        """Print suite outcomes; failures follow as JSON lines in text format."""
        if self.fmt is OutputFormat.JSON:
            self._json([r.model_dump() for r in reports])
            return
        if self.fmt is OutputFormat.CSV:
            self._csv(
                pd.DataFrame(
                    [
                        {
                            "suite": r.suite,
                            "checked": r.checked,
                            "failures": len(r.failures),
                            "passed": r.passed,
                        }
                        for r in reports
                    ]
                )
            )
            return

        table = Table(title="Verification")
        table.add_column("suite", style="cyan")
        table.add_column("checked", justify="right")
        table.add_column("failures", justify="right")
        table.add_column("status")
        for report in reports:
            status = "[green]ok[/green]" if report.passed else "[red]FAILED[/red]"
            table.add_row(
                report.suite, str(report.checked), str(len(report.failures)), status
            )
        self.console.print(table)
        for report in reports:
            for failure in report.failures:
                typer.echo(json.dumps({"suite": report.suite, **failure}, default=str))

    def scan_summary(self, summary: ScanSummary) -> None:
        if self.fmt is OutputFormat.JSON:
            self._json(summary.model_dump())
            return
        counts = " ".join(
            f"{name}={count}"
            for name, count in sorted(summary.exception_counts.items())
        )
        self.fields(
            {
                "kind": summary.kind,
                "bound": summary.bound,
                "records": summary.records,
                "non_unimodal": summary.non_unimodal,
                "max_modality": summary.max_modality,
                "exceptions": counts or "none",
                "violations": summary.violations or "none",
                "output": summary.output,
            }
        )


def _closure_text(closure: Sequence[int]) -> str:
    if not closure:
        return "{}"
    return "{" + ",".join(str(v) for v in closure) + "}"
