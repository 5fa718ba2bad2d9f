"""Sharded scan harness writing one JSON line per input."""

import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

from joblib import Parallel, delayed
from pydantic import BaseModel

from ..config import Settings
from ..exceptions import DomainError
from ..knots.scans import (
    even_compositions,
    fractions_above_one,
    iota_record,
    oguz_record,
    summarize_iota,
    summarize_oguz,
)
from ..models import ScanKind, ScanSummary
from ..utils.logging import setup_logger


def _evaluate_shard(kind: ScanKind, shard: Sequence[Any], max_rounds: int) -> list[Any]:
    if kind is ScanKind.OGUZ:
        return [oguz_record(a) for a in shard]
    return [iota_record(alpha, max_rounds=max_rounds) for alpha in shard]


class ScanRunner:
    """Runs an oguz or iota scan across joblib workers.

    Shards are evaluated independently and merged back in input order, so the
    output file does not depend on the number of workers.
    """

    def __init__(self, settings: Settings, logger: Optional[logging.Logger] = None):
        """Initialize the runner.

        Args:
            settings: Application settings (shard size, trace round limit)
            logger: Optional logger instance. If None, creates a default logger.
        """
        self.settings = settings
        self._logger = logger or setup_logger("scan_runner", level=logging.INFO)

    def inputs(self, kind: ScanKind, bound: int) -> list[Any]:
        if bound < 2:
            raise DomainError(f"scan bound must be at least 2, got {bound}")
        if kind is ScanKind.OGUZ:
            return list(even_compositions(bound))
        return list(fractions_above_one(bound))

    def evaluate(self, kind: ScanKind, bound: int, jobs: int = 1) -> list[BaseModel]:
        """Compute every record of the scan, in input order."""
        if jobs < 1:
            raise DomainError(f"--jobs must be at least 1, got {jobs}")
        items = self.inputs(kind, bound)
        size = self.settings.shard_size
        shards = [items[i : i + size] for i in range(0, len(items), size)]
        self._logger.info(
            f"Scanning {len(items)} {kind.value} inputs in {len(shards)} shards "
            f"with {jobs} workers"
        )
        results = Parallel(n_jobs=jobs)(
            delayed(_evaluate_shard)(kind, shard, self.settings.trace_iteration_cap)
            for shard in shards
        )
        return [record for shard_records in results for record in shard_records]

    def write(self, records: Sequence[BaseModel], out_path: Path, append: bool) -> None:
        """Write records as JSON lines, truncating the file unless appending.

        Raises:
            DomainError: If the file cannot be written
        """
        try:
            out_path.parent.mkdir(parents=True, exist_ok=True)
            with out_path.open("a" if append else "w", encoding="utf-8") as f:
                for record in records:
                    f.write(record.model_dump_json() + "\n")
        except OSError as e:
            self._logger.error(f"Failed to write scan output {out_path}: {e}")
            raise DomainError(f"cannot write scan output {out_path}: {e}") from e
        self._logger.info(f"Wrote {len(records)} records to {out_path}")

    def run(
        self,
        kind: ScanKind,
        bound: int,
        jobs: int,
        out_path: Path,
        append: bool = False,
    ) -> ScanSummary:
        records = self.evaluate(kind, bound, jobs)
        self.write(records, out_path, append)
        if kind is ScanKind.OGUZ:
            summary = summarize_oguz(bound, records)  # type: ignore[arg-type]
        else:
            summary = summarize_iota(bound, records)  # type: ignore[arg-type]
        summary.output = str(out_path)
        if summary.violations:
            self._logger.warning(
                f"{len(summary.violations)} conjecture violations in {kind.value} scan"
            )
        return summary
