"""Shared plumbing for the subcommands."""
import argparse
import json
import logging
import sys
from typing import Any, Dict, Iterable, List, Optional, TextIO

import pandas as pd
from pydantic import ValidationError

from grundy_lab.config import get_settings
from grundy_lab.schemas.models import RunConfig, SummaryRecord

logger = logging.getLogger(__name__)


class BaseCommand:
    """A subcommand: ``help``, ``add_arguments(parser)`` and ``handle(**options)``.

    ``handle`` returns the process exit code.
    """

    name = ""
    help = ""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def add_run_arguments(self, parser: argparse.ArgumentParser, inputs: bool = True) -> None:
        if inputs:
            parser.add_argument(
                "--input",
                action="append",
                default=None,
                help="graph6 or edge-list file, '-' for stdin; repeatable"
            )
        parser.add_argument("--format", choices=["json", "tsv"], default=None, help="Output format")
        parser.add_argument("--budget-ms", type=int, default=None, help="Grundy solver budget per graph")
        parser.add_argument("--threads", type=int, default=None, help="Worker processes")
        parser.add_argument("--seed", type=int, default=None, help="Random seed")
        parser.add_argument("--nmax", type=int, default=None, help="Largest n the oracles enumerate")

    def handle(self, **options) -> int:
        raise NotImplementedError

    def run_config(self, options: Dict[str, Any]) -> RunConfig:
        """Merge flags over settings (and the ``GRUNDY_LAB_*`` environment)."""
        settings = get_settings()

        def pick(key: str, default: Any) -> Any:
            value = options.get(key)
            return default if value is None else value

        return RunConfig(
            subcommand=self.name,
            inputs=pick("input", ["-"]),
            budget_ms=pick("budget_ms", settings.budget_ms),
            threads=pick("threads", settings.threads),
            output_format=pick("format", settings.output_format),
            seed=pick("seed", settings.seed),
            nmax=pick("nmax", settings.nmax),
        )

    def execute(self, **options) -> int:
        try:
            return self.handle(**options)
        except ValidationError as e:
            for error in e.errors():
                field = ".".join(str(part) for part in error["loc"])
                self.stderr.write(f"invalid {field}: {error['msg']}\n")
            return 2

    def write_json(self, record: Dict[str, Any]) -> None:
        self.stdout.write(json.dumps(record) + "\n")

    def write_tsv(self, rows: List[Dict[str, Any]], columns: List[str]) -> None:
        frame = pd.DataFrame(rows, columns=columns)
        self.stdout.write(frame.to_csv(sep="\t", index=False))

    def summarize(self, records: Iterable[Dict[str, Any]], fmt: str, counts: Dict[str, int], anomalies: int) -> int:
        """Emit the summary (JSON footer, or a log line for TSV); return the exit code."""
        records = list(records)
        errors = sum(1 for r in records if r.get("record") == "error")
        summary = SummaryRecord(
            command=self.name,
            graphs=len(records),
            errors=errors,
            anomalies=anomalies,
            counts=counts,
        )
        if fmt == "json":
            self.write_json(summary.model_dump(mode="json"))
        logger.info(
            f"{self.name}: {summary.graphs} graphs, {errors} errors, {anomalies} anomalies, counts {counts}"
        )
        return 1 if errors or anomalies else 0
