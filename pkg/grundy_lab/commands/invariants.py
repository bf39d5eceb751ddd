"""Compute the exact invariants of every input graph."""
from grundy_lab.commands.base import BaseCommand
from grundy_lab.services.analysis_service import analysis_service, process

TSV_COLUMNS = ["graph_id", "n", "m", "girth", "triangle_free", "gamma", "s", "grundy", "exact", "error"]


class Command(BaseCommand):
    """Exact n, m, degrees, girth, gamma, s and Gamma per graph."""

    name = "invariants"
    help = "Compute exact invariants (girth, gamma, s, Grundy number) of each input graph"

    def add_arguments(self, parser):
        self.add_run_arguments(parser)

    def handle(self, **options) -> int:
        config = self.run_config(options)
        records = analysis_service.read_inputs(config.inputs)
        results = process("invariants", records, config.threads, {"budget_ms": config.budget_ms})

        if config.output_format == "json":
            for result in results:
                self.write_json(result)
        else:
            rows = []
            for result in results:
                row = {column: result.get(column) for column in TSV_COLUMNS}
                if result.get("record") == "error":
                    row["error"] = result["message"]
                rows.append(row)
            self.write_tsv(rows, TSV_COLUMNS)

        bracketed = sum(1 for r in results if r.get("record") == "invariants" and not r["exact"])
        return self.summarize(results, config.output_format, {"bracketed": bracketed}, anomalies=0)
