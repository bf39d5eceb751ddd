"""Cross-check the exact solvers against brute-force oracles."""
from grundy_lab.commands.base import BaseCommand
from grundy_lab.services.analysis_service import analysis_service, process

TSV_COLUMNS = ["graph_id", "n", "skipped", "reason", "divergences"]


class Command(BaseCommand):
    name = "oracle"
    help = "Compare the exact Grundy, domination and star partition solvers with brute force for n <= nmax"

    def add_arguments(self, parser):
        self.add_run_arguments(parser)

    def handle(self, **options) -> int:
        config = self.run_config(options)
        records = analysis_service.read_inputs(config.inputs)
        results = process("oracle", records, config.threads, {"nmax": config.nmax})

        oracle_results = [r for r in results if r.get("record") == "oracle"]
        divergent = sum(1 for r in oracle_results if r["divergences"])
        counts = {
            "checked": sum(1 for r in oracle_results if not r["skipped"]),
            "skipped": sum(1 for r in oracle_results if r["skipped"]),
            "divergent": divergent,
        }
        if config.output_format == "json":
            for result in results:
                self.write_json(result)
        else:
            rows = [
                {
                    "graph_id": r["graph_id"],
                    "n": r.get("n"),
                    "skipped": r.get("skipped"),
                    "reason": r.get("reason") or r.get("message", ""),
                    "divergences": ",".join(r.get("divergences", [])),
                }
                for r in results
            ]
            self.write_tsv(rows, TSV_COLUMNS)
        return self.summarize(results, config.output_format, counts, anomalies=divergent)
