"""Build the leveled witness tree for (k, g) and check its count identities."""
import logging

from grundy_lab.commands.base import BaseCommand
from grundy_lab.core.witness import render_dot
from grundy_lab.errors import GrundyLabError
from grundy_lab.services.analysis_service import analysis_service, error_record

logger = logging.getLogger(__name__)

TSV_COLUMNS = [
    "k", "g", "case", "v_H", "s_prime", "uncovered", "in_bound_range",
    "constructed_v_H", "constructed_s_prime", "partition_valid",
]


class Command(BaseCommand):
    name = "witness"
    help = "Dump the witness tree of the girth bounds and compare its counts with the closed forms"

    def add_arguments(self, parser):
        parser.add_argument("--k", type=int, required=True, help="Grundy parameter")
        parser.add_argument("--g", type=int, required=True, help="Girth")
        parser.add_argument("--dot", type=str, default=None, help="Also write the tree as DOT to this path")
        parser.add_argument(
            "--any-k", action="store_true", help="Accept k below the range the girth bounds use"
        )
        self.add_run_arguments(parser, inputs=False)

    def handle(self, **options) -> int:
        config = self.run_config(options)
        k, g = options["k"], options["g"]
        try:
            record, W = analysis_service.witness(k, g, strict=not options.get("any_k"))
        except GrundyLabError as e:
            logger.error(f"witness k={k} g={g} rejected: {e}")
            self.write_json(error_record(f"witness:{k}:{g}", e).model_dump(mode="json"))
            return 1

        if options.get("dot"):
            with open(options["dot"], "w", encoding="utf-8") as f:
                f.write(render_dot(W))
        if config.output_format == "json":
            self.write_json(record.model_dump(mode="json"))
        else:
            self.write_tsv([record.identity.model_dump()], TSV_COLUMNS)

        identity = record.identity
        consistent = (
            identity.v_H == identity.constructed_v_H
            and identity.s_prime == identity.constructed_s_prime
            and identity.partition_valid
        )
        if not consistent:
            logger.error(f"Witness counts disagree for k={k}, g={g}: {identity}")
            return 1
        return 0
