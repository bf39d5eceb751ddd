"""Per-graph analysis behind the commands: invariants, bound reports, oracle checks."""
import concurrent.futures
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from grundy_lab.config import settings
from grundy_lab.core import bounds
from grundy_lab.core.coloring import (
    GrundyWitness,
    first_fit,
    grundy_number_bruteforce,
    grundy_number_exact,
    is_grundy_coloring,
)
from grundy_lab.core.domination import (
    StarPartition,
    domination_number_bruteforce,
    domination_number_exact,
    first_class_dominates,
    is_star_partition,
    star_partition_from_dominating_set,
    star_partition_number_exact,
)
from grundy_lab.core.formats import GraphRecord, read_graphs, serialize_graph6
from grundy_lab.core.generators import GeneratorSpec, build, random_graphs
from grundy_lab.core.graph import Graph, girth, is_triangle_free
from grundy_lab.core.witness import (
    LeveledWitness,
    count_identities,
    depth_for_girth,
    witness_star_partition,
    witness_tree,
)
from grundy_lab.errors import GrundyLabError, InputError
from grundy_lab.schemas.models import (
    BoundEntry,
    BoundReport,
    CountIdentitySchema,
    DominationWitnessSchema,
    ErrorRecord,
    GeneratedGraphRecord,
    GrundyWitnessSchema,
    InvariantRecord,
    LeveledWitnessSchema,
    OracleRecord,
    StarPartitionSchema,
    WitnessRecord,
    WitnessVertexSchema,
)

logger = logging.getLogger(__name__)


def grundy_schema(witness: GrundyWitness) -> GrundyWitnessSchema:
    return GrundyWitnessSchema(
        k=witness.k,
        colors=list(witness.coloring.colors),
        ordering=None if witness.ordering is None else list(witness.ordering),
        exact=witness.exact,
        upper_bound=witness.upper_bound,
    )


def partition_schema(partition: StarPartition) -> StarPartitionSchema:
    return StarPartitionSchema.model_validate(partition)


def witness_schema(W: LeveledWitness) -> LeveledWitnessSchema:
    return LeveledWitnessSchema(
        k=W.k,
        depth=W.depth,
        doubled=W.doubled,
        roots=list(W.roots),
        levels=W.levels,
        vertices=[
            WitnessVertexSchema(
                id=v,
                level=W.level_of[v],
                color=W.demanded_color[v],
                parent=None if W.parent[v] < 0 else W.parent[v],
            )
            for v in range(W.graph.n)
        ],
        edges=[list(edge) for edge in W.graph.edges],
    )


def error_record(graph_id: str, error: Exception) -> ErrorRecord:
    return ErrorRecord(
        graph_id=graph_id,
        error=type(error).__name__,
        message=str(error),
        offset=getattr(error, "offset", None),
    )


class AnalysisService:
    """Turns graphs into output records."""

    def read_inputs(self, paths: Sequence[str]) -> List[GraphRecord]:
        """Read every input path (``-`` is stdin), keeping input order.

        Undecodable bytes are kept as surrogates so they fail their own record.
        A path that cannot be read becomes a single ``InputError`` record.
        """
        records: List[GraphRecord] = []
        for path in paths:
            if path == "-":
                if hasattr(sys.stdin, "reconfigure"):
                    sys.stdin.reconfigure(errors="surrogateescape")
                records.extend(read_graphs(sys.stdin, source="stdin"))
                continue
            try:
                with open(path, "r", encoding="utf-8", errors="surrogateescape") as f:
                    records.extend(read_graphs(f, source=Path(path).name))
            except OSError as e:
                logger.error(f"Cannot read input {path}: {e}")
                records.append(GraphRecord(path, error=InputError(f"cannot read {path}: {e.strerror or e}")))
        logger.info(f"Read {len(records)} graph records from {len(paths)} input(s)")
        return records

    def invariants(self, G: Graph, graph_id: str, budget_ms: Optional[int] = None) -> InvariantRecord:
        domination = domination_number_exact(G)
        grundy = grundy_number_exact(G, budget_ms=budget_ms, gamma=domination.gamma)
        s, partition = star_partition_number_exact(G)
        equality = None
        if grundy.exact:
            found = bounds.find_equality_partition(G, domination.gamma, grundy.k)
            if found is not None:
                equality = {"Q": list(found[0]), "D": list(found[1])}
        return InvariantRecord(
            graph_id=graph_id,
            n=G.n,
            m=G.m,
            degrees=G.degrees,
            girth=girth(G).value,
            triangle_free=is_triangle_free(G),
            gamma=domination.gamma,
            domination=DominationWitnessSchema(gamma=domination.gamma, set=list(domination.set)),
            s=s,
            star_partition=partition_schema(partition),
            grundy=grundy.k,
            exact=grundy.exact,
            grundy_witness=grundy_schema(grundy),
            first_class_size=sum(1 for c in grundy.coloring.colors if c == 1),
            equality_partition=equality,
        )

    def check_bounds(self, G: Graph, graph_id: str, budget_ms: Optional[int] = None) -> BoundReport:
        report = bounds.check_all(G, graph_id=graph_id, budget_ms=budget_ms)
        return BoundReport(
            graph_id=report.graph_id,
            n=report.n,
            m=report.m,
            girth=report.girth.value,
            delta=report.delta,
            gamma=report.gamma,
            triangle_free=report.triangle_free,
            grundy=report.grundy,
            exact=report.exact,
            grundy_upper=report.grundy_upper,
            entries=[BoundEntry.model_validate(entry) for entry in report.entries],
            equality_characterization=report.equality_characterization,
            beats_delta=report.beats_delta,
            beats_twhz=report.beats_twhz,
            improvement=report.improvement,
            certificates=report.certificates,
            anomalies=report.anomalies,
        )

    def oracle(self, G: Graph, graph_id: str, nmax: int) -> OracleRecord:
        """Cross-check every exact solver against its brute-force counterpart."""
        if G.n > nmax:
            logger.warning(f"Oracle skipped {graph_id}: n={G.n} exceeds nmax={nmax}")
            return OracleRecord(graph_id=graph_id, n=G.n, skipped=True, reason=f"n={G.n} exceeds nmax={nmax}")
        checks: Dict[str, Any] = {}
        divergences: List[str] = []

        def compare(name: str, solver: Any, oracle: Any) -> None:
            checks[name] = {"solver": solver, "oracle": oracle}
            if solver != oracle:
                divergences.append(name)

        grundy = grundy_number_exact(G)
        compare("grundy", grundy.k, grundy_number_bruteforce(G).k)
        domination = domination_number_exact(G)
        compare("gamma", domination.gamma, domination_number_bruteforce(G).gamma)
        if G.n and not G.isolated_vertices():
            s_free, _ = star_partition_number_exact(G, use_domination_bound=False)
            compare("s_equals_gamma", s_free, domination.gamma)
            partition = star_partition_from_dominating_set(G, domination.set)
            compare("construction_valid", bool(is_star_partition(G, partition)) and len(partition) <= domination.gamma, True)
        compare("witness_valid", bool(is_grundy_coloring(G, grundy.coloring)), True)
        if grundy.ordering is not None:
            compare("witness_ordering", first_fit(G, grundy.ordering).num_colors, grundy.k)
        compare("first_class_dominates", G.n == 0 or first_class_dominates(G, grundy, domination.gamma), True)
        compare(
            "equality_characterization",
            bounds.equality_characterization_holds(G, domination.gamma, grundy),
            grundy.k == G.n - domination.gamma + 1,
        )
        if divergences:
            logger.error(f"Oracle divergences on {graph_id}: {divergences}")
        return OracleRecord(graph_id=graph_id, n=G.n, checks=checks, divergences=divergences)

    def witness(self, k: int, g: int, strict: bool = True) -> Tuple[WitnessRecord, LeveledWitness]:
        identity = count_identities(k, g, strict=strict)
        W = witness_tree(k, depth_for_girth(g), doubled=g % 2 == 0)
        partition = witness_star_partition(W, g)
        record = WitnessRecord(
            witness=witness_schema(W),
            identity=CountIdentitySchema(
                k=identity.k,
                g=identity.g,
                case=identity.case,
                v_H=identity.v_H,
                s_prime=identity.s_prime,
                uncovered=identity.uncovered,
                in_bound_range=identity.in_bound_range,
                constructed_v_H=W.graph.n,
                constructed_s_prime=len(partition),
                partition_valid=bool(is_star_partition(W.graph, partition)),
            ),
        )
        return record, W

    def generate(self, spec: GeneratorSpec, count: int = 1) -> List[GeneratedGraphRecord]:
        family = spec.family.replace("-", "_")
        if family == "random":
            params = spec.params
            graphs = random_graphs(params["n"], params["p"], params["seed"], count)
            return [
                GeneratedGraphRecord(
                    graph_id=f"random:{i}", family=family, params=params,
                    graph6=serialize_graph6(G), n=G.n, m=G.m,
                )
                for i, G in enumerate(graphs)
            ]
        generated = build(spec)
        G = generated.graph
        return [
            GeneratedGraphRecord(
                graph_id=f"{family}:0",
                family=family,
                params=spec.params,
                graph6=serialize_graph6(G),
                n=G.n,
                m=G.m,
                labeling=None if generated.labeling is None else list(generated.labeling.colors),
                expected=generated.expected,
            )
        ]


analysis_service = AnalysisService()


def _run_task(task: str, graph_id: str, G: Graph, options: Dict[str, Any]) -> Dict[str, Any]:
    """Pool entry point; returns a JSON-ready dict, errors included."""
    try:
        if task == "invariants":
            record = analysis_service.invariants(G, graph_id, options.get("budget_ms"))
        elif task == "check-bounds":
            record = analysis_service.check_bounds(G, graph_id, options.get("budget_ms"))
        elif task == "oracle":
            record = analysis_service.oracle(G, graph_id, options.get("nmax", settings.nmax))
        else:
            raise ValueError(f"unknown task {task!r}")
    except GrundyLabError as e:
        logger.error(f"{task} failed on {graph_id}: {e}")
        record = error_record(graph_id, e)
    return record.model_dump(mode="json")


def process(
    task: str,
    records: Sequence[GraphRecord],
    threads: int = 1,
    options: Optional[Dict[str, Any]] = None,
) -> List[Dict[str, Any]]:
    """Run ``task`` on every record and return results in input order.

    Parse failures become error records without reaching the pool. With more
    than one thread the work goes to a process pool; results are still read
    back in submission order, so the output does not depend on ``threads``.
    """
    options = options or {}
    results: List[Any] = []
    executor: Optional[concurrent.futures.ProcessPoolExecutor] = None
    if threads > 1:
        executor = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
    try:
        for record in records:
            if not record.ok:
                results.append(error_record(record.graph_id, record.error).model_dump(mode="json"))
            elif executor is None:
                results.append(_run_task(task, record.graph_id, record.graph, options))
            else:
                results.append(executor.submit(_run_task, task, record.graph_id, record.graph, options))
        return [r.result() if isinstance(r, concurrent.futures.Future) else r for r in results]
    finally:
        if executor is not None:
            executor.shutdown()
