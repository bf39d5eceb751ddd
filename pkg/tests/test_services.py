"""Tests for the analysis service layer."""
from unittest.mock import patch

import pytest

from grundy_lab.core.formats import GraphRecord, read_graphs, serialize_graph6
from grundy_lab.core.generators import GeneratorSpec, cycle, path, petersen
from grundy_lab.core.graph import graph_from_edges
from grundy_lab.errors import GraphFormatError, InputError, ParameterError
from grundy_lab.services.analysis_service import AnalysisService, analysis_service, process


class TestAnalysisService:
    """Tests for AnalysisService."""

    def test_singleton(self):
        """Test the module-level service instance."""
        assert isinstance(analysis_service, AnalysisService)

    def test_invariants(self, petersen_graph):
        """Test the invariant record of the Petersen graph."""
        record = AnalysisService().invariants(petersen_graph, "petersen")

        assert record.record == "invariants"
        assert (record.n, record.m, record.girth) == (10, 15, 5)
        assert record.triangle_free
        assert (record.gamma, record.s, record.grundy) == (3, 3, 4)
        assert record.exact
        assert record.first_class_size >= record.gamma
        assert record.equality_partition is None
        assert len(record.star_partition.parts) == 3

    def test_invariants_infinite_girth(self, p4):
        """Test that forests report girth as null."""
        record = AnalysisService().invariants(p4, "p4")

        assert record.girth is None
        assert record.grundy == 3
        assert record.gamma == 2

    def test_invariants_equality_partition(self, clique_with_pendants):
        """Test that an extremal graph reports its (Q, D) partition."""
        record = AnalysisService().invariants(clique_with_pendants, "corona")

        assert record.equality_partition is not None
        assert len(record.equality_partition["Q"]) == 3

    def test_check_bounds(self, petersen_graph):
        """Test the bound report schema."""
        report = AnalysisService().check_bounds(petersen_graph, "petersen")

        assert report.record == "bounds"
        assert report.girth == 5
        assert len(report.entries) == 9
        assert report.anomalies == []
        dumped = report.model_dump(mode="json")
        assert dumped["entries"][0]["name"] == "delta"

    def test_oracle(self, small_graphs):
        """Test that every solver agrees with its oracle on the fixtures."""
        service = AnalysisService()
        for name, G in small_graphs.items():
            record = service.oracle(G, name, nmax=8)
            assert not record.skipped, name
            assert record.divergences == [], name

    def test_oracle_skips_large_graphs(self, petersen_graph):
        """Test that graphs above nmax are skipped."""
        record = AnalysisService().oracle(petersen_graph, "petersen", nmax=8)

        assert record.skipped
        assert "exceeds" in record.reason

    def test_witness(self):
        """Test the witness record for k=4, g=5."""
        record, W = AnalysisService().witness(4, 5)

        assert record.identity.v_H == record.identity.constructed_v_H == 7
        assert record.identity.s_prime == record.identity.constructed_s_prime == 3
        assert record.identity.partition_valid
        assert len(record.witness.vertices) == W.graph.n
        assert record.witness.vertices[0].parent is None

    def test_witness_below_range(self):
        """Test that k below the bound range needs strict=False."""
        service = AnalysisService()
        with pytest.raises(ParameterError):
            service.witness(4, 7)

        record, _ = service.witness(4, 7, strict=False)
        assert record.identity.v_H == 8
        assert not record.identity.in_bound_range

    def test_generate_family(self):
        """Test a generated family record with its labeling."""
        records = AnalysisService().generate(GeneratorSpec("extremal-even", {"t": 3}))

        assert len(records) == 1
        assert records[0].n == 6
        assert records[0].expected["grundy"] == 4
        assert records[0].labeling == [4, 2, 1, 3, 2, 1]

    def test_generate_random(self):
        """Test that random streams produce numbered records."""
        records = AnalysisService().generate(GeneratorSpec("random", {"n": 6, "p": 0.5, "seed": 2}), count=3)

        assert [r.graph_id for r in records] == ["random:0", "random:1", "random:2"]

    def test_read_inputs_missing_path(self, tmp_path):
        """Test that a path that cannot be opened becomes one error record."""
        missing = str(tmp_path / "absent.g6")
        records = AnalysisService().read_inputs([missing])

        assert len(records) == 1
        assert not records[0].ok
        assert records[0].graph_id == missing
        assert isinstance(records[0].error, InputError)

    def test_read_inputs_keeps_undecodable_lines(self, tmp_path):
        """Test that invalid UTF-8 is kept for the graph6 reader to reject."""
        source = tmp_path / "mixed.g6"
        source.write_bytes(b"A_\n\xff\nD??\n")
        records = AnalysisService().read_inputs([str(source)])

        assert [r.ok for r in records] == [True, False, True]
        assert records[1].error.offset == 0


class TestProcess:
    """Tests for batch processing."""

    def records(self):
        return [
            GraphRecord("a", graph=cycle(5)),
            GraphRecord("b", error=GraphFormatError("bad byte", offset=2)),
            GraphRecord("c", graph=path(4)),
            GraphRecord("d", graph=petersen()),
        ]

    def test_order_and_errors(self):
        """Test results follow input order with parse errors in place."""
        results = process("invariants", self.records())

        assert [r["graph_id"] for r in results] == ["a", "b", "c", "d"]
        assert [r["record"] for r in results] == ["invariants", "error", "invariants", "invariants"]
        assert results[1]["offset"] == 2

    def test_threads_do_not_change_output(self):
        """Test that a process pool gives the same records as a single thread."""
        sequential = process("check-bounds", self.records(), threads=1)
        pooled = process("check-bounds", self.records(), threads=2)

        assert pooled == sequential

    def test_solver_errors_become_records(self):
        """Test that a failing analysis yields an error record, not an exception."""
        with patch.object(analysis_service, "invariants", side_effect=ParameterError("too large")):
            results = process("invariants", [GraphRecord("x", graph=graph_from_edges(2, [(0, 1)]))])

        assert results[0]["record"] == "error"
        assert results[0]["error"] == "ParameterError"

    def test_unknown_task(self):
        """Test that unknown tasks are programming errors."""
        with pytest.raises(ValueError):
            process("nothing", [GraphRecord("x", graph=cycle(3))])

    def test_serialized_input_round_trip(self):
        """Test that a graph6 record read back analyses like the original."""
        records = list(read_graphs([serialize_graph6(petersen()) + "\n"], source="mem"))
        results = process("invariants", records)

        assert results[0]["graph_id"] == "mem:1"
        assert results[0]["grundy"] == 4
