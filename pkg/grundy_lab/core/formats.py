"""graph6 and edge-list readers and writers.

graph6 decoding and encoding go through networkx once the record has been
validated here, so that malformed input is reported with a byte offset.
Edge-list files look like::

    # comment
    4 3
    0 1
    1 2
    2 3

and several graphs may follow each other in one stream.
"""
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, TextIO, Tuple, Union

import networkx as nx

from grundy_lab.core.graph import Graph, from_networkx, graph_from_edges, to_networkx
from grundy_lab.errors import GraphError, GraphFormatError, GrundyLabError

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_VERTICES = 1 << 18
_EDGE_LIST_PAIR = re.compile(r"^\s*(-?\d+)\s+(-?\d+)\s*$")


@dataclass(frozen=True)
class GraphRecord:
    """One record from an input stream: a graph or the reason it was rejected."""

    graph_id: str
    graph: Optional[Graph] = None
    error: Optional[GrundyLabError] = None

    @property
    def ok(self) -> bool:
        return self.graph is not None


def _graph6_size(data: bytes) -> Tuple[int, int]:
    """Return ``(n, header_length)`` of a validated graph6 body."""
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphFormatError("truncated 6-byte vertex count", offset=len(data))
        n = 0
        for byte in data[2:8]:
            n = (n << 6) | (byte - 63)
        return n, 8
    if len(data) < 4:
        raise GraphFormatError("truncated 3-byte vertex count", offset=len(data))
    n = 0
    for byte in data[1:4]:
        n = (n << 6) | (byte - 63)
    return n, 4


def parse_graph6(text: Union[str, bytes]) -> Graph:
    """Decode one graph6 record.

    Text is encoded as UTF-8, with undecodable input bytes (read with
    ``surrogateescape``) restored, so any non-ASCII character fails the byte
    range check at its own offset.

    Raises:
        GraphFormatError: empty record, a byte outside 63..126, or a bit string
            that is shorter or longer than the vertex count requires. ``offset``
            is the byte position of the problem.
    """
    if isinstance(text, str):
        try:
            data = text.encode("utf-8", errors="surrogateescape")
        except UnicodeEncodeError as e:
            raise GraphFormatError(f"unencodable character at offset {e.start}", offset=e.start) from e
    else:
        data = bytes(text)
    data = data.rstrip(b"\r\n")
    start = 0
    if data.startswith(GRAPH6_HEADER.encode()):
        start = len(GRAPH6_HEADER)
    body = data[start:]
    if not body:
        raise GraphFormatError("empty graph6 record", offset=start)
    for position, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise GraphFormatError(
                f"byte {byte!r} at offset {start + position} is outside 63..126",
                offset=start + position,
            )
    n, size_length = _graph6_size(body)
    expected = (n * (n - 1) // 2 + 5) // 6
    actual = len(body) - size_length
    if actual < expected:
        raise GraphFormatError(
            f"truncated bit string: {actual} of {expected} bytes for n={n}",
            offset=start + len(body),
        )
    if actual > expected:
        raise GraphFormatError(
            f"{actual - expected} trailing bytes after the bit string for n={n}",
            offset=start + size_length + expected,
        )
    return from_networkx(nx.from_graph6_bytes(body))


def serialize_graph6(G: Graph) -> str:
    """Encode ``G`` as a canonical graph6 record without header or newline."""
    if G.n >= GRAPH6_MAX_VERTICES:
        raise GraphError(f"graph6 output supports n < {GRAPH6_MAX_VERTICES}, got {G.n}")
    return nx.to_graph6_bytes(to_networkx(G), header=False).decode("ascii").rstrip("\n")


def serialize_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    """Parse a single edge-list graph; extra content is an error."""
    records = list(read_edge_lists(text.splitlines(), source="edge-list"))
    if not records:
        raise GraphFormatError("no graph in edge-list input", offset=1)
    if len(records) > 1:
        raise GraphFormatError("more than one graph in edge-list input", offset=1)
    if records[0].error is not None:
        raise records[0].error
    return records[0].graph


def read_edge_lists(lines: Iterable[str], source: str = "-") -> Iterator[GraphRecord]:
    """Yield one record per edge-list graph in ``lines``.

    A malformed header ends the stream (there is no way to resynchronise);
    a malformed edge line rejects its graph and the reader continues after
    the declared ``m`` lines.
    """
    numbered = ((number, _strip_comment(line)) for number, line in enumerate(lines, start=1))
    payload = ((number, line) for number, line in numbered if line)
    for number, line in payload:
        graph_id = f"{source}:{number}"
        match = _EDGE_LIST_PAIR.match(line)
        if not match:
            yield GraphRecord(graph_id, error=GraphFormatError(f"bad header {line!r}", offset=number))
            return
        n, m = int(match.group(1)), int(match.group(2))
        if n < 0 or m < 0:
            yield GraphRecord(graph_id, error=GraphFormatError(f"negative size in {line!r}", offset=number))
            return
        edges: List[tuple] = []
        error: Optional[GraphFormatError] = None
        for _ in range(m):
            try:
                edge_number, edge_line = next(payload)
            except StopIteration:
                error = error or GraphFormatError(f"expected {m} edges, file ended", offset=number)
                break
            pair = _EDGE_LIST_PAIR.match(edge_line)
            if not pair:
                error = error or GraphFormatError(f"bad edge line {edge_line!r}", offset=edge_number)
                continue
            edges.append((int(pair.group(1)), int(pair.group(2))))
        if error is None:
            try:
                yield GraphRecord(graph_id, graph=graph_from_edges(n, edges))
            except GraphError as e:
                yield GraphRecord(graph_id, error=GraphFormatError(str(e), offset=number))
        else:
            yield GraphRecord(graph_id, error=error)


def read_graph6_lines(lines: Iterable[str], source: str = "-") -> Iterator[GraphRecord]:
    for number, line in enumerate(lines, start=1):
        record = line.strip()
        if not record or record.startswith("#"):
            continue
        graph_id = f"{source}:{number}"
        try:
            yield GraphRecord(graph_id, graph=parse_graph6(record))
        except GraphFormatError as e:
            yield GraphRecord(graph_id, error=e)


def detect_format(first_line: str) -> str:
    """``edge-list`` if the first payload line is ``n m``, otherwise ``graph6``."""
    return "edge-list" if _EDGE_LIST_PAIR.match(_strip_comment(first_line)) else "graph6"


def read_graphs(stream: Union[TextIO, Iterable[str]], source: str = "-") -> Iterator[GraphRecord]:
    """Read a graph6 or edge-list stream, autodetected by its first payload line."""
    lines = list(stream)
    first = next((line for line in lines if _strip_comment(line)), None)
    if first is None:
        return iter(())
    fmt = detect_format(first)
    logger.debug(f"Reading {source} as {fmt}")
    if fmt == "edge-list":
        return read_edge_lists(lines, source=source)
    return read_graph6_lines(lines, source=source)
