"""Immutable simple undirected graphs over the dense vertex ids 0..n-1."""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from grundy_lab.errors import GraphError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``adjacency[v]`` is the neighbor set of ``v``. Construction checks that the
    ids are exactly ``0..n-1``, that there are no self-loops and that the
    adjacency is symmetric. ``masks[v]`` is the same neighborhood as an int
    bitset, which is what the solvers work on.
    """

    n: int
    adjacency: Tuple[FrozenSet[int], ...]
    masks: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise GraphError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        masks = []
        for v, neighbors in enumerate(self.adjacency):
            mask = 0
            for u in neighbors:
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex {v} has out-of-range neighbor {u}", index=v)
                if u == v:
                    raise GraphError(f"vertex {v} has a self-loop", index=v)
                if v not in self.adjacency[u]:
                    raise GraphError(f"adjacency is not symmetric at ({v}, {u})", index=v)
                mask |= 1 << u
            masks.append(mask)
        object.__setattr__(self, "masks", tuple(masks))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(len(neighbors) for neighbors in self.adjacency) // 2

    @property
    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> List[int]:
        return [len(neighbors) for neighbors in self.adjacency]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> FrozenSet[int]:
        return self.adjacency[v] | {v}

    def closed_mask(self, v: int) -> int:
        return self.masks[v] | (1 << v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def isolated_vertices(self) -> List[int]:
        return [v for v in range(self.n) if not self.adjacency[v]]


@dataclass(frozen=True)
class Girth:
    """Length of a shortest cycle; ``value is None`` stands for Infinite."""

    value: Optional[int] = None

    def __post_init__(self):
        if self.value is not None and self.value < 3:
            raise GraphError(f"finite girth must be at least 3, got {self.value}")

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    @property
    def is_odd(self) -> bool:
        return self.value is not None and self.value % 2 == 1

    @property
    def is_even(self) -> bool:
        return self.value is not None and self.value % 2 == 0

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITE_GIRTH = Girth()


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on ``n`` vertices, collapsing duplicate edges.

    Raises:
        GraphError: an endpoint is out of range or an edge is a self-loop;
            ``index`` is the position of the offending pair.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    neighbors: List[set] = [set() for _ in range(n)]
    for index, edge in enumerate(edges):
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(
                f"edge {index} ({u}, {v}): endpoint out of range for n={n}", index=index
            )
        if u == v:
            raise GraphError(f"edge {index} ({u}, {v}): self-loop", index=index)
        neighbors[u].add(v)
        neighbors[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in neighbors))


def empty_graph(n: int) -> Graph:
    return graph_from_edges(n, [])


def induced_subgraph(G: Graph, S: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """Return ``G[S]`` relabelled to ``0..|S|-1`` and the id table.

    ``table[i]`` is the vertex of ``G`` that became vertex ``i``; vertices keep
    their relative order.
    """
    table = tuple(sorted(set(S)))
    for v in table:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} is out of range for n={G.n}", index=v)
    position = {v: i for i, v in enumerate(table)}
    adjacency = tuple(
        frozenset(position[u] for u in G.adjacency[v] if u in position) for v in table
    )
    return Graph(len(table), adjacency), table


def mask_to_vertices(mask: int) -> List[int]:
    vertices = []
    while mask:
        low = mask & -mask
        vertices.append(low.bit_length() - 1)
        mask ^= low
    return vertices


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def girth(G: Graph) -> Girth:
    """Exact girth by breadth-first search from every root.

    From each root the first non-tree edge closes a cycle of length
    ``dist[u] + dist[w] + 1``; the minimum over all roots is the girth.
    """
    best: Optional[int] = None
    for root in range(G.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in G.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
        if best == 3:
            break
    return Girth(best)


def max_degree(G: Graph) -> int:
    return max(G.degrees, default=0)


def min_degree(G: Graph) -> int:
    return min(G.degrees, default=0)


def is_triangle_free(G: Graph) -> bool:
    masks = G.masks
    for u, v in G.edges:
        if masks[u] & masks[v]:
            return False
    return True


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    seen = 1
    frontier = 1
    while frontier:
        reached = 0
        for v in mask_to_vertices(frontier):
            reached |= G.masks[v]
        frontier = reached & ~seen
        seen |= frontier
    return seen == G.full_mask


def is_independent(G: Graph, vertices: Iterable[int]) -> bool:
    mask = vertices_to_mask(vertices)
    return all(not (G.masks[v] & mask) for v in mask_to_vertices(mask))


def is_clique(G: Graph, vertices: Iterable[int]) -> bool:
    mask = vertices_to_mask(vertices)
    return all((G.masks[v] | (1 << v)) & mask == mask for v in mask_to_vertices(mask))


def to_networkx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def from_networkx(H: nx.Graph) -> Graph:
    """Convert a networkx graph, relabelling its nodes to ``0..n-1`` in node order."""
    position = {node: i for i, node in enumerate(H.nodes())}
    return graph_from_edges(len(position), [(position[a], position[b]) for a, b in H.edges()])
