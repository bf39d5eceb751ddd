"""Dominating sets, star partitions and the star partition number."""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from grundy_lab.config import settings
from grundy_lab.core.coloring import GrundyWitness, ValidationResult
from grundy_lab.core.graph import (
    Graph,
    induced_subgraph,
    is_triangle_free,
    mask_to_vertices,
    vertices_to_mask,
)
from grundy_lab.errors import (
    EnumerationLimitError,
    GraphError,
    InternalConsistencyError,
    ParameterError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StarPart:
    apex: int
    members: Tuple[int, ...]


@dataclass(frozen=True)
class StarPartition:
    """Ordered parts, each headed by an apex adjacent to its other members."""

    parts: Tuple[StarPart, ...]

    def __len__(self) -> int:
        return len(self.parts)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, Iterable[int]]]) -> "StarPartition":
        return cls(tuple(StarPart(apex, tuple(sorted(set(members) | {apex}))) for apex, members in pairs))


@dataclass(frozen=True)
class DominationWitness:
    gamma: int
    set: Tuple[int, ...]


def _check_vertices(G: Graph, vertices: Iterable[int]) -> List[int]:
    checked = []
    for v in vertices:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} is out of range for n={G.n}", index=v)
        checked.append(v)
    return checked


def _dominated_mask(G: Graph, vertices: Iterable[int]) -> int:
    covered = 0
    for v in vertices:
        covered |= G.closed_mask(v)
    return covered


def is_dominating_set(G: Graph, D: Iterable[int]) -> bool:
    D = _check_vertices(G, D)
    return _dominated_mask(G, D) == G.full_mask


def domination_number_bruteforce(G: Graph, limit: Optional[int] = None) -> DominationWitness:
    """Smallest dominating set by enumerating subsets in increasing size."""
    limit = settings.subset_oracle_limit if limit is None else limit
    if G.n > limit:
        raise EnumerationLimitError(f"subset enumeration on n={G.n} exceeds the limit n <= {limit}")
    closed = [G.closed_mask(v) for v in range(G.n)]
    for size in range(G.n + 1):
        for D in itertools.combinations(range(G.n), size):
            covered = 0
            for v in D:
                covered |= closed[v]
            if covered == G.full_mask:
                return DominationWitness(size, D)
    raise InternalConsistencyError("the full vertex set failed to dominate")


class _DominationSearch:
    """Branch and bound over the closed neighborhood of a hardest undominated vertex."""

    def __init__(self, G: Graph):
        self.G = G
        self.closed = [G.closed_mask(v) for v in range(G.n)]
        self.best: Optional[int] = None
        self.best_set = 0
        self.nodes = 0

    def lower_bound(self, undominated: int, candidates: int) -> int:
        remaining = bin(undominated).count("1")
        if not remaining:
            return 0
        cover = max(bin(self.closed[v] & undominated).count("1") for v in mask_to_vertices(candidates))
        return -(-remaining // cover)

    def search(self, chosen: int, size: int, undominated: int) -> None:
        self.nodes += 1
        if not undominated:
            if self.best is None or size < self.best:
                self.best, self.best_set = size, chosen
            return
        candidates = 0
        for u in mask_to_vertices(undominated):
            candidates |= self.closed[u]
        if self.best is not None and size + self.lower_bound(undominated, candidates) >= self.best:
            return
        target = min(mask_to_vertices(undominated), key=lambda u: (bin(self.closed[u]).count("1"), u))
        options = sorted(
            mask_to_vertices(self.closed[target]),
            key=lambda v: (-bin(self.closed[v] & undominated).count("1"), v),
        )
        for v in options:
            self.search(chosen | (1 << v), size + 1, undominated & ~self.closed[v])


def domination_number_exact(G: Graph) -> DominationWitness:
    """Exact gamma(G) with a minimum dominating set.

    Every dominating set must contain a vertex of ``N[v]`` for the undominated
    vertex ``v`` with the smallest closed neighborhood, so the search branches
    there and prunes with ``ceil(undominated / max coverage)``.
    Neighbors are tried by decreasing new coverage, then by id, and the
    returned set is the first minimum one reached in that order.
    """
    if G.n == 0:
        return DominationWitness(0, ())
    search = _DominationSearch(G)
    search.search(0, 0, G.full_mask)
    logger.debug(f"Domination search on n={G.n}: gamma={search.best}, {search.nodes} nodes")
    return DominationWitness(search.best, tuple(mask_to_vertices(search.best_set)))


def star_partition_from_dominating_set(G: Graph, D: Iterable[int]) -> StarPartition:
    """Turn a dominating set into a star partition with at most ``|D|`` parts.

    Dominators are taken in ascending id; each one heads a part made of itself
    and its neighbors that are neither dominators nor claimed by an earlier
    part. A dominator left with nothing to claim becomes a singleton star.

    Raises:
        ParameterError: ``D`` does not dominate ``G`` or ``G`` has an isolated vertex.
    """
    dominators = sorted(set(_check_vertices(G, D)))
    isolated = G.isolated_vertices()
    if isolated:
        raise ParameterError(f"graph has isolated vertices {isolated}")
    if _dominated_mask(G, dominators) != G.full_mask:
        raise ParameterError(f"{dominators} is not a dominating set")
    claimed = vertices_to_mask(dominators)
    parts = []
    for u in dominators:
        leaves = G.masks[u] & ~claimed
        claimed |= leaves
        parts.append((u, mask_to_vertices(leaves)))
    return StarPartition.from_pairs(parts)


def is_star_partition(G: Graph, P: StarPartition) -> ValidationResult:
    """Check that ``P`` partitions ``V(G)`` and every apex sees its whole part."""
    seen: Dict[int, int] = {}
    for index, part in enumerate(P.parts):
        if part.apex not in part.members:
            return ValidationResult(False, f"part {index}: apex {part.apex} is not a member")
        for v in part.members:
            if not 0 <= v < G.n:
                return ValidationResult(False, f"part {index}: vertex {v} is out of range")
            if v in seen:
                return ValidationResult(False, f"vertex {v} is in parts {seen[v]} and {index}")
            seen[v] = index
            if v != part.apex and not G.has_edge(part.apex, v):
                return ValidationResult(False, f"part {index}: apex {part.apex} is not adjacent to {v}")
    missing = [v for v in range(G.n) if v not in seen]
    if missing:
        return ValidationResult(False, f"vertices {missing} are in no part")
    return ValidationResult(True)


class _StarPartitionSearch:
    """Assign every vertex the role apex or leaf, in id order.

    A leaf must end up adjacent to some apex; a leaf whose neighbors are all
    decided and none is an apex kills the branch. The apex count is pruned
    against the best partition found so far.
    """

    UNDECIDED, APEX, LEAF = 0, 1, 2

    def __init__(self, G: Graph, lower: int, upper: int, best_apexes: Sequence[int]):
        self.G = G
        self.role = [self.UNDECIDED] * G.n
        self.lower = lower
        self.best = upper
        self.best_apexes = list(best_apexes)
        self.nodes = 0

    def _stranded(self, v: int) -> bool:
        if self.role[v] != self.LEAF:
            return False
        return all(self.role[u] == self.LEAF for u in self.G.adjacency[v])

    def search(self, v: int, apexes: int) -> bool:
        """Return True once a partition meeting the lower bound is found."""
        self.nodes += 1
        if apexes >= self.best:
            return False
        if v == self.G.n:
            self.best = apexes
            self.best_apexes = [u for u in range(self.G.n) if self.role[u] == self.APEX]
            return self.best <= self.lower
        for role in (self.LEAF, self.APEX):
            if role == self.APEX and apexes + 1 >= self.best:
                continue
            self.role[v] = role
            checks = [v] + [u for u in self.G.adjacency[v] if u < v]
            if not any(self._stranded(u) for u in checks):
                if self.search(v + 1, apexes + (role == self.APEX)):
                    self.role[v] = self.UNDECIDED
                    return True
            self.role[v] = self.UNDECIDED
        return False


def _partition_from_apexes(G: Graph, apexes: Sequence[int]) -> StarPartition:
    apex_set = set(apexes)
    members: Dict[int, List[int]] = {a: [] for a in sorted(apex_set)}
    for v in range(G.n):
        if v in apex_set:
            continue
        owner = min(u for u in G.adjacency[v] if u in apex_set)
        members[owner].append(v)
    return StarPartition.from_pairs(members.items())


def star_partition_number_exact(
    G: Graph, use_domination_bound: bool = True
) -> Tuple[int, StarPartition]:
    """Exact s(G) with a witness partition.

    The apexes of a star partition form a dominating set and every dominating
    set yields a star partition, so with ``use_domination_bound`` gamma is both
    the lower bound and the first upper bound. With
    ``use_domination_bound=False`` the search starts from all-singletons and
    the bound 1 and never consults gamma.

    Raises:
        InternalConsistencyError: ``G`` has no isolated vertices and ``s != gamma``.
    """
    if G.n == 0:
        return 0, StarPartition(())
    gamma: Optional[DominationWitness] = None
    if use_domination_bound:
        gamma = domination_number_exact(G)
        lower, upper_apexes = gamma.gamma, list(gamma.set)
    else:
        lower, upper_apexes = 1, list(range(G.n))
    search = _StarPartitionSearch(G, lower, len(upper_apexes), upper_apexes)
    if lower < len(upper_apexes):
        search.search(0, 0)
    s = search.best
    partition = _partition_from_apexes(G, search.best_apexes)
    logger.debug(f"Star partition search on n={G.n}: s={s}, {search.nodes} nodes")
    if gamma is not None and not G.isolated_vertices() and s != gamma.gamma:
        raise InternalConsistencyError(
            f"s(G)={s} differs from gamma(G)={gamma.gamma} on a graph without isolated vertices"
        )
    return s, partition


def first_class_dominates(G: Graph, witness: GrundyWitness, gamma: int) -> bool:
    """gamma <= |C_1|: the first color class of a Grundy coloring is a maximal independent set."""
    first = [v for v, c in enumerate(witness.coloring.colors) if c == 1]
    return is_dominating_set(G, first) and gamma <= len(first)


def top_color_star_partition(G: Graph, witness: GrundyWitness) -> StarPartition:
    """``N[v]`` for a vertex ``v`` of top color, plus singletons: n - k + 1 parts.

    ``v`` sees one vertex of each lower color, so ``N[v]`` holds at least ``k``
    vertices. Only ``k - 1`` chosen neighbors join the star; the rest stay
    singletons.
    """
    colors = witness.coloring.colors
    if not colors:
        return StarPartition(())
    top = max(colors)
    v = min(u for u, c in enumerate(colors) if c == top)
    picked = [min(u for u in G.adjacency[v] if colors[u] == c) for c in range(1, top)]
    star = set(picked) | {v}
    parts = [(v, picked)] + [(u, []) for u in range(G.n) if u not in star]
    return StarPartition.from_pairs(parts)


@dataclass(frozen=True)
class TriangleFreeCertificate:
    """The two stars covering ``u``, its color witnesses and those of its color k-1 neighbor."""

    vertices: Tuple[int, ...]
    partition: StarPartition

    def validate(self, G: Graph) -> ValidationResult:
        H, table = induced_subgraph(G, self.vertices)
        position = {v: i for i, v in enumerate(table)}
        relabelled = StarPartition(
            tuple(
                StarPart(position[part.apex], tuple(position[v] for v in part.members))
                for part in self.partition.parts
            )
        )
        return is_star_partition(H, relabelled)


def triangle_free_certificate(G: Graph, witness: GrundyWitness) -> TriangleFreeCertificate:
    """Build the stars ``A = {u, v_1..v_(k-2)}`` and ``B = {v_(k-1), u_1..u_(k-2)}``.

    ``u`` is the first vertex of top color ``k``, ``v_i`` its smallest neighbor
    of color ``i`` and ``u_i`` the smallest neighbor of color ``i`` of
    ``v_(k-1)``. Triangle-freeness keeps the two stars disjoint.

    Raises:
        ParameterError: ``G`` has a triangle or the witness uses fewer than 2 colors.
    """
    if not is_triangle_free(G):
        raise ParameterError("the two-star certificate needs a triangle-free graph")
    colors = witness.coloring.colors
    k = max(colors, default=0)
    if k < 2:
        raise ParameterError(f"the two-star certificate needs at least 2 colors, got {k}")

    def lowest_neighbor(v: int, color: int) -> int:
        return min(w for w in G.adjacency[v] if colors[w] == color)

    u = min(v for v, c in enumerate(colors) if c == k)
    vs = [lowest_neighbor(u, i) for i in range(1, k)]
    pivot = vs[-1]
    us = [lowest_neighbor(pivot, i) for i in range(1, k - 1)]
    partition = StarPartition.from_pairs([(u, vs[:-1]), (pivot, us)])
    return TriangleFreeCertificate(tuple(sorted({u, *vs, *us})), partition)
