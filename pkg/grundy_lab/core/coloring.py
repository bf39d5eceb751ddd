"""First-Fit colorings, Grundy validation, exact Grundy numbers and tree atoms.

Colors are 1-based everywhere. A Grundy k-coloring is a proper coloring with
colors 1..k in which every vertex of color j sees every color i < j.
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from grundy_lab.config import settings
from grundy_lab.core.graph import Graph, girth, graph_from_edges, mask_to_vertices
from grundy_lab.errors import EnumerationLimitError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of a validity predicate; truthy iff ``ok``."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Coloring:
    colors: Tuple[int, ...]

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> List[List[int]]:
        """Color classes; ``classes()[i]`` holds the vertices of color ``i + 1``."""
        classes: List[List[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.colors):
            classes[c - 1].append(v)
        return classes


@dataclass(frozen=True)
class GrundyWitness:
    """A Grundy coloring certifying ``k`` colors.

    ``exact`` is False when the search ran out of budget; ``k`` is then only a
    lower bound and ``upper_bound`` the best upper bound that was proved.
    """

    k: int
    coloring: Coloring
    ordering: Optional[Tuple[int, ...]] = None
    exact: bool = True
    upper_bound: Optional[int] = None


def _check_permutation(n: int, ordering: Sequence[int]) -> None:
    seen = set()
    for v in ordering:
        if not 0 <= v < n:
            raise ParameterError(f"ordering contains out-of-range vertex {v}")
        if v in seen:
            raise ParameterError(f"ordering is not a permutation: vertex {v} repeats")
        seen.add(v)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise ParameterError(f"ordering is not a permutation: missing {missing}")


def first_fit(G: Graph, ordering: Sequence[int]) -> Coloring:
    """Greedy coloring along ``ordering``; ``num_colors`` is FF(G, ordering)."""
    _check_permutation(G.n, ordering)
    colors = [0] * G.n
    for v in ordering:
        used = 1  # bit 0 stands for "color 0", which is never available
        for u in G.adjacency[v]:
            used |= 1 << colors[u]
        colors[v] = ((~used) & (used + 1)).bit_length() - 1
    return Coloring(tuple(colors))


def is_grundy_coloring(G: Graph, c: Coloring) -> ValidationResult:
    if len(c.colors) != G.n:
        return ValidationResult(False, f"coloring has {len(c.colors)} entries for {G.n} vertices")
    for v, color in enumerate(c.colors):
        if not isinstance(color, int) or color < 1:
            return ValidationResult(False, f"vertex {v} has invalid color {color!r}")
    for v, color in enumerate(c.colors):
        seen = set()
        for u in G.adjacency[v]:
            if c.colors[u] == color:
                return ValidationResult(False, f"edge ({v}, {u}) is monochromatic with color {color}")
            seen.add(c.colors[u])
        for lower in range(1, color):
            if lower not in seen:
                return ValidationResult(False, f"vertex {v} of color {color} has no neighbor of color {lower}")
    return ValidationResult(True)


def ordering_from_coloring(c: Coloring) -> Tuple[int, ...]:
    """Vertices by color class; First-Fit along it reproduces a Grundy coloring."""
    return tuple(v for color_class in c.classes() for v in color_class)


def grundy_number_bruteforce(G: Graph, limit: Optional[int] = None) -> GrundyWitness:
    """Max of FF(G, sigma) over all n! orderings.

    Orderings are walked as a prefix tree, placing one vertex at a time with
    the First-Fit rule. Prefixes that leave the same partial coloring share
    their subtree, and the walk stops once some ordering reaches Delta+1.

    Raises:
        EnumerationLimitError: ``n`` exceeds ``limit`` (``settings.bruteforce_limit``).
    """
    limit = settings.bruteforce_limit if limit is None else limit
    if G.n > limit:
        raise EnumerationLimitError(f"brute force over {G.n}! orderings exceeds the limit n <= {limit}")
    cap = max(G.degrees, default=-1) + 1
    # partial coloring -> (best reachable color count, next vertex on a best ordering)
    memo: Dict[Tuple[int, ...], Tuple[int, Optional[int]]] = {}

    def place(colors: Tuple[int, ...], v: int) -> Tuple[int, ...]:
        used = {colors[u] for u in G.adjacency[v]}
        color = 1
        while color in used:
            color += 1
        return colors[:v] + (color,) + colors[v + 1:]

    def best_from(colors: Tuple[int, ...]) -> int:
        if colors in memo:
            return memo[colors][0]
        best, best_v = max(colors, default=0), None
        for v in range(G.n):
            if colors[v]:
                continue
            value = best_from(place(colors, v))
            if best_v is None or value > best:
                best, best_v = value, v
            if best >= cap:
                break
        memo[colors] = (best, best_v)
        return best

    colors: Tuple[int, ...] = (0,) * G.n
    best_from(colors)
    ordering: List[int] = []
    while memo[colors][1] is not None:
        v = memo[colors][1]
        ordering.append(v)
        colors = place(colors, v)
    coloring = first_fit(G, ordering)
    return GrundyWitness(coloring.num_colors, coloring, tuple(ordering), exact=True, upper_bound=coloring.num_colors)


def smallest_last_ordering(G: Graph) -> List[int]:
    remaining = set(range(G.n))
    degree = {v: G.degree(v) for v in remaining}
    removed: List[int] = []
    while remaining:
        v = min(remaining, key=lambda x: (degree[x], x))
        remaining.remove(v)
        removed.append(v)
        for u in G.adjacency[v]:
            if u in remaining:
                degree[u] -= 1
    return removed[::-1]


def heuristic_orderings(G: Graph) -> Dict[str, List[int]]:
    return {
        "identity": list(range(G.n)),
        "degree_ascending": sorted(range(G.n), key=lambda v: (G.degree(v), v)),
        "degree_descending": sorted(range(G.n), key=lambda v: (-G.degree(v), v)),
        "smallest_last": smallest_last_ordering(G),
    }


def heuristic_lower_bound(G: Graph) -> Coloring:
    best = Coloring(())
    for name, ordering in heuristic_orderings(G).items():
        coloring = first_fit(G, ordering)
        if coloring.num_colors > best.num_colors:
            best = coloring
    return best


def _maximal_independent_sets(masks: Sequence[int], mask: int) -> Iterator[int]:
    """Bron-Kerbosch with pivoting on the complement of ``G[mask]``."""

    def non_neighbors(v: int) -> int:
        return mask & ~masks[v] & ~(1 << v)

    def expand(chosen: int, candidates: int, excluded: int) -> Iterator[int]:
        if not candidates and not excluded:
            yield chosen
            return
        pivot = min(
            mask_to_vertices(candidates | excluded),
            key=lambda u: bin(candidates & masks[u]).count("1"),
        )
        for v in mask_to_vertices(candidates & (masks[pivot] | (1 << pivot))):
            bit = 1 << v
            yield from expand(chosen | bit, candidates & non_neighbors(v), excluded & non_neighbors(v))
            candidates &= ~bit
            excluded |= bit

    yield from expand(0, mask, 0)


class _BudgetExceeded(Exception):
    pass


class GrundySearch:
    """Exact Grundy number by color-class extension.

    Uses the recursion ``Gamma(G[M]) = 1 + max Gamma(G[M - I])`` over maximal
    independent sets ``I`` of ``G[M]`` (the first color class of a Grundy
    coloring is a maximal independent set, and any Grundy coloring of the rest
    stacks on top of one). Values are memoized per vertex bitmask; a branch is
    skipped when a cheap upper bound for the rest cannot beat the best found,
    and the loop stops as soon as the best reaches a proved upper bound.
    """

    def __init__(self, G: Graph, deadline: Optional[float] = None):
        self.G = G
        self.masks = G.masks
        self.deadline = deadline
        self.triangle_free = all(not (self.masks[u] & self.masks[v]) for u, v in G.edges)
        self.memo: Dict[int, Tuple[int, int]] = {}
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded()

    def cheap_upper_bound(self, mask: int) -> int:
        """Delta+1, n-gamma+1 and the triangle-free bound with gamma >= ceil(n/(Delta+1))."""
        size = bin(mask).count("1")
        if size <= 1:
            return size
        delta = max(bin(self.masks[v] & mask).count("1") for v in mask_to_vertices(mask))
        gamma_lower = -(-size // (delta + 1))
        bound = min(delta + 1, size - gamma_lower + 1)
        if self.triangle_free:
            bound = min(bound, (size - gamma_lower + 4) // 2)
        return bound

    def solve(self, mask: int) -> int:
        """Exact Gamma(G[mask]), memoized together with a best first class."""
        if mask in self.memo:
            return self.memo[mask][0]
        self._tick()
        if mask & (mask - 1) == 0:
            self.memo[mask] = (1 if mask else 0, mask)
            return self.memo[mask][0]
        upper = self.cheap_upper_bound(mask)
        best, best_class = 0, 0
        for independent in _maximal_independent_sets(self.masks, mask):
            rest = mask & ~independent
            if 1 + self.cheap_upper_bound(rest) <= best:
                continue
            value = 1 + self.solve(rest)
            if value > best:
                best, best_class = value, independent
                if best >= upper:
                    break
        self.memo[mask] = (best, best_class)
        return best

    def coloring_for(self, mask: int, first_class: int) -> Coloring:
        colors = [0] * self.G.n
        color = 1
        independent = first_class
        while mask:
            for v in mask_to_vertices(independent):
                colors[v] = color
            mask &= ~independent
            color += 1
            if mask:
                independent = self.memo[mask][1]
        return Coloring(tuple(colors))


def _proved_upper_bound(G: Graph, gamma: Optional[int]) -> int:
    from grundy_lab.core import bounds

    return bounds.search_upper_bound(G, gamma)


def _rooted_values(G: Graph, root: int) -> Tuple[Dict[int, int], Dict[int, List[int]]]:
    """Best color each vertex can take inside its own subtree, rooted at ``root``.

    A vertex reaches color ``m + 1`` when ``m`` distinct children reach colors
    at least ``1..m``; sorting children by value and matching greedily finds
    the largest such ``m``.
    """
    children: Dict[int, List[int]] = {root: []}
    order = [root]
    for v in order:
        for u in sorted(G.adjacency[v]):
            if u not in children:
                children[u] = []
                children[v].append(u)
                order.append(u)
    value: Dict[int, int] = {}
    for v in reversed(order):
        m = 0
        for a in sorted(value[c] for c in children[v]):
            if a > m:
                m += 1
        value[v] = m + 1
    return value, children


def _assign_atom(value: Dict[int, int], children: Dict[int, List[int]], root: int) -> Dict[int, int]:
    assigned = {root: value[root]}
    stack = [root]
    while stack:
        v = stack.pop()
        pool = sorted(children[v], key=lambda c: (value[c], c))
        position = 0
        for color in range(1, assigned[v]):
            while value[pool[position]] < color:
                position += 1
            assigned[pool[position]] = color
            stack.append(pool[position])
            position += 1
    return assigned


def grundy_number_forest(G: Graph) -> GrundyWitness:
    """Exact Grundy number of a forest.

    A vertex of top color in a tree heads a subtree that demands every lower
    color below it, so Gamma is the best rooted value over all roots. The
    witness colors that subtree first and extends it by First-Fit.
    """
    if G.n == 0:
        return GrundyWitness(0, Coloring(()), (), exact=True, upper_bound=0)
    best_root, best_value, best_tables = 0, 0, None
    for root in range(G.n):
        value, children = _rooted_values(G, root)
        if value[root] > best_value:
            best_root, best_value, best_tables = root, value[root], (value, children)
    assigned = _assign_atom(*best_tables, best_root)
    head = sorted(assigned, key=lambda v: (assigned[v], v))
    rest = [v for v in range(G.n) if v not in assigned]
    ordering = tuple(head + rest)
    coloring = first_fit(G, ordering)
    return GrundyWitness(coloring.num_colors, coloring, ordering, exact=True, upper_bound=coloring.num_colors)


def grundy_number_exact(
    G: Graph,
    budget_ms: Optional[int] = None,
    gamma: Optional[int] = None,
) -> GrundyWitness:
    """Exact Grundy number with a witness coloring and ordering.

    The search is seeded with the best heuristic First-Fit coloring and capped
    by the proved upper bounds (Delta+1, n-gamma+1, the triangle-free bound
    and the girth bounds, all floored). With ``budget_ms`` the search may stop
    early; the witness then has ``exact=False`` and brackets Gamma between
    ``k`` and ``upper_bound``. Forests take the polynomial path of
    ``grundy_number_forest``.

    The witness is the first optimum in maximal-independent-set order, or the
    heuristic seed when nothing beats it; ties are not broken further.
    """
    if G.n == 0:
        return GrundyWitness(0, Coloring(()), (), exact=True, upper_bound=0)
    if not girth(G).is_finite:
        return grundy_number_forest(G)
    start = time.monotonic()
    deadline = None if budget_ms is None else start + budget_ms / 1000.0
    upper = _proved_upper_bound(G, gamma)
    seed = heuristic_lower_bound(G)
    if seed.num_colors >= upper:
        logger.debug(f"Heuristic coloring meets the upper bound {upper} on n={G.n}")
        return GrundyWitness(seed.num_colors, seed, ordering_from_coloring(seed), exact=True, upper_bound=upper)

    search = GrundySearch(G, deadline=deadline)
    full = G.full_mask
    best, best_class = seed.num_colors, 0
    exact = True
    try:
        for independent in _maximal_independent_sets(G.masks, full):
            rest = full & ~independent
            if 1 + search.cheap_upper_bound(rest) <= best:
                continue
            value = 1 + search.solve(rest)
            if value > best:
                best, best_class = value, independent
                if best >= upper:
                    break
    except _BudgetExceeded:
        exact = False
        logger.warning(
            f"Grundy search on n={G.n} hit its {budget_ms} ms budget after "
            f"{search.nodes} nodes; bracketed in [{best}, {upper}]"
        )
    coloring = search.coloring_for(full, best_class) if best_class else seed
    logger.debug(f"Grundy search on n={G.n}: k={best}, {search.nodes} nodes, upper bound {upper}")
    return GrundyWitness(
        best,
        coloring,
        ordering_from_coloring(coloring),
        exact=exact,
        upper_bound=best if exact else upper,
    )


def tree_atom(k: int, max_vertices: Optional[int] = None) -> Graph:
    """The tree k-atom T_k on 2^(k-1) vertices.

    T_{k+1} attaches one new leaf to every vertex of T_k; vertex ``v`` keeps
    its id and its new leaf gets id ``v + 2^(k-1)``.
    """
    if k < 1:
        raise ParameterError(f"tree atoms need k >= 1, got {k}")
    max_vertices = settings.max_vertices if max_vertices is None else max_vertices
    size = 1 << (k - 1)
    if size > max_vertices:
        raise ParameterError(f"T_{k} has {size} vertices, above the limit {max_vertices}")
    edges: List[Tuple[int, int]] = []
    current = 1
    while current < size:
        edges.extend((v, v + current) for v in range(current))
        current *= 2
    return graph_from_edges(size, edges)


def tree_atom_coloring(k: int) -> Coloring:
    """The Grundy k-coloring of T_k: old vertices shift up one color, new leaves get 1."""
    if k < 1:
        raise ParameterError(f"tree atoms need k >= 1, got {k}")
    colors = [1]
    for _ in range(k - 1):
        colors = [c + 1 for c in colors] + [1] * len(colors)
    return Coloring(tuple(colors))
