"""Leveled demand trees behind the girth bounds, their star partitions and counts.

A vertex that must receive color ``j`` in a Grundy coloring needs neighbors of
every color ``1..j-1``. Starting from one root of color ``k`` (odd girth) or
two adjacent roots of colors ``k`` and ``k-1`` (even girth) and expanding those
demands level by level gives a tree; while the depth stays below half the
girth the demanded vertices are forced to be distinct, which is what the
counting arguments need.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from grundy_lab.config import settings
from grundy_lab.core.coloring import ValidationResult
from grundy_lab.core.domination import StarPartition
from grundy_lab.core.graph import Graph, graph_from_edges
from grundy_lab.errors import ParameterError

logger = logging.getLogger(__name__)

CASE_LABELS = {0: "g=0 mod 4", 1: "g=1 mod 4", 2: "g=2 mod 4", 3: "g=3 mod 4"}


@dataclass(frozen=True)
class LeveledWitness:
    graph: Graph
    level_of: Tuple[int, ...]
    demanded_color: Tuple[int, ...]
    parent: Tuple[int, ...]
    roots: Tuple[int, ...]
    depth: int
    k: int
    doubled: bool

    @property
    def levels(self) -> List[List[int]]:
        """``levels[i]`` holds the vertices of level ``i + 1`` in id order."""
        levels: List[List[int]] = [[] for _ in range(self.depth)]
        for v, level in enumerate(self.level_of):
            levels[level - 1].append(v)
        return levels

    def children(self, v: int) -> List[int]:
        return [u for u, p in enumerate(self.parent) if p == v]


@dataclass(frozen=True)
class CountIdentity:
    k: int
    g: int
    case: str
    v_H: int
    s_prime: int
    in_bound_range: bool = True

    @property
    def uncovered(self) -> int:
        return self.v_H - self.s_prime


def depth_for_girth(g: int) -> int:
    return (g + 1) // 2 if g % 2 else g // 2


def tree_size(k: int, depth: int, doubled: bool) -> int:
    if doubled:
        return 2 * sum(comb(k - 2, i) for i in range(depth))
    return sum(comb(k - 1, i) for i in range(depth))


def witness_tree(k: int, depth: int, doubled: bool = False, max_vertices: Optional[int] = None) -> LeveledWitness:
    """Build the leveled demand tree.

    Vertex ids follow levels; inside a level children are ordered by
    descending demanded color, then by parent id.

    Raises:
        ParameterError: ``k < 2`` (``k < 3`` when doubled), ``depth < 1`` or
            the tree would exceed ``max_vertices``.
    """
    if k < (3 if doubled else 2):
        raise ParameterError(f"witness trees need k >= {3 if doubled else 2}, got k={k}")
    if depth < 1:
        raise ParameterError(f"witness trees need depth >= 1, got {depth}")
    max_vertices = settings.max_vertices if max_vertices is None else max_vertices
    size = tree_size(k, depth, doubled)
    if size > max_vertices:
        raise ParameterError(f"witness tree for k={k}, depth={depth} has {size} vertices, above {max_vertices}")

    if doubled:
        # u demands k, w demands k-1; each supplies the other's top color
        level_of, colors, parent = [1, 1], [k, k - 1], [-1, -1]
        edges = [(0, 1)]
        demands = {0: k - 1, 1: k - 1}
    else:
        level_of, colors, parent = [1], [k], [-1]
        edges = []
        demands = {0: k}
    frontier = list(range(len(colors)))
    for level in range(2, depth + 1):
        pending = [(color, p) for p in frontier for color in range(1, demands[p])]
        pending.sort(key=lambda item: (-item[0], item[1]))
        frontier = []
        for color, p in pending:
            v = len(colors)
            level_of.append(level)
            colors.append(color)
            parent.append(p)
            edges.append((p, v))
            demands[v] = color
            frontier.append(v)
    logger.debug(f"Built witness tree k={k} depth={depth} doubled={doubled}: {len(colors)} vertices")
    return LeveledWitness(
        graph=graph_from_edges(len(colors), edges),
        level_of=tuple(level_of),
        demanded_color=tuple(colors),
        parent=tuple(parent),
        roots=(0, 1) if doubled else (0,),
        depth=depth,
        k=k,
        doubled=doubled,
    )


def demand_property_holds(W: LeveledWitness) -> ValidationResult:
    """Every vertex above the last level sees each lower color exactly once."""
    colors = W.demanded_color
    for v in range(W.graph.n):
        if W.level_of[v] == W.depth:
            continue
        below = sorted(colors[u] for u in W.graph.adjacency[v] if colors[u] < colors[v])
        if below != list(range(1, colors[v])):
            return ValidationResult(False, f"vertex {v} of color {colors[v]} sees lower colors {below}")
    return ValidationResult(True)


def _stars_at(W: LeveledWitness, apexes: List[int], claimed: set) -> List[Tuple[int, List[int]]]:
    parts = []
    for v in apexes:
        leaves = [u for u in W.children(v) if u not in claimed]
        claimed.update(leaves)
        claimed.add(v)
        parts.append((v, leaves))
    return parts


def witness_star_partition(W: LeveledWitness, g: int) -> StarPartition:
    """Star partition of the witness tree counted by the girth proofs.

    Odd girth, single root: for ``g = 3 mod 4`` apexes sit on the odd levels;
    for ``g = 1 mod 4`` the root takes its color-1 child and the other level-2
    vertices and all even levels are apexes. Even girth, two roots: for
    ``g = 0 mod 4`` both roots and the odd levels from 3 on are apexes; for
    ``g = 2 mod 4`` each root takes its color-1 child and the remaining even
    level vertices are apexes.
    """
    if g < 5:
        raise ParameterError(f"witness star partitions need g >= 5, got {g}")
    if W.doubled != (g % 2 == 0):
        kind = "two roots" if W.doubled else "one root"
        raise ParameterError(f"a witness with {kind} does not match girth parity g={g}")
    if W.depth != depth_for_girth(g):
        raise ParameterError(f"girth {g} needs depth {depth_for_girth(g)}, witness has depth {W.depth}")

    levels = W.levels
    claimed: set = set()
    parts: List[Tuple[int, List[int]]] = []
    if g % 4 in (3, 0):
        for level in range(1, W.depth + 1, 2):
            parts.extend(_stars_at(W, levels[level - 1], claimed))
    else:
        for root in W.roots:
            color_one = [u for u in W.children(root) if W.demanded_color[u] == 1]
            claimed.update([root, *color_one])
            parts.append((root, color_one))
        for level in range(2, W.depth + 1, 2):
            apexes = [v for v in levels[level - 1] if v not in claimed]
            parts.extend(_stars_at(W, apexes, claimed))
    return StarPartition.from_pairs(parts)


def in_bound_range(k: int, g: int) -> bool:
    """Whether the girth bounds use the witness for ``(k, g)``."""
    if g % 2:
        return 2 * k >= g + 3
    return 2 * k > g + 2


def count_identities(k: int, g: int, strict: bool = True) -> CountIdentity:
    """Closed-form ``|V(H)|`` and ``|S'|`` of the witness for ``(k, g)``.

    With ``strict=False`` any ``k`` the tree can be built for is accepted
    (``k >= 2``, or ``k >= 3`` for even ``g``).

    Raises:
        ParameterError: ``g < 5``; with ``strict``, ``k < (g+3)/2`` for odd
            ``g`` or ``k <= (g+2)/2`` for even ``g``.
    """
    if g < 5:
        raise ParameterError(f"count identities need g >= 5, got {g}")
    if strict and not in_bound_range(k, g):
        if g % 2:
            raise ParameterError(f"odd girth {g} needs k >= {(g + 3) / 2:g}, got k={k}")
        raise ParameterError(f"even girth {g} needs k > {(g + 2) // 2}, got k={k}")
    if k < (2 if g % 2 else 3):
        raise ParameterError(f"girth {g} witness trees need k >= {2 if g % 2 else 3}, got k={k}")

    depth = depth_for_girth(g)
    case = g % 4
    if case == 3:
        s_prime = sum(comb(k - 1, 2 * i) for i in range((g - 3) // 4 + 1))
    elif case == 1:
        s_prime = sum(comb(k - 1, 2 * i - 1) for i in range(1, (g - 1) // 4 + 1))
    elif case == 0:
        s_prime = 2 * sum(comb(k - 2, 2 * i) for i in range((g - 4) // 4 + 1))
    else:
        s_prime = 2 * sum(comb(k - 2, 2 * i - 1) for i in range(1, (g - 2) // 4 + 1))
    return CountIdentity(
        k, g, CASE_LABELS[case], tree_size(k, depth, g % 2 == 0), s_prime, in_bound_range(k, g)
    )


def binomial_lower_bound_check(a: int, b: int) -> bool:
    """``(a/b)^b <= C(a, b)``, compared exactly."""
    if not 1 <= b <= a:
        raise ParameterError(f"need 1 <= b <= a, got a={a}, b={b}")
    return Fraction(a, b) ** b <= comb(a, b)


def render_dot(W: LeveledWitness) -> str:
    """Graphviz DOT text, one rank per level, labels ``id:color``."""
    lines = ["graph witness {", "  rankdir=TB;", "  node [shape=circle];"]
    for index, level in enumerate(W.levels, start=1):
        names = " ".join(f"v{v};" for v in level)
        lines.append(f"  {{ rank=same; {names} }}  // level {index}")
    for v in range(W.graph.n):
        lines.append(f'  v{v} [label="{v}:{W.demanded_color[v]}"];')
    for u, v in W.graph.edges:
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
