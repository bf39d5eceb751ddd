"""Deterministic graph families and seeded random graphs.

Random graphs use numpy's ``default_rng(seed)`` (PCG64). One uniform draw is
taken per vertex pair in lexicographic order ``(0,1), (0,2), ..., (n-2,n-1)``
and the pair becomes an edge when the draw is below ``p``, so a sample is a
function of ``(n, p, seed)`` alone.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from grundy_lab.core.coloring import Coloring, tree_atom, tree_atom_coloring
from grundy_lab.core.graph import Graph, girth, graph_from_edges
from grundy_lab.errors import GeneratorExhaustedError, ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSpec:
    """A family name and its parameters, e.g. ``GeneratorSpec("cycle", {"n": 5})``."""

    family: str
    params: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class GeneratedGraph:
    spec: GeneratorSpec
    graph: Graph
    labeling: Optional[Coloring] = None
    expected: Dict[str, Any] = field(default_factory=dict)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


def _bipartite_minus_matching(t: int) -> Tuple[List[Tuple[int, int]], List[int]]:
    """K_{t,t} on x_i = i-1, y_i = t+i-1 without the pairs (x_i, y_i), i >= 2.

    Colors: x_1 gets t+1, y_1 gets t, and x_i, y_i both get t+1-i for i >= 2.
    """
    edges = [
        (i, t + j)
        for i in range(t)
        for j in range(t)
        if i == 0 or j == 0 or i != j
    ]
    colors = [t + 1] + [t + 1 - i for i in range(2, t + 1)]
    colors += [t] + [t + 1 - i for i in range(2, t + 1)]
    return edges, colors


def extremal_even(t: int) -> Tuple[Graph, Coloring]:
    """K_{t,t} minus a (t-1)-matching on 2t vertices with a Grundy (t+1)-coloring."""
    _require(t >= 2, f"extremal_even needs t >= 2, got {t}")
    edges, colors = _bipartite_minus_matching(t)
    return graph_from_edges(2 * t, edges), Coloring(tuple(colors))


def extremal_odd(t: int) -> Tuple[Graph, Coloring]:
    """The even family plus a color-1 vertex ``w = 2t`` on the X side.

    The edge between the color-1 vertex of X and the color-2 vertex of Y moves
    to ``w``, so the color-2 vertex keeps a color-1 neighbor.
    """
    _require(t >= 3, f"extremal_odd needs t >= 3, got {t}")
    edges, colors = _bipartite_minus_matching(t)
    x_color_one = t - 1
    y_color_two = 2 * t - 2
    edges.remove((x_color_one, y_color_two))
    w = 2 * t
    edges.append((w, y_color_two))
    return graph_from_edges(2 * t + 1, edges), Coloring(tuple(colors + [1]))


def prop_gamma_equality(q: int, d: int) -> Graph:
    """A clique ``Q = 0..q-1`` and an independent dominating set ``D = q..q+d-1``.

    ``D_j`` hangs off ``Q_j`` for ``j < d``; the remaining clique vertices are
    covered by ``D_0``. The closed neighborhoods of the ``D`` vertices are
    disjoint, so gamma is ``d`` and Gamma reaches ``n - gamma + 1 = q + 1``.
    """
    _require(q >= 1 and d >= 1, f"prop_gamma_equality needs q, d >= 1, got q={q}, d={d}")
    _require(d <= q, f"prop_gamma_equality needs d <= q so D stays independent, got q={q}, d={d}")
    edges = [(i, j) for i in range(q) for j in range(i + 1, q)]
    edges += [(j, q + j) for j in range(d)]
    edges += [(i, q) for i in range(d, q)]
    return graph_from_edges(q + d, edges)


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycles need n >= 3, got {n}")
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _require(n >= 1, f"paths need n >= 1, got {n}")
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete graphs need n >= 1, got {n}")
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """Sides ``0..a-1`` and ``a..a+b-1``."""
    _require(a >= 1 and b >= 1, f"complete bipartite graphs need a, b >= 1, got a={a}, b={b}")
    return graph_from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return graph_from_edges(10, edges)


def _check_probability(p: float) -> None:
    _require(0.0 <= p <= 1.0, f"edge probability must be in [0, 1], got {p}")


def _rng(seed: int) -> np.random.Generator:
    _require(seed >= 0, f"seeds must be non-negative, got {seed}")
    return np.random.default_rng(seed)


def _sample(rng: np.random.Generator, n: int, p: float) -> Graph:
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    return graph_from_edges(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) sample, reproducible from ``seed``."""
    _require(n >= 0, f"vertex count must be non-negative, got {n}")
    _check_probability(p)
    return _sample(_rng(seed), n, p)


def random_graphs(n: int, p: float, seed: int, count: int) -> List[Graph]:
    """``count`` samples drawn one after another from a single stream."""
    _require(n >= 0, f"vertex count must be non-negative, got {n}")
    _check_probability(p)
    rng = _rng(seed)
    return [_sample(rng, n, p) for _ in range(count)]


def random_with_min_girth(n: int, p: float, gmin: int, seed: int, max_attempts: int = 1000) -> Graph:
    """Rejection-sample G(n, p) until the girth is at least ``gmin``.

    Forests have infinite girth and are always accepted.

    Raises:
        GeneratorExhaustedError: no sample qualified within ``max_attempts``.
    """
    _require(n >= 0, f"vertex count must be non-negative, got {n}")
    _check_probability(p)
    _require(max_attempts >= 1, f"max_attempts must be positive, got {max_attempts}")
    rng = _rng(seed)
    for attempt in range(1, max_attempts + 1):
        G = _sample(rng, n, p)
        g = girth(G)
        if not g.is_finite or g.value >= gmin:
            logger.debug(f"random_with_min_girth accepted attempt {attempt} with girth {g}")
            return G
    raise GeneratorExhaustedError(
        f"no G({n}, {p}) sample with girth >= {gmin} in {max_attempts} attempts (seed {seed})"
    )


def build(spec: GeneratorSpec) -> GeneratedGraph:
    """Construct a family member with its labeling and known invariants."""
    family, params = spec.family.replace("-", "_"), spec.params
    if family == "extremal_even":
        t = params["t"]
        G, labeling = extremal_even(t)
        return GeneratedGraph(spec, G, labeling, {"grundy": t + 1, "gamma": 2, "girth": 4 if t >= 3 else None})
    if family == "extremal_odd":
        t = params["t"]
        G, labeling = extremal_odd(t)
        return GeneratedGraph(spec, G, labeling, {"grundy": t + 1, "gamma": 3, "girth": 4})
    if family == "prop_gamma_equality":
        q, d = params["q"], params["d"]
        return GeneratedGraph(spec, prop_gamma_equality(q, d), expected={"grundy": q + 1, "gamma": d})
    if family in ("tree_atom", "atom"):
        k = params["k"]
        return GeneratedGraph(spec, tree_atom(k), tree_atom_coloring(k), {"grundy": k, "n": 2 ** (k - 1)})
    if family == "cycle":
        n = params["n"]
        return GeneratedGraph(spec, cycle(n), expected={"girth": n, "grundy": 2 if n == 4 else 3})
    if family == "path":
        return GeneratedGraph(spec, path(params["n"]))
    if family == "complete":
        n = params["n"]
        return GeneratedGraph(spec, complete(n), expected={"grundy": n, "gamma": 1})
    if family == "complete_bipartite":
        return GeneratedGraph(spec, complete_bipartite(params["a"], params["b"]))
    if family == "petersen":
        return GeneratedGraph(spec, petersen(), expected={"girth": 5, "gamma": 3, "grundy": 4})
    if family == "random":
        return GeneratedGraph(spec, random_graph(params["n"], params["p"], params["seed"]))
    if family == "random_girth":
        G = random_with_min_girth(
            params["n"], params["p"], params["gmin"], params["seed"], params.get("max_attempts", 1000)
        )
        return GeneratedGraph(spec, G)
    raise ParameterError(f"unknown generator family {spec.family!r}")
