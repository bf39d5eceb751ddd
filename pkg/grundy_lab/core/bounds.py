"""Upper bounds on the Grundy number and per-graph bound reports.

Every evaluator returns a ``BoundEvaluation``: whether the bound applies to
the graph, why not if it does not, its real right-hand side, and an exact
comparison ``sign(k - rhs)`` in integer or rational arithmetic. Float
comparisons use ``settings.tolerance``; when the float slack is within
``settings.exact_check_threshold`` the exact comparison decides.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from grundy_lab.config import settings
from grundy_lab.core.coloring import GrundyWitness, grundy_number_exact, is_grundy_coloring
from grundy_lab.core.domination import (
    DominationWitness,
    domination_number_exact,
    first_class_dominates,
    is_star_partition,
    top_color_star_partition,
    triangle_free_certificate,
)
from grundy_lab.core.graph import Girth, Graph, girth, is_clique, is_independent, is_triangle_free, max_degree
from grundy_lab.core.witness import count_identities

logger = logging.getLogger(__name__)

APPLICABLE = "applicable"
INAPPLICABLE = "inapplicable"
UNKNOWN = "unknown"

BOUND_NAMES = (
    "delta",
    "n_minus_gamma",
    "triangle_free",
    "zaker",
    "odd_girth",
    "log",
    "even_girth",
    "girth_counting",
    "twhz",
)

TSV_COLUMNS = [
    "graph_id", "n", "m", "girth", "delta", "gamma", "grundy", "exact",
    "bound", "applicable", "rhs", "slack", "tight",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class BoundEvaluation:
    name: str
    applicable: bool
    rhs: Optional[float] = None
    reason: str = ""
    comparison_only: bool = False
    exact_sign: Optional[Callable[[int], int]] = field(default=None, repr=False, compare=False)

    def compare(self, k: int) -> int:
        """``sign(k - rhs)``; exact whenever the float slack is too small to trust."""
        slack = self.rhs - k
        if abs(slack) < settings.exact_check_threshold and self.exact_sign is not None:
            return self.exact_sign(k)
        if k <= self.rhs + settings.tolerance:
            return 0 if abs(slack) <= settings.tolerance else -1
        return 1

    def floor(self) -> int:
        """Largest integer ``k`` the bound allows."""
        k = math.floor(self.rhs + settings.tolerance)
        while self.compare(k) > 0:
            k -= 1
        while self.compare(k + 1) <= 0:
            k += 1
        return k


def _inapplicable(name: str, reason: str, comparison_only: bool = False) -> BoundEvaluation:
    return BoundEvaluation(name, False, reason=reason, comparison_only=comparison_only)


def _rational(name: str, value: Fraction, comparison_only: bool = False) -> BoundEvaluation:
    return BoundEvaluation(
        name, True, float(value),
        comparison_only=comparison_only,
        exact_sign=lambda k: _sign(k - value),
    )


def bound_delta(G: Graph) -> BoundEvaluation:
    return _rational("delta", Fraction(max_degree(G) + 1))


def bound_n_minus_gamma(G: Graph, gamma: int) -> BoundEvaluation:
    return _rational("n_minus_gamma", Fraction(G.n - gamma + 1))


def bound_triangle_free(G: Graph, gamma: int) -> BoundEvaluation:
    if not is_triangle_free(G):
        return _inapplicable("triangle_free", "graph has a triangle")
    return _rational("triangle_free", Fraction(G.n - gamma + 4, 2))


def bound_twhz(G: Graph) -> BoundEvaluation:
    """(n+2)/2 for triangle-free graphs; reported for comparison only."""
    if not is_triangle_free(G):
        return _inapplicable("twhz", "graph has a triangle", comparison_only=True)
    return _rational("twhz", Fraction(G.n + 2, 2), comparison_only=True)


def bound_zaker(G: Graph, g: Optional[Girth] = None) -> BoundEvaluation:
    g = girth(G) if g is None else g
    if not g.is_odd:
        return _inapplicable("zaker", f"girth {g} is not finite and odd")
    h = (g.value - 1) // 2
    n = G.n
    # k <= h * n^(1/h)  <=>  k^h <= h^h * n
    return BoundEvaluation(
        "zaker", True, h * n ** (1.0 / h),
        exact_sign=lambda k: -1 if k <= 0 else _sign(k ** h - h ** h * n),
    )


def bound_odd_girth(G: Graph, gamma: int, g: Optional[Girth] = None) -> BoundEvaluation:
    g = girth(G) if g is None else g
    if not g.is_odd:
        return _inapplicable("odd_girth", f"girth {g} is not finite and odd")
    h = (g.value - 1) // 2
    base = G.n - gamma
    if base == 0:
        return _rational("odd_girth", Fraction(1))

    def exact_sign(k: int) -> int:
        # k - 1 <= h * base^(1/h)  <=>  (k-1)^h <= h^h * base
        if k - 1 <= 0:
            return -1
        return _sign((k - 1) ** h - h ** h * base)

    return BoundEvaluation("odd_girth", True, h * base ** (1.0 / h) + 1, exact_sign=exact_sign)


def bound_log(G: Graph, gamma: int, g: Optional[Girth] = None) -> BoundEvaluation:
    """log2(n - gamma) + 2 when the girth is odd and Delta <= (g-1)/2."""
    g = girth(G) if g is None else g
    if not g.is_odd:
        return _inapplicable("log", f"girth {g} is not finite and odd")
    h = (g.value - 1) // 2
    delta = max_degree(G)
    if delta > h:
        return _inapplicable("log", f"max degree {delta} exceeds (g-1)/2 = {h}")
    base = G.n - gamma
    if base <= 0:
        return _inapplicable("log", "n equals gamma, log of 0")
    # k <= log2(base) + 2  <=>  2^(k-2) <= base
    return BoundEvaluation(
        "log", True, math.log2(base) + 2,
        exact_sign=lambda k: _sign(Fraction(2) ** (k - 2) - base),
    )


def bound_even_girth(G: Graph, gamma: int, g: Optional[Girth] = None) -> BoundEvaluation:
    g = girth(G) if g is None else g
    if not g.is_even:
        return _inapplicable("even_girth", f"girth {g} is not finite and even")
    h = (g.value - 2) // 2
    base = G.n - gamma

    def exact_sign(k: int) -> int:
        # k - 2 <= h * (base/2)^(1/h)  <=>  2 (k-2)^h <= h^h * base
        if k - 2 < 0:
            return -1
        if k - 2 == 0:
            return 0 if base == 0 else -1
        return _sign(2 * (k - 2) ** h - h ** h * base)

    return BoundEvaluation("even_girth", True, h * (base / 2) ** (1.0 / h) + 2, exact_sign=exact_sign)


def bound_girth_counting(G: Graph, gamma: int, g: Optional[Girth] = None) -> BoundEvaluation:
    """The integer counting bound that the girth bounds relax.

    For ``k >= k0`` a Grundy k-coloring forces a witness tree with
    ``|V(H)| - |S'|`` vertices that are not apexes of its star partition, and
    that count cannot exceed ``n - gamma``. The bound is the largest ``k``
    passing this test, or ``k0 - 1``.
    """
    g = girth(G) if g is None else g
    if not g.is_finite or g.value < 5:
        return _inapplicable("girth_counting", f"girth {g} is below 5")
    k0 = max((g.value + 3) // 2, 4) if g.is_odd else g.value // 2 + 2
    base = G.n - gamma
    k = k0
    while count_identities(k, g.value).uncovered <= base:
        k += 1
    return _rational("girth_counting", Fraction(max(k0, k) - 1))


def evaluate_all(G: Graph, gamma: int, g: Optional[Girth] = None) -> List[BoundEvaluation]:
    g = girth(G) if g is None else g
    return [
        bound_delta(G),
        bound_n_minus_gamma(G, gamma),
        bound_triangle_free(G, gamma),
        bound_zaker(G, g),
        bound_odd_girth(G, gamma, g),
        bound_log(G, gamma, g),
        bound_even_girth(G, gamma, g),
        bound_girth_counting(G, gamma, g),
        bound_twhz(G),
    ]


def search_upper_bound(G: Graph, gamma: Optional[int] = None) -> int:
    """Smallest integer upper bound on Gamma among all applicable proved bounds."""
    if G.n == 0:
        return 0
    if gamma is None:
        gamma = domination_number_exact(G).gamma
    return min(e.floor() for e in evaluate_all(G, gamma) if e.applicable and not e.comparison_only)


def find_equality_partition(G: Graph, gamma: int, k: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """``(Q, D)`` with ``G[Q]`` complete on ``k - 1`` vertices and ``D`` an
    independent dominating set of size ``gamma``, or None."""
    if G.n != k - 1 + gamma:
        return None
    for D in itertools.combinations(range(G.n), gamma):
        if not is_independent(G, D):
            continue
        Q = tuple(v for v in range(G.n) if v not in set(D))
        if not is_clique(G, Q):
            continue
        dominated = set(D)
        for v in D:
            dominated |= G.adjacency[v]
        if len(dominated) == G.n:
            return Q, D
    return None


def equality_characterization_holds(G: Graph, gamma: int, grundy_witness: GrundyWitness) -> bool:
    return find_equality_partition(G, gamma, grundy_witness.k) is not None


@dataclass(frozen=True)
class BoundEntry:
    name: str
    status: str
    reason: str = ""
    rhs: Optional[float] = None
    satisfied: Optional[bool] = None
    slack: Optional[float] = None
    tight: Optional[bool] = None
    comparison_only: bool = False

    @property
    def anomalous(self) -> bool:
        return self.satisfied is False and not self.comparison_only


@dataclass
class BoundReport:
    graph_id: str
    n: int
    m: int
    gamma: int
    girth: Girth
    delta: int
    triangle_free: bool
    grundy: int
    exact: bool
    grundy_upper: Optional[int]
    entries: List[BoundEntry]
    equality_characterization: bool
    beats_delta: Optional[bool] = None
    beats_twhz: Optional[bool] = None
    improvement: Optional[bool] = None
    certificates: Dict[str, bool] = field(default_factory=dict)
    anomalies: List[str] = field(default_factory=list)


def _bracketed_satisfied(evaluation: BoundEvaluation, sign: int, upper: Optional[int]) -> Optional[bool]:
    if sign > 0:
        return False
    if upper is not None and evaluation.compare(upper) <= 0:
        return True
    return None


def make_entry(
    evaluation: BoundEvaluation, grundy: int, exact: bool, upper: Optional[int] = None
) -> BoundEntry:
    """Compare one bound with Gamma.

    With Gamma bracketed in ``[grundy, upper]`` the entry is ``unknown``:
    satisfied when ``upper`` already meets the bound, violated when ``grundy``
    already exceeds it, and undecided (``None``) in between.
    """
    if not evaluation.applicable:
        return BoundEntry(evaluation.name, INAPPLICABLE, evaluation.reason, comparison_only=evaluation.comparison_only)
    sign = evaluation.compare(grundy)
    slack = round(evaluation.rhs - grundy, settings.slack_digits)
    if not exact:
        return BoundEntry(
            evaluation.name, UNKNOWN, "grundy number is bracketed", evaluation.rhs,
            satisfied=_bracketed_satisfied(evaluation, sign, upper),
            comparison_only=evaluation.comparison_only,
        )
    return BoundEntry(
        evaluation.name, APPLICABLE, "", evaluation.rhs,
        satisfied=sign <= 0, slack=slack, tight=sign == 0,
        comparison_only=evaluation.comparison_only,
    )


def proof_certificates(G: Graph, witness: GrundyWitness, gamma: int) -> Dict[str, bool]:
    """Re-run the constructive steps of the proofs on a concrete witness."""
    certificates = {"grundy_witness": bool(is_grundy_coloring(G, witness.coloring))}
    if not certificates["grundy_witness"] or G.n == 0:
        return certificates
    certificates["first_class_dominates"] = first_class_dominates(G, witness, gamma)
    star = top_color_star_partition(G, witness)
    certificates["top_color_stars"] = bool(is_star_partition(G, star)) and len(star) == G.n - witness.k + 1
    if is_triangle_free(G) and witness.k >= 2:
        certificates["two_stars"] = bool(triangle_free_certificate(G, witness).validate(G))
    return certificates


def check_all(
    G: Graph,
    graph_id: str = "",
    grundy: Optional[GrundyWitness] = None,
    domination: Optional[DominationWitness] = None,
    budget_ms: Optional[int] = None,
) -> BoundReport:
    """Exact invariants plus every bound entry, flags and certificates for ``G``."""
    domination = domination_number_exact(G) if domination is None else domination
    gamma = domination.gamma
    grundy = grundy_number_exact(G, budget_ms=budget_ms, gamma=gamma) if grundy is None else grundy
    g = girth(G)
    evaluations = evaluate_all(G, gamma, g)
    entries = [make_entry(e, grundy.k, grundy.exact, grundy.upper_bound) for e in evaluations]
    by_name = {e.name: e for e in evaluations}
    triangle_free = is_triangle_free(G)
    delta = max_degree(G)

    report = BoundReport(
        graph_id=graph_id,
        n=G.n,
        m=G.m,
        gamma=gamma,
        girth=g,
        delta=delta,
        triangle_free=triangle_free,
        grundy=grundy.k,
        exact=grundy.exact,
        grundy_upper=grundy.upper_bound,
        entries=entries,
        equality_characterization=equality_characterization_holds(G, gamma, grundy),
    )
    if triangle_free:
        report.beats_delta = G.n - 2 * delta + 2 <= gamma
        report.beats_twhz = by_name["triangle_free"].rhs <= by_name["twhz"].rhs
    if g.is_odd:
        report.improvement = by_name["odd_girth"].rhs < by_name["zaker"].rhs - settings.tolerance
    report.certificates = proof_certificates(G, grundy, gamma)

    report.anomalies = [e.name for e in entries if e.anomalous]
    if grundy.exact and report.equality_characterization != (grundy.k == G.n - gamma + 1):
        report.anomalies.append("equality_characterization")
    report.anomalies.extend(f"certificate:{name}" for name, ok in report.certificates.items() if not ok)
    if report.anomalies:
        logger.error(f"Bound anomalies on {graph_id or 'graph'}: {report.anomalies}")
    return report
