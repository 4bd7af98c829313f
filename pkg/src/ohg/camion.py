"""Reorientation to balance, balancing sets, and frustration.

Reversing a well-chosen set of incidences turns any balanceable oriented
hypergraph into a balanced one.  The reorientation here walks a spanning
forest of the bipartite representation and flips exactly those non-forest
incidences whose fundamental circle comes out negative.  The set of flipped
incidences is a minimal balancing set, and minimizing its size over spanning
forests gives the frustration number.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .balance import is_balanceable, is_balanced
from .errors import InputError, ResourceError
from .gamma import (
    Node,
    SpanningForest,
    component_count,
    fundamental_cycle,
    spanning_forest,
)
from .model import (
    EDGE,
    VERTEX,
    OrientedHypergraph,
    gamma_components,
    reverse_incidences,
)


class UnbalanceableError(InputError):
    """Raised when an operation needs a balanceable hypergraph and got none."""


@dataclass(frozen=True)
class CamionResult:
    """Outcome of a forest-guided reorientation.

    ``hypergraph`` carries the new signs, ``changed`` lists the reversed
    incidence ids, and ``balanced`` reports whether the result actually is
    balanced.  The flag is computed honestly on the output: it is True
    exactly when the input was balanceable.
    """

    hypergraph: OrientedHypergraph
    changed: frozenset[str]
    balanced: bool
    forest: SpanningForest


def _required_sign(g: OrientedHypergraph, forest: SpanningForest,
                   inc_id: str) -> int:
    """Sign a non-forest incidence must have for a positive fundamental circle."""
    inc = g.incidence(inc_id)
    nodes, path_incs = forest.path_between((VERTEX, inc.vertex),
                                           (EDGE, inc.edge))
    total = len(path_incs) + 1
    prod = 1
    for other in path_incs:
        prod *= g.sign_of(other)
    return (-1) ** (total // 2) * prod


def camion_reorient(g: OrientedHypergraph,
                    forest: SpanningForest | None = None) -> CamionResult:
    """Reorient incidences so every fundamental circle of the forest is positive.

    Forest incidences keep their signs.  Each remaining incidence is set to
    the unique sign that makes its fundamental circle positive.  When the
    input is balanceable the output is balanced and the changed set is a
    minimal balancing set of the input.
    """
    if forest is None:
        forest = spanning_forest(g, "bfs")
    new_signs: dict[str, int] = {}
    changed: set[str] = set()
    for inc in g.incidences:
        if inc.id in forest:
            continue
        want = _required_sign(g, forest, inc.id)
        if want != inc.sign:
            changed.add(inc.id)
            new_signs[inc.id] = want
    out = g.with_signs(new_signs)
    balanced, _ = is_balanced(out)
    return CamionResult(out, frozenset(changed), balanced, forest)


def signed_graph_balance(g: OrientedHypergraph,
                         forest: SpanningForest | None = None) -> CamionResult:
    """Forest-guided reorientation specialized to graphs.

    Requires every edge to have exactly two incidences; such inputs are
    always balanceable, so the result is always balanced.
    """
    if not g.is_two_uniform():
        raise InputError("signed_graph_balance needs every edge to have "
                         "exactly two incidences")
    return camion_reorient(g, forest)


# ---------------------------------------------------------------------------
# Balancing sets


def _check_incidence_ids(g: OrientedHypergraph, ids: Iterable[str]) -> frozenset[str]:
    out = frozenset(ids)
    for inc_id in out:
        g.incidence(inc_id)
    return out


def is_balancing_set(g: OrientedHypergraph, ids: Iterable[str]) -> bool:
    """True when reversing exactly these incidences balances the hypergraph."""
    chosen = _check_incidence_ids(g, ids)
    flipped = reverse_incidences(g, chosen)
    balanced, _ = is_balanced(flipped)
    return balanced


def is_minimal_balancing_set(g: OrientedHypergraph, ids: Iterable[str],
                             method: str = "fast") -> bool:
    """True when ``ids`` is a balancing set and no proper subset is one.

    The fast method uses a structural criterion: a balancing set is minimal
    exactly when removing its incidences from the bipartite representation
    leaves the component count unchanged.  The oracle method checks every
    proper subset directly.
    """
    chosen = _check_incidence_ids(g, ids)
    if not is_balancing_set(g, chosen):
        return False
    if method == "fast":
        return component_count(g) == component_count(g, exclude=chosen)
    if method == "oracle":
        ordered = sorted(chosen)
        for size in range(len(ordered)):
            for sub in combinations(ordered, size):
                if is_balancing_set(g, sub):
                    return False
        return True
    raise InputError(f"unknown method {method!r}; use 'fast' or 'oracle'")


@dataclass(frozen=True)
class BalancingSetDifference:
    """Symmetric difference of two balancing sets, as a binary vector.

    ``vector`` follows the hypergraph's stored incidence order.  The
    difference of two balancing sets always lies in the cut space of the
    bipartite representation; ``in_cut_space`` reports the verification,
    with a fundamental circle of odd overlap as counterexample otherwise.
    """

    vector: tuple[int, ...]
    incidences: tuple[str, ...]
    in_cut_space: bool
    counterexample: tuple[str, ...] | None


def balancing_set_difference(g: OrientedHypergraph,
                             first: Iterable[str],
                             second: Iterable[str]) -> BalancingSetDifference:
    """Symmetric difference of two balancing sets with a cut-space check.

    Membership in the cut space is verified by orthogonality against every
    fundamental circle of a spanning forest, which spans the cycle space.
    """
    a = _check_incidence_ids(g, first)
    b = _check_incidence_ids(g, second)
    if not is_balancing_set(g, a):
        raise InputError("first incidence set is not a balancing set")
    if not is_balancing_set(g, b):
        raise InputError("second incidence set is not a balancing set")
    diff = a ^ b
    vector = tuple(1 if inc.id in diff else 0 for inc in g.incidences)
    forest = spanning_forest(g, "bfs")
    counterexample: tuple[str, ...] | None = None
    for inc in g.incidences:
        if inc.id in forest:
            continue
        nodes, incs = fundamental_cycle(g, forest, inc.id)
        if len(diff.intersection(incs)) % 2:
            counterexample = tuple(incs)
            break
    return BalancingSetDifference(vector, tuple(sorted(diff)),
                                  counterexample is None, counterexample)


# ---------------------------------------------------------------------------
# Frustration


@dataclass(frozen=True)
class FrustrationResult:
    """A frustration value with its witness balancing set.

    ``exact`` is True when the value is the true minimum; search modes that
    stop early report an upper bound instead and say so.  ``evaluations``
    counts candidate sets or spanning trees inspected, depending on mode.
    """

    value: int
    witness: tuple[str, ...]
    mode: str
    exact: bool
    evaluations: int
    seed: int | None = None


def _fundamental_circle_data(
        g: OrientedHypergraph,
        forest: SpanningForest) -> list[tuple[frozenset[str], int]]:
    """(incidence set, sign) for each fundamental circle of the forest."""
    data = []
    for inc in g.incidences:
        if inc.id in forest:
            continue
        nodes, incs = fundamental_cycle(g, forest, inc.id)
        sign = 1
        for other in incs:
            sign *= g.sign_of(other)
        if len(incs) % 2:
            raise InputError("fundamental circle with odd incidence count")
        if (len(incs) // 2) % 2:
            sign = -sign
        data.append((frozenset(incs), sign))
    return data


def _balancing_by_circles(candidate: frozenset[str],
                          circles: Sequence[tuple[frozenset[str], int]]) -> bool:
    """Whether flipping ``candidate`` makes every listed circle positive.

    Valid as a balance test only when the hypergraph is balanceable, where
    positive fundamental circles force all circles positive.
    """
    for incs, sign in circles:
        overlap = len(candidate & incs)
        if sign * (-1) ** overlap != 1:
            return False
    return True


def _frustration_exact(g: OrientedHypergraph,
                       budget: int | None) -> FrustrationResult:
    forest = spanning_forest(g, "bfs")
    circles = _fundamental_circle_data(g, forest)
    ids = sorted(inc.id for inc in g.incidences)
    evaluations = 0
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            evaluations += 1
            if budget is not None and evaluations > budget:
                raise ResourceError(
                    f"exact frustration budget of {budget} candidate sets "
                    f"exhausted at size {size}")
            if _balancing_by_circles(frozenset(combo), circles):
                return FrustrationResult(size, combo, "exact", True,
                                         evaluations)
    raise InputError("no balancing set found; input was not balanceable")


def _component_partition(g: OrientedHypergraph) -> list[tuple[set[Node], list[str]]]:
    """(node set, incidence ids) per connected component, in discovery order."""
    comps = []
    for nodes in gamma_components(g):
        incs = [inc.id for inc in g.incidences
                if (VERTEX, inc.vertex) in nodes]
        comps.append((nodes, incs))
    return comps


def _is_spanning_tree(node_count: int, nodes_of: dict[str, tuple[Node, Node]],
                      combo: Sequence[str]) -> bool:
    """Union-find acyclicity test for a candidate tree edge set."""
    parent: dict[Node, Node] = {}

    def find(x: Node) -> Node:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    merged = 0
    for inc_id in combo:
        u, v = nodes_of[inc_id]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        merged += 1
    return merged == node_count - 1


def _tree_change_count(g: OrientedHypergraph, tree: set[str],
                       component_incs: Sequence[str],
                       nodes_of: dict[str, tuple[Node, Node]]) -> list[str]:
    """Incidences a reorientation along ``tree`` would flip, by direct walk."""
    parent: dict[Node, tuple[str, Node] | None] = {}
    depth: dict[Node, int] = {}
    adj: dict[Node, list[tuple[str, Node]]] = {}
    for inc_id in tree:
        u, v = nodes_of[inc_id]
        adj.setdefault(u, []).append((inc_id, v))
        adj.setdefault(v, []).append((inc_id, u))
    for node in adj:
        if node in parent:
            continue
        parent[node] = None
        depth[node] = 0
        stack = [node]
        while stack:
            cur = stack.pop()
            for inc_id, nxt in adj[cur]:
                if nxt not in parent:
                    parent[nxt] = (inc_id, cur)
                    depth[nxt] = depth[cur] + 1
                    stack.append(nxt)
    changed = []
    for inc_id in component_incs:
        if inc_id in tree:
            continue
        u, v = nodes_of[inc_id]
        sign = g.sign_of(inc_id)
        count = 1
        x, y = u, v
        while depth.get(x, 0) > depth.get(y, 0):
            step = parent[x]
            sign *= g.sign_of(step[0])
            count += 1
            x = step[1]
        while depth.get(y, 0) > depth.get(x, 0):
            step = parent[y]
            sign *= g.sign_of(step[0])
            count += 1
            y = step[1]
        while x != y:
            sx, sy = parent[x], parent[y]
            sign *= g.sign_of(sx[0]) * g.sign_of(sy[0])
            count += 2
            x, y = sx[1], sy[1]
        if (count // 2) % 2:
            sign = -sign
        if sign != 1:
            changed.append(inc_id)
    return changed


DEFAULT_TREE_CAP = 100_000


def _frustration_trees(g: OrientedHypergraph,
                       budget: int | None) -> FrustrationResult:
    cap = DEFAULT_TREE_CAP if budget is None else budget
    nodes_of = {inc.id: ((VERTEX, inc.vertex), (EDGE, inc.edge))
                for inc in g.incidences}
    inspected = 0
    exact = True
    total = 0
    witness: list[str] = []
    for nodes, incs in _component_partition(g):
        tree_size = len(nodes) - 1
        best: list[str] | None = None
        seen_any = False
        for combo in combinations(sorted(incs), tree_size):
            if inspected >= cap:
                exact = False
                break
            if not _is_spanning_tree(len(nodes), nodes_of, combo):
                continue
            inspected += 1
            seen_any = True
            changed = _tree_change_count(g, set(combo), incs, nodes_of)
            if best is None or len(changed) < len(best):
                best = changed
                if not best:
                    break
        if not seen_any:
            base = camion_reorient(g)
            best = sorted(i for i in base.changed if i in set(incs))
            exact = False
        total += len(best)
        witness.extend(best)
    return FrustrationResult(total, tuple(sorted(witness)), "trees", exact,
                             inspected)


def _star_sets(g: OrientedHypergraph) -> list[tuple[str, frozenset[str]]]:
    """Incidence stars of vertices then edges, each a switching move."""
    stars = []
    for v in sorted(g.vertices):
        stars.append((f"v:{v}", frozenset(i.id for i in g.incidences_at(v))))
    for e in sorted(g.edges):
        stars.append((f"e:{e}", frozenset(i.id for i in g.incidences_of(e))))
    return stars


def _hill_climb(start: frozenset[str],
                stars: Sequence[tuple[str, frozenset[str]]],
                evaluations: int, budget: int) -> tuple[frozenset[str], int]:
    current = start
    improved = True
    while improved and evaluations < budget:
        improved = False
        for name, star in stars:
            if evaluations >= budget:
                break
            evaluations += 1
            candidate = current ^ star
            if len(candidate) < len(current):
                current = candidate
                improved = True
                break
    return current, evaluations


def _frustration_local(g: OrientedHypergraph, budget: int | None,
                       seed: int) -> FrustrationResult:
    cap = 10_000 if budget is None else budget
    stars = _star_sets(g)
    base = camion_reorient(g)
    best, evaluations = _hill_climb(base.changed, stars, 0, cap)
    restart = 0
    while evaluations < cap and best:
        restart += 1
        forest = spanning_forest(g, "random", seed=seed + restart)
        start = camion_reorient(g, forest).changed
        found, evaluations = _hill_climb(start, stars, evaluations, cap)
        if len(found) < len(best):
            best = found
    return FrustrationResult(len(best), tuple(sorted(best)), "local_search",
                             len(best) == 0, evaluations, seed)


def frustration(g: OrientedHypergraph, mode: str = "exact",
                budget: int | None = None, seed: int = 0) -> FrustrationResult:
    """Smallest number of incidence reversals that balance the hypergraph.

    Three modes: ``exact`` tries candidate sets in ascending size and is
    guaranteed minimal; ``trees`` minimizes the reorientation change set
    over spanning forests, enumerated up to a cap; ``local_search`` improves
    a reorientation witness by switching moves within an evaluation budget.
    The latter two flag their answer as a bound when the search was cut off.
    Undefined for unbalanceable inputs.
    """
    ok, _cert = is_balanceable(g)
    if not ok:
        raise UnbalanceableError(
            "frustration is undefined: the hypergraph is not balanceable")
    if mode == "exact":
        return _frustration_exact(g, budget)
    if mode == "trees":
        return _frustration_trees(g, budget)
    if mode == "local_search":
        return _frustration_local(g, budget, seed)
    raise InputError(f"unknown mode {mode!r}; use 'exact', 'trees', "
                     "or 'local_search'")
