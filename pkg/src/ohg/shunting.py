"""Structural recognition and shunting decompositions.

Flowers are the minimally inseparable building blocks, pseudo-flowers carry
thorns that arteries can grab onto, and a shunting wires flower parts
together through disjoint arteries so that the whole becomes a matroid
circuit.  This module recognizes each shape, validates decompositions
against their three defining conditions, decides optimality, and generates
certified instances.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .balance import is_balanceable, is_balanced
from .camion import is_balancing_set, is_minimal_balancing_set
from .errors import InputError, ResourceError
from .gamma import blocks
from .linalg import Domain, nullity
from .model import (
    EDGE,
    VERTEX,
    OrientedHypergraph,
    contract_degree2_vertex,
    cyclomatic_number,
    edge_induced,
    gamma_adjacency,
    gamma_components,
    incidence_matrix,
    weak_delete,
)

DEFAULT_MAX_FLOWER_EDGES = 12


# ---------------------------------------------------------------------------
# Basic shapes


def is_inseparable(g: OrientedHypergraph) -> bool:
    """Every pair of incidences lies on a common circle.

    Operationally: the bipartite representation is connected and has a
    single block containing every incidence.  Conventions: a hypergraph
    with no incidences is inseparable exactly when its representation has
    at most one node (empty, a loose edge, a bare vertex); a single
    incidence is never inseparable.
    """
    if not g.incidences:
        return len(g.vertices) + len(g.edges) <= 1
    if len(g.incidences) == 1:
        return False
    if len(gamma_components(g)) != 1:
        return False
    return len(blocks(g)) == 1


def _circle_edges(g: OrientedHypergraph) -> set[str]:
    """Edges that lie on at least one circle.

    An edge is on a circle exactly when two of its incidences share a
    block of the bipartite representation.
    """
    out: set[str] = set()
    for blk in blocks(g):
        per_edge: dict[str, int] = {}
        for inc_id in blk:
            e = g.incidence(inc_id).edge
            per_edge[e] = per_edge.get(e, 0) + 1
            if per_edge[e] >= 2:
                out.add(e)
    return out


def is_flower(g: OrientedHypergraph,
              max_edges: int = DEFAULT_MAX_FLOWER_EDGES) -> bool:
    """Inseparable with no proper edge-induced subhypergraph inseparable.

    Minimality ranges over proper nonempty edge subsets; the induced
    subhypergraph keeps every vertex incident to a kept edge together with
    its incidences into kept edges.  A hypergraph without edges is not a
    flower.  Checking is exhaustive, so inputs with more than ``max_edges``
    edges are rejected.
    """
    if not g.edges:
        return False
    if not is_inseparable(g):
        return False
    if len(g.edges) > max_edges:
        raise ResourceError(
            f"flower minimality check needs 2^{len(g.edges)} edge subsets; "
            f"the cap is {max_edges} edges")
    ids = sorted(g.edges)
    for size in range(1, len(ids)):
        for subset in combinations(ids, size):
            if is_inseparable(edge_induced(g, subset)):
                return False
    return True


def find_thorns(g: OrientedHypergraph) -> frozenset[str]:
    """Monovalent vertices whose incident edge lies on some circle."""
    on_circle = _circle_edges(g)
    out = set()
    for v in g.vertices:
        incs = g.incidences_at(v)
        if len(incs) == 1 and incs[0].edge in on_circle:
            out.add(v)
    return frozenset(out)


def _is_one_edge(g: OrientedHypergraph) -> bool:
    return (len(g.vertices) == 1 and len(g.edges) == 1
            and len(g.incidences) == 1)


def is_pseudo_flower(g: OrientedHypergraph, allow_one_edges: bool = True,
                     max_edges: int = DEFAULT_MAX_FLOWER_EDGES) -> bool:
    """Has thorns, and weak-deleting all of them leaves a flower.

    A bare 1-edge has no circle so its vertex is not literally a thorn;
    with ``allow_one_edges`` (the default, matching how decompositions
    treat them) a 1-edge counts as a balanced pseudo-flower whose vertex
    plays the thorn role.
    """
    if _is_one_edge(g):
        return allow_one_edges
    thorns = find_thorns(g)
    if not thorns:
        return False
    return is_flower(weak_delete(g, thorns, ()), max_edges=max_edges)


def part_thorns(g: OrientedHypergraph) -> frozenset[str]:
    """Thorns of a decomposition part; a 1-edge contributes its vertex."""
    if _is_one_edge(g):
        return frozenset(g.vertices)
    return find_thorns(g)


def is_artery(g: OrientedHypergraph) -> bool:
    """A single vertex, or an iterated subdivision of a k-edge (k >= 2).

    Equivalently: the bipartite representation is a tree, every vertex has
    degree 1 or 2, and every edge has at least two incidences.
    """
    if len(g.vertices) == 1 and not g.edges and not g.incidences:
        return True
    if not g.edges or not g.vertices:
        return False
    if len(gamma_components(g)) != 1 or cyclomatic_number(g) != 0:
        return False
    for v in g.vertices:
        if g.degree(v) not in (1, 2):
            return False
    for e in g.edges:
        if g.edge_size(e) < 2:
            return False
    return True


def artery_external_vertices(g: OrientedHypergraph) -> frozenset[str]:
    """Attachment points of an artery: its vertices of degree 1.

    A single-vertex artery is its own attachment point.
    """
    if len(g.vertices) == 1 and not g.edges:
        return frozenset(g.vertices)
    return frozenset(v for v in g.vertices if g.degree(v) == 1)


# ---------------------------------------------------------------------------
# Shunting decompositions


@dataclass(frozen=True)
class ShuntingDecomposition:
    """Named parts of a shunting: flower parts, arteries, and the wiring.

    ``flowers`` lists the edge ids of each flower or pseudo-flower part;
    ``arteries`` the edge ids of each edge-artery; ``vertex_arteries`` the
    single-vertex arteries.  ``pairing`` maps each shunt-side incidence id
    to the balancing-set incidence id it meets at a shared vertex.
    """

    flowers: tuple[frozenset[str], ...]
    arteries: tuple[tuple[str, ...], ...]
    vertex_arteries: tuple[str, ...]
    balancing_set: frozenset[str]
    thorns: frozenset[str]
    pairing: dict[str, str]

    @classmethod
    def build(cls, flowers: Iterable[Iterable[str]],
              arteries: Iterable[Iterable[str]] = (),
              vertex_arteries: Iterable[str] = (),
              balancing_set: Iterable[str] = (),
              thorns: Iterable[str] = (),
              pairing: dict[str, str] | None = None) -> "ShuntingDecomposition":
        return cls(tuple(frozenset(f) for f in flowers),
                   tuple(tuple(a) for a in arteries),
                   tuple(vertex_arteries),
                   frozenset(balancing_set),
                   frozenset(thorns),
                   dict(pairing or {}))

    def to_json(self) -> str:
        payload = {
            "flowers": [sorted(f) for f in self.flowers],
            "arteries": [list(a) for a in self.arteries],
            "vertex_arteries": list(self.vertex_arteries),
            "balancing_set": sorted(self.balancing_set),
            "thorns": sorted(self.thorns),
            "pairing": {k: self.pairing[k] for k in sorted(self.pairing)},
        }
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ShuntingDecomposition":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"decomposition is not valid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise InputError("decomposition JSON must be an object")
        keys = {"flowers", "arteries", "vertex_arteries", "balancing_set",
                "thorns", "pairing"}
        extra = set(payload) - keys
        missing = keys - set(payload)
        if extra or missing:
            parts = []
            if missing:
                parts.append(f"missing keys {sorted(missing)}")
            if extra:
                parts.append(f"unknown keys {sorted(extra)}")
            raise InputError("decomposition JSON: " + "; ".join(parts))
        return cls.build(payload["flowers"], payload["arteries"],
                         payload["vertex_arteries"], payload["balancing_set"],
                         payload["thorns"], payload["pairing"])


@dataclass(frozen=True)
class Check:
    """One validation line: a named condition, its verdict, and a witness."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ShuntingReport:
    """Full validation verdict with one entry per checked condition."""

    ok: bool
    checks: tuple[Check, ...]

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> str:
        payload = {
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed,
                        "detail": c.detail} for c in self.checks],
        }
        return json.dumps(payload, indent=2) + "\n"


def _flower_subs(d: ShuntingDecomposition,
                 g: OrientedHypergraph) -> list[OrientedHypergraph]:
    return [edge_induced(g, part) for part in d.flowers]


def _artery_subs(d: ShuntingDecomposition,
                 g: OrientedHypergraph) -> list[OrientedHypergraph]:
    return [edge_induced(g, part) for part in d.arteries]


def _check_ids(d: ShuntingDecomposition, g: OrientedHypergraph) -> None:
    for part in list(d.flowers) + [frozenset(a) for a in d.arteries]:
        for e in part:
            if e not in g.edges:
                raise InputError(f"decomposition names unknown edge {e!r}")
    for v in d.vertex_arteries:
        if v not in g.vertices:
            raise InputError(f"decomposition names unknown vertex {v!r}")
    for i in d.balancing_set:
        g.incidence(i)
    for v in d.thorns:
        if v not in g.vertices:
            raise InputError(f"decomposition names unknown thorn {v!r}")
    for k, v in d.pairing.items():
        g.incidence(k)
        g.incidence(v)


def validate_shunting(d: ShuntingDecomposition,
                      g: OrientedHypergraph) -> ShuntingReport:
    """Check a decomposition against the three shunting conditions.

    Also verifies the structural side facts: parts are disjoint and cover
    the hypergraph, each flower part really is a balanceable flower or
    pseudo-flower with no balanced plain flower, each artery really is an
    artery, and the declared balancing set and thorns are what they claim.
    """
    _check_ids(d, g)
    checks: list[Check] = []

    flower_subs = _flower_subs(d, g)
    artery_subs = _artery_subs(d, g)

    # Disjointness: flower parts share no edges; vertices are shared only
    # at declared single-vertex arteries; edge-arteries meet parts only at
    # their external vertices and meet each other nowhere.
    problems = []
    all_flower_edges: set[str] = set()
    for part in d.flowers:
        dup = all_flower_edges & part
        if dup:
            problems.append(f"edge(s) {sorted(dup)} in two flower parts")
        all_flower_edges |= part
    artery_edges: set[str] = set()
    for part in d.arteries:
        for e in part:
            if e in artery_edges:
                problems.append(f"edge {e!r} in two arteries")
            if e in all_flower_edges:
                problems.append(f"edge {e!r} in a flower part and an artery")
            artery_edges.add(e)
    vertex_artery_set = set(d.vertex_arteries)
    for a, b in combinations(range(len(flower_subs)), 2):
        shared = set(flower_subs[a].vertices) & set(flower_subs[b].vertices)
        undeclared = shared - vertex_artery_set
        if undeclared:
            problems.append(
                f"flower parts {a} and {b} share vertex(es) "
                f"{sorted(undeclared)} without a vertex-artery")
    for idx, sub in enumerate(artery_subs):
        ext = artery_external_vertices(sub)
        internal = set(sub.vertices) - ext
        for fsub in flower_subs:
            bad = internal & set(fsub.vertices)
            if bad:
                problems.append(
                    f"artery {idx} internal vertex(es) {sorted(bad)} "
                    f"belong to a flower part")
    for a, b in combinations(range(len(artery_subs)), 2):
        shared = set(artery_subs[a].vertices) & set(artery_subs[b].vertices)
        if shared:
            problems.append(
                f"arteries {a} and {b} share vertex(es) {sorted(shared)}")
    checks.append(Check("parts-disjoint", not problems, "; ".join(problems)))

    # Coverage: the parts together are exactly G.
    missing_edges = set(g.edges) - all_flower_edges - artery_edges
    part_vertices: set[str] = set(vertex_artery_set)
    for sub in flower_subs + artery_subs:
        part_vertices |= set(sub.vertices)
    missing_vertices = set(g.vertices) - part_vertices
    cover_notes = []
    if missing_edges:
        cover_notes.append(f"uncovered edge(s) {sorted(missing_edges)}")
    if missing_vertices:
        cover_notes.append(f"uncovered vertex(es) {sorted(missing_vertices)}")
    checks.append(Check("coverage", not cover_notes, "; ".join(cover_notes)))

    # Part recognition.
    notes = []
    for idx, sub in enumerate(flower_subs):
        flower = is_flower(sub)
        pseudo = is_pseudo_flower(sub)
        if not flower and not pseudo:
            notes.append(f"part {idx} is neither flower nor pseudo-flower")
            continue
        if not is_balanceable(sub)[0]:
            notes.append(f"part {idx} is not balanceable")
        if flower and not pseudo and is_balanced(sub)[0]:
            notes.append(f"part {idx} is a balanced flower")
    checks.append(Check("flower-parts", not notes, "; ".join(notes)))

    notes = []
    for idx, sub in enumerate(artery_subs):
        if not is_artery(sub):
            notes.append(f"artery {idx} is not an artery")
    checks.append(Check("arteries", not notes, "; ".join(notes)))

    # Declared thorns match the computed ones.
    computed_thorns: set[str] = set()
    for sub in flower_subs:
        computed_thorns |= part_thorns(sub)
    thorns_ok = computed_thorns == set(d.thorns)
    checks.append(Check(
        "thorns", thorns_ok,
        "" if thorns_ok else f"computed {sorted(computed_thorns)}, "
                             f"declared {sorted(d.thorns)}"))

    # The balancing set lives inside the flower parts and balances each
    # part.  The union itself may still be unbalanceable when a shunt
    # closes a bad circle; that is judged by is_balanceable_shunting.
    notes = []
    outside = [i for i in d.balancing_set
               if g.incidence(i).edge not in all_flower_edges]
    if outside:
        notes.append(f"balancing incidence(s) {sorted(outside)} "
                     f"outside flower parts")
    else:
        for idx, sub in enumerate(flower_subs):
            part_ids = {i.id for i in sub.incidences}
            if not is_balancing_set(sub, d.balancing_set & part_ids):
                notes.append(f"declared set does not balance part {idx}")
    checks.append(Check("balancing-set", not notes, "; ".join(notes)))

    # Condition 1: connected union, and connected through the shunt
    # attachments specifically.  Every part must be reachable along the
    # attachment structure (parts as nodes, balancing/thorn vertices as
    # junction edges), and that structure must be acyclic: a junction a
    # part merely passes through, or a second junction closing a ring
    # between the same two parts, would let the union count as connected
    # while the shunt wiring is not a tree.
    cond1_notes = []
    if len(gamma_components(g)) != 1:
        cond1_notes.append(f"{len(gamma_components(g))} components")
    attachment_vertices = sorted(
        {g.incidence(i).vertex for i in d.balancing_set} | set(d.thorns))
    parts_at: dict[str, list[str]] = {u: [] for u in attachment_vertices}
    for idx, sub in enumerate(flower_subs):
        for u in attachment_vertices:
            if u in sub.vertices:
                parts_at[u].append(f"part {idx}")
    for idx, sub in enumerate(artery_subs):
        ext = artery_external_vertices(sub)
        for u in attachment_vertices:
            if u in ext:
                parts_at[u].append(f"artery {idx}")
    n_parts = len(flower_subs) + len(artery_subs)
    parent = list(range(n_parts))

    def _find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    name_index = {f"part {i}": i for i in range(len(flower_subs))}
    name_index.update({f"artery {i}": len(flower_subs) + i
                       for i in range(len(artery_subs))})
    cyclic = False
    for u in attachment_vertices:
        members = [name_index[p] for p in parts_at[u]]
        for a, b in zip(members, members[1:]):
            ra, rb = _find(a), _find(b)
            if ra == rb:
                cyclic = True
            else:
                parent[ra] = rb
    roots = {_find(i) for i in range(n_parts)}
    if len(roots) > 1:
        cond1_notes.append("attachment structure leaves "
                           f"{len(roots)} part groups unconnected")
    if cyclic:
        cond1_notes.append("attachment structure closes a ring")
    checks.append(Check("condition-1-connected", not cond1_notes,
                        "; ".join(cond1_notes)))

    # Condition 2: external artery vertices are exactly V(B) union thorns,
    # counted with multiplicity.  Each balancing incidence and each thorn
    # claims one attachment slot; a path artery offers one slot per external
    # vertex, and a single-vertex artery is a degenerate path whose two ends
    # both sit at its vertex, so it offers that vertex twice.  Multiset
    # equality is what keeps a junction from serving three or more parts.
    externals: Counter[str] = Counter()
    for v in vertex_artery_set:
        externals[v] += 2
    for sub in artery_subs:
        externals.update(artery_external_vertices(sub))
    target: Counter[str] = Counter(
        g.incidence(i).vertex for i in d.balancing_set)
    target.update(d.thorns)
    cond2 = externals == target
    checks.append(Check(
        "condition-2-externals", cond2,
        "" if cond2 else f"artery attachments {sorted(externals.elements())} "
                         f"vs balancing/thorn vertices "
                         f"{sorted(target.elements())}"))

    # Condition 3: the pairing is a bijection between the balancing set
    # and shunt-side incidences at coinciding vertices.  For an edge
    # artery the shunt side is one of its incidences; for a single-vertex
    # artery it is the incidence of the other part sharing that vertex.
    notes = []
    values = list(d.pairing.values())
    if set(values) != set(d.balancing_set) or len(values) != len(set(values)):
        notes.append("pairing values are not a bijection onto the "
                     "balancing set")
    artery_inc_ids = {i.id for i in g.incidences if i.edge in artery_edges}
    for shunt_id, bal_id in d.pairing.items():
        shunt = g.incidence(shunt_id)
        bal = g.incidence(bal_id)
        if shunt.vertex != bal.vertex:
            notes.append(f"pair ({shunt_id}, {bal_id}) vertices differ")
        if shunt_id in artery_inc_ids:
            continue
        if shunt.vertex in vertex_artery_set \
                and shunt.edge in all_flower_edges \
                and shunt.edge != bal.edge:
            continue
        notes.append(f"{shunt_id} is not a shunt-side incidence")
    balancing_vertices = {g.incidence(b).vertex for b in d.balancing_set}
    for i in g.incidences:
        if i.id in artery_inc_ids and i.vertex in balancing_vertices \
                and i.id not in d.pairing:
            notes.append(f"artery incidence {i.id} at balancing vertex "
                         f"{i.vertex} is unpaired")
    for u in attachment_vertices:
        if len(parts_at[u]) != 2:
            notes.append(f"attachment {u} serves {len(parts_at[u])} "
                         f"part(s); exactly 2 required")
    checks.append(Check("condition-3-pairing", not notes, "; ".join(notes)))

    return ShuntingReport(all(c.passed for c in checks), tuple(checks))


# ---------------------------------------------------------------------------
# Shunt path classification


@dataclass(frozen=True)
class ShuntPath:
    """A minimal shunt path between two attachment vertices.

    ``label`` concatenates the endpoint roles (t for thorn, b for a
    balancing-set vertex) in sorted order; ``internal`` says whether both
    ends attach to the same flower part.
    """

    endpoints: tuple[str, str]
    edges: tuple[str, ...]
    label: str
    internal: bool


def _vertex_role(v: str, d: ShuntingDecomposition,
                 vb: set[str]) -> str:
    if v in d.thorns:
        return "t"
    if v in vb:
        return "b"
    return "?"


def _normalize_label(pair: str) -> str:
    """Canonical endpoint-role label: one of tt, tb, bb."""
    ordered = "".join(sorted(pair))
    return "tb" if ordered == "bt" else ordered


def _artery_paths(sub: OrientedHypergraph) -> list[tuple[str, str, tuple[str, ...]]]:
    """Edge lists of the unique path between each pair of attachment points."""
    ext = sorted(artery_external_vertices(sub))
    if len(ext) < 2:
        return []
    adj = gamma_adjacency(sub)
    out = []
    for a, b in combinations(ext, 2):
        start, goal = (VERTEX, a), (VERTEX, b)
        parent: dict = {start: None}
        queue = [start]
        while queue:
            node = queue.pop(0)
            if node == goal:
                break
            for inc, other in adj[node]:
                if other not in parent:
                    parent[other] = (inc, node)
                    queue.append(other)
        edges: list[str] = []
        node = goal
        while parent[node] is not None:
            inc, prev = parent[node]
            if node[0] == EDGE:
                edges.append(node[1])
            node = prev
        out.append((a, b, tuple(reversed(edges))))
    return out


def _part_of_vertex(v: str, flower_subs: Sequence[OrientedHypergraph]) -> set[int]:
    return {idx for idx, sub in enumerate(flower_subs) if v in sub.vertices}


def classify_shunt_paths(d: ShuntingDecomposition,
                         g: OrientedHypergraph) -> list[ShuntPath]:
    """Label every minimal shunt path by its endpoint roles."""
    flower_subs = _flower_subs(d, g)
    vb = {g.incidence(i).vertex for i in d.balancing_set}
    out: list[ShuntPath] = []
    for sub in _artery_subs(d, g):
        for a, b, edges in _artery_paths(sub):
            label = _normalize_label(_vertex_role(a, d, vb)
                                     + _vertex_role(b, d, vb))
            parts_a = _part_of_vertex(a, flower_subs)
            parts_b = _part_of_vertex(b, flower_subs)
            internal = bool(parts_a & parts_b)
            out.append(ShuntPath((a, b), edges, label, internal))
    for v in d.vertex_arteries:
        touching = sorted(_part_of_vertex(v, flower_subs))
        roles = []
        for idx in touching:
            if v in part_thorns(flower_subs[idx]):
                roles.append("t")
            elif v in vb:
                roles.append("b")
            else:
                roles.append("?")
        label = _normalize_label("".join(roles[:2])) if len(roles) >= 2 else "?"
        out.append(ShuntPath((v, v), (), label, False))
    return out


def is_balanceable_shunting(d: ShuntingDecomposition,
                            g: OrientedHypergraph) -> bool:
    """Balanceability of the assembled shunting, computed two ways.

    The direct route runs the flow-based obstruction search on the union;
    the structural route demands that every artery edge lying on a circle
    appears only in paths between two thorns.  The two answers are
    required to agree.
    """
    direct = is_balanceable(g)[0]
    on_circle = _circle_edges(g)
    structural = True
    for path in classify_shunt_paths(d, g):
        if path.label != "tt" and on_circle.intersection(path.edges):
            structural = False
            break
    if direct != structural:
        raise RuntimeError(
            "balanceability routes disagree: direct flow check says "
            f"{direct}, tt-path criterion says {structural}")
    return direct


# ---------------------------------------------------------------------------
# Optimality


def is_F_maximal(d: ShuntingDecomposition, g: OrientedHypergraph,
                 max_checks: int = 10_000) -> bool:
    """No union of flower parts with artery edges forms a (pseudo-)flower.

    Ranges over every nonempty subset of flower parts paired with every
    nonempty subset of artery edges; single-vertex arteries contribute no
    edges so they never enter the union.
    """
    artery_edges = sorted(e for part in d.arteries for e in part)
    if not artery_edges or not d.flowers:
        return True
    total = (2 ** len(d.flowers) - 1) * (2 ** len(artery_edges) - 1)
    if total > max_checks:
        raise ResourceError(
            f"F-maximality needs {total} subset pairs "
            f"({len(d.flowers)} parts, {len(artery_edges)} artery edges); "
            f"the cap is {max_checks}")
    part_list = list(d.flowers)
    for p_size in range(1, len(part_list) + 1):
        for parts in combinations(range(len(part_list)), p_size):
            base: set[str] = set()
            for idx in parts:
                base |= part_list[idx]
            for a_size in range(1, len(artery_edges) + 1):
                for extra in combinations(artery_edges, a_size):
                    sub = edge_induced(g, base | set(extra))
                    if is_flower(sub) or is_pseudo_flower(sub):
                        return False
    return True


def is_S_minimal(d: ShuntingDecomposition, g: OrientedHypergraph) -> bool:
    """The declared balancing set is minimal, by exhaustive subset check."""
    return is_minimal_balancing_set(g, d.balancing_set, method="oracle")


def is_optimal_shunting(d: ShuntingDecomposition, g: OrientedHypergraph,
                        max_checks: int = 10_000) -> bool:
    """F-maximal and S-minimal at once, after validation."""
    report = validate_shunting(d, g)
    if not report.ok:
        return False
    return is_F_maximal(d, g, max_checks=max_checks) and is_S_minimal(d, g)


# ---------------------------------------------------------------------------
# Decomposition search


DEFAULT_SEARCH_BUDGET = 20_000


@dataclass(frozen=True)
class DecompositionSearch:
    """Outcome of the bounded search: a decomposition or an honest miss.

    A None in ``found`` never disproves anything; ``reason`` says whether
    the budget ran out or the bounded space was exhausted.
    """

    found: ShuntingDecomposition | None
    inspected: int
    reason: str


class _BudgetExhausted(Exception):
    pass


def _flower_part_candidates(g: OrientedHypergraph, spend,
                            max_part_edges: int) -> list[frozenset[str]]:
    """Edge subsets that could serve as flower parts, ascending by size.

    Balanceable flower or pseudo-flower, with no balanced plain flower
    admitted.  Every vertex of such a part has degree at most 2, which
    prunes most subsets before the expensive recognizers run.
    """
    ids = sorted(g.edges)
    out: list[frozenset[str]] = []
    for size in range(1, min(len(ids), max_part_edges) + 1):
        for combo in combinations(ids, size):
            spend()
            sub = edge_induced(g, combo)
            if any(sub.degree(v) > 2 for v in sub.vertices):
                continue
            if len(gamma_components(sub)) != 1:
                continue
            if not is_balanceable(sub)[0]:
                continue
            flower = is_flower(sub)
            pseudo = is_pseudo_flower(sub)
            if not flower and not pseudo:
                continue
            if flower and not pseudo and is_balanced(sub)[0]:
                continue
            out.append(frozenset(combo))
    return out


def _minimal_balancing_sets(sub: OrientedHypergraph, spend,
                            cap: int = 128) -> list[frozenset[str]]:
    """All minimal balancing sets of one part, ascending by size.

    Ascending enumeration makes minimality a containment check against
    the sets already found.
    """
    ids = sorted(i.id for i in sub.incidences)
    found: list[frozenset[str]] = []
    for size in range(0, len(ids) + 1):
        for combo in combinations(ids, size):
            spend()
            as_set = frozenset(combo)
            if any(prev < as_set for prev in found):
                continue
            if is_balancing_set(sub, as_set):
                found.append(as_set)
                if len(found) >= cap:
                    return found
    return found


def _match_pairing(g: OrientedHypergraph, bal_ids: list[str],
                   candidates: dict[str, list[str]],
                   required: set[str]) -> dict[str, str] | None:
    """Injective assignment of a distinct partner incidence to each
    balancing incidence, covering every required partner; None if stuck."""

    def extend(pos: int, used: set[str]) -> dict[str, str] | None:
        if pos == len(bal_ids):
            if required <= used:
                return {}
            return None
        b = bal_ids[pos]
        for key in candidates[b]:
            if key in used:
                continue
            rest = extend(pos + 1, used | {key})
            if rest is not None:
                rest[key] = b
                return rest
        return None

    return extend(0, set())


def _assemble_candidate(g: OrientedHypergraph,
                        flower_parts: list[frozenset[str]],
                        arteries: list[tuple[str, ...]],
                        balancing: frozenset[str],
                        thorns: frozenset[str],
                        artery_edges: set[str]) -> ShuntingDecomposition | None:
    vb = {g.incidence(b).vertex for b in balancing}
    externals: set[str] = set()
    for part in arteries:
        externals |= artery_external_vertices(edge_induced(g, part))
    vertex_arteries = sorted((vb | thorns) - externals)

    part_of_edge = {e: k for k, part in enumerate(flower_parts) for e in part}
    va_set = set(vertex_arteries)
    candidates: dict[str, list[str]] = {}
    for b in sorted(balancing):
        b_inc = g.incidence(b)
        opts = []
        for i in g.incidences:
            if i.vertex != b_inc.vertex or i.id == b:
                continue
            if i.edge in artery_edges:
                opts.append(i.id)
            elif (b_inc.vertex in va_set and i.edge in part_of_edge
                  and part_of_edge[i.edge] != part_of_edge.get(b_inc.edge)):
                opts.append(i.id)
        candidates[b] = opts
    required = {i.id for i in g.incidences
                if i.edge in artery_edges and i.vertex in vb}
    pairing = _match_pairing(g, sorted(balancing), candidates, required)
    if pairing is None:
        return None
    return ShuntingDecomposition.build(
        flower_parts, arteries, vertex_arteries, balancing, thorns, pairing)


def find_shunting_decomposition(
        g: OrientedHypergraph,
        budget: int = DEFAULT_SEARCH_BUDGET,
        require_optimal: bool = True,
        max_part_edges: int = DEFAULT_MAX_FLOWER_EDGES) -> DecompositionSearch:
    """Bounded backtracking search for a shunting decomposition of g.

    Enumerates candidate flower parts, covers the edge set with disjoint
    parts plus artery leftovers, then tries per-part minimal balancing
    sets and pairings until a decomposition validates (and, by default,
    is optimal).  Every subset inspected and candidate assembled draws
    down the budget; running out is reported as a miss, never as proof
    that no decomposition exists.
    """
    if len(gamma_components(g)) != 1:
        return DecompositionSearch(
            None, 0, "no decomposition found (the union must be connected)")
    counter = {"spent": 0}

    def spend(amount: int = 1) -> None:
        counter["spent"] += amount
        if counter["spent"] > budget:
            raise _BudgetExhausted

    ids = sorted(g.edges)

    def covers(parts: list[frozenset[str]], artery_edges: set[str]):
        """Yield (flower parts, artery components) for each full cover."""
        spend()
        free = next((e for e in ids
                     if e not in artery_edges
                     and all(e not in p for p in parts)), None)
        if free is None:
            if not parts:
                return
            if artery_edges:
                rest = edge_induced(g, artery_edges)
                comps = []
                for comp in gamma_components(rest):
                    comp_edges = tuple(sorted(
                        nid for kind, nid in comp if kind == EDGE))
                    if not comp_edges:
                        return
                    spend()
                    if not is_artery(edge_induced(g, comp_edges)):
                        return
                    comps.append(comp_edges)
                yield parts, comps
            else:
                yield parts, []
            return
        for cand in part_candidates:
            if free not in cand:
                continue
            if any(e in artery_edges or any(e in p for p in parts)
                   for e in cand):
                continue
            yield from covers(parts + [cand], artery_edges)
        artery_edges.add(free)
        yield from covers(parts, artery_edges)
        artery_edges.discard(free)

    try:
        part_candidates = _flower_part_candidates(g, spend, max_part_edges)
        for flower_parts, arteries in covers([], set()):
            subs = [edge_induced(g, p) for p in flower_parts]
            thorns = frozenset().union(*[part_thorns(s) for s in subs])
            artery_edges = {e for part in arteries for e in part}
            choices = [_minimal_balancing_sets(s, spend) for s in subs]
            if any(not c for c in choices):
                continue
            for combo in product(*choices):
                spend()
                balancing = frozenset().union(*combo)
                d = _assemble_candidate(g, flower_parts, list(arteries),
                                        balancing, thorns, artery_edges)
                if d is None:
                    continue
                spend(10)
                if not validate_shunting(d, g).ok:
                    continue
                if require_optimal and not is_optimal_shunting(d, g):
                    continue
                return DecompositionSearch(d, counter["spent"], "found")
        return DecompositionSearch(
            None, counter["spent"],
            "no decomposition found: bounded search space exhausted")
    except _BudgetExhausted:
        return DecompositionSearch(
            None, counter["spent"], "no decomposition found within budget")


# ---------------------------------------------------------------------------
# Upsilon tree


def upsilon_tree(d: ShuntingDecomposition,
                 g: OrientedHypergraph) -> OrientedHypergraph:
    """Attachment structure of a balanceable F-maximal shunting.

    Vertices are the flower parts (F0, F1, ...) and edge-arteries (A0,
    A1, ...); edges are the attachment vertices (balancing-set vertices
    and thorns); incidences record which part touches which attachment.
    Single-vertex arteries coincide with their attachment vertex and add
    no node of their own.  The result is asserted to be a tree in which
    every attachment edge has exactly two incidences.
    """
    report = validate_shunting(d, g)
    if not report.ok:
        raise InputError("decomposition is not a valid shunting: "
                         + "; ".join(c.name for c in report.failed()))
    if not is_balanceable_shunting(d, g):
        raise InputError("upsilon tree needs a balanceable shunting")
    if not is_F_maximal(d, g):
        raise InputError("upsilon tree needs an F-maximal shunting")

    flower_subs = _flower_subs(d, g)
    artery_subs = _artery_subs(d, g)
    vb = {g.incidence(i).vertex for i in d.balancing_set}
    attachments = sorted(vb | set(d.thorns))

    node_names: list[str] = []
    touch: list[tuple[str, str]] = []
    for idx, sub in enumerate(flower_subs):
        name = f"F{idx}"
        node_names.append(name)
        for u in attachments:
            if u in sub.vertices:
                touch.append((name, u))
    for idx, sub in enumerate(artery_subs):
        name = f"A{idx}"
        node_names.append(name)
        for u in sorted(artery_external_vertices(sub)):
            touch.append((name, u))

    incs = [(f"y{n}", part, u, 1)
            for n, (part, u) in enumerate(sorted(touch), start=1)]
    tree = OrientedHypergraph.build(node_names, attachments, incs)

    for u in attachments:
        if tree.edge_size(u) != 2:
            raise RuntimeError(
                f"attachment vertex {u!r} joins {tree.edge_size(u)} parts; "
                f"a balanceable F-maximal shunting must give exactly 2")
    if len(gamma_components(tree)) != 1 or cyclomatic_number(tree) != 0:
        raise RuntimeError("attachment structure is not a tree")
    return tree


# ---------------------------------------------------------------------------
# Hypercircles


@dataclass(frozen=True)
class Hypercircle:
    """A fully contracted shunting with its two shape parameters.

    ``t`` counts monovalent vertices; ``k`` counts flower parts, read off
    as cyclic blocks plus 1-edges.
    """

    hypergraph: OrientedHypergraph
    t: int
    k: int


def to_hypercircle(g: OrientedHypergraph) -> Hypercircle:
    """Contract every eligible degree-2 vertex and report (t, k).

    A vertex is contracted when it joins two distinct edges that each
    keep at least two incidences, so pendant 1-edges survive as petals.
    Contractions switch signs as needed, which keeps every circle sign
    intact.
    """
    current = g
    changed = True
    while changed:
        changed = False
        for v in sorted(current.vertices):
            incs = current.incidences_at(v)
            if len(incs) != 2:
                continue
            e, f = incs[0].edge, incs[1].edge
            if e == f:
                continue
            if current.edge_size(e) < 2 or current.edge_size(f) < 2:
                continue
            current = contract_degree2_vertex(current, v)
            changed = True
            break
    t = sum(1 for v in current.vertices if current.degree(v) == 1)
    cyclic = sum(1 for blk in blocks(current) if len(blk) >= 2)
    one_edges = sum(1 for e in current.edges if current.edge_size(e) == 1)
    return Hypercircle(current, t, cyclic + one_edges)


# ---------------------------------------------------------------------------
# Arterial connection builder


@dataclass(frozen=True)
class ArterialConnection:
    """A built connection: the hypergraph plus per-connection artery data.

    ``arteries`` holds one entry per requested connection: the edge ids of
    the created path (empty for a length-0 merge) and the two attachment
    vertex ids in the assembled hypergraph.
    """

    hypergraph: OrientedHypergraph
    arteries: tuple[tuple[tuple[str, ...], tuple[str, str]], ...]


def build_arterial_connection(
        parts: Sequence[OrientedHypergraph],
        connections: Sequence[tuple[tuple[int, str], tuple[int, str], int]],
) -> ArterialConnection:
    """Assemble disjoint parts with arteries, creating no new circles.

    Each part's ids are prefixed ``p{i}.``.  A connection ((i, v), (j, w),
    length) joins vertex v of part i to vertex w of part j by a path of
    ``length`` 2-edges; length 0 identifies the two vertices (a
    single-vertex artery).  The connection pattern must be a forest over
    the parts, otherwise the assembly would close a circle.
    """
    for idx, ((pa, va), (pb, vb), length) in enumerate(connections):
        for p, v in ((pa, va), (pb, vb)):
            if not 0 <= p < len(parts):
                raise InputError(f"connection {idx} names part {p}")
            if v not in parts[p].vertices:
                raise InputError(
                    f"connection {idx} names vertex {v!r} absent from "
                    f"part {p}")
        if length < 0:
            raise InputError(f"connection {idx} has negative length")

    parent = list(range(len(parts)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, ((pa, _), (pb, _), _) in enumerate(connections):
        ra, rb = find(pa), find(pb)
        if ra == rb:
            raise InputError(
                f"connection {idx} closes a circle among the parts")
        parent[ra] = rb

    vertices: list[str] = []
    edges: list[str] = []
    incs: list[tuple[str, str, str, int]] = []
    rename: dict[tuple[int, str], str] = {}
    for i, part in enumerate(parts):
        for v in part.vertices:
            rename[(i, v)] = f"p{i}.{v}"
            vertices.append(f"p{i}.{v}")
        for e in part.edges:
            edges.append(f"p{i}.{e}")
        for inc in part.incidences:
            incs.append((f"p{i}.{inc.id}", f"p{i}.{inc.vertex}",
                         f"p{i}.{inc.edge}", inc.sign))

    merged: dict[str, str] = {}

    def resolve(name: str) -> str:
        while name in merged:
            name = merged[name]
        return name

    artery_info: list[tuple[tuple[str, ...], tuple[str, str]]] = []
    for idx, ((pa, va), (pb, vb), length) in enumerate(connections):
        a = resolve(rename[(pa, va)])
        b = resolve(rename[(pb, vb)])
        if length == 0:
            merged[b] = a
            artery_info.append(((), (a, a)))
            continue
        chain = [a] + [f"a{idx}.w{n}" for n in range(1, length)] + [b]
        vertices.extend(chain[1:-1])
        edge_ids = []
        for n in range(length):
            e = f"a{idx}.e{n + 1}"
            edges.append(e)
            edge_ids.append(e)
            incs.append((f"a{idx}.i{n + 1}a", chain[n], e, 1))
            incs.append((f"a{idx}.i{n + 1}b", chain[n + 1], e, -1))
        artery_info.append((tuple(edge_ids), (a, b)))

    final_vertices = [v for v in vertices if v not in merged]
    final_incs = [(i, resolve(v), e, s) for i, v, e, s in incs]
    final_info = tuple((edges_, (resolve(x), resolve(y)))
                       for edges_, (x, y) in artery_info)
    return ArterialConnection(
        OrientedHypergraph.build(final_vertices, edges, final_incs),
        final_info)


# ---------------------------------------------------------------------------
# Certified instance generator


def _negative_circle_part(rng: random.Random) -> tuple[OrientedHypergraph, list[str]]:
    """A negative circle of 2-edges with a single balancing incidence."""
    m = rng.randint(3, 5)
    vertices = [f"v{n}" for n in range(1, m + 1)]
    edges = [f"c{n}" for n in range(1, m + 1)]
    incs = []
    for n in range(m):
        e = edges[n]
        incs.append((f"i{n + 1}a", vertices[n], e, 1))
        incs.append((f"i{n + 1}b", vertices[(n + 1) % m], e, -1))
    g = OrientedHypergraph.build(vertices, edges, incs)
    flip = rng.randrange(m)
    side = rng.choice("ab")
    victim = f"i{flip + 1}{side}"
    g = g.with_signs({victim: -g.sign_of(victim)})
    return g, [victim]


def _theta_flower_part(rng: random.Random) -> tuple[OrientedHypergraph, list[str]]:
    """Two 3-edges joined by three 2-edge paths, with two circles negative.

    All signs start positive, which leaves every pair-of-paths circle
    positive; reversing one incidence on a chosen path turns exactly the
    two circles through that path negative.  The minimal balancing set of
    size 2 flips one incidence on each of the other two paths.
    """
    vertices = [f"v{j}" for j in (1, 2, 3)] + [f"w{j}" for j in (1, 2, 3)]
    edges = ["h1", "h2", "f1", "f2", "f3"]
    incs = []
    for j in (1, 2, 3):
        incs.append((f"t{j}", f"v{j}", "h1", 1))
        incs.append((f"u{j}", f"w{j}", "h2", 1))
        incs.append((f"m{j}a", f"v{j}", f"f{j}", 1))
        incs.append((f"m{j}b", f"w{j}", f"f{j}", -1))
    g = OrientedHypergraph.build(vertices, edges, incs)
    neg = rng.choice((1, 2, 3))
    g = g.with_signs({f"m{neg}a": -1})
    others = [j for j in (1, 2, 3) if j != neg]
    return g, [f"t{j}" for j in others]


def generate_optimal_shunting(
        seed: int = 0,
        flower_kind: str = "auto",
        artery_length: int | None = None,
) -> tuple[OrientedHypergraph, ShuntingDecomposition]:
    """A randomized certified instance: flower plus 1-edge pseudo-flowers.

    One balanceable unbalanced flower gets a 1-edge pseudo-flower at each
    balancing-set vertex, attached by a single-vertex artery or a path of
    the requested length.  The output always validates as an optimal
    shunting and its incidence matrix has nullity 1 over the rationals;
    the same seed reproduces the same instance byte for byte.
    """
    rng = random.Random(seed)
    if flower_kind == "auto":
        flower_kind = rng.choice(("circle", "theta"))
    if flower_kind == "circle":
        core, balancing = _negative_circle_part(rng)
    elif flower_kind == "theta":
        core, balancing = _theta_flower_part(rng)
    else:
        raise InputError(f"unknown flower kind {flower_kind!r}; "
                         "use 'circle', 'theta', or 'auto'")

    parts: list[OrientedHypergraph] = [core]
    connections = []
    lengths = []
    for bal_id in balancing:
        v = core.incidence(bal_id).vertex
        petal = OrientedHypergraph.build(
            ["x"], ["p"], [("q", "x", "p", rng.choice((1, -1)))])
        length = (rng.randint(0, 2) if artery_length is None
                  else artery_length)
        connections.append(((0, v), (len(parts), "x"), length))
        lengths.append(length)
        parts.append(petal)

    built = build_arterial_connection(parts, connections)
    g = built.hypergraph

    flowers = [frozenset(f"p0.{e}" for e in core.edges)]
    for n in range(1, len(parts)):
        flowers.append(frozenset({f"p{n}.p"}))
    arteries = []
    vertex_arteries = []
    thorns = []
    pairing = {}
    bal_ids = [f"p0.{i}" for i in balancing]
    for n, (edge_ids, (end_a, end_b)) in enumerate(built.arteries):
        petal_inc = f"p{n + 1}.q"
        if not edge_ids:
            vertex_arteries.append(end_a)
            thorns.append(end_a)
            pairing[petal_inc] = bal_ids[n]
        else:
            arteries.append(edge_ids)
            thorns.append(end_b)
            pairing[f"a{n}.i1a"] = bal_ids[n]

    d = ShuntingDecomposition.build(flowers, arteries, vertex_arteries,
                                    bal_ids, thorns, pairing)

    report = validate_shunting(d, g)
    if not report.ok:
        raise RuntimeError("generated decomposition failed validation: "
                           + "; ".join(c.name for c in report.failed()))
    if not is_optimal_shunting(d, g):
        raise RuntimeError("generated decomposition is not optimal")
    matrix = incidence_matrix(g, Domain.rationals())
    if nullity(matrix.entries, matrix.domain) != 1:
        raise RuntimeError("generated instance is not nullity 1")
    return g, d
