"""Walks, circles, signs, balance, and balanceability.

A walk alternates vertices and edges through named incidences; its sign is
(-1)^floor(n/2) times the product of its incidence signs, n the number of
incidences.  A hypergraph is balanced when every circle is positive, and
balanceable when some reorientation of its incidences makes it balanced.
The obstruction to balanceability is three internally disjoint vertex-edge
paths sharing endpoints, found here by unit-capacity flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import InputError, ResourceError
from .gamma import (Node, internally_disjoint_paths, sorted_adjacency,
                    sorted_nodes, spanning_forest, fundamental_cycle)
from .model import EDGE, VERTEX, OrientedHypergraph

DEFAULT_CIRCLE_CAP = 1_000_000


@dataclass(frozen=True)
class Walk:
    """Alternating node/incidence sequence; nodes has one more entry."""

    nodes: tuple[Node, ...]
    incidences: tuple[str, ...]

    @property
    def length(self) -> Fraction:
        """Number of incidences over two; half-integer for vertex-edge walks."""
        return Fraction(len(self.incidences), 2)

    @property
    def interior(self) -> tuple[Node, ...]:
        return self.nodes[1:-1]


def validate_walk(g: OrientedHypergraph, walk: Walk) -> None:
    """Check the walk is realizable in g; raises InputError when not."""
    if len(walk.nodes) != len(walk.incidences) + 1:
        raise InputError("walk must have one more node than incidences")
    for k, inc_id in enumerate(walk.incidences):
        inc = g.incidence(inc_id)
        ends = {(VERTEX, inc.vertex), (EDGE, inc.edge)}
        if {walk.nodes[k], walk.nodes[k + 1]} != ends:
            raise InputError(
                f"incidence {inc_id!r} does not join {walk.nodes[k]!r} "
                f"and {walk.nodes[k + 1]!r}")


def is_path(g: OrientedHypergraph, walk: Walk) -> bool:
    """A path repeats no node and no incidence."""
    validate_walk(g, walk)
    return (len(set(walk.nodes)) == len(walk.nodes)
            and len(set(walk.incidences)) == len(walk.incidences))


def path_sign(g: OrientedHypergraph, walk: Walk) -> int:
    """(-1)^floor(n/2) times the product of the walk's incidence signs."""
    validate_walk(g, walk)
    n = len(walk.incidences)
    prod = 1
    for inc_id in walk.incidences:
        prod *= g.sign_of(inc_id)
    return (-1) ** (n // 2) * prod


@dataclass(frozen=True)
class Circle:
    """A circle in canonical form.

    nodes[k] sits between incidences[k] and incidences[k+1]; the last
    incidence closes back to nodes[0].  The stored representative is the
    lexicographically least incidence-id sequence over all rotations and
    both directions.
    """

    nodes: tuple[Node, ...]
    incidences: tuple[str, ...]

    @classmethod
    def from_sequence(cls, nodes: Iterable[Node],
                      incidences: Iterable[str]) -> Circle:
        nodes, incs = tuple(nodes), tuple(incidences)
        if len(nodes) != len(incs) or len(incs) < 2:
            raise InputError("a circle needs equally many nodes and incidences, two at least")
        best = None
        for direction in range(2):
            if direction:
                # Reverse traversal keeps nodes[0] first, walks links backwards.
                nodes_d = (nodes[0],) + nodes[:0:-1]
                incs_d = incs[::-1]
            else:
                nodes_d, incs_d = nodes, incs
            for r in range(len(incs_d)):
                cand = (incs_d[r:] + incs_d[:r], nodes_d[r:] + nodes_d[:r])
                if best is None or cand < best:
                    best = cand
        return cls(best[1], best[0])

    @property
    def length(self) -> Fraction:
        return Fraction(len(self.incidences), 2)


def _circle_walk(circle: Circle) -> Walk:
    return Walk(circle.nodes + (circle.nodes[0],), circle.incidences)


def validate_circle(g: OrientedHypergraph, circle: Circle) -> None:
    """Check the circle is a genuine non-repeating closed walk in g."""
    walk = _circle_walk(circle)
    validate_walk(g, walk)
    if len(set(circle.nodes)) != len(circle.nodes):
        raise InputError("circle repeats a node")
    if len(set(circle.incidences)) != len(circle.incidences):
        raise InputError("circle repeats an incidence")


def circle_sign(g: OrientedHypergraph, circle: Circle) -> int:
    return path_sign(g, _circle_walk(circle))


def circle_sign_mod4(g: OrientedHypergraph, circle: Circle) -> int:
    """+1 exactly when the circle's incidence signs sum to 0 mod 4.

    Agrees with circle_sign: flipping one incidence moves the sum by 2 and
    flips the parity of the negative count together.
    """
    total = sum(g.sign_of(i) for i in circle.incidences)
    return 1 if total % 4 == 0 else -1


def enumerate_circles(g: OrientedHypergraph,
                      cap: int = DEFAULT_CIRCLE_CAP) -> list[Circle]:
    """All circles of g, canonical and sorted by (length, incidence ids).

    A circle is a simple cycle of the bipartite representation: two parallel
    incidences already close one.  Raises ResourceError past the cap.
    """
    adj = sorted_adjacency(g)
    order = {node: i for i, node in enumerate(sorted_nodes(g))}
    found: set[Circle] = set()

    def record(nodes, incs):
        found.add(Circle.from_sequence(nodes, incs))
        if len(found) > cap:
            raise ResourceError(f"more than {cap} circles; raise the cap to continue")

    def extend(root, node, path_nodes, path_incs, used, on_path):
        for inc, other in adj[node]:
            if inc in used:
                continue
            if other == root:
                if path_incs and inc != path_incs[0]:
                    record(path_nodes, path_incs + [inc])
            elif other not in on_path and order[other] > order[root]:
                path_nodes.append(other)
                path_incs.append(inc)
                used.add(inc)
                on_path.add(other)
                extend(root, other, path_nodes, path_incs, used, on_path)
                on_path.discard(other)
                used.discard(inc)
                path_incs.pop()
                path_nodes.pop()

    for root in sorted_nodes(g):
        extend(root, root, [root], [], set(), {root})
    return sorted(found, key=lambda c: (len(c.incidences), c.incidences))


# ---------------------------------------------------------------------------
# Theta detection and balanceability


@dataclass(frozen=True)
class ThetaCertificate:
    """Three internally disjoint paths sharing both endpoints."""

    kind: str  # cross | vertex | edge
    endpoints: tuple[Node, Node]
    paths: tuple[Walk, Walk, Walk]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "endpoints": [list(self.endpoints[0]), list(self.endpoints[1])],
            "paths": [list(w.incidences) for w in self.paths],
        }


def verify_theta(g: OrientedHypergraph, cert: ThetaCertificate) -> bool:
    """Check a theta certificate against g."""
    a, b = cert.endpoints
    sides = {"cross": {a[0], b[0]} == {VERTEX, EDGE},
             "vertex": a[0] == b[0] == VERTEX and a != b,
             "edge": a[0] == b[0] == EDGE and a != b}
    if cert.kind not in sides or not sides[cert.kind]:
        return False
    if len(cert.paths) != 3:
        return False
    interiors = []
    for walk in cert.paths:
        try:
            if not is_path(g, walk):
                return False
        except InputError:
            return False
        if walk.nodes[0] != a or walk.nodes[-1] != b:
            return False
        interiors.append(set(walk.interior))
    for i in range(3):
        for j in range(i + 1, 3):
            if interiors[i] & interiors[j]:
                return False
    return True


def _endpoint_pairs(g: OrientedHypergraph, kind: str):
    vs = sorted(g.vertices)
    es = sorted(g.edges)
    if kind == "cross":
        return [((VERTEX, v), (EDGE, e)) for v in vs for e in es]
    if kind == "vertex":
        return [((VERTEX, a), (VERTEX, b))
                for i, a in enumerate(vs) for b in vs[i + 1:]]
    if kind == "edge":
        return [((EDGE, a), (EDGE, b))
                for i, a in enumerate(es) for b in es[i + 1:]]
    raise InputError(f"unknown theta kind {kind!r}")


def detect_theta(g: OrientedHypergraph, kind: str = "cross",
                 jobs: int = 1) -> ThetaCertificate | None:
    """First triple of internally disjoint paths between a pair of the
    requested endpoint kind, scanning pairs in lexicographic order."""
    degree = {(VERTEX, v): g.degree(v) for v in g.vertices}
    degree.update({(EDGE, e): g.edge_size(e) for e in g.edges})

    pairs = [(a, b) for a, b in _endpoint_pairs(g, kind)
             if degree[a] >= 3 and degree[b] >= 3]

    def probe(pair):
        a, b = pair
        paths = internally_disjoint_paths(g, a, b, need=3)
        if len(paths) >= 3:
            walks = tuple(Walk(tuple(ns), tuple(incs)) for ns, incs in paths[:3])
            return ThetaCertificate(kind, (a, b), walks)
        return None

    if jobs > 1 and len(pairs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for cert in pool.map(probe, pairs):
                if cert is not None:
                    return cert
        return None
    for pair in pairs:
        cert = probe(pair)
        if cert is not None:
            return cert
    return None


def is_balanceable(g: OrientedHypergraph,
                   jobs: int = 1) -> tuple[bool, ThetaCertificate | None]:
    """Balanceable means no vertex-edge pair carries three internally
    disjoint connecting paths; the certificate exhibits such a triple."""
    cert = detect_theta(g, "cross", jobs=jobs)
    return (cert is None), cert


def negative_circle_from_theta(g: OrientedHypergraph,
                               cert: ThetaCertificate) -> Circle:
    """Some union of two of the three paths is a negative circle.

    The three pairwise unions have sign product -1 because each path has an
    odd incidence count, so at least one union is negative.
    """
    for i in range(3):
        for j in range(i + 1, 3):
            p, q = cert.paths[i], cert.paths[j]
            nodes = p.nodes + q.nodes[-2:0:-1]
            incs = p.incidences + q.incidences[::-1]
            circle = Circle.from_sequence(nodes, incs)
            validate_circle(g, circle)
            if circle_sign(g, circle) == -1:
                return circle
    raise AssertionError("three disjoint half-integer paths with no negative pair")


def is_balanced(g: OrientedHypergraph, method: str = "fast",
                cap: int = DEFAULT_CIRCLE_CAP) -> tuple[bool, Circle | None]:
    """Whether every circle is positive, plus a negative circle when not.

    fast: balanceability first (an obstruction always hides a negative
    circle), then the fundamental circles of one spanning forest, which
    settle the question for balanceable inputs.  enumerate: check every
    circle against the cap.
    """
    if method == "enumerate":
        for circle in enumerate_circles(g, cap):
            if circle_sign(g, circle) == -1:
                return False, circle
        return True, None
    if method != "fast":
        raise InputError(f"unknown balance method {method!r}")

    ok, cert = is_balanceable(g)
    if not ok:
        return False, negative_circle_from_theta(g, cert)
    forest = spanning_forest(g, "bfs")
    for inc in g.incidences:
        if inc.id in forest.incidences:
            continue
        nodes, incs = fundamental_cycle(g, forest, inc.id)
        circle = Circle.from_sequence(nodes, incs)
        if circle_sign(g, circle) == -1:
            return False, circle
    return True, None


def verify_negative_circle(g: OrientedHypergraph, circle: Circle) -> bool:
    try:
        validate_circle(g, circle)
    except InputError:
        return False
    return circle_sign(g, circle) == -1
