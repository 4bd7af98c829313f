"""Algorithms on the bipartite representation.

Every structural question about an oriented hypergraph is answered on its
bipartite representation: nodes are tagged vertices and edges, links are
incidences.  This module supplies deterministic spanning forests, biconnected
blocks, and internally disjoint path searches on that multigraph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError
from .model import EDGE, VERTEX, OrientedHypergraph, gamma_adjacency

Node = tuple[str, str]


def sorted_nodes(g: OrientedHypergraph) -> list[Node]:
    """Vertex nodes in id order, then edge nodes in id order."""
    return ([(VERTEX, v) for v in sorted(g.vertices)]
            + [(EDGE, e) for e in sorted(g.edges)])


def sorted_adjacency(g: OrientedHypergraph) -> dict[Node, list[tuple[str, Node]]]:
    """Adjacency with neighbor lists sorted by (neighbor id, incidence id)."""
    adj = gamma_adjacency(g)
    return {node: sorted(nbrs, key=lambda t: (t[1][1], t[0]))
            for node, nbrs in adj.items()}


@dataclass
class SpanningForest:
    """A spanning forest of the bipartite representation.

    Forest incidences keep parent pointers so tree paths can be read off;
    the strategy tag records how the forest was grown.
    """

    incidences: frozenset[str]
    strategy: str
    seed: int | None
    roots: tuple[Node, ...]
    parent: dict[Node, tuple[str, Node] | None] = field(repr=False)
    depth: dict[Node, int] = field(repr=False)

    def __contains__(self, incidence_id: str) -> bool:
        return incidence_id in self.incidences

    def path_between(self, a: Node, b: Node) -> tuple[list[Node], list[str]]:
        """Unique forest path a .. b as (node sequence, incidence sequence)."""
        if a not in self.depth or b not in self.depth:
            raise InputError(f"node {a!r} or {b!r} not spanned by the forest")
        front, back, incs_front, incs_back = [a], [b], [], []
        x, y = a, b
        while x != y:
            if self.depth[x] >= self.depth[y]:
                step = self.parent[x]
                if step is None:
                    raise InputError(f"{a!r} and {b!r} lie in different components")
                incs_front.append(step[0])
                x = step[1]
                front.append(x)
            else:
                step = self.parent[y]
                if step is None:
                    raise InputError(f"{a!r} and {b!r} lie in different components")
                incs_back.append(step[0])
                y = step[1]
                back.append(y)
        nodes = front + back[:-1][::-1]
        incs = incs_front + incs_back[::-1]
        return nodes, incs


def spanning_forest(g: OrientedHypergraph, strategy: str = "bfs",
                    seed: int = 0) -> SpanningForest:
    """Grow a spanning forest of the bipartite representation.

    bfs/dfs are fully deterministic: roots are the least unvisited node
    (vertices before edges, id order) and neighbors are taken in id order.
    random shuffles both orders from the given seed.
    """
    if strategy not in ("bfs", "dfs", "random"):
        raise InputError(f"unknown forest strategy {strategy!r}")
    order = sorted_nodes(g)
    adj = sorted_adjacency(g)
    rng = None
    if strategy == "random":
        rng = random.Random(seed)
        order = order[:]
        rng.shuffle(order)
        adj = {node: _shuffled(nbrs, rng) for node, nbrs in adj.items()}

    parent: dict[Node, tuple[str, Node] | None] = {}
    depth: dict[Node, int] = {}
    chosen: set[str] = set()
    roots = []
    depth_first = strategy in ("dfs", "random")
    for root in order:
        if root in depth:
            continue
        roots.append(root)
        parent[root] = None
        depth[root] = 0
        if not depth_first:
            queue = [root]
            while queue:
                node = queue.pop(0)
                for inc, other in adj[node]:
                    if other in depth:
                        continue
                    parent[other] = (inc, node)
                    depth[other] = depth[node] + 1
                    chosen.add(inc)
                    queue.append(other)
        else:
            stack = [[root, 0]]
            while stack:
                node, ptr = stack[-1]
                nbrs = adj[node]
                if ptr < len(nbrs):
                    stack[-1][1] += 1
                    inc, other = nbrs[ptr]
                    if other not in depth:
                        parent[other] = (inc, node)
                        depth[other] = depth[node] + 1
                        chosen.add(inc)
                        stack.append([other, 0])
                else:
                    stack.pop()
    seed_out = seed if strategy == "random" else None
    return SpanningForest(frozenset(chosen), strategy, seed_out, tuple(roots),
                          parent, depth)


def _shuffled(items, rng):
    out = list(items)
    rng.shuffle(out)
    return out


def fundamental_cycle(g: OrientedHypergraph, forest: SpanningForest,
                      incidence_id: str) -> tuple[list[Node], list[str]]:
    """Cycle closed by a non-forest incidence: forest path plus the incidence.

    Returned as (nodes, incidences) with len(nodes) == len(incidences) and the
    last incidence joining the final node back to the first.
    """
    inc = g.incidence(incidence_id)
    if incidence_id in forest.incidences:
        raise InputError(f"incidence {incidence_id!r} belongs to the forest")
    nodes, incs = forest.path_between((VERTEX, inc.vertex), (EDGE, inc.edge))
    return nodes, incs + [incidence_id]


def component_count(g: OrientedHypergraph,
                    exclude: Iterable[str] = ()) -> int:
    """Number of connected components, optionally ignoring some incidences."""
    skip = set(exclude)
    adj = gamma_adjacency(g)
    seen: set[Node] = set()
    count = 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            node = stack.pop()
            for inc, other in adj[node]:
                if inc not in skip and other not in seen:
                    seen.add(other)
                    stack.append(other)
    return count


# ---------------------------------------------------------------------------
# Biconnected blocks


def blocks(g: OrientedHypergraph) -> list[frozenset[str]]:
    """Biconnected blocks of the bipartite representation.

    Each block is the set of incidence ids of one maximal 2-connected piece;
    a bridge forms a singleton block.  Parallel incidences land in a common
    block, as they close a cycle of length two.
    """
    adj = sorted_adjacency(g)
    index: dict[Node, int] = {}
    low: dict[Node, int] = {}
    counter = 0
    out: list[frozenset[str]] = []
    for root in sorted_nodes(g):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        estack: list[str] = []
        stack: list[list] = [[root, None, 0]]
        while stack:
            node, in_inc, ptr = stack[-1]
            nbrs = adj[node]
            if ptr < len(nbrs):
                stack[-1][2] += 1
                inc, other = nbrs[ptr]
                if inc == in_inc:
                    continue
                if other not in index:
                    estack.append(inc)
                    index[other] = low[other] = counter
                    counter += 1
                    stack.append([other, inc, 0])
                elif index[other] < index[node]:
                    estack.append(inc)
                    if index[other] < low[node]:
                        low[node] = index[other]
            else:
                stack.pop()
                if stack:
                    pnode = stack[-1][0]
                    if low[node] < low[pnode]:
                        low[pnode] = low[node]
                    if low[node] >= index[pnode]:
                        blk = set()
                        while True:
                            e = estack.pop()
                            blk.add(e)
                            if e == in_inc:
                                break
                        out.append(frozenset(blk))
    return out


def bridges(g: OrientedHypergraph) -> set[str]:
    """Incidences whose removal disconnects their component."""
    return {next(iter(b)) for b in blocks(g) if len(b) == 1}


# ---------------------------------------------------------------------------
# Internally disjoint paths (unit vertex capacities)


class _FlowNet:
    def __init__(self):
        self.adj: dict = {}

    def add_node(self, x):
        self.adj.setdefault(x, [])

    def add_arc(self, u, v, cap, label=None):
        self.add_node(u)
        self.add_node(v)
        fwd = [v, cap, label, None]
        rev = [u, 0, None, fwd]
        fwd[3] = rev
        self.adj[u].append(fwd)
        self.adj[v].append(rev)
        return fwd

    def augment(self, source, sink) -> bool:
        """One BFS augmenting path of unit flow; True when found."""
        prev = {source: None}
        queue = [source]
        while queue:
            u = queue.pop(0)
            if u == sink:
                break
            for arc in self.adj[u]:
                v, cap = arc[0], arc[1]
                if cap > 0 and v not in prev:
                    prev[v] = arc
                    queue.append(v)
        if sink not in prev:
            return False
        node = sink
        while prev[node] is not None:
            arc = prev[node]
            arc[1] -= 1
            arc[3][1] += 1
            node = arc[3][0]
        return True


def internally_disjoint_paths(g: OrientedHypergraph, source: Node, sink: Node,
                              need: int = 3) -> list[tuple[list[Node], list[str]]]:
    """Up to `need` internally vertex-disjoint source-sink paths in the
    bipartite representation.

    Interior nodes get unit capacity; parallel incidences stay parallel unit
    links, so distinct parallel incidences can carry distinct paths.
    """
    if source == sink:
        raise InputError("path endpoints must differ")
    adj = sorted_adjacency(g)
    if source not in adj or sink not in adj:
        raise InputError(f"unknown endpoint {source!r} or {sink!r}")
    net = _FlowNet()
    s_out, t_in = ("out", source), ("in", sink)
    net.add_node(s_out)
    net.add_node(t_in)
    for node in adj:
        if node not in (source, sink):
            net.add_arc(("in", node), ("out", node), 1)
    for inc in g.incidences:
        a, b = (VERTEX, inc.vertex), (EDGE, inc.edge)
        for u, v in ((a, b), (b, a)):
            if u == sink or v == source:
                continue
            net.add_arc(("out", u), ("in", v), 1, (inc.id, u, v))

    flow = 0
    while flow < need and net.augment(s_out, t_in):
        flow += 1

    # Positive-flow labeled arcs decompose into vertex-disjoint paths.
    used = {}
    for u, arcs in net.adj.items():
        for arc in arcs:
            if arc[2] is not None and arc[3][1] > 0:
                used.setdefault(u, []).append(arc)
    paths = []
    for _ in range(flow):
        node, here = s_out, source
        nodes, incs = [source], []
        while here != sink:
            arc = used[node].pop(0)
            arc[3][1] -= 1
            inc_id, _, nxt = arc[2]
            incs.append(inc_id)
            nodes.append(nxt)
            here = nxt
            node = ("out", nxt)
        paths.append((nodes, incs))
    return paths
