"""Seeded random instance generators shared across the test suite."""

from __future__ import annotations

import random

from ohg.balance import is_balanceable
from ohg.model import OrientedHypergraph


def random_hypergraph(seed: int, max_incidences: int = 12,
                      extra_range: tuple[int, int] = (0, 3),
                      nv_range: tuple[int, int] = (1, 5),
                      ne_range: tuple[int, int] = (1, 5)
                      ) -> OrientedHypergraph:
    """Connected random instance built as a bipartite tree plus extras.

    The tree guarantees connectivity; each extra incidence raises the
    cyclomatic number by one, so instances stay sparse enough for the
    exhaustive oracles.
    """
    rng = random.Random(seed)
    nv = rng.randint(*nv_range)
    ne = rng.randint(*ne_range)
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    edges = [f"e{i}" for i in range(1, ne + 1)]
    incs: list[tuple[str, str, str, int]] = []
    counter = 0

    def fresh() -> str:
        nonlocal counter
        counter += 1
        return f"i{counter}"

    # Spanning tree of the bipartite representation: attach every node
    # to a random already-placed node of the other kind, deferring a
    # node until such a partner exists so the result stays connected.
    nodes = [("v", vertices[0])]
    pending = [("v", x) for x in vertices[1:]] + [("e", x) for x in edges]
    rng.shuffle(pending)
    while pending:
        progressed = False
        deferred = []
        for kind, name in pending:
            others = [n for n in nodes if n[0] != kind]
            if not others:
                deferred.append((kind, name))
                continue
            partner = rng.choice(others)
            v = name if kind == "v" else partner[1]
            e = name if kind == "e" else partner[1]
            incs.append((fresh(), v, e, rng.choice((1, -1))))
            nodes.append((kind, name))
            progressed = True
        if not progressed:
            break
        pending = deferred

    extras = rng.randint(*extra_range)
    for _ in range(extras):
        if len(incs) >= max_incidences:
            break
        incs.append((fresh(), rng.choice(vertices), rng.choice(edges),
                     rng.choice((1, -1))))
    incs = incs[:max_incidences]
    used_e = sorted({e for _, _, e, _ in incs}, key=edges.index)
    used_v = sorted({v for _, v, _, _ in incs}, key=vertices.index)
    if not used_v:
        used_v = [vertices[0]]
    return OrientedHypergraph.build(used_v, used_e, incs)


def random_balanceable(seed: int, max_incidences: int = 12,
                       limit: int = 400, **kwargs) -> OrientedHypergraph:
    """First balanceable instance along the seed sequence."""
    for offset in range(limit):
        g = random_hypergraph(seed * limit + offset, max_incidences,
                              **kwargs)
        if is_balanceable(g)[0]:
            return g
    raise RuntimeError(f"no balanceable instance within {limit} tries")


def plant_obstruction(seed: int) -> OrientedHypergraph:
    """A random instance with an unbalanceable configuration inside.

    Even seeds gain an edge meeting one vertex three times; odd seeds
    gain a vertex with three disjoint routes into one edge.
    """
    rng = random.Random(seed ^ 0x5EED)
    g = random_balanceable(seed, max_incidences=9)
    vertices = list(g.vertices)
    edges = list(g.edges)
    incs = [(i.id, i.vertex, i.edge, i.sign) for i in g.incidences]
    v = rng.choice(vertices)
    if seed % 2 == 0:
        edges = edges + ["trap"]
        incs += [("t1", v, "trap", rng.choice((1, -1))),
                 ("t2", v, "trap", rng.choice((1, -1))),
                 ("t3", v, "trap", rng.choice((1, -1)))]
    else:
        vertices = vertices + ["w1", "w2"]
        edges = edges + ["trap", "leg1", "leg2"]
        incs += [("t1", v, "trap", 1),
                 ("t2", v, "leg1", 1), ("t3", "w1", "leg1", 1),
                 ("t4", "w1", "trap", 1),
                 ("t5", v, "leg2", 1), ("t6", "w2", "leg2", 1),
                 ("t7", "w2", "trap", 1)]
    return OrientedHypergraph.build(vertices, edges, incs)


def random_signed_graph(seed: int, max_edges: int = 6) -> OrientedHypergraph:
    """Connected 2-uniform instance (a signed graph), loops allowed."""
    rng = random.Random(seed)
    m = rng.randint(1, max_edges)
    n = rng.randint(1, m + 1)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    incs = []
    edges = []
    for k in range(1, m + 1):
        edges.append(f"e{k}")
        if k < n:
            a, b = vertices[k], rng.choice(vertices[:k])
        else:
            a, b = rng.choice(vertices), rng.choice(vertices)
        incs.append((f"i{2*k-1}", a, f"e{k}", rng.choice((1, -1))))
        incs.append((f"i{2*k}", b, f"e{k}", rng.choice((1, -1))))
    used = {v for _, v, _, _ in incs}
    return OrientedHypergraph.build([v for v in vertices if v in used],
                                    edges, incs)
