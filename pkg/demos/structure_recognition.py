"""Recognize flowers, arteries, and complete shunting decompositions.

Run with: python3 demos/structure_recognition.py
"""

from ohg import (
    Domain,
    find_shunting_decomposition,
    generate_optimal_shunting,
    incidence_matrix,
    is_artery,
    is_circuit,
    is_flower,
    is_optimal_shunting,
    is_pseudo_flower,
    nullity,
    to_hypercircle,
    upsilon_tree,
    validate_shunting,
)
from ohg.model import OrientedHypergraph, edge_induced


def show(title):
    print()
    print(title)
    print("-" * len(title))


show("A certified generated instance")
g, d = generate_optimal_shunting(seed=2, artery_length=1)
print("vertices:", len(g.vertices), "edges:", len(g.edges),
      "incidences:", len(g.incidences))
print("flower parts:", [sorted(p) for p in d.flowers])
print("arteries:", [list(a) for a in d.arteries])
print("balancing set:", sorted(d.balancing_set))
print("thorns:", sorted(d.thorns))

report = validate_shunting(d, g)
print("valid:", report.ok)
for check in report.checks:
    print(f"  {check.name}: {'ok' if check.passed else check.detail}")
print("optimal:", is_optimal_shunting(d, g))

show("The decomposition is a matroid circuit")
matrix = incidence_matrix(g, Domain.rationals())
print("nullity over Q:", nullity(matrix))
circuit = is_circuit(g, sorted(g.edges), Domain.rationals())
print("dependent:", circuit.dependent, " minimal:", circuit.minimal)

show("Part recognition on the pieces")
core = edge_induced(g, sorted(d.flowers[0]))
print("core is a flower:", is_flower(core))
petal = edge_induced(g, sorted(d.flowers[1]))
print("petal is a pseudo-flower:", is_pseudo_flower(petal))
if d.arteries:
    artery = edge_induced(g, list(d.arteries[0]))
    print("artery recognized:", is_artery(artery))

show("Attachment structure")
tree = upsilon_tree(d, g)
print("parts as nodes:", sorted(tree.vertices))
print("junctions as edges:", sorted(tree.edges))

show("Contraction to a hypercircle")
h = to_hypercircle(g)
print("t (free thorn count):", h.t)
print("k (flower part count):", h.k)

show("Search rediscovers the structure")
found = find_shunting_decomposition(g)
print("reason:", found.reason, " inspected:", found.inspected)
print("same flower parts:",
      sorted(map(sorted, found.found.flowers)) == sorted(map(sorted, d.flowers)))

show("A near miss: one balanced circle")
square = OrientedHypergraph.build(
    ["a", "b"], ["f1", "f2"],
    [("j1", "a", "f1", 1), ("j2", "b", "f1", -1),
     ("j3", "b", "f2", 1), ("j4", "a", "f2", -1)],
)
result = find_shunting_decomposition(square)
print("found:", result.found, " reason:", result.reason)
