"""Walk through balance testing and reorientation on small instances.

Run with: python3 demos/balance_walkthrough.py
"""

from ohg import (
    OrientedHypergraph,
    camion_reorient,
    circle_sign,
    detect_theta,
    enumerate_circles,
    frustration,
    is_balanceable,
    is_balanced,
    make_Lk,
)


def show(title):
    print()
    print(title)
    print("-" * len(title))


# A triangle with one reversed incidence.  Vertices v1..v3, edges e1..e3,
# every edge holding two incidences; the last sign makes the single
# circle negative.
triangle = OrientedHypergraph.build(
    ["v1", "v2", "v3"],
    ["e1", "e2", "e3"],
    [
        ("i1", "v1", "e1", 1),
        ("i2", "v2", "e1", -1),
        ("i3", "v2", "e2", 1),
        ("i4", "v3", "e2", -1),
        ("i5", "v3", "e3", 1),
        ("i6", "v1", "e3", 1),
    ],
)

show("Circles of the unbalanced triangle")
for circle in enumerate_circles(triangle):
    print(" ", " ".join(circle.incidences), "sign", circle_sign(triangle, circle))

balanced, witness = is_balanced(triangle)
print("balanced:", balanced)
print("negative circle witness:", " ".join(witness.incidences))

show("Reorientation")
result = camion_reorient(triangle)
print("changed incidences:", sorted(result.changed))
print("balanced afterwards:", result.balanced)
for circle in enumerate_circles(result.hypergraph):
    print(" ", " ".join(circle.incidences), "sign",
          circle_sign(result.hypergraph, circle))

show("Frustration")
fr = frustration(triangle, mode="exact")
print("minimum incidences to flip:", fr.value)
print("witness:", sorted(fr.witness))

show("An unbalanceable bouquet")
bouquet = make_Lk(3, 3)
ok, cert = is_balanceable(bouquet)
print("balanceable:", ok)
cert = detect_theta(bouquet, kind="cross")
print("certificate endpoints:", cert.endpoints)
for path in cert.paths:
    print("  path:", " ".join(path.incidences))
