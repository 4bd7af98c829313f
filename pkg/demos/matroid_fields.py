"""Circuits over different fields, and the single-edge minimum table.

Run with: python3 demos/matroid_fields.py
"""

from ohg import (
    Domain,
    cross_theta_analysis,
    cross_theta_plus_pseudoflower,
    enumerate_circuits,
    fano_demo,
    lk_negative_circle_minimum,
    make_Lk,
)


def show(title):
    print()
    print(title)
    print("-" * len(title))


show("Complete rank-3 incidence structure")
print(fano_demo())

show("Minimum negative circles in a k-incidence bouquet")
print("  k  minimum  witness")
for k in range(2, 13):
    result = lk_negative_circle_minimum(k)
    compact = "".join("+" if s > 0 else "-" for s in result.witness)
    print(f"  {k:2d}  {result.minimum:7d}  {compact}")

show("Field-dependent dependency of a bouquet")
g = make_Lk(6, 5)
analysis = cross_theta_analysis(g)
print("entrant:", analysis.entrant, " salient:", analysis.salient)
print("dependent over Q:", analysis.over_rationals.dependent)
print("dependent over:",
      ["GF(%d)" % q for q, _ in analysis.moduli] or "no prime field")
if analysis.composite_note:
    print("note:", analysis.composite_note)

show("Adjoining a pendant edge to force a minimal circuit")
report = cross_theta_plus_pseudoflower(make_Lk(3, 3), 2)
print("edges afterwards:", list(report.edges))
print("dependent:", report.dependent, " minimal:", report.minimal,
      " over:", report.domain)

show("Same structure, different field, different census")
for q in (2, 3):
    circuits = enumerate_circuits(make_Lk(5, 4), Domain.coerce(q))
    print(f"GF({q}): {len(circuits)} circuit(s):",
          [list(c.edges) for c in circuits])
