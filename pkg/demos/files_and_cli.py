"""File formats and the command line interface.

Run with: python3 demos/files_and_cli.py
"""

import tempfile
from pathlib import Path

from ohg import Domain, matrix_csv, parse, serialize, to_dot
from ohg.cli import main
from ohg.model import OrientedHypergraph

g = OrientedHypergraph.build(
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

print("JSON serialization round trip")
print("-----------------------------")
text = serialize(g)
assert parse(text) == g
print(text)

print()
print("Incidence matrix as CSV over GF(2)")
print("----------------------------------")
print(matrix_csv(g, Domain.coerce(2)))

print()
print("Graphviz export (first lines)")
print("-----------------------------")
print("\n".join(to_dot(g).splitlines()[:6]))

print()
print("Driving the CLI in-process")
print("--------------------------")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "triangle.json"
    path.write_text(text)
    for argv in (
        ["info", str(path)],
        ["balance", str(path), "--certificate"],
        ["frustration", str(path), "--mode", "exact"],
    ):
        print(f"$ ohg {' '.join(argv[:1])} triangle.json {' '.join(argv[2:])}")
        code = main(argv)
        print(f"  exit code {code}")
