"""Build small semilattices, test modularity, and round-trip the
point-line representation.

Command line equivalent: ppiprep validate --input FILE
"""

from ppiprep.ppip import birkhoff_roundtrip, consistent_subspaces, induced_ppip
from ppiprep.semilattice import Semilattice

# the five-element diamond: three incomparable atoms under a common top
m3 = Semilattice(
    ["0", "x", "y", "z", "1"],
    [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
)
ok, _ = m3.is_modular_semilattice()
print(f"diamond is modular: {ok}")
print(f"diamond is median: {m3.is_median_semilattice()[0]}")

# the pentagon fails the modular law, and the checker says where
n5 = Semilattice(
    ["0", "a", "b", "c", "1"],
    [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
)
ok, witness = n5.is_modular_semilattice()
print(f"pentagon is modular: {ok}, witness: {witness}")

# the representation: join irreducibles as points, maximal nontrivial
# joins of three as lines, recoverable by taking consistent subspaces
structure = induced_ppip(m3)
print(f"points: {sorted(structure.poset.elements)}")
print(f"lines: {[sorted(line) for line in structure.collinear]}")
back = consistent_subspaces(structure)
print(f"recovered semilattice has {len(back)} elements (original had {len(m3)})")
print(f"round trip certified: {birkhoff_roundtrip(m3)['ok']}")
