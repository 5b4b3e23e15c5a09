"""Represent a closed subset of a product of semilattices through a
membership oracle, counting how many queries the construction needs.

Command line equivalent: ppiprep product-ppip --input FILE --count-calls
"""

from ppiprep.product import build_ppip, compute_bases, join_irreducible_elements, oracle_from_set
from ppiprep.semilattice import Semilattice

# factor: bottom below two incomparable atoms
s2 = Semilattice(["bot", "a", "b"], [("bot", "a"), ("bot", "b")])

# a meet- and join-closed subset of the square s2 x s2
members = {
    ("bot", "bot"), ("a", "bot"), ("bot", "a"), ("a", "a"),
    ("b", "b"),
}
oracle = oracle_from_set(members, s2, n=2)

# per-coordinate bases: the least member above each (coordinate, value)
for (i, value), base in sorted(compute_bases(oracle).items()):
    print(f"base({i}, {value}) = {base}")

irr = join_irreducible_elements(oracle)
print(f"join irreducibles: {sorted(b.vector for b in irr)}")

structure = build_ppip(oracle)
print(f"points: {len(structure.poset)}, lines: {len(structure.collinear)}, "
      f"inconsistent pairs: {len(structure.inconsistent)}")

# the whole construction stays within n^2 |L|^2 membership queries
bound = 2 * 2 * len(s2) ** 2
print(f"oracle calls: {oracle.call_counter} (bound {bound})")
