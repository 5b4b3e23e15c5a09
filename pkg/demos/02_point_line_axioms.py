"""Check the eight structural axioms on point-line structures with
inconsistency, and build one from an alternating bilinear form.

Command line equivalent: ppiprep ppip --input FILE
                         ppiprep polar --form FILE
"""

from ppiprep.gflin import polar_space_ppip
from ppiprep.poset import Poset
from ppiprep.ppip import Ppip, check_axioms, consistent_subspaces

# three mutually consistent points on one line: the structure behind
# the diamond from demo 01
triangle = Ppip(Poset(["x", "y", "z"]), inconsistent=[], collinear=[["x", "y", "z"]])
ok, _ = check_axioms(triangle)
print(f"one-line structure passes all eight axioms: {ok}")

# an inconsistent pair with an upper bound violates the first axiom
bad = Ppip(
    Poset(["p", "q", "t"], [("p", "t"), ("q", "t")]),
    inconsistent=[["p", "q"]],
    collinear=[],
)
ok, witness = check_axioms(bad)
print(f"bounded inconsistent pair accepted: {ok}")
print(f"  witness: {witness}")

# the polar space of an alternating form on GF(2)^3: points are the
# one-dimensional subspaces, lines the totally isotropic planes
ppip = polar_space_ppip([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 2)
print(f"polar space: {len(ppip.poset)} points, "
      f"{len(ppip.inconsistent)} inconsistent pairs, {len(ppip.collinear)} lines")
lattice = consistent_subspaces(ppip)
print(f"consistent subspaces form a modular semilattice of size {len(lattice)}: "
      f"{lattice.is_modular_semilattice()[0]}")
