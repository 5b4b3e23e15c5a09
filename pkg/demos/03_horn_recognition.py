"""Implicational systems: closures, recognizing when the closed family
is a modular semilattice, and shortening a base without changing it.

Command line equivalent: ppiprep closure --input FILE --set 4
                         ppiprep recognize --input FILE
                         ppiprep optimal-base --input FILE
"""

from ppiprep.horn import (
    ImplicationalSystem,
    optimal_base_from_implications,
    recognize_modular_semilattice,
)

TEXT = """
# a nine-implication system on eight elements
4 -> 5
5 -> 1 3
6 -> 1 2
7 -> 2 3
5 6 -> 7
6 7 -> 5
7 5 -> 6
1 8 -> _|_
2 4 -> _|_
"""

sigma = ImplicationalSystem.from_text(TEXT)
print(f"parsed: {len(sigma.implications)} implications over {len(sigma.ground)} "
      f"elements, total size {sigma.size()}")

# forward chaining; improper implications make some closures nonexistent
for start in [("4",), ("5", "6"), ("2", "4")]:
    result = sigma.closure(start)
    shown = sorted(result.value) if result.exists else "nonexistent"
    print(f"closure of {set(start)}: {shown}")

ok, _ = recognize_modular_semilattice(sigma)
print(f"closed family is a modular semilattice: {ok}")

# the optimal base describes the same closed family at minimum size
base = optimal_base_from_implications(sigma)
print(f"optimal base: {len(base.implications)} implications, size {base.size()}")
same = {frozenset(c) for c in base.closed_sets()} == {frozenset(c) for c in sigma.closed_sets()}
print(f"same closed family: {same}")
