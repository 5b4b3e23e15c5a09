"""Maximum vanishing subspaces of a partitioned matrix over GF(2) and
the block triangularization built from a chain of them.

Command line equivalent: ppiprep mvsp --input FILE
                         ppiprep dm-decompose --input FILE
"""

from ppiprep.gflin import PartitionedMatrix, dm_decompose, mvsp_solve
from ppiprep.product import build_ppip

# a 6x6 matrix split into 2x2 blocks, three row blocks by three column blocks
A = PartitionedMatrix(
    [
        [1, 1, 0, 1, 0, 1],
        [0, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 0],
        [1, 1, 1, 1, 0, 1],
        [0, 1, 1, 0, 0, 0],
    ],
    [2, 2, 2], [2, 2, 2], 2,
)

# the optimum: largest total dimension of row/column subspace tuples on
# which every block form vanishes
optimum, oracle = mvsp_solve(A)
print(f"optimum total dimension: {optimum}")
print(f"distinct optimal tuples: {len(oracle.members)}")

structure = build_ppip(oracle)
print(f"induced structure: {len(structure.poset)} points, "
      f"{len(structure.collinear)} lines")

# a maximal chain of optimal tuples drives the triangularization
dm = dm_decompose(A)
print(f"stages: {' '.join(f'({r},{c})' for r, c in dm.stages)}")
print("transformed matrix (zero below the stage diagonal):")
for row in dm.transformed.entries:
    print("  " + " ".join(str(x) for x in row))
