"""Modular semilattices, their point-line representations, and implicational bases."""

from .errors import AxiomError, BudgetError, InputError, NotModularError, NotSemilatticeError
from .poset import Poset
from .semilattice import Semilattice
from .ppip import (
    Ppip,
    birkhoff_roundtrip,
    check_axioms,
    consistent_subspaces,
    induced_ppip,
    join_subspaces,
    subspace_closure,
)
from .horn import (
    ClosureResult,
    ImplicationalSystem,
    closure,
    family,
    irreducible_ppip,
    optimal_base,
    optimal_base_from_implications,
    pseudoclosed_sets,
    quasiclosure,
    recognize_modular_semilattice,
)
from .product import (
    Base,
    MembershipOracle,
    build_ppip,
    compute_bases,
    join_irreducible_elements,
    lcp_leq,
    oracle_from_minimizers,
    oracle_from_set,
)
from .gflin import (
    DmDecomposition,
    GFMatrix,
    PartitionedMatrix,
    Subspace,
    VanishingTuple,
    all_subspaces,
    dm_decompose,
    maximal_chain,
    mvsp_solve,
    polar_space_ppip,
    subspace_lattice,
    vanishes,
)

__all__ = [
    "AxiomError",
    "BudgetError",
    "InputError",
    "NotModularError",
    "NotSemilatticeError",
    "Poset",
    "Semilattice",
    "Ppip",
    "birkhoff_roundtrip",
    "check_axioms",
    "consistent_subspaces",
    "induced_ppip",
    "join_subspaces",
    "subspace_closure",
    "ClosureResult",
    "ImplicationalSystem",
    "closure",
    "family",
    "irreducible_ppip",
    "optimal_base",
    "optimal_base_from_implications",
    "pseudoclosed_sets",
    "quasiclosure",
    "recognize_modular_semilattice",
    "Base",
    "MembershipOracle",
    "build_ppip",
    "compute_bases",
    "join_irreducible_elements",
    "lcp_leq",
    "oracle_from_minimizers",
    "oracle_from_set",
    "DmDecomposition",
    "GFMatrix",
    "PartitionedMatrix",
    "Subspace",
    "VanishingTuple",
    "all_subspaces",
    "dm_decompose",
    "maximal_chain",
    "mvsp_solve",
    "polar_space_ppip",
    "subspace_lattice",
    "vanishes",
]
