"""Magic sets of Pauli observables on measurement hypergraphs.

Decide whether a hypergraph of contexts admits a magic Pauli assignment,
synthesize explicit assignments, compute minimum qubit counts, reduce
non-minimal structures, and compute noncontextual bounds of the
associated parity inequalities.
"""

from .gf2 import BitMatrix, BitVector, coset_min_weight, in_row_space, null_space_basis, rank
from .hypergraph import (
    Hypergraph,
    degree_profile,
    dual,
    incidence_matrix,
    is_proper_eulerian,
    parse_edge_list,
    serialize_edge_list,
)
from .pauli import (
    MagicAssignment,
    PauliString,
    SignedPauli,
    decode,
    encode,
    multiply,
    symplectic_product,
    verify_assignment,
)
from .gram import (
    GramSpace,
    is_magic_gram,
    is_minimal,
    is_reduced,
    magic_affine_space,
    min_qubits,
    valid_gram_space,
)
from .assign import assignment_from_gram, enumerate_assignments
from .reduce import ReductionRecipe, apply_recipe, find_minimal_descendants, reduce_with
from .bound import brute_force_bound, hypergraph_bound, noncontextual_bound, tolerated_error
from .planarity import is_planar_via_gram
from .orbits import PermutationGroup, candidate_hypergraphs, ms327_hypergraph, subset_orbits

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVector",
    "GramSpace",
    "Hypergraph",
    "MagicAssignment",
    "PauliString",
    "PermutationGroup",
    "ReductionRecipe",
    "SignedPauli",
    "apply_recipe",
    "assignment_from_gram",
    "brute_force_bound",
    "candidate_hypergraphs",
    "coset_min_weight",
    "decode",
    "degree_profile",
    "dual",
    "encode",
    "enumerate_assignments",
    "find_minimal_descendants",
    "hypergraph_bound",
    "in_row_space",
    "incidence_matrix",
    "is_magic_gram",
    "is_minimal",
    "is_planar_via_gram",
    "is_proper_eulerian",
    "is_reduced",
    "magic_affine_space",
    "min_qubits",
    "ms327_hypergraph",
    "multiply",
    "noncontextual_bound",
    "null_space_basis",
    "parse_edge_list",
    "rank",
    "reduce_with",
    "serialize_edge_list",
    "subset_orbits",
    "symplectic_product",
    "tolerated_error",
    "valid_gram_space",
    "verify_assignment",
]
