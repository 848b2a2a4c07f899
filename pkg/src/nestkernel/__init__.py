"""Exact lattice and operator computations for finite nests.

Scalars live in Q (``fractions.Fraction``) or Q(i) (``GaussianRational``);
no floating point is used anywhere except the optional ``floating`` backend.
"""

from .decompose import Decomposition, Rank1Term, decompose, verify_decomposition
from .errors import DimensionMismatch, LatticeError, NotAMember, WitnessNotFound
from .kernel import (Bil, BilatticePair, KernelSet, analyze, bil, kernel_set, omega,
                     omega_witness, phi, psi, sigma)
from .lattice import (Nest, Partition, SubspaceLattice, closure, complement, lattice_perp,
                      p_hat_of_x, p_of_x, subspace_join, subspace_meet, truncations,
                      vector_with_supports)
from .liemod import (OperatorSpace, Status, check_decomposable, contains, in_nest_algebra,
                     lie_bracket, lie_module_closure, nest_algebra, rank1_partners)
from .linalg import (Matrix, Subspace, column_space, inner, inverse, null_space,
                     orthogonal_complement, outer, projector, rank, rank_factorize, rref)
from .scalars import GaussianRational, format_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "Bil", "BilatticePair", "Decomposition", "DimensionMismatch", "GaussianRational",
    "KernelSet", "LatticeError", "Matrix", "Nest", "NotAMember", "OperatorSpace", "Partition",
    "Rank1Term", "Status", "Subspace", "SubspaceLattice", "WitnessNotFound", "analyze", "bil",
    "check_decomposable", "closure", "column_space", "complement", "contains", "decompose",
    "format_scalar", "in_nest_algebra", "inner", "inverse", "kernel_set", "lattice_perp",
    "lie_bracket", "lie_module_closure", "nest_algebra", "null_space", "omega",
    "omega_witness", "orthogonal_complement", "outer", "p_hat_of_x", "p_of_x", "parse_scalar",
    "phi", "projector", "psi", "rank", "rank1_partners", "rank_factorize", "rref", "sigma",
    "subspace_join", "subspace_meet", "truncations", "vector_with_supports",
    "verify_decomposition",
]
