"""Abstract simplicial complexes: construction, counts, skeletons and isomorphism."""

from .io import complex_from_dict, read_complex, write_complex
from .isomorphism import (
    are_isomorphic,
    automorphism_count,
    count_embeddings,
    count_ordered_copies,
    isomorphism_invariant,
)
from .simplicial import (
    Face,
    SimplexCountVector,
    SimplicialComplex,
    boundary_of_simplex,
    complete_complex,
    euler_characteristic,
    from_facets,
    full_simplex,
    is_full_simplex,
    simplex_counts,
    skeleton,
)

__all__ = [
    "Face",
    "SimplexCountVector",
    "SimplicialComplex",
    "are_isomorphic",
    "automorphism_count",
    "boundary_of_simplex",
    "complete_complex",
    "complex_from_dict",
    "count_embeddings",
    "count_ordered_copies",
    "euler_characteristic",
    "from_facets",
    "full_simplex",
    "is_full_simplex",
    "isomorphism_invariant",
    "read_complex",
    "simplex_counts",
    "skeleton",
    "write_complex",
]
