"""k-linkage of finite graphs by exhaustive vertex-disjoint path search."""

from .schemas import Graph, LinkageResult, Pairing, as_pairing
from .search import (
    count_pairings,
    find_disjoint_paths,
    is_k_linked,
    iter_pairings,
    linkage_necessary_condition,
    validate_witness,
)

__all__ = [
    "Graph",
    "Pairing",
    "LinkageResult",
    "as_pairing",
    "find_disjoint_paths",
    "validate_witness",
    "is_k_linked",
    "iter_pairings",
    "count_pairings",
    "linkage_necessary_condition",
]
