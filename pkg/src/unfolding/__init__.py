"""Edge unfoldings of convex 3-polytopes and net overlap detection."""

from .net import Net, OverlapReport, PlacedFace, check_overlap, unfold
from .polytope import (
    BUILTIN_NAMES,
    Polytope3,
    builtin_polytope,
    dual_graph,
    edge_faces,
    load_polytope,
)
from .search import SearchStrategy, UnfoldSearchResult, search_nonoverlapping
from .trees import (
    CutTree,
    count_spanning_trees,
    iter_spanning_trees,
    random_spanning_tree,
    tree_face_pairs,
)

__all__ = [
    "Polytope3",
    "CutTree",
    "Net",
    "PlacedFace",
    "OverlapReport",
    "SearchStrategy",
    "UnfoldSearchResult",
    "BUILTIN_NAMES",
    "builtin_polytope",
    "load_polytope",
    "dual_graph",
    "edge_faces",
    "tree_face_pairs",
    "iter_spanning_trees",
    "random_spanning_tree",
    "count_spanning_trees",
    "unfold",
    "check_overlap",
    "search_nonoverlapping",
]
