"""
Cut trees: spanning trees of the dual graph, stored by their fold edges.

The edges of the polytope that are not folded are the cuts.
"""

import logging
from typing import Iterator, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind
from pydantic import BaseModel

from ..errors import InputError
from .polytope import Edge, Polytope3, edge_faces

logger = logging.getLogger(__name__)


class CutTree(BaseModel):
    """Polytope edges kept as folds; they form a spanning tree of the dual graph."""

    fold_edges: list[tuple[int, int]]

    def canonical(self) -> "CutTree":
        return CutTree(fold_edges=sorted((min(u, v), max(u, v)) for u, v in self.fold_edges))


def tree_face_pairs(P: Polytope3, T: CutTree) -> List[Tuple[Edge, Tuple[int, int]]]:
    """
    (fold edge, (face, face)) for every fold edge of T.

    Raises:
        InputError: Unless T is a spanning tree of the dual graph of P
    """
    faces_of = edge_faces(P)
    seen = set()
    pairs = []
    for u, v in T.fold_edges:
        key = (min(u, v), max(u, v))
        if key not in faces_of:
            raise InputError(f"({u}, {v}) is not an edge of the polytope", field="fold_edges")
        if key in seen:
            raise InputError(f"fold edge {key} listed twice", field="fold_edges")
        seen.add(key)
        pairs.append((key, faces_of[key]))

    if len(pairs) != P.face_count - 1:
        raise InputError(f"expected {P.face_count - 1} fold edges, got {len(pairs)}", field="fold_edges")
    dual = nx.Graph()
    dual.add_nodes_from(range(P.face_count))
    dual.add_edges_from(faces for _, faces in pairs)
    if not nx.is_tree(dual):
        raise InputError("fold edges do not form a spanning tree of the dual graph", field="fold_edges")
    return pairs


def _dual_edges(P: Polytope3) -> Tuple[List[Edge], List[Tuple[int, int]]]:
    table = edge_faces(P)
    return list(table), list(table.values())


def _dual_nx(P: Polytope3) -> nx.Graph:
    """Dual graph whose edges carry the polytope edge they cross as "fold"."""
    dual = nx.Graph()
    dual.add_nodes_from(range(P.face_count))
    for edge, (a, b) in edge_faces(P).items():
        dual.add_edge(a, b, fold=edge)
    return dual


def _spans(n: int, arcs: List[Tuple[int, int]]) -> bool:
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(arcs)
    return nx.is_connected(G)


def iter_spanning_trees(P: Polytope3) -> Iterator[CutTree]:
    """
    Every cut tree of P, in lexicographic order of fold edge index sets.

    Include/exclude recursion over the dual edges in sorted polytope-edge order:
    an edge is included when it joins two components and excluded when the
    remaining edges still connect the faces.
    """
    edges, arcs = _dual_edges(P)
    n = P.face_count
    chosen: List[int] = []

    def rec(i: int) -> Iterator[CutTree]:
        if len(chosen) == n - 1:
            yield CutTree(fold_edges=[edges[j] for j in chosen])
            return
        if i == len(arcs) or len(arcs) - i < n - 1 - len(chosen):
            return

        components = UnionFind(range(n))
        for j in chosen:
            components.union(*arcs[j])
        a, b = arcs[i]
        if components[a] != components[b]:
            chosen.append(i)
            yield from rec(i + 1)
            chosen.pop()

        if _spans(n, [arcs[j] for j in chosen] + arcs[i + 1 :]):
            yield from rec(i + 1)

    yield from rec(0)


def count_spanning_trees(P: Polytope3) -> int:
    """Matrix-tree count on the dual graph."""
    return int(round(nx.number_of_spanning_trees(_dual_nx(P))))


def random_spanning_tree(P: Polytope3, rng: Optional[np.random.Generator] = None) -> CutTree:
    """Uniform cut tree; the draw is fixed by one integer taken from rng."""
    rng = rng if rng is not None else np.random.default_rng()
    dual = _dual_nx(P)
    tree = nx.random_spanning_tree(dual, weight=None, seed=int(rng.integers(2**32)))
    return CutTree(fold_edges=sorted(dual.edges[a, b]["fold"] for a, b in tree.edges))
