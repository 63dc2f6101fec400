"""
Exact k-linkage decision by backtracking.

Pairs are routed one after another. Every terminal is reserved from the start, so
a path may only touch its own endpoints. Before each extension, every pair still
to be completed must remain connectable in the graph minus the occupied vertices.
"""

import logging
from collections import deque
from functools import partial
from itertools import islice
from math import comb, prod
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import InputError, UndecidedError
from ..workers import map_ordered
from .schemas import Graph, LinkageResult, Pairing, as_pairing

logger = logging.getLogger(__name__)

NODE_BUDGET = 10_000_000
PAIRING_CAP = 100_000


class _Router:
    """Depth-first router with a node budget."""

    def __init__(self, adjacency: List[List[int]], pairs: Sequence[Tuple[int, int]], budget: int):
        self.adj = adjacency
        self.pairs = pairs
        self.budget = budget
        self.nodes = 0

    def _reachable(self, source: int, target: int, blocked: set) -> bool:
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w == target:
                    return True
                if w not in seen and w not in blocked:
                    seen.add(w)
                    queue.append(w)
        return False

    def _feasible(self, index: int, head: int, blocked: set) -> bool:
        if not self._reachable(head, self.pairs[index][1], blocked):
            return False
        return all(self._reachable(s, t, blocked) for s, t in self.pairs[index + 1 :])

    def route(self, index: int, blocked: set, paths: List[List[int]]) -> bool:
        if index == len(self.pairs):
            return True
        return self._extend(index, [self.pairs[index][0]], blocked, paths)

    def _extend(self, index: int, path: List[int], blocked: set, paths: List[List[int]]) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise UndecidedError(f"node budget {self.budget} exhausted")
        head = path[-1]
        target = self.pairs[index][1]
        if target in self.adj[head]:
            # Any longer route to target uses a superset of these vertices.
            paths.append(path + [target])
            if self.route(index + 1, blocked, paths):
                return True
            paths.pop()
            return False
        if not self._feasible(index, head, blocked):
            return False
        for w in self.adj[head]:
            if w in blocked:
                continue
            blocked.add(w)
            path.append(w)
            if self._extend(index, path, blocked, paths):
                return True
            path.pop()
            blocked.discard(w)
        return False


def validate_witness(G: Graph, Y: Pairing, paths: Sequence[Sequence[int]]) -> None:
    """
    Check that paths link Y in G and are pairwise vertex-disjoint.

    Raises:
        InputError: Describing the first violation
    """
    if len(paths) != Y.k:
        raise InputError(f"expected {Y.k} paths, got {len(paths)}", field="paths")
    used: set = set()
    for (s, t), path in zip(Y.pairs, paths):
        if path[0] != s or path[-1] != t:
            raise InputError(f"path {path} does not join {s} and {t}", field="paths")
        for u, v in zip(path, path[1:]):
            if not G.has_edge(u, v):
                raise InputError(f"({u}, {v}) is not an edge", field="paths")
        if used & set(path) or len(set(path)) != len(path):
            raise InputError(f"path {path} is not disjoint from the others", field="paths")
        used.update(path)


def find_disjoint_paths(G: Graph, Y, node_budget: int = NODE_BUDGET) -> Optional[List[List[int]]]:
    """
    k pairwise vertex-disjoint paths joining the pairs of Y, or None.

    Args:
        G: Graph
        Y: Pairing, or a list of (s, t) pairs
        node_budget: Backtracking nodes before giving up

    Raises:
        InputError: Invalid pairing
        UndecidedError: Node budget exhausted
    """
    pairing = as_pairing(Y, G.vertices)
    router = _Router(G.adjacency(), pairing.pairs, node_budget)
    paths: List[List[int]] = []
    found = router.route(0, set(pairing.terminals()), paths)
    logger.debug(f"find_disjoint_paths {pairing.pairs}: {found} after {router.nodes} nodes")
    if not found:
        return None
    validate_witness(G, pairing, paths)
    return paths


def count_pairings(n: int, k: int) -> int:
    """Unordered sets of k disjoint unordered pairs from n vertices."""
    if 2 * k > n:
        return 0
    return comb(n, 2 * k) * prod(range(1, 2 * k, 2))


def iter_pairings(n: int, k: int) -> Iterator[Pairing]:
    """Canonical pairings of 0..n-1 in lexicographic order."""
    pairs: List[Tuple[int, int]] = []
    used: set = set()

    def rec(start: int) -> Iterator[Pairing]:
        if len(pairs) == k:
            yield Pairing(pairs=list(pairs))
            return
        for a in range(start, n):
            if a in used:
                continue
            used.add(a)
            for b in range(a + 1, n):
                if b in used:
                    continue
                used.add(b)
                pairs.append((a, b))
                yield from rec(a + 1)
                pairs.pop()
                used.discard(b)
            used.discard(a)

    yield from rec(0)


def _pairing_linked(pairing: Pairing, G: Graph, node_budget: int) -> bool:
    return find_disjoint_paths(G, pairing, node_budget) is not None


def is_k_linked(
    G: Graph,
    k: int,
    node_budget: int = NODE_BUDGET,
    pairing_cap: int = PAIRING_CAP,
    jobs: int = 1,
) -> LinkageResult:
    """
    Decide whether every pairing of k terminal pairs can be linked.

    Pairings are checked in lexicographic order and the first failing one is
    reported, in parallel runs too.

    Raises:
        InputError: If k < 1 or 2k exceeds the vertex count
        UndecidedError: If any single pairing exhausts the node budget
    """
    if k < 1:
        raise InputError("must be >= 1", field="k")
    if 2 * k > G.vertices:
        raise InputError(f"2k = {2 * k} exceeds the {G.vertices} vertices", field="k")

    total = count_pairings(G.vertices, k)
    if total > pairing_cap:
        logger.warning(f"Checking {total} pairings exceeds the cap of {pairing_cap}; this may take long")

    check = partial(_pairing_linked, G=G, node_budget=node_budget)
    pairings = iter_pairings(G.vertices, k)
    batch_size = max(1, jobs) * 64
    checked = 0
    while True:
        batch = list(islice(pairings, batch_size))
        if not batch:
            break
        for pairing, ok in zip(batch, map_ordered(check, batch, jobs)):
            checked += 1
            if not ok:
                logger.info(f"Not {k}-linked: pairing {pairing.pairs} fails ({checked} checked)")
                return LinkageResult(linked=False, k=k, failing_pairing=pairing, pairings_checked=checked)

    logger.info(f"Graph is {k}-linked ({checked} pairings)")
    return LinkageResult(linked=True, k=k, pairings_checked=checked)


def linkage_necessary_condition(G: Graph, k: int) -> bool:
    """k-linked graphs on at least 2k vertices are (2k-1)-connected."""
    return nx.node_connectivity(G.to_networkx()) >= 2 * k - 1
