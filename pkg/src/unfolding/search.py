"""Searching cut trees for a nonoverlapping net."""

import logging
from enum import Enum
from functools import partial
from itertools import islice
from typing import Optional

import numpy as np
from pydantic import BaseModel

from ..errors import InputError
from ..geometry import DEFAULT_TOLERANCE, Tolerance
from ..workers import map_ordered
from .net import Net, check_overlap, unfold
from .polytope import Polytope3
from .trees import CutTree, iter_spanning_trees, random_spanning_tree

logger = logging.getLogger(__name__)


class SearchStrategy(str, Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


class UnfoldSearchResult(BaseModel):
    """Tallies of a tree search; first_* nets follow the canonical tree order."""

    strategy: SearchStrategy
    trees_examined: int
    overlapping: int
    nonoverlapping: int
    found: bool
    first_nonoverlapping: Optional[Net] = None
    first_overlapping: Optional[Net] = None
    seed: int = 0

    @property
    def status(self) -> str:
        return "found" if self.found else "not-found"

    def summary(self) -> str:
        return (
            f"{self.status} trees={self.trees_examined} nonoverlapping={self.nonoverlapping} "
            f"overlapping={self.overlapping} seed={self.seed}"
        )


def _net_overlaps(tree: CutTree, P: Polytope3, tol: Tolerance) -> bool:
    return check_overlap(unfold(P, tree), tol).overlapping


def search_nonoverlapping(
    P: Polytope3,
    strategy: SearchStrategy = SearchStrategy.EXHAUSTIVE,
    budget: int = 500,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOLERANCE,
    jobs: int = 1,
) -> UnfoldSearchResult:
    """
    Unfold up to budget cut trees and count overlapping nets.

    Exhaustive mode walks the canonical tree enumeration; random mode draws
    uniform spanning trees from a generator seeded with seed. Not finding a
    nonoverlapping net is reported, not raised.
    """
    if budget < 1:
        raise InputError("must be >= 1", field="budget")

    if strategy is SearchStrategy.EXHAUSTIVE:
        trees = list(islice(iter_spanning_trees(P), budget))
    else:
        rng = np.random.default_rng(seed)
        trees = [random_spanning_tree(P, rng) for _ in range(budget)]

    flags = map_ordered(partial(_net_overlaps, P=P, tol=tol), trees, jobs)
    first_good = next((t for t, bad in zip(trees, flags) if not bad), None)
    first_bad = next((t for t, bad in zip(trees, flags) if bad), None)
    overlapping = sum(flags)

    result = UnfoldSearchResult(
        strategy=strategy,
        trees_examined=len(trees),
        overlapping=overlapping,
        nonoverlapping=len(trees) - overlapping,
        found=first_good is not None,
        first_nonoverlapping=unfold(P, first_good) if first_good is not None else None,
        first_overlapping=unfold(P, first_bad) if first_bad is not None else None,
        seed=seed,
    )
    log = logger.info if result.found else logger.warning
    log(f"Unfolding search on {P.name or 'polytope'}: {result.summary()}")
    return result
