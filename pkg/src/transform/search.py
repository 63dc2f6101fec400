"""
Random family search.

Trials are independent: trial t draws its family from a generator seeded with
(seed, t), so histograms depend only on (params, trials, seed) and not on how
trials are spread over workers.
"""

import logging
from collections import Counter
from functools import partial
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..errors import BudgetExhaustedError, InputError
from ..geometry.rational import rat_vec
from ..workers import map_ordered
from .cycles import detect_cycle, replay_period
from .family import Family, FamilyDocument, RationalPolytope
from .operator import TransformMode

logger = logging.getLogger(__name__)


class FamilyGenerator(BaseModel):
    """Random families with integer coordinates in [-coord_bound, coord_bound]."""

    dimension: int = Field(default=2, ge=1)
    min_members: int = Field(default=1, ge=1)
    max_members: int = Field(default=4, ge=1)
    min_vertices: int = Field(default=1, ge=1)
    max_vertices: int = Field(default=6, ge=1)
    coord_bound: int = Field(default=5, ge=0)

    @model_validator(mode="after")
    def _check_ranges(self) -> "FamilyGenerator":
        if self.min_members > self.max_members:
            raise ValueError("min_members exceeds max_members")
        if self.min_vertices > self.max_vertices:
            raise ValueError("min_vertices exceeds max_vertices")
        return self

    def sample(self, rng: np.random.Generator) -> Family:
        members = []
        for _ in range(int(rng.integers(self.min_members, self.max_members + 1))):
            count = int(rng.integers(self.min_vertices, self.max_vertices + 1))
            coords = rng.integers(-self.coord_bound, self.coord_bound + 1, size=(count, self.dimension))
            members.append(RationalPolytope.from_points(rat_vec(int(c) for c in row) for row in coords))
        return Family.from_members(members)


class TrialOutcome(BaseModel):
    trial: int
    family: FamilyDocument
    preperiod: Optional[int] = None
    period: Optional[int] = None
    exhausted: bool = False
    verified: bool = False


class SearchStatistics(BaseModel):
    """Aggregate of a random search; long_cycles holds every family with period > 2."""

    trials: int
    period_histogram: Dict[int, int]
    preperiod_histogram: Dict[int, int]
    budget_exhausted: int = 0
    unverified: int = 0
    long_cycles: List[TrialOutcome] = Field(default_factory=list)
    complete: bool = True

    def summary(self) -> str:
        periods = " ".join(f"{p}:{n}" for p, n in sorted(self.period_histogram.items()))
        return (
            f"trials={self.trials} periods[{periods}] exhausted={self.budget_exhausted} "
            f"long_cycles={len(self.long_cycles)}"
        )


def _run_trial(
    trial: int,
    params: FamilyGenerator,
    max_steps: int,
    seed: int,
    mode: TransformMode,
    samples: int,
) -> TrialOutcome:
    rng = np.random.default_rng([seed, trial])
    family = params.sample(rng)
    document = family.to_document()
    try:
        report = detect_cycle(family, max_steps=max_steps, mode=mode, samples=samples, seed=seed)
    except BudgetExhaustedError:
        return TrialOutcome(trial=trial, family=document, exhausted=True)
    return TrialOutcome(
        trial=trial,
        family=document,
        preperiod=report.preperiod,
        period=report.period,
        verified=replay_period(report, samples=samples),
    )


def random_family_search(
    params: FamilyGenerator,
    trials: int,
    max_steps: int = 10_000,
    seed: int = 0,
    mode: TransformMode = TransformMode.EXACT,
    samples: int = 2000,
    jobs: int = 1,
) -> SearchStatistics:
    """
    Run detect_cycle on random families and tabulate periods.

    Budget exhaustion is counted, not raised. Every reported period is verified
    by replaying its orbit.
    """
    if trials < 1:
        raise InputError("must be >= 1", field="trials")
    if mode is TransformMode.EXACT and params.dimension > 2:
        raise InputError("exact mode needs dimension <= 2; use sampled mode", field="dimension")

    worker = partial(
        _run_trial, params=params, max_steps=max_steps, seed=seed, mode=mode, samples=samples
    )
    outcomes = map_ordered(worker, range(trials), jobs)

    finished = [o for o in outcomes if not o.exhausted]
    stats = SearchStatistics(
        trials=trials,
        period_histogram=dict(sorted(Counter(o.period for o in finished).items())),
        preperiod_histogram=dict(sorted(Counter(o.preperiod for o in finished).items())),
        budget_exhausted=trials - len(finished),
        unverified=sum(1 for o in finished if not o.verified),
        long_cycles=[o for o in finished if o.period > 2],
        complete=mode is TransformMode.EXACT,
    )
    if stats.long_cycles:
        logger.warning(f"Found {len(stats.long_cycles)} families with period > 2")
    logger.info(f"Random family search: {stats.summary()}")
    return stats
