"""Orbit iteration and exact cycle detection for the family transform."""

import logging
from typing import List

from pydantic import BaseModel, Field

from ..errors import BudgetExhaustedError, InputError
from .family import Family, FamilyDocument, vertex_absorption_holds
from .operator import TransformMode, transform

logger = logging.getLogger(__name__)


class CycleReport(BaseModel):
    """First repeat of an orbit Omega_0, F(Omega_0), F(F(Omega_0)), ..."""

    preperiod: int = Field(ge=0)
    period: int = Field(ge=1)
    family_sequence: List[str] = Field(description="Digests of Omega_0 .. Omega_{preperiod+period}")
    witness: List[FamilyDocument] = Field(description="Omega_preperiod and Omega_{preperiod+period}")
    orbit: List[FamilyDocument]
    mode: TransformMode = TransformMode.EXACT
    seed: int = 0
    complete: bool = True
    absorption_held: bool = True

    def summary(self) -> str:
        return f"preperiod={self.preperiod} period={self.period}"


def _step(omega: Family, mode: TransformMode, samples: int, seed: int) -> Family:
    return transform(omega, mode=mode, samples=samples, seed=seed)


def detect_cycle(
    omega0: Family,
    max_steps: int = 10_000,
    mode: TransformMode = TransformMode.EXACT,
    samples: int = 2000,
    seed: int = 0,
) -> CycleReport:
    """
    Iterate the transform until a family repeats exactly.

    Args:
        omega0: Starting family
        max_steps: Maximum number of transform applications
        mode: Direction enumeration mode passed to transform
        samples: Directions per step in sampled mode
        seed: Seed for sampled mode

    Returns:
        CycleReport with the minimal period, since the first repeat closes the
        shortest cycle through the earliest revisited family

    Raises:
        BudgetExhaustedError: No repeat within max_steps; partial holds the orbit
    """
    if max_steps < 1:
        raise InputError("must be >= 1", field="max_steps")

    orbit = [omega0]
    seen = {omega0.canonical_text(): 0}
    absorption_held = True

    for step in range(1, max_steps + 1):
        current = orbit[-1]
        nxt = _step(current, mode, samples, seed)
        if not vertex_absorption_holds(current, nxt):
            absorption_held = False
            logger.error(f"Vertex absorption violated at step {step}")
        orbit.append(nxt)

        key = nxt.canonical_text()
        if key in seen:
            preperiod = seen[key]
            period = step - preperiod
            logger.info(f"Cycle found: preperiod={preperiod} period={period} after {step} steps")
            return CycleReport(
                preperiod=preperiod,
                period=period,
                family_sequence=[f.digest() for f in orbit],
                witness=[orbit[preperiod].to_document(), nxt.to_document()],
                orbit=[f.to_document() for f in orbit],
                mode=mode,
                seed=seed,
                complete=mode is TransformMode.EXACT,
                absorption_held=absorption_held,
            )
        seen[key] = step

    logger.warning(f"No cycle within {max_steps} steps ({len(seen)} distinct families)")
    raise BudgetExhaustedError(
        f"no repeat within {max_steps} steps",
        partial=[f.to_document() for f in orbit],
    )


def replay_period(report: CycleReport, samples: int = 2000) -> bool:
    """
    Re-run the orbit from its first family and confirm the reported cycle.

    True iff Omega_preperiod equals Omega_{preperiod+period} and no earlier pair
    of the replayed orbit coincides.
    """
    omega = report.orbit[0].to_family()
    texts = [omega.canonical_text()]
    for _ in range(report.preperiod + report.period):
        omega = _step(omega, report.mode, samples, report.seed)
        texts.append(omega.canonical_text())

    if texts[report.preperiod] != texts[-1]:
        return False
    # Minimality: the prefix before the closing family is repeat-free.
    return len(set(texts[:-1])) == len(texts) - 1
