"""Derived per-painting metrics.

Splittingness is the fraction of regular Tees not absorbed by strange
coincidences: ``(rt - 2*sc) / rt``, undefined (None) when there are no
regular Tees.  Complexity normalizes total painted line length by the
canvas half-perimeter.  Special effects counts the hidden stoppers that
were needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import TallySheet


@dataclass(frozen=True)
class Metrics:
    splittingness: float | None
    complexity: float
    special_effects: int


def splittingness(tally: TallySheet) -> float | None:
    """Fraction of regular Tees supporting pure splitting; None when rt == 0."""
    if tally.rt == 0:
        return None
    return (tally.rt - 2 * tally.sc) / tally.rt


def complexity(tally: TallySheet) -> float:
    """(thl + tvl) / (sw + sh); one full horizontal plus one full vertical gives 1.0."""
    if tally.sw + tally.sh <= 0:
        raise ValueError("complexity needs a positive canvas")
    return (tally.thl + tally.tvl) / (tally.sw + tally.sh)


def special_effects(tally: TallySheet) -> int:
    """Number of hidden stoppers deployed (hh + hv)."""
    return tally.hh + tally.hv


def metrics_for(tally: TallySheet) -> Metrics:
    return Metrics(
        splittingness=splittingness(tally),
        complexity=complexity(tally),
        special_effects=special_effects(tally),
    )
