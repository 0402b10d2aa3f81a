"""Session event vocabulary and its one-line text form.

Kept separate from the session itself so the record format can parse and
emit event logs without importing session machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .geometry import Point


class EventKind(str, Enum):
    PLACE_H = "place_h"
    PLACE_V = "place_v"
    UNDO = "undo"
    ARM_HIDDEN = "arm_hidden"
    SAVE = "save"


PLACEMENTS = (EventKind.PLACE_H, EventKind.PLACE_V)


@dataclass(frozen=True)
class SessionEvent:
    kind: EventKind
    seed: Point | None = None

    def __post_init__(self) -> None:
        if self.kind in PLACEMENTS and self.seed is None:
            raise ValueError(f"{self.kind.value} event needs a seed point")
        if self.kind not in PLACEMENTS and self.seed is not None:
            raise ValueError(f"{self.kind.value} event carries no seed")


def format_event(event: SessionEvent) -> str:
    if event.seed is not None:
        return f"{event.kind.value} {event.seed[0]:g} {event.seed[1]:g}"
    return event.kind.value


def format_events(events: Sequence[SessionEvent]) -> list[str]:
    return [format_event(event) for event in events]


def parse_event(text: str) -> SessionEvent:
    """Inverse of format_event; raises ValueError on bad input."""
    parts = text.split()
    if not parts:
        raise ValueError("empty event")
    try:
        kind = EventKind(parts[0])
    except ValueError:
        raise ValueError(f"unknown event kind {parts[0]!r}") from None
    if kind in PLACEMENTS:
        if len(parts) != 3:
            raise ValueError(f"{kind.value} event needs two coordinates")
        return SessionEvent(kind, (float(parts[1]), float(parts[2])))
    if len(parts) != 1:
        raise ValueError(f"{kind.value} event takes no arguments")
    return SessionEvent(kind)
