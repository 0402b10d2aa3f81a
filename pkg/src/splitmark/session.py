"""Interactive marking session: placements, hidden-mode toggle, undo, save.

A session is fully determined by its canvas, grid step, hidden length, and
event log; replaying the log reproduces identical lines and tallies.  Undo
reverts the most recent effective event (a placement or an arm-hidden),
and is itself recorded in the log so saved records stay replayable.
"""

from __future__ import annotations

from typing import Iterable

from .corpus import PaintingRecord
from .errors import EmptyUndoError
from .events import PLACEMENTS, EventKind, SessionEvent
from .geometry import (
    DEFAULT_HIDDEN_LEN,
    Canvas,
    MarkLine,
    Orientation,
    TallySheet,
    extend,
    snap,
    tally,
)
from .metrics import metrics_for

DEFAULT_GRID = 5


class Session:
    """Single-operator marking state for one painting image."""

    def __init__(
        self,
        canvas: Canvas,
        grid: int = DEFAULT_GRID,
        hidden_len: float = DEFAULT_HIDDEN_LEN,
        catalogue_id: str = "",
        year: int = 0,
        image_ref: str | None = None,
    ):
        if grid < 1:
            raise ValueError(f"grid step must be >= 1, got {grid}")
        self.canvas = canvas
        self.grid = grid
        self.hidden_len = hidden_len
        self.catalogue_id = catalogue_id
        self.year = year
        self.image_ref = image_ref
        self.lines: list[MarkLine] = []
        self.hidden_armed = False
        self.log: list[SessionEvent] = []
        # Events still in effect, i.e. not cancelled by a later undo.
        self._effective: list[SessionEvent] = []

    @property
    def eps(self) -> float:
        return self.grid / 2.0

    @property
    def event_index(self) -> int:
        return len(self.log)

    def tally(self) -> TallySheet:
        return tally(self.lines, self.canvas, self.eps)

    def apply(self, event: SessionEvent) -> TallySheet:
        """Apply one event and return the resulting tally.

        Refused placements (overlap or degenerate extension) leave the
        session unchanged and are not logged.
        """
        if event.kind in PLACEMENTS:
            self.lines.append(self._place(event, self.hidden_armed, self.lines))
            self.hidden_armed = False
            self._effective.append(event)
        elif event.kind is EventKind.ARM_HIDDEN:
            self.hidden_armed = True
            self._effective.append(event)
        elif event.kind is EventKind.UNDO:
            if not self._effective:
                raise EmptyUndoError("nothing to undo")
            self._effective.pop()
            self._rebuild()
        elif event.kind is EventKind.SAVE:
            pass  # recorded for replay; persistence happens in save()
        self.log.append(event)
        return self.tally()

    def _place(
        self, event: SessionEvent, hidden: bool, earlier: list[MarkLine]
    ) -> MarkLine:
        orientation = (
            Orientation.HORIZONTAL
            if event.kind is EventKind.PLACE_H
            else Orientation.VERTICAL
        )
        seed = snap(event.seed, self.grid, self.canvas)
        return extend(
            seed,
            orientation,
            hidden,
            earlier,
            self.canvas,
            eps=self.eps,
            hidden_len=self.hidden_len,
        )

    def _rebuild(self) -> None:
        """Recompute lines and the armed flag from the effective events."""
        lines: list[MarkLine] = []
        armed = False
        for event in self._effective:
            if event.kind is EventKind.ARM_HIDDEN:
                armed = True
                continue
            lines.append(self._place(event, armed, lines))
            armed = False
        self.lines = lines
        self.hidden_armed = armed

    def save(self) -> PaintingRecord:
        """Record a save event and package the session as a painting record."""
        self.apply(SessionEvent(EventKind.SAVE))
        sheet = self.tally()
        return PaintingRecord(
            catalogue_id=self.catalogue_id,
            year=self.year,
            tally=sheet,
            metrics=metrics_for(sheet),
            events=tuple(self.log),
            grid=self.grid,
            hidden_len=self.hidden_len,
        )

    @classmethod
    def replay(
        cls,
        canvas: Canvas,
        events: Iterable[SessionEvent],
        grid: int = DEFAULT_GRID,
        hidden_len: float = DEFAULT_HIDDEN_LEN,
        catalogue_id: str = "",
        year: int = 0,
        image_ref: str | None = None,
    ) -> "Session":
        """Rebuild a session from a recorded event log."""
        session = cls(
            canvas,
            grid=grid,
            hidden_len=hidden_len,
            catalogue_id=catalogue_id,
            year=year,
            image_ref=image_ref,
        )
        for event in events:
            session.apply(event)
        return session

    @classmethod
    def from_record(cls, record: PaintingRecord) -> "Session":
        """Rebuild the marking session a record was saved from."""
        if record.events is None:
            raise ValueError(f"record {record.catalogue_id!r} carries no event log")
        return cls.replay(
            Canvas(record.tally.sw, record.tally.sh),
            record.events,
            grid=record.grid,
            hidden_len=record.hidden_len,
            catalogue_id=record.catalogue_id,
            year=record.year,
        )
