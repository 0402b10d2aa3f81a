import random

import pytest

from splitmark.corpus import format_record, parse_record
from splitmark.errors import EmptyUndoError, MarkingError, OverlapError
from splitmark.events import EventKind, SessionEvent, format_events, parse_event
from splitmark.geometry import Canvas
from splitmark.session import Session

PLACE_H = EventKind.PLACE_H
PLACE_V = EventKind.PLACE_V
UNDO = EventKind.UNDO
ARM = EventKind.ARM_HIDDEN


def ev(kind, seed=None):
    return SessionEvent(kind, seed)


def fresh(w=100, h=100, **kw):
    return Session(Canvas(w, h), **kw)


class TestApply:
    def test_cross_sequence(self):
        s = fresh()
        s.apply(ev(PLACE_H, (30, 40)))
        s.apply(ev(PLACE_V, (60, 70)))
        t = s.apply(ev(PLACE_V, (60, 20)))
        assert (t.rt, t.sc) == (2, 1)

    def test_seed_snapping(self):
        s = fresh(grid=10)
        s.apply(ev(PLACE_H, (33, 41)))
        assert s.lines[0].axis == 40
        assert s.lines[0].seed == (30, 40)

    def test_armed_placement_is_hidden_once(self):
        s = fresh()
        s.apply(ev(ARM))
        assert s.hidden_armed
        t = s.apply(ev(PLACE_H, (50, 40)))
        assert s.lines[0].hidden
        assert s.lines[0].length == s.hidden_len
        assert not s.hidden_armed
        assert t.hh == 1
        s.apply(ev(PLACE_H, (50, 80)))
        assert not s.lines[1].hidden  # flag spent on one placement

    def test_overlap_refused_without_state_change(self):
        s = fresh()
        s.apply(ev(PLACE_H, (30, 40)))
        before = (list(s.lines), s.event_index, s.tally())
        with pytest.raises(OverlapError):
            s.apply(ev(PLACE_H, (70, 40)))
        assert (list(s.lines), s.event_index, s.tally()) == before

    def test_undo_restores_previous_tally(self):
        s = fresh()
        s.apply(ev(PLACE_H, (30, 40)))
        before = s.tally()
        s.apply(ev(PLACE_V, (60, 70)))
        after = s.apply(ev(UNDO))
        assert after == before

    def test_undo_on_empty_session(self):
        with pytest.raises(EmptyUndoError):
            fresh().apply(ev(UNDO))

    def test_undo_disarms_hidden(self):
        s = fresh()
        s.apply(ev(ARM))
        s.apply(ev(UNDO))
        assert not s.hidden_armed

    def test_undo_of_armed_placement_restores_armed_flag(self):
        s = fresh()
        s.apply(ev(ARM))
        s.apply(ev(PLACE_H, (50, 40)))
        s.apply(ev(UNDO))
        assert s.lines == []
        assert s.hidden_armed  # the arm is effective again

    def test_event_validation(self):
        with pytest.raises(ValueError):
            SessionEvent(PLACE_H)  # placement without a seed
        with pytest.raises(ValueError):
            SessionEvent(UNDO, (1, 2))


class TestSaveAndReplay:
    def marked(self):
        s = fresh(500, 400, grid=5, catalogue_id="B999", year=1930)
        s.apply(ev(PLACE_H, (100, 200)))
        s.apply(ev(PLACE_V, (250, 100)))
        s.apply(ev(PLACE_V, (250, 300)))
        s.apply(ev(ARM))
        s.apply(ev(PLACE_H, (400, 100)))
        return s

    def test_save_carries_tally_and_metrics(self):
        record = self.marked().save()
        assert record.catalogue_id == "B999"
        assert record.year == 1930
        assert record.tally.rt == 2
        assert record.tally.sc == 1
        assert record.metrics.splittingness == 0.0
        assert record.events is not None
        assert record.events[-1].kind is EventKind.SAVE

    def test_empty_session_saves_zero_tally(self):
        s = fresh(catalogue_id="B000")
        record = s.save()
        assert record.tally.rt == 0
        assert record.metrics.splittingness is None

    def test_save_reload_replay_identical(self, tmp_path):
        s = self.marked()
        record = s.save()
        text = format_record(record)
        loaded = parse_record(text)
        replayed = Session.from_record(loaded)
        assert replayed.lines == s.lines
        assert replayed.tally() == s.tally()
        assert replayed.save().tally == record.tally

    def test_replay_equals_live_session(self):
        s = self.marked()
        twin = Session.replay(s.canvas, s.log, grid=s.grid, hidden_len=s.hidden_len)
        assert twin.lines == s.lines
        assert twin.hidden_armed == s.hidden_armed


class TestEventSerialization:
    def test_round_trip(self):
        events = [
            ev(PLACE_H, (30.0, 40.0)),
            ev(ARM),
            ev(PLACE_V, (60.5, 20.0)),
            ev(UNDO),
            ev(EventKind.SAVE),
        ]
        lines = format_events(events)
        assert [parse_event(t) for t in lines] == events

    def test_bad_event_lines(self):
        for text in ("", "fly 1 2", "place_h 1", "undo 3 4"):
            with pytest.raises(ValueError):
                parse_event(text)


def random_event(rng):
    kind = rng.choices(
        [PLACE_H, PLACE_V, ARM, UNDO, EventKind.SAVE],
        weights=[0.35, 0.35, 0.1, 0.15, 0.05],
    )[0]
    if kind in (PLACE_H, PLACE_V):
        return ev(kind, (rng.uniform(0, 400), rng.uniform(0, 300)))
    return ev(kind)


def drive(session, rng, n_events=14):
    for _ in range(n_events):
        try:
            session.apply(random_event(rng))
        except (MarkingError, EmptyUndoError):
            pass


def test_undo_soundness_over_random_sequences():
    rng = random.Random(2024)
    for _ in range(150):
        s = fresh(400, 300, grid=rng.choice([5, 10]))
        drive(s, rng, n_events=10)
        before = s.tally()
        seed = (rng.uniform(0, 400), rng.uniform(0, 300))
        try:
            s.apply(ev(rng.choice([PLACE_H, PLACE_V]), seed))
        except MarkingError:
            continue
        assert s.apply(ev(UNDO)) == before


def test_random_sequences_replay_identically():
    rng = random.Random(99)
    for _ in range(150):
        grid = rng.choice([5, 10])
        s = fresh(400, 300, grid=grid)
        drive(s, rng)
        twin = Session.replay(s.canvas, s.log, grid=grid)
        assert twin.tally() == s.tally()
        assert twin.lines == s.lines


def test_every_span_end_is_edge_or_blocker():
    from splitmark.geometry import Orientation

    rng = random.Random(123)
    for _ in range(80):
        s = fresh(400, 300, grid=10)
        drive(s, rng)
        for ln in s.lines:
            if ln.hidden:
                continue
            limit = 400 if ln.orientation is Orientation.HORIZONTAL else 300
            for end in (ln.lo, ln.hi):
                if end in (0.0, float(limit)):
                    continue
                blockers = [
                    other
                    for other in s.lines[: ln.ordinal]
                    if other.orientation is not ln.orientation
                    and abs(other.axis - end) <= s.eps
                    and other.lo - s.eps <= ln.axis <= other.hi + s.eps
                ]
                assert blockers, (ln, s.lines)
