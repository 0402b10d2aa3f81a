"""Acceptance suite: one test per release criterion, each printing a
PASS line with its runtime (visible under ``pytest -s``) and enforcing
the stated runtime budget."""

import random
import time
from pathlib import Path

import numpy as np

from splitmark.corpus import aggregate, load_record, read_trend_csv, trend_series, write_trend_csv
from splitmark.errors import EmptyUndoError, MarkingError
from splitmark.events import EventKind, SessionEvent
from splitmark.generator import GenParams, generate, to_marklines
from splitmark.geometry import Canvas, TallySheet, tally
from splitmark.metrics import complexity, splittingness
from splitmark.session import Session
from splitmark.stats import wilcoxon_one_sample

from test_stats import enumerate_two_sided_p

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_IDS = ["B108", "B116", "B125", "B131", "B198", "B288"]


def _report(name: str, started: float, limit: float) -> None:
    elapsed = time.perf_counter() - started
    assert elapsed < limit, f"{name}: {elapsed:.2f}s exceeded {limit}s budget"
    print(f"PASS {name} ({elapsed:.2f}s < {limit:.0f}s)")


def sheet(rt, sc):
    return TallySheet(sw=500, sh=400, thl=0, tvl=0, nh=0, nv=0, hh=0, hv=0, rt=rt, sc=sc)


def cross_session(canvas=Canvas(500, 400), px=250, py=200):
    s = Session(canvas, grid=5)
    s.apply(SessionEvent(EventKind.PLACE_H, (100, py)))
    s.apply(SessionEvent(EventKind.PLACE_V, (px, py - 100)))
    s.apply(SessionEvent(EventKind.PLACE_V, (px, py + 100)))
    return s


def test_formula_fixtures():
    started = time.perf_counter()
    assert splittingness(sheet(rt=12, sc=3)) == 0.50
    assert abs(splittingness(sheet(rt=46, sc=17)) - 12 / 46) <= 1e-12
    # one full horizontal plus one full-crossing vertical pair
    s = cross_session()
    t = s.tally()
    assert (t.thl, t.tvl) == (500, 400)
    assert complexity(t) == 1.0
    _report("formula-fixtures", started, 1.0)


def test_cross_order_invariance():
    started = time.perf_counter()
    rng = random.Random(1234)
    g = 10
    for _ in range(1000):
        w = rng.randrange(8, 60) * g
        h = rng.randrange(8, 60) * g
        px = rng.randrange(2, w // g - 2) * g
        py = rng.randrange(2, h // g - 2) * g
        canvas = Canvas(w, h)

        a = Session(canvas, grid=g)
        a.apply(SessionEvent(EventKind.PLACE_H, (px - g, py)))
        a.apply(SessionEvent(EventKind.PLACE_V, (px, py - g)))
        t_a = a.apply(SessionEvent(EventKind.PLACE_V, (px, py + g)))

        b = Session(canvas, grid=g)
        b.apply(SessionEvent(EventKind.PLACE_V, (px, py - g)))
        b.apply(SessionEvent(EventKind.PLACE_H, (px - g, py)))
        t_b = b.apply(SessionEvent(EventKind.PLACE_H, (px + g, py)))

        assert (t_a.rt, t_a.sc) == (2, 1), (w, h, px, py)
        assert (t_b.rt, t_b.sc) == (2, 1), (w, h, px, py)
    _report("cross-order-invariance", started, 5.0)


def test_hidden_line_semantics():
    started = time.perf_counter()
    s = Session(Canvas(100, 100), grid=5)
    s.apply(SessionEvent(EventKind.ARM_HIDDEN))
    s.apply(SessionEvent(EventKind.PLACE_H, (50, 40)))
    t = s.apply(SessionEvent(EventKind.PLACE_V, (50, 70)))

    vertical = s.lines[1]
    assert (vertical.lo, vertical.hi) == (40, 100)  # stopped by the hidden line
    from splitmark.geometry import find_tees

    tees = find_tees(s.lines, s.canvas, s.eps)
    assert len(tees) == 1 and not tees[0].regular
    assert t.rt == 0
    assert (t.hh, t.hv) == (1, 0)
    assert t.thl == 0 and t.tvl == 60  # hidden span never enters the totals
    from splitmark.metrics import special_effects

    assert special_effects(t) == 1
    _report("hidden-line-semantics", started, 1.0)


def test_generator_round_trip():
    started = time.perf_counter()
    for seed in range(1000):
        size_rng = random.Random(seed)
        p = GenParams(
            seed=seed,
            canvas=Canvas(size_rng.randrange(30, 70) * 10, size_rng.randrange(30, 70) * 10),
            max_depth=size_rng.choice([2, 3, 4]),
            min_cell=40.0,
            split_prob=size_rng.choice([0.7, 0.9, 1.0]),
            crossing_prob=0.0,
        )
        t = tally(to_marklines(generate(p)), p.canvas)
        assert t.sc == 0, seed
        assert t.hh == 0 and t.hv == 0, seed
        if t.rt > 0:
            assert splittingness(t) == 1.0, seed
    _report("generator-round-trip", started, 10.0)


def test_wilcoxon_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(77)
    checked = 0
    for n in range(1, 13):
        for _ in range(10):
            # mix continuous values and coarse ones to force ties
            values = [
                round(rng.uniform(0, 1), rng.choice([1, 1, 2, 6])) for _ in range(n)
            ]
            diffs = [v - 0.5 for v in values if abs(v - 0.5) > 1e-12]
            if not diffs:
                continue
            report = wilcoxon_one_sample(values, 0.5)
            assert report.method == "exact"
            oracle = enumerate_two_sided_p(diffs)
            assert abs(report.p_value - oracle) <= 1e-12, (n, values)
            checked += 1
    assert checked >= 100

    gen = np.random.default_rng(88)
    for _ in range(100):
        values = np.round(gen.uniform(0, 1, size=20), gen.choice([2, 3]))
        values = values[np.abs(values - 0.5) > 1e-12]
        if values.size < 15:
            continue
        exact = wilcoxon_one_sample(values, 0.5, method="exact")
        approx = wilcoxon_one_sample(values, 0.5, method="normal_approx")
        assert abs(exact.p_value - approx.p_value) <= 0.02, values
    _report("wilcoxon-oracle-equivalence", started, 30.0)


def test_statistical_decisions_mirror_study():
    started = time.perf_counter()
    gen = np.random.default_rng(2718)
    corpora = 100
    reject_vs_one = 0
    accept_vs_half = 0
    for _ in range(corpora):
        values = gen.uniform(0.0, 1.0, size=150)  # true median 0.5, bounded
        if wilcoxon_one_sample(values, 1.0, alpha=0.05).reject:
            reject_vs_one += 1
        if not wilcoxon_one_sample(values, 0.5, alpha=0.05).reject:
            accept_vs_half += 1
    assert reject_vs_one >= 0.99 * corpora, reject_vs_one
    assert accept_vs_half >= 0.90 * corpora, accept_vs_half
    _report("statistical-decision-property", started, 60.0)


def test_fixture_pipeline(tmp_path):
    started = time.perf_counter()
    records = [load_record(FIXTURES / f"{fid}.txt") for fid in FIXTURE_IDS]
    by_id = {r.catalogue_id: r for r in records}

    assert by_id["B131"].metrics.splittingness == 0.50
    assert by_id["B198"].metrics.splittingness == 0.00
    assert by_id["B125"].metrics.splittingness == 1.00
    assert by_id["B125"].metrics.special_effects == 3
    assert abs(by_id["B288"].metrics.splittingness - 12 / 46) <= 1e-12
    assert round(by_id["B116"].metrics.splittingness, 2) == 0.53
    assert abs(by_id["B116"].metrics.complexity - 4.35) <= 1e-12
    assert by_id["B116"].metrics.special_effects == 3
    assert by_id["B108"].metrics.splittingness == 0.25
    assert abs(by_id["B108"].metrics.complexity - 4.59) <= 1e-12
    assert by_id["B108"].metrics.special_effects == 2

    rows = aggregate(records)
    assert [row["catalogue_id"] for row in rows] == FIXTURE_IDS

    out = tmp_path / "trend.csv"
    write_trend_csv(trend_series(records), out)
    points = read_trend_csv(out)
    assert [p.catalogue_id for p in points] == FIXTURE_IDS
    assert points[3].splittingness == 0.50  # B131
    _report("fixture-pipeline", started, 1.0)


def test_replay_determinism():
    started = time.perf_counter()
    rng = random.Random(31337)
    kinds = [EventKind.PLACE_H, EventKind.PLACE_V, EventKind.ARM_HIDDEN, EventKind.UNDO]
    for _ in range(1000):
        grid = rng.choice([5, 10])
        canvas = Canvas(rng.randrange(20, 50) * 10, rng.randrange(20, 50) * 10)
        s = Session(canvas, grid=grid)
        for _ in range(12):
            kind = rng.choices(kinds, weights=[0.37, 0.37, 0.11, 0.15])[0]
            seed = (
                (rng.uniform(0, canvas.width), rng.uniform(0, canvas.height))
                if kind in (EventKind.PLACE_H, EventKind.PLACE_V)
                else None
            )
            try:
                s.apply(SessionEvent(kind, seed))
            except (MarkingError, EmptyUndoError):
                pass
        # serialize through the record text format, then replay
        s.catalogue_id = "B900"
        record = s.save()
        from splitmark.corpus import format_record, parse_record

        reloaded = parse_record(format_record(record))
        twin = Session.from_record(reloaded)
        assert twin.tally() == s.tally()
        assert twin.lines == s.lines
    _report("replay-determinism", started, 10.0)
