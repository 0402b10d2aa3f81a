"""HTTP session API for the marking workflow.

One event per call; events within a session are strictly serialized and
every mutating call returns the full session state.  Clients may send
``expected_index`` (the event count they last saw) for optimistic
concurrency; a mismatch yields 409.

Endpoints:
    POST /sessions                   create a session
    GET  /sessions/{sid}             current state
    POST /sessions/{sid}/events      apply one event (place_h/place_v/undo/arm_hidden)
    POST /sessions/{sid}/save        persist the session as a painting record
    GET  /records                    list stored records
    POST /analysis/wilcoxon          one-sample test over stored records
    POST /generate                   recursive-split composition as SVG
"""

from __future__ import annotations

import re
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .corpus import (
    PaintingRecord,
    aggregate,
    catalogue_key,
    filter_range,
    load_record,
    save_record,
)
from .errors import (
    DegenerateSampleError,
    EmptyInputError,
    EmptyUndoError,
    InfeasibleError,
    MarkingError,
    ParseError,
)
from .events import PLACEMENTS, EventKind, SessionEvent
from .generator import GenParams, generate, render, to_marklines
from .geometry import Canvas, tally as tally_lines
from .metrics import Metrics, metrics_for
from .session import Session
from .stats import ks_normality, wilcoxon_one_sample

_SAFE_ID = re.compile(r"[^A-Za-z0-9_-]+")


class CreateSessionBody(BaseModel):
    width: int
    height: int
    grid: int = 5
    hidden_len: float = 20.0
    catalogue_id: str = ""
    year: int = 0
    image_ref: str | None = None


class EventBody(BaseModel):
    kind: str
    x: float | None = None
    y: float | None = None
    expected_index: int | None = None


class SaveBody(BaseModel):
    catalogue_id: str | None = None
    year: int | None = None


class WilcoxonBody(BaseModel):
    median: float
    alpha: float = 0.05
    from_id: str | None = None
    to_id: str | None = None


class KsBody(BaseModel):
    alpha: float = 0.05
    mode: str = "asymptotic"
    seed: int | None = None
    from_id: str | None = None
    to_id: str | None = None


class GenerateBody(BaseModel):
    seed: int = 0
    width: int = 500
    height: int = 400
    max_depth: int = 4
    min_cell: float = 40.0
    split_prob: float = 1.0
    crossing_prob: float = 0.0
    line_width: float = 4.0
    grid: int = 5


def _metrics_dict(metrics: Metrics) -> dict:
    return {
        "splittingness": metrics.splittingness,
        "complexity": metrics.complexity,
        "special_effects": metrics.special_effects,
    }


def _state(session: Session) -> dict:
    sheet = session.tally()
    return {
        "canvas": {"width": session.canvas.width, "height": session.canvas.height},
        "grid": session.grid,
        "hidden_len": session.hidden_len,
        "catalogue_id": session.catalogue_id,
        "year": session.year,
        "image_ref": session.image_ref,
        "hidden_armed": session.hidden_armed,
        "event_index": session.event_index,
        "lines": [
            {
                "ordinal": ln.ordinal,
                "orientation": ln.orientation.value,
                "axis": ln.axis,
                "lo": ln.lo,
                "hi": ln.hi,
                "hidden": ln.hidden,
            }
            for ln in session.lines
        ],
        "tally": {
            "sw": sheet.sw,
            "sh": sheet.sh,
            "thl": sheet.thl,
            "tvl": sheet.tvl,
            "nh": sheet.nh,
            "nv": sheet.nv,
            "hh": sheet.hh,
            "hv": sheet.hv,
            "rt": sheet.rt,
            "sc": sheet.sc,
        },
        "metrics": _metrics_dict(metrics_for(sheet)),
    }


def _record_dict(record: PaintingRecord, path: Path | None = None) -> dict:
    out = {
        "catalogue_id": record.catalogue_id,
        "year": record.year,
        "tally": {
            "sw": record.tally.sw,
            "sh": record.tally.sh,
            "thl": record.tally.thl,
            "tvl": record.tally.tvl,
            "nh": record.tally.nh,
            "nv": record.tally.nv,
            "hh": record.tally.hh,
            "hv": record.tally.hv,
            "rt": record.tally.rt,
            "sc": record.tally.sc,
        },
        "metrics": _metrics_dict(record.metrics),
    }
    if path is not None:
        out["path"] = str(path)
    return out


def _bad_request(code: str, message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"code": code, "message": message})


def create_app(records_dir: Path | str = "records", ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="splitmark", version="0.1.0")
    records_path = Path(records_dir)
    sessions: dict[str, Session] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()

    def _session(sid: str) -> tuple[Session, threading.Lock]:
        with registry_lock:
            session = sessions.get(sid)
            if session is None:
                raise HTTPException(status_code=404, detail={"code": "UnknownSession"})
            return session, locks[sid]

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            session = Session(
                Canvas(body.width, body.height),
                grid=body.grid,
                hidden_len=body.hidden_len,
                catalogue_id=body.catalogue_id,
                year=body.year,
                image_ref=body.image_ref,
            )
        except ValueError as exc:
            raise _bad_request("InvalidSession", str(exc)) from None
        sid = uuid.uuid4().hex[:12]
        with registry_lock:
            sessions[sid] = session
            locks[sid] = threading.Lock()
        return {"session_id": sid, "state": _state(session)}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session, _ = _session(sid)
        return {"state": _state(session)}

    @app.post("/sessions/{sid}/events")
    def post_event(sid: str, body: EventBody):
        session, lock = _session(sid)
        try:
            kind = EventKind(body.kind)
        except ValueError:
            raise _bad_request("InvalidEvent", f"unknown event kind {body.kind!r}") from None
        if kind in PLACEMENTS:
            if body.x is None or body.y is None:
                raise _bad_request("InvalidEvent", f"{kind.value} needs x and y")
            event = SessionEvent(kind, (body.x, body.y))
        else:
            event = SessionEvent(kind)
        with lock:
            if body.expected_index is not None and body.expected_index != session.event_index:
                raise HTTPException(
                    status_code=409,
                    detail={
                        "code": "EventIndexConflict",
                        "expected": body.expected_index,
                        "actual": session.event_index,
                    },
                )
            try:
                session.apply(event)
            except EmptyUndoError as exc:
                raise _bad_request("EmptyUndoError", str(exc)) from None
            except MarkingError as exc:
                raise _bad_request(type(exc).__name__, str(exc)) from None
            except ValueError as exc:
                raise _bad_request("InvalidEvent", str(exc)) from None
            return {"state": _state(session)}

    @app.post("/sessions/{sid}/save")
    def save_session(sid: str, body: SaveBody | None = None):
        session, lock = _session(sid)
        with lock:
            if body is not None:
                if body.catalogue_id is not None:
                    session.catalogue_id = body.catalogue_id
                if body.year is not None:
                    session.year = body.year
            if not session.catalogue_id:
                raise _bad_request("MissingCatalogueId", "set catalogue_id before saving")
            record = session.save()
            records_path.mkdir(parents=True, exist_ok=True)
            name = _SAFE_ID.sub("_", record.catalogue_id) or sid
            path = save_record(record, records_path / f"{name}.txt")
        return {"record": _record_dict(record, path), "state": _state(session)}

    def _stored_records() -> list[PaintingRecord]:
        if not records_path.is_dir():
            return []
        records = []
        for path in sorted(records_path.glob("*.txt")):
            try:
                records.append(load_record(path))
            except (ParseError, OSError):
                continue  # foreign or damaged file; listing must not fail
        return sorted(records, key=lambda r: catalogue_key(r.catalogue_id))

    @app.get("/records")
    def list_records():
        return {"records": [_record_dict(r) for r in _stored_records()]}

    @app.post("/analysis/wilcoxon")
    def run_wilcoxon(body: WilcoxonBody):
        records = _stored_records()
        if body.from_id and body.to_id:
            records = filter_range(records, body.from_id, body.to_id)
        rows = aggregate(records)
        values = [
            row["splittingness"] for row in rows if row["splittingness"] is not None
        ]
        try:
            report = wilcoxon_one_sample(values, body.median, alpha=body.alpha)
        except (EmptyInputError, DegenerateSampleError) as exc:
            raise _bad_request(type(exc).__name__, str(exc)) from None
        return {
            "test": report.test,
            "n_effective": report.n_effective,
            "statistic": report.statistic,
            "p_value": report.p_value,
            "alpha": report.alpha,
            "reject": report.reject,
            "method": report.method,
            "n_values": len(values),
        }

    @app.post("/analysis/ks")
    def run_ks(body: KsBody):
        records = _stored_records()
        if body.from_id and body.to_id:
            records = filter_range(records, body.from_id, body.to_id)
        rows = aggregate(records)
        values = [
            row["splittingness"] for row in rows if row["splittingness"] is not None
        ]
        try:
            report = ks_normality(values, alpha=body.alpha, mode=body.mode, rng=body.seed)
        except (ValueError, DegenerateSampleError) as exc:
            raise _bad_request(type(exc).__name__, str(exc)) from None
        return {
            "test": report.test,
            "n_effective": report.n_effective,
            "statistic": report.statistic,
            "p_value": report.p_value,
            "alpha": report.alpha,
            "reject": report.reject,
            "method": report.method,
            "n_values": len(values),
        }

    @app.post("/generate")
    def run_generate(body: GenerateBody):
        try:
            params = GenParams(
                seed=body.seed,
                canvas=Canvas(body.width, body.height),
                max_depth=body.max_depth,
                min_cell=body.min_cell,
                split_prob=body.split_prob,
                crossing_prob=body.crossing_prob,
                line_width=body.line_width,
                grid=body.grid,
            )
            tree = generate(params)
        except (InfeasibleError, ValueError) as exc:
            raise _bad_request(
                "InfeasibleError" if isinstance(exc, InfeasibleError) else "InvalidParams",
                str(exc),
            ) from None
        lines = to_marklines(tree)
        sheet = tally_lines(lines, params.canvas)
        return {
            "svg": render(tree, params),
            "tally": {
                "sw": sheet.sw,
                "sh": sheet.sh,
                "thl": sheet.thl,
                "tvl": sheet.tvl,
                "nh": sheet.nh,
                "nv": sheet.nv,
                "hh": sheet.hh,
                "hv": sheet.hv,
                "rt": sheet.rt,
                "sc": sheet.sc,
            },
            "metrics": _metrics_dict(metrics_for(sheet)),
        }

    if ui_dir:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
