"""Persistence and aggregation of per-painting records.

Each painting is stored as one human-readable UTF-8 text file with
``key: value`` lines: the ten raw variables, identification, derived
metrics, and optionally the replayable session event log.  Loading
revalidates invariants and recomputes the metrics from the tally; any
mismatch is a hard ParseError.

The catalogue config lists the ids excluded from analysis (lozenges,
skewed photos, sketches, non-paintings, near-copies).  Ids absent from
the config are treated as included; the full inclusion list is not
reconstructible, so the config is deliberately editable.
"""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Sequence

from .errors import ParseError
from .events import SessionEvent, format_event, parse_event
from .geometry import TallySheet
from .metrics import Metrics, metrics_for

logger = logging.getLogger(__name__)

METRIC_TOL = 1e-9

CORPUS_COLUMNS = [
    "catalogue_id",
    "year",
    "sw",
    "sh",
    "thl",
    "tvl",
    "nh",
    "nv",
    "hh",
    "hv",
    "rt",
    "sc",
    "splittingness",
    "complexity",
    "special_effects",
]

_ID_PATTERN = re.compile(r"^([A-Za-z]*)(\d+)(.*)$")


def catalogue_key(catalogue_id: str) -> tuple[str, int, str]:
    """Sort key: letter prefix, numeric body, remainder (B104 < B131 < B288)."""
    m = _ID_PATTERN.match(catalogue_id)
    if not m:
        return (catalogue_id, -1, "")
    return (m.group(1).upper(), int(m.group(2)), m.group(3))


class ExclusionReason(str, Enum):
    LOZENGE = "lozenge"
    SKEWED_PHOTO = "skewed_photo"
    SKETCH = "sketch"
    NON_PAINTING = "non_painting"
    NEAR_COPY = "near_copy"
    COLOR_LINES = "color_lines"
    NONE = "none"


@dataclass(frozen=True)
class CatalogueEntry:
    catalogue_id: str
    year: int | None = None
    exclusion_reason: ExclusionReason = ExclusionReason.NONE

    @property
    def included(self) -> bool:
        return self.exclusion_reason is ExclusionReason.NONE


@dataclass
class Catalogue:
    """Inclusion/exclusion decisions; unknown ids default to included."""

    entries: dict[str, CatalogueEntry] = field(default_factory=dict)

    def entry(self, catalogue_id: str) -> CatalogueEntry | None:
        return self.entries.get(catalogue_id)

    def is_included(self, catalogue_id: str) -> bool:
        entry = self.entries.get(catalogue_id)
        return entry is None or entry.included

    def reason(self, catalogue_id: str) -> ExclusionReason:
        entry = self.entries.get(catalogue_id)
        return entry.exclusion_reason if entry else ExclusionReason.NONE

    @classmethod
    def load(cls, path: Path | str) -> "Catalogue":
        return cls.parse(Path(path).read_text(encoding="utf-8"), source=str(path))

    @classmethod
    def parse(cls, text: str, source: str = "<catalogue>") -> "Catalogue":
        entries: dict[str, CatalogueEntry] = {}
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(
                    f"expected 'ID reason', got {line!r}", source=source, line=line_no
                )
            catalogue_id, reason = parts
            try:
                entries[catalogue_id] = CatalogueEntry(
                    catalogue_id, exclusion_reason=ExclusionReason(reason)
                )
            except ValueError:
                raise ParseError(
                    f"unknown exclusion reason {reason!r}", source=source, line=line_no
                ) from None
        return cls(entries)

    @classmethod
    def default(cls) -> "Catalogue":
        """The exclusions named explicitly in the study; editable via load()."""
        text = resources.files("splitmark.data").joinpath("exclusions.txt").read_text(
            encoding="utf-8"
        )
        return cls.parse(text, source="splitmark/data/exclusions.txt")


@dataclass(frozen=True)
class PaintingRecord:
    """The persisted unit of the corpus: one marked painting."""

    catalogue_id: str
    year: int
    tally: TallySheet
    metrics: Metrics
    events: tuple[SessionEvent, ...] | None = None
    grid: int = 5
    hidden_len: float = 20.0

    def __post_init__(self) -> None:
        if not self.catalogue_id:
            raise ValueError("catalogue_id must be non-empty")


def _check_metrics(record: PaintingRecord, source: str) -> None:
    expected = metrics_for(record.tally)
    got = record.metrics
    if (expected.splittingness is None) != (got.splittingness is None):
        raise ParseError(
            f"splittingness defined-ness disagrees with tally (rt={record.tally.rt})",
            source=source,
        )
    if expected.splittingness is not None and abs(
        expected.splittingness - got.splittingness
    ) > METRIC_TOL:
        raise ParseError(
            f"splittingness {got.splittingness!r} does not match tally "
            f"({expected.splittingness!r})",
            source=source,
        )
    if abs(expected.complexity - got.complexity) > METRIC_TOL:
        raise ParseError(
            f"complexity {got.complexity!r} does not match tally "
            f"({expected.complexity!r})",
            source=source,
        )
    if expected.special_effects != got.special_effects:
        raise ParseError(
            f"special_effects {got.special_effects} does not match tally "
            f"({expected.special_effects})",
            source=source,
        )


def _fmt_number(value: float) -> str:
    if float(value) == int(value):
        return str(int(value))
    return repr(float(value))


def format_record(record: PaintingRecord) -> str:
    """Serialize to the record text format (deterministic, LF-terminated)."""
    t = record.tally
    m = record.metrics
    lines = [
        f"catalogue_id: {record.catalogue_id}",
        f"year: {record.year}",
        f"sw: {t.sw}",
        f"sh: {t.sh}",
        f"thl: {_fmt_number(t.thl)}",
        f"tvl: {_fmt_number(t.tvl)}",
        f"nh: {t.nh}",
        f"nv: {t.nv}",
        f"hh: {t.hh}",
        f"hv: {t.hv}",
        f"rt: {t.rt}",
        f"sc: {t.sc}",
        "splittingness: "
        + ("undefined" if m.splittingness is None else repr(m.splittingness)),
        f"complexity: {m.complexity!r}",
        f"special_effects: {m.special_effects}",
    ]
    if record.events is not None:
        lines.append(f"grid: {record.grid}")
        lines.append(f"hidden_len: {_fmt_number(record.hidden_len)}")
        lines.extend(f"event: {format_event(e)}" for e in record.events)
    return "\n".join(lines) + "\n"


_INT_FIELDS = {"year", "sw", "sh", "nh", "nv", "hh", "hv", "rt", "sc", "special_effects", "grid"}
_FLOAT_FIELDS = {"thl", "tvl", "complexity", "hidden_len"}
_REQUIRED = [
    "catalogue_id",
    "year",
    "sw",
    "sh",
    "thl",
    "tvl",
    "nh",
    "nv",
    "hh",
    "hv",
    "rt",
    "sc",
    "splittingness",
    "complexity",
    "special_effects",
]


def parse_record(text: str, source: str = "<record>") -> PaintingRecord:
    """Parse and validate one record document.

    Raises ParseError (with line diagnostics) on malformed syntax, missing
    or duplicate fields, invariant violations, or metrics that disagree
    with the tally.
    """
    values: dict[str, object] = {}
    events: list[SessionEvent] = []
    saw_event = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", source, line_no)
        key = key.strip()
        value = value.strip()
        if key == "event":
            saw_event = True
            try:
                events.append(parse_event(value))
            except ValueError as exc:
                raise ParseError(str(exc), source, line_no) from None
            continue
        if key in values:
            raise ParseError(f"duplicate field {key!r}", source, line_no)
        if key in _INT_FIELDS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ParseError(f"invalid integer for {key!r}: {value!r}", source, line_no) from None
        elif key in _FLOAT_FIELDS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ParseError(f"invalid number for {key!r}: {value!r}", source, line_no) from None
        elif key == "splittingness":
            if value == "undefined":
                values[key] = None
            else:
                try:
                    values[key] = float(value)
                except ValueError:
                    raise ParseError(
                        f"invalid splittingness: {value!r}", source, line_no
                    ) from None
        elif key == "catalogue_id":
            if not value:
                raise ParseError("catalogue_id must be non-empty", source, line_no)
            values[key] = value
        else:
            raise ParseError(f"unknown field {key!r}", source, line_no)

    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ParseError(f"missing fields: {', '.join(missing)}", source)

    try:
        sheet = TallySheet(
            sw=values["sw"],
            sh=values["sh"],
            thl=values["thl"],
            tvl=values["tvl"],
            nh=values["nh"],
            nv=values["nv"],
            hh=values["hh"],
            hv=values["hv"],
            rt=values["rt"],
            sc=values["sc"],
        )
    except ValueError as exc:
        raise ParseError(str(exc), source) from None

    record = PaintingRecord(
        catalogue_id=values["catalogue_id"],
        year=values["year"],
        tally=sheet,
        metrics=Metrics(
            splittingness=values["splittingness"],
            complexity=values["complexity"],
            special_effects=values["special_effects"],
        ),
        events=tuple(events) if saw_event else None,
        grid=values.get("grid", 5),
        hidden_len=values.get("hidden_len", 20.0),
    )
    _check_metrics(record, source)
    return record


def save_record(record: PaintingRecord, path: Path | str) -> Path:
    """Write atomically (temp file + rename); returns the final path."""
    _check_metrics(record, source=str(path))
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(format_record(record), encoding="utf-8", newline="\n")
    tmp.replace(path)
    return path


def load_record(path: Path | str) -> PaintingRecord:
    path = Path(path)
    return parse_record(path.read_text(encoding="utf-8"), source=str(path))


def aggregate(
    records: Iterable[PaintingRecord], catalogue: Catalogue | None = None
) -> list[dict[str, object]]:
    """Corpus table: one row per included painting, in catalogue order.

    Records for excluded ids are dropped with a warning.
    """
    catalogue = catalogue or Catalogue.default()
    rows = []
    for record in sorted(records, key=lambda r: catalogue_key(r.catalogue_id)):
        if not catalogue.is_included(record.catalogue_id):
            logger.warning(
                "skipping %s: excluded (%s)",
                record.catalogue_id,
                catalogue.reason(record.catalogue_id).value,
            )
            continue
        t, m = record.tally, record.metrics
        rows.append(
            {
                "catalogue_id": record.catalogue_id,
                "year": record.year,
                "sw": t.sw,
                "sh": t.sh,
                "thl": t.thl,
                "tvl": t.tvl,
                "nh": t.nh,
                "nv": t.nv,
                "hh": t.hh,
                "hv": t.hv,
                "rt": t.rt,
                "sc": t.sc,
                "splittingness": m.splittingness,
                "complexity": m.complexity,
                "special_effects": m.special_effects,
            }
        )
    return rows


def write_corpus_csv(rows: Sequence[dict[str, object]], out: Path | str | IO[str]) -> None:
    """CSV with header row, '.' decimals, LF line endings, UTF-8."""

    def _write(fh: IO[str]) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CORPUS_COLUMNS)
        for row in rows:
            writer.writerow(
                ["" if row[col] is None else row[col] for col in CORPUS_COLUMNS]
            )

    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    else:
        _write(out)


@dataclass(frozen=True)
class TrendPoint:
    catalogue_id: str
    year: int
    splittingness: float | None  # None = undefined (rt == 0), never zero-filled
    complexity: float


def trend_series(records: Iterable[PaintingRecord]) -> list[TrendPoint]:
    """Per-painting splittingness and complexity in catalogue order."""
    return [
        TrendPoint(
            catalogue_id=r.catalogue_id,
            year=r.year,
            splittingness=r.metrics.splittingness,
            complexity=r.metrics.complexity,
        )
        for r in sorted(records, key=lambda r: catalogue_key(r.catalogue_id))
    ]


def write_trend_csv(points: Sequence[TrendPoint], out: Path | str | IO[str]) -> None:
    def _write(fh: IO[str]) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["catalogue_id", "year", "splittingness", "complexity"])
        for p in points:
            writer.writerow(
                [
                    p.catalogue_id,
                    p.year,
                    "" if p.splittingness is None else repr(p.splittingness),
                    repr(p.complexity),
                ]
            )

    if isinstance(out, (str, Path)):
        with open(out, "w", encoding="utf-8", newline="") as fh:
            _write(fh)
    else:
        _write(out)


def read_trend_csv(path: Path | str) -> list[TrendPoint]:
    points = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["catalogue_id", "year", "splittingness", "complexity"]:
            raise ParseError(f"unexpected trend header {header!r}", source=str(path), line=1)
        for line_no, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise ParseError(f"expected 4 columns, got {len(row)}", str(path), line_no)
            try:
                points.append(
                    TrendPoint(
                        catalogue_id=row[0],
                        year=int(row[1]),
                        splittingness=None if row[2] == "" else float(row[2]),
                        complexity=float(row[3]),
                    )
                )
            except ValueError as exc:
                raise ParseError(str(exc), str(path), line_no) from None
    return points


def filter_range(
    records: Iterable[PaintingRecord], from_id: str, to_id: str
) -> list[PaintingRecord]:
    """Records with from_id <= id <= to_id in catalogue order (both inclusive)."""
    lo, hi = catalogue_key(from_id), catalogue_key(to_id)
    if hi < lo:
        lo, hi = hi, lo
    return [r for r in records if lo <= catalogue_key(r.catalogue_id) <= hi]
