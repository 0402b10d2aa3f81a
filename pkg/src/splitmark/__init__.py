"""splitmark: marking-line analysis of grid compositions.

Mark axis-aligned lines under splitting semantics, tally Tees and strange
coincidences, derive per-painting metrics, run corpus statistics, and
generate recursive-split compositions for round-trip checks.
"""

from .corpus import (
    Catalogue,
    CatalogueEntry,
    ExclusionReason,
    PaintingRecord,
    TrendPoint,
    aggregate,
    catalogue_key,
    filter_range,
    load_record,
    parse_record,
    format_record,
    save_record,
    trend_series,
)
from .errors import (
    DegenerateSampleError,
    DegenerateSpanError,
    EmptyInputError,
    EmptyUndoError,
    InfeasibleError,
    MarkingError,
    OverlapError,
    ParseError,
    SplitmarkError,
)
from .events import EventKind, SessionEvent
from .generator import GenParams, Leaf, Split, generate, render, to_marklines
from .geometry import (
    Canvas,
    MarkLine,
    Orientation,
    Side,
    StrangeCoincidence,
    TallySheet,
    Tee,
    extend,
    find_strange_coincidences,
    find_tees,
    snap,
    tally,
)
from .metrics import Metrics, complexity, metrics_for, special_effects, splittingness
from .session import Session
from .stats import (
    Descriptives,
    TestReport,
    descriptives,
    ks_normality,
    wilcoxon_one_sample,
)

__version__ = "0.1.0"

__all__ = [
    "Canvas",
    "Catalogue",
    "CatalogueEntry",
    "DegenerateSampleError",
    "DegenerateSpanError",
    "Descriptives",
    "EmptyInputError",
    "EmptyUndoError",
    "EventKind",
    "ExclusionReason",
    "GenParams",
    "InfeasibleError",
    "Leaf",
    "MarkLine",
    "MarkingError",
    "Metrics",
    "Orientation",
    "OverlapError",
    "PaintingRecord",
    "ParseError",
    "Session",
    "SessionEvent",
    "Side",
    "Split",
    "SplitmarkError",
    "StrangeCoincidence",
    "TallySheet",
    "Tee",
    "TestReport",
    "TrendPoint",
    "aggregate",
    "catalogue_key",
    "complexity",
    "descriptives",
    "extend",
    "filter_range",
    "find_strange_coincidences",
    "find_tees",
    "format_record",
    "generate",
    "ks_normality",
    "load_record",
    "metrics_for",
    "parse_record",
    "render",
    "save_record",
    "snap",
    "special_effects",
    "splittingness",
    "tally",
    "to_marklines",
    "trend_series",
    "wilcoxon_one_sample",
]
