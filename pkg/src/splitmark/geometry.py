"""Geometry of marking lines under splitting semantics.

A marking line is placed from a seed point and extended in both directions
until it hits an earlier perpendicular line or the canvas edge.  Hidden
lines are short fixed-length stoppers that block extension but are kept
out of the painted-line totals.  Junctions where a later line ends on an
earlier one are Tees; two regular Tees meeting an earlier transversal at
the same point from opposite sides form a strange coincidence (visually a
crossing).

Everything here is pure: the geometry of line *i* depends only on the
canvas and lines ``0..i-1``, so replaying a seed sequence reproduces the
same spans, Tees, and tallies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateSpanError, OverlapError

# Half of the finest snapping step; with snapped inputs all comparisons
# against this tolerance are exact.
DEFAULT_EPS = 0.5

DEFAULT_HIDDEN_LEN = 20.0

Point = tuple[float, float]


class Orientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @property
    def perpendicular(self) -> "Orientation":
        if self is Orientation.HORIZONTAL:
            return Orientation.VERTICAL
        return Orientation.HORIZONTAL


class Side(str, Enum):
    """Which side of a transversal an abutting line lies on (canvas axis order)."""

    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class Canvas:
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"canvas must be positive, got {self.width}x{self.height}")

    def contains(self, point: Point, eps: float = 0.0) -> bool:
        x, y = point
        return -eps <= x <= self.width + eps and -eps <= y <= self.height + eps


@dataclass(frozen=True)
class MarkLine:
    """One marking segment.

    ``axis`` is the fixed coordinate (y for horizontals, x for verticals);
    ``lo``/``hi`` bound the span along the other axis.  ``seed`` is the
    snapped click point the line was placed from.
    """

    ordinal: int
    orientation: Orientation
    axis: float
    lo: float
    hi: float
    hidden: bool
    seed: Point

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise ValueError(f"degenerate span [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def endpoints(self) -> tuple[Point, Point]:
        if self.orientation is Orientation.HORIZONTAL:
            return (self.lo, self.axis), (self.hi, self.axis)
        return (self.axis, self.lo), (self.axis, self.hi)


@dataclass(frozen=True)
class Tee:
    """A later line ending on an earlier transversal."""

    later: int
    earlier: int
    point: Point
    side: Side
    regular: bool


@dataclass(frozen=True)
class StrangeCoincidence:
    """Two regular Tees meeting a transversal at one point from opposite sides."""

    transversal: int
    point: Point
    pair: tuple[int, int]


@dataclass(frozen=True)
class TallySheet:
    """The ten per-painting variables reported after marking."""

    sw: int
    sh: int
    thl: float
    tvl: float
    nh: int
    nv: int
    hh: int
    hv: int
    rt: int
    sc: int

    def __post_init__(self) -> None:
        for name in ("sw", "sh", "thl", "tvl", "nh", "nv", "hh", "hv", "rt", "sc"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.rt < 2 * self.sc:
            raise ValueError(
                f"rt={self.rt} < 2*sc={2 * self.sc}: each coincidence needs two regular Tees"
            )


def snap(point: Point, grid: int, canvas: Canvas) -> Point:
    """Round both coordinates to the nearest grid multiple, then clamp into the canvas."""
    if grid < 1:
        raise ValueError(f"grid step must be >= 1, got {grid}")

    def _snap1(value: float, limit: int) -> float:
        snapped = math.floor(value / grid + 0.5) * grid
        return min(max(snapped, 0.0), float(limit))

    return _snap1(point[0], canvas.width), _snap1(point[1], canvas.height)


def _axis_and_along(point: Point, orientation: Orientation) -> tuple[float, float]:
    x, y = point
    if orientation is Orientation.HORIZONTAL:
        return y, x
    return x, y


def extend(
    seed: Point,
    orientation: Orientation,
    hidden: bool,
    earlier: list[MarkLine],
    canvas: Canvas,
    eps: float = DEFAULT_EPS,
    hidden_len: float = DEFAULT_HIDDEN_LEN,
) -> MarkLine:
    """Grow a new line from a snapped seed.

    Non-hidden lines run from the nearest blocker below/left of the seed to
    the nearest blocker above/right, where blockers are the canvas edge and
    any earlier perpendicular line whose closed span covers the new axis
    coordinate.  Hidden lines take a fixed length centred on the seed,
    clipped to the canvas, with no extension.

    Raises OverlapError if an earlier parallel line on the same axis would
    overlap the result, DegenerateSpanError if extension collapses to a
    point (seed placed on a blocking line).
    """
    if not canvas.contains(seed):
        raise ValueError(f"seed {seed} outside canvas {canvas.width}x{canvas.height}")
    axis, along = _axis_and_along(seed, orientation)
    limit = canvas.width if orientation is Orientation.HORIZONTAL else canvas.height

    if hidden:
        half = hidden_len / 2.0
        lo = max(0.0, along - half)
        hi = min(float(limit), along + half)
    else:
        lo, hi = 0.0, float(limit)
        for line in earlier:
            if line.orientation is orientation:
                continue
            if line.lo - eps <= axis <= line.hi + eps:
                if line.axis <= along:
                    lo = max(lo, line.axis)
                if line.axis >= along:
                    hi = min(hi, line.axis)

    if hi - lo <= eps:
        raise DegenerateSpanError(
            f"{orientation.value} line at {axis} from seed {seed} has no room to extend"
        )

    for line in earlier:
        if line.orientation is not orientation:
            continue
        if abs(line.axis - axis) <= eps and min(hi, line.hi) - max(lo, line.lo) > eps:
            raise OverlapError(
                f"{orientation.value} line at {axis} overlaps earlier line {line.ordinal}"
            )

    return MarkLine(
        ordinal=len(earlier),
        orientation=orientation,
        axis=axis,
        lo=lo,
        hi=hi,
        hidden=hidden,
        seed=seed,
    )


def find_tees(lines: list[MarkLine], canvas: Canvas, eps: float = DEFAULT_EPS) -> list[Tee]:
    """One Tee per span end that abuts an earlier perpendicular line.

    Ends sitting on a canvas edge yield no Tee.  When several earlier lines
    pass through the same abutment point the earliest one is charged.
    A Tee is regular only if neither participant is hidden.
    """
    tees: list[Tee] = []
    for line in lines:
        limit = canvas.width if line.orientation is Orientation.HORIZONTAL else canvas.height
        for end_along, side in ((line.lo, Side.HIGH), (line.hi, Side.LOW)):
            if end_along <= eps or end_along >= limit - eps:
                continue  # canvas edge, not a junction
            for other in lines:
                if other.ordinal >= line.ordinal:
                    break
                if other.orientation is line.orientation:
                    continue
                if (
                    abs(end_along - other.axis) <= eps
                    and other.lo - eps <= line.axis <= other.hi + eps
                ):
                    if line.orientation is Orientation.HORIZONTAL:
                        point = (other.axis, line.axis)
                    else:
                        point = (line.axis, other.axis)
                    tees.append(
                        Tee(
                            later=line.ordinal,
                            earlier=other.ordinal,
                            point=point,
                            side=side,
                            regular=not (line.hidden or other.hidden),
                        )
                    )
                    break
    return tees


def find_strange_coincidences(
    tees: list[Tee], lines: list[MarkLine], eps: float = DEFAULT_EPS
) -> list[StrangeCoincidence]:
    """Pair regular Tees that meet one transversal at one point from opposite sides.

    Pairing is greedy in placement order and each Tee is used at most once,
    so a group of three or more coincident Tees still yields a well-defined
    count.  Paired lines must be collinear: same orientation with axis
    coordinates within tolerance (the crossing reading of the junction).
    """
    coincidences: list[StrangeCoincidence] = []
    unmatched: dict[int, list[Tee]] = {}

    for tee in sorted(tees, key=lambda t: t.later):
        if not tee.regular:
            continue
        candidates = unmatched.setdefault(tee.earlier, [])
        match = None
        for other in candidates:
            if other.side is tee.side:
                continue
            if (
                abs(other.point[0] - tee.point[0]) <= eps
                and abs(other.point[1] - tee.point[1]) <= eps
                and lines[other.later].orientation is lines[tee.later].orientation
                and abs(lines[other.later].axis - lines[tee.later].axis) <= eps
            ):
                match = other
                break
        if match is not None:
            candidates.remove(match)
            coincidences.append(
                StrangeCoincidence(
                    transversal=tee.earlier,
                    point=match.point,
                    pair=(match.later, tee.later),
                )
            )
        else:
            candidates.append(tee)
    return coincidences


def tally(lines: list[MarkLine], canvas: Canvas, eps: float = DEFAULT_EPS) -> TallySheet:
    """Aggregate the ten variables for the current set of lines.

    Hidden lines count toward the hidden totals only; their spans never
    enter the painted-length sums.
    """
    thl = tvl = 0.0
    nh = nv = hh = hv = 0
    for line in lines:
        if line.orientation is Orientation.HORIZONTAL:
            if line.hidden:
                hh += 1
            else:
                nh += 1
                thl += line.length
        else:
            if line.hidden:
                hv += 1
            else:
                nv += 1
                tvl += line.length
    tees = find_tees(lines, canvas, eps)
    rt = sum(1 for t in tees if t.regular)
    sc = len(find_strange_coincidences(tees, lines, eps))
    return TallySheet(
        sw=canvas.width,
        sh=canvas.height,
        thl=thl,
        tvl=tvl,
        nh=nh,
        nv=nv,
        hh=hh,
        hv=hv,
        rt=rt,
        sc=sc,
    )
