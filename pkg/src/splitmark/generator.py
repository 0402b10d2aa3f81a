"""Recursive binary splitting generator.

Builds compositions by recursively splitting a white rectangle, drawing a
solid black bar at each split and filling some leaf rectangles with gray
or primary colors.  Splits snap to the marking grid so that junctions in
the emitted line set are exact.  Optional crossing synthesis lets a child
reuse its sibling's split coordinate, which the analyzer should then
rediscover as a strange coincidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

from .errors import InfeasibleError, ParseError
from .geometry import Canvas, MarkLine, Orientation

DEFAULT_COLOR_WEIGHTS = {
    "white": 0.6,
    "gray": 0.1,
    "red": 0.1,
    "yellow": 0.1,
    "blue": 0.1,
}

COLOR_HEX = {
    "white": "#ffffff",
    "gray": "#c0c0c0",
    "red": "#d40000",
    "yellow": "#f2c500",
    "blue": "#2a52be",
}


class Color(str, Enum):
    WHITE = "white"
    GRAY = "gray"
    RED = "red"
    YELLOW = "yellow"
    BLUE = "blue"


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class Leaf:
    rect: Rect
    color: Color


@dataclass(frozen=True)
class Split:
    rect: Rect
    orientation: Orientation  # VERTICAL = split line is vertical (position on x)
    position: float
    first: "SplitNode"
    second: "SplitNode"


SplitNode = Union[Leaf, Split]


@dataclass(frozen=True)
class GenParams:
    seed: int
    canvas: Canvas
    max_depth: int = 4
    min_cell: float = 40.0
    split_prob: float | Sequence[float] = 1.0
    color_weights: dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_COLOR_WEIGHTS)
    )
    line_width: float = 4.0
    crossing_prob: float = 0.0
    grid: int = 5

    def __post_init__(self) -> None:
        probs = (
            list(self.split_prob)
            if isinstance(self.split_prob, (list, tuple))
            else [self.split_prob]
        )
        for p in probs + [self.crossing_prob]:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.min_cell < 2 * self.line_width:
            raise ValueError(
                f"min_cell {self.min_cell} must be >= twice line_width {self.line_width}"
            )
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.grid < 1:
            raise ValueError("grid must be >= 1")
        unknown = set(self.color_weights) - {c.value for c in Color}
        if unknown:
            raise ValueError(f"unknown colors: {sorted(unknown)}")

    def split_prob_at(self, depth: int) -> float:
        if isinstance(self.split_prob, (list, tuple)):
            if not self.split_prob:
                return 0.0
            return float(self.split_prob[min(depth, len(self.split_prob) - 1)])
        return float(self.split_prob)


def _grid_positions(lo: float, hi: float, min_cell: float, grid: int) -> list[float]:
    """Grid multiples p with lo + min_cell <= p <= hi - min_cell."""
    start = lo + min_cell
    stop = hi - min_cell
    first = int(-(-start // grid))  # ceil(start / grid)
    last = int(stop // grid)
    return [float(k * grid) for k in range(first, last + 1)]


def generate(params: GenParams) -> SplitNode:
    """Deterministic composition tree for the given parameters and seed.

    Random split coordinates are kept globally distinct per orientation:
    two independently chosen splits sharing an axis would read back as a
    crossing, and accidental crossings would break the pure-splitting
    round trip.  Only crossing synthesis may reuse a coordinate.
    """
    canvas = params.canvas
    if params.min_cell > min(canvas.width, canvas.height):
        raise InfeasibleError(
            f"min_cell {params.min_cell} exceeds canvas {canvas.width}x{canvas.height}"
        )
    rng = random.Random(params.seed)
    colors = [c for c in Color if params.color_weights.get(c.value, 0.0) > 0.0]
    weights = [params.color_weights[c.value] for c in colors]
    if not colors:
        colors, weights = [Color.WHITE], [1.0]
    used: dict[Orientation, set[float]] = {
        Orientation.HORIZONTAL: set(),
        Orientation.VERTICAL: set(),
    }

    def leaf(rect: Rect) -> Leaf:
        return Leaf(rect, rng.choices(colors, weights)[0])

    def recurse(
        rect: Rect, depth: int, sibling: tuple[Orientation, float] | None
    ) -> SplitNode:
        if depth >= params.max_depth:
            return leaf(rect)
        choices: dict[Orientation, list[float]] = {}
        for orientation, lo, hi in (
            (Orientation.VERTICAL, rect.x0, rect.x1),
            (Orientation.HORIZONTAL, rect.y0, rect.y1),
        ):
            positions = [
                p
                for p in _grid_positions(lo, hi, params.min_cell, params.grid)
                if p not in used[orientation]
            ]
            if positions:
                choices[orientation] = positions
        if not choices or rng.random() >= params.split_prob_at(depth):
            return leaf(rect)

        orientation = position = None
        if sibling is not None and rng.random() < params.crossing_prob:
            sib_orientation, sib_position = sibling
            lo, hi = (
                (rect.x0, rect.x1)
                if sib_orientation is Orientation.VERTICAL
                else (rect.y0, rect.y1)
            )
            if sib_position in _grid_positions(lo, hi, params.min_cell, params.grid):
                orientation, position = sib_orientation, sib_position
        if orientation is None:
            orientation = sorted(choices)[rng.randrange(len(choices))]
            positions = choices[orientation]
            position = positions[rng.randrange(len(positions))]
        used[orientation].add(position)

        if orientation is Orientation.VERTICAL:
            rect_a = Rect(rect.x0, rect.y0, position, rect.y1)
            rect_b = Rect(position, rect.y0, rect.x1, rect.y1)
        else:
            rect_a = Rect(rect.x0, rect.y0, rect.x1, position)
            rect_b = Rect(rect.x0, position, rect.x1, rect.y1)
        first = recurse(rect_a, depth + 1, None)
        hint = (
            (first.orientation, first.position) if isinstance(first, Split) else None
        )
        second = recurse(rect_b, depth + 1, hint)
        return Split(rect, orientation, position, first, second)

    root_rect = Rect(0.0, 0.0, float(canvas.width), float(canvas.height))
    return recurse(root_rect, 0, None)


def leaves(tree: SplitNode) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return leaves(tree.first) + leaves(tree.second)


def splits(tree: SplitNode) -> list[Split]:
    if isinstance(tree, Leaf):
        return []
    return [tree] + splits(tree.first) + splits(tree.second)


def to_marklines(tree: SplitNode) -> list[MarkLine]:
    """Pre-order emission: one full-rect line per split, never hidden.

    Aligned sibling splits come out as separate collinear lines; finding
    the coincidence again is the analyzer's job.
    """
    lines: list[MarkLine] = []

    def walk(node: SplitNode) -> None:
        if isinstance(node, Leaf):
            return
        if node.orientation is Orientation.VERTICAL:
            lo, hi = node.rect.y0, node.rect.y1
            seed = (node.position, (lo + hi) / 2.0)
        else:
            lo, hi = node.rect.x0, node.rect.x1
            seed = ((lo + hi) / 2.0, node.position)
        lines.append(
            MarkLine(
                ordinal=len(lines),
                orientation=node.orientation,
                axis=node.position,
                lo=lo,
                hi=hi,
                hidden=False,
                seed=seed,
            )
        )
        walk(node.first)
        walk(node.second)

    walk(tree)
    return lines


def render(tree: SplitNode, params: GenParams) -> str:
    """SVG document: leaf fills first, then black split bars on top.

    Output bytes are a pure function of (tree, params).
    """
    canvas = params.canvas
    lw = params.line_width
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width}" '
        f'height="{canvas.height}" viewBox="0 0 {canvas.width} {canvas.height}">',
    ]
    for lf in leaves(tree):
        r = lf.rect
        parts.append(
            f'<rect x="{r.x0:g}" y="{r.y0:g}" width="{r.width:g}" '
            f'height="{r.height:g}" fill="{COLOR_HEX[lf.color.value]}"/>'
        )
    for sp in splits(tree):
        r = sp.rect
        if sp.orientation is Orientation.VERTICAL:
            x = max(0.0, sp.position - lw / 2.0)
            w = min(float(canvas.width), sp.position + lw / 2.0) - x
            parts.append(
                f'<rect x="{x:g}" y="{r.y0:g}" width="{w:g}" '
                f'height="{r.height:g}" fill="#000000"/>'
            )
        else:
            y = max(0.0, sp.position - lw / 2.0)
            h = min(float(canvas.height), sp.position + lw / 2.0) - y
            parts.append(
                f'<rect x="{r.x0:g}" y="{y:g}" width="{r.width:g}" '
                f'height="{h:g}" fill="#000000"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


_GEN_INT_FIELDS = {"seed", "width", "height", "max_depth", "grid"}
_GEN_FLOAT_FIELDS = {"min_cell", "line_width", "crossing_prob"}


def parse_gen_config(text: str, source: str = "<config>") -> GenParams:
    """Plain-text config mirroring GenParams field names.

    Lines are ``key: value``; canvas is given as width/height; split_prob
    accepts either one probability or a per-depth space-separated list;
    color_weights is ``name=weight`` pairs.
    """
    raw: dict[str, object] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", source, line_no)
        key, value = key.strip(), value.strip()
        try:
            if key in _GEN_INT_FIELDS:
                raw[key] = int(value)
            elif key in _GEN_FLOAT_FIELDS:
                raw[key] = float(value)
            elif key == "split_prob":
                probs = [float(p) for p in value.split()]
                raw[key] = probs[0] if len(probs) == 1 else probs
            elif key == "color_weights":
                weights = {}
                for pair in value.split():
                    name, _, weight = pair.partition("=")
                    weights[name] = float(weight)
                raw[key] = weights
            else:
                raise ParseError(f"unknown field {key!r}", source, line_no)
        except ValueError:
            raise ParseError(f"invalid value for {key!r}: {value!r}", source, line_no) from None

    for needed in ("seed", "width", "height"):
        if needed not in raw:
            raise ParseError(f"missing field {needed!r}", source)
    try:
        canvas = Canvas(raw.pop("width"), raw.pop("height"))
        return GenParams(canvas=canvas, **raw)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), source) from None


def load_gen_config(path: Path | str) -> GenParams:
    return parse_gen_config(Path(path).read_text(encoding="utf-8"), source=str(path))
