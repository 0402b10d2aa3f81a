"""Command-line interface: batch analysis, hypothesis tests, generation, serving.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import (
    Catalogue,
    PaintingRecord,
    aggregate,
    filter_range,
    load_record,
    trend_series,
    write_corpus_csv,
    write_trend_csv,
)
from .errors import SplitmarkError
from .generator import GenParams, generate, load_gen_config, render, to_marklines
from .geometry import Canvas, Orientation, tally as tally_lines
from .metrics import metrics_for
from .stats import descriptives, wilcoxon_one_sample

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for data errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _pct(value: float) -> str:
    return f"{100.0 * value:.1f}%"


def _load_records(paths: list[str]) -> list[PaintingRecord]:
    records = []
    failures = []
    for path in paths:
        try:
            records.append(load_record(path))
        except (OSError, SplitmarkError) as exc:
            failures.append(f"{path}: {exc}")
    if failures:
        for line in failures:
            print(line, file=sys.stderr)
        raise SystemExit(DATA_EXIT)
    return records


def _catalogue(args: argparse.Namespace) -> Catalogue:
    if getattr(args, "catalogue", None):
        return Catalogue.load(args.catalogue)
    return Catalogue.default()


def cmd_analyze(args: argparse.Namespace) -> int:
    records = _load_records(args.files)
    catalogue = _catalogue(args)
    rows = aggregate(records, catalogue)

    header = f"{'catalogue_id':<13}{'year':>5}  {'splittingness':>13}  {'complexity':>10}  {'special_effects':>15}"
    print(header)
    for row in rows:
        split = row["splittingness"]
        print(
            f"{row['catalogue_id']:<13}{row['year']:>5}  "
            f"{'n/a' if split is None else _pct(split):>13}  "
            f"{row['complexity']:>10.2f}  {row['special_effects']:>15}"
        )

    excluded = len(records) - len(rows)
    print()
    print(f"paintings: {len(rows)} included, {excluded} excluded")
    split_values = [r["splittingness"] for r in rows if r["splittingness"] is not None]
    if split_values:
        d = descriptives(split_values)
        print(
            f"splittingness: n={d.n}  mean {_pct(d.mean)} (sd {_pct(d.sd)})  "
            f"min {_pct(d.minimum)}  max {_pct(d.maximum)}  "
            f"at 0: {d.count_at_0} ({_pct(d.count_at_0 / d.n)})  "
            f"at 1: {d.count_at_1} ({_pct(d.count_at_1 / d.n)})"
        )
    else:
        print("splittingness: no defined values")
    if rows:
        c = descriptives([r["complexity"] for r in rows])
        print(
            f"complexity: n={c.n}  mean {c.mean:.2f} (sd {c.sd:.2f})  "
            f"min {c.minimum:.2f}  max {c.maximum:.2f}"
        )
        nonzero = sum(1 for r in rows if r["special_effects"] > 0)
        print(
            f"special effects: nonzero in {nonzero}/{len(rows)} "
            f"({_pct(nonzero / len(rows))})"
        )

    if args.csv:
        write_corpus_csv(rows, args.csv)
        print(f"wrote corpus table to {args.csv}")
    if args.trend_csv:
        included = [r for r in records if catalogue.is_included(r.catalogue_id)]
        write_trend_csv(trend_series(included), args.trend_csv)
        print(f"wrote trend series to {args.trend_csv}")
    return 0


def cmd_test(args: argparse.Namespace) -> int:
    records = _load_records(args.files)
    catalogue = _catalogue(args)
    scope = "all"
    if args.range:
        records = filter_range(records, args.range[0], args.range[1])
        scope = f"{args.range[0]}..{args.range[1]}"
    included = [r for r in records if catalogue.is_included(r.catalogue_id)]
    values = [
        r.metrics.splittingness
        for r in included
        if r.metrics.splittingness is not None
    ]
    if not values:
        print(f"no usable splittingness values in range {scope}", file=sys.stderr)
        return DATA_EXIT

    try:
        report = wilcoxon_one_sample(values, args.median, alpha=args.alpha)
    except SplitmarkError as exc:
        print(f"test degenerate: {exc}", file=sys.stderr)
        return DATA_EXIT

    print(f"one-sample wilcoxon signed-rank: median {args.median:g}, alpha {args.alpha:g}")
    print(f"range: {scope}  values: {len(values)}  effective n: {report.n_effective}")
    print(f"W+ = {report.statistic:g}  p = {report.p_value:.6g}  method = {report.method}")
    verdict = "reject" if report.reject else "cannot reject"
    print(f"decision: {verdict} median {args.median:g}")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        if args.config:
            params = load_gen_config(args.config)
        else:
            params = GenParams(
                seed=args.seed,
                canvas=Canvas(args.width, args.height),
                max_depth=args.depth,
                min_cell=args.min_cell,
                split_prob=args.split_prob,
                crossing_prob=args.crossing_prob,
                line_width=args.line_width,
                grid=args.grid,
            )
        tree = generate(params)
        svg = render(tree, params)
        out = Path(args.out)
        out.write_text(svg, encoding="utf-8", newline="\n")

        lines = to_marklines(tree)
        sheet = tally_lines(lines, params.canvas)
        m = metrics_for(sheet)
    except (SplitmarkError, ValueError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return DATA_EXIT

    n_h = sum(1 for ln in lines if ln.orientation is Orientation.HORIZONTAL)
    n_v = len(lines) - n_h
    print(f"wrote {out}")
    print(f"lines: {len(lines)} ({n_h} horizontal, {n_v} vertical, 0 hidden)")
    print(
        f"tally: rt={sheet.rt} sc={sheet.sc} thl={sheet.thl:g} tvl={sheet.tvl:g} "
        f"nh={sheet.nh} nv={sheet.nv}"
    )
    split = "n/a" if m.splittingness is None else _pct(m.splittingness)
    print(
        f"splittingness: {split}  complexity: {m.complexity:.2f}  "
        f"special effects: {m.special_effects}"
    )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(records_dir=args.records_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="splitmark", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_analyze = sub.add_parser("analyze", help="per-painting metrics and corpus descriptives")
    p_analyze.add_argument("files", nargs="+", help="painting record files")
    p_analyze.add_argument("--csv", help="also write the corpus table as CSV")
    p_analyze.add_argument("--trend-csv", help="also write the trend series as CSV")
    p_analyze.add_argument("--catalogue", help="exclusion config (default: built-in)")
    p_analyze.set_defaults(func=cmd_analyze)

    p_test = sub.add_parser("test", help="one-sample wilcoxon on splittingness")
    p_test.add_argument("files", nargs="+", help="painting record files")
    p_test.add_argument("--median", type=float, required=True, help="hypothesized median")
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument(
        "--range", nargs=2, metavar=("FROM", "TO"), help="catalogue-id subrange, inclusive"
    )
    p_test.add_argument("--catalogue", help="exclusion config (default: built-in)")
    p_test.set_defaults(func=cmd_test)

    p_gen = sub.add_parser("generate", help="recursive-split composition as SVG")
    p_gen.add_argument("--out", required=True, help="output SVG path")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--width", type=int, default=500)
    p_gen.add_argument("--height", type=int, default=400)
    p_gen.add_argument("--depth", type=int, default=4)
    p_gen.add_argument("--min-cell", type=float, default=40.0)
    p_gen.add_argument("--split-prob", type=float, default=1.0)
    p_gen.add_argument("--crossing-prob", type=float, default=0.0)
    p_gen.add_argument("--line-width", type=float, default=4.0)
    p_gen.add_argument("--grid", type=int, default=5)
    p_gen.add_argument("--config", help="plain-text GenParams config (overrides flags)")
    p_gen.set_defaults(func=cmd_generate)

    p_serve = sub.add_parser("serve", help="run the HTTP session API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--records-dir", default="records")
    p_serve.add_argument("--ui-dir", default=None, help="static frontend to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
