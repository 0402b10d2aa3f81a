// Pure overlay computation: session state -> drawable segments.
//
// Marking lines are green (the palette color the paintings never use);
// hidden lines render thinner. Coordinates stay in image pixel space and
// are scaled for the viewport only at draw time.

import type { SessionState } from "./types.js";

export const MARK_COLOR = "#00a020";
export const NORMAL_WIDTH = 3;
export const HIDDEN_WIDTH = 1;

export interface SegmentOp {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  color: string;
  hidden: boolean;
}

export function renderOverlay(state: SessionState, scale = 1): SegmentOp[] {
  return state.lines.map((line) => {
    const [x1, y1, x2, y2] =
      line.orientation === "horizontal"
        ? [line.lo, line.axis, line.hi, line.axis]
        : [line.axis, line.lo, line.axis, line.hi];
    return {
      x1: x1 * scale,
      y1: y1 * scale,
      x2: x2 * scale,
      y2: y2 * scale,
      width: line.hidden ? HIDDEN_WIDTH : NORMAL_WIDTH,
      color: MARK_COLOR,
      hidden: line.hidden,
    };
  });
}

export function gridOps(
  state: SessionState,
  scale = 1,
): { step: number; width: number; height: number } {
  return {
    step: state.grid * scale,
    width: state.canvas.width * scale,
    height: state.canvas.height * scale,
  };
}

const PERCENT = (value: number) => `${(100 * value).toFixed(1)}%`;

/** Tally panel rows; splittingness shows an em dash while undefined. */
export function panelRows(state: SessionState): [string, string][] {
  const t = state.tally;
  const m = state.metrics;
  return [
    ["RT", String(t.rt)],
    ["SC", String(t.sc)],
    ["THL", String(t.thl)],
    ["TVL", String(t.tvl)],
    ["NH", String(t.nh)],
    ["NV", String(t.nv)],
    ["HH", String(t.hh)],
    ["HV", String(t.hv)],
    ["splittingness", m.splittingness === null ? "—" : PERCENT(m.splittingness)],
    ["complexity", m.complexity.toFixed(2)],
    ["special effects", String(m.special_effects)],
  ];
}
