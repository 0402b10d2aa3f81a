// Wire types for the splitmark session API.

export type Orientation = "horizontal" | "vertical";

export type EventKind = "place_h" | "place_v" | "undo" | "arm_hidden";

export interface LineState {
  ordinal: number;
  orientation: Orientation;
  axis: number;
  lo: number;
  hi: number;
  hidden: boolean;
}

export interface Tally {
  sw: number;
  sh: number;
  thl: number;
  tvl: number;
  nh: number;
  nv: number;
  hh: number;
  hv: number;
  rt: number;
  sc: number;
}

export interface Metrics {
  splittingness: number | null;
  complexity: number;
  special_effects: number;
}

export interface SessionState {
  canvas: { width: number; height: number };
  grid: number;
  hidden_len: number;
  catalogue_id: string;
  year: number;
  image_ref: string | null;
  hidden_armed: boolean;
  event_index: number;
  lines: LineState[];
  tally: Tally;
  metrics: Metrics;
}

export interface RecordInfo {
  catalogue_id: string;
  year: number;
  tally: Tally;
  metrics: Metrics;
  path?: string;
}

export interface ApiError {
  code: string;
  message?: string;
  [key: string]: unknown;
}
