// Interaction controller: maps UI gestures to session events.
//
// The UI holds no geometry of its own; every action round-trips through
// the API and the last server state is the single source of truth.
// Mutating requests are strictly serialized: one in flight, later inputs
// queued client-side.

import { ApiClient, ApiRequestError } from "./api.js";
import type { CreateSessionOptions } from "./api.js";
import type { RecordInfo, SessionState } from "./types.js";

export type StateListener = (state: SessionState) => void;
export type ErrorListener = (code: string, message: string) => void;
export type SaveListener = (record: RecordInfo) => void;

export class MarkingController {
  private readonly api: ApiClient;
  private sessionId: string | null = null;
  private lastState: SessionState | null = null;
  private chain: Promise<void> = Promise.resolve();

  onState: StateListener = () => {};
  onError: ErrorListener = () => {};
  onSaved: SaveListener = () => {};

  constructor(api: ApiClient) {
    this.api = api;
  }

  get state(): SessionState | null {
    return this.lastState;
  }

  get id(): string | null {
    return this.sessionId;
  }

  async createSession(options: CreateSessionOptions): Promise<SessionState> {
    const { session_id, state } = await this.api.createSession(options);
    this.sessionId = session_id;
    this.accept(state);
    return state;
  }

  async attach(sessionId: string): Promise<SessionState> {
    const state = await this.api.getState(sessionId);
    this.sessionId = sessionId;
    this.accept(state);
    return state;
  }

  /** Refetch state; a page reload plus refresh() reproduces the overlay. */
  async refresh(): Promise<SessionState> {
    if (!this.sessionId) throw new Error("no session");
    const state = await this.api.getState(this.sessionId);
    this.accept(state);
    return state;
  }

  // Gesture bindings: left-click horizontal, right-click vertical,
  // Backspace undo, '-' hidden mode, 's' save.

  leftClick(x: number, y: number): Promise<void> {
    return this.enqueue(async () => {
      this.accept(await this.sendEvent("place_h", { x, y }));
    });
  }

  rightClick(x: number, y: number): Promise<void> {
    return this.enqueue(async () => {
      this.accept(await this.sendEvent("place_v", { x, y }));
    });
  }

  backspace(): Promise<void> {
    return this.enqueue(async () => {
      this.accept(await this.sendEvent("undo"));
    });
  }

  armHidden(): Promise<void> {
    return this.enqueue(async () => {
      this.accept(await this.sendEvent("arm_hidden"));
    });
  }

  save(): Promise<void> {
    return this.enqueue(async () => {
      if (!this.sessionId) throw new Error("no session");
      const { record, state } = await this.api.save(this.sessionId);
      this.accept(state);
      this.onSaved(record);
    });
  }

  private sendEvent(
    kind: "place_h" | "place_v" | "undo" | "arm_hidden",
    seed?: { x: number; y: number },
  ): Promise<SessionState> {
    if (!this.sessionId) throw new Error("no session");
    return this.api.sendEvent(
      this.sessionId,
      kind,
      seed,
      this.lastState?.event_index,
    );
  }

  private accept(state: SessionState): void {
    this.lastState = state;
    this.onState(state);
  }

  private enqueue(op: () => Promise<void>): Promise<void> {
    const run = this.chain.then(op).catch((err: unknown) => {
      if (err instanceof ApiRequestError) {
        this.onError(err.code, err.message);
      } else {
        this.onError("NetworkError", String(err));
      }
    });
    this.chain = run;
    return run;
  }
}
