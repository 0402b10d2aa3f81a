// DOM wiring for the marking UI.
//
// Bindings mirror the original tool: left click = horizontal mark, right
// click = vertical mark, Backspace = undo, '-' = next line hidden,
// 's' = save. A toolbar toggle covers devices without right-click.

import { ApiClient } from "./api.js";
import { MarkingController } from "./controller.js";
import { gridOps, panelRows, renderOverlay } from "./overlay.js";
import type { SessionState } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const api = new ApiClient("");
const controller = new MarkingController(api);

const canvas = $<HTMLCanvasElement>("marking-canvas");
const ctx = canvas.getContext("2d")!;
const panel = $<HTMLTableElement>("tally-panel");
const status = $<HTMLElement>("status-line");
const armedBadge = $<HTMLElement>("hidden-armed");
const gridBadge = $<HTMLElement>("grid-indicator");
const verticalToggle = $<HTMLInputElement>("vertical-mode");
const showGrid = $<HTMLInputElement>("show-grid");

let background: HTMLImageElement | null = null;

function setStatus(text: string, isError = false): void {
  status.textContent = text;
  status.className = isError ? "error" : "";
}

function draw(state: SessionState): void {
  canvas.width = state.canvas.width;
  canvas.height = state.canvas.height;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (background) {
    ctx.drawImage(background, 0, 0, canvas.width, canvas.height);
  } else {
    ctx.fillStyle = "#f5f2ea";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
  }
  if (showGrid.checked) {
    const grid = gridOps(state);
    ctx.strokeStyle = "rgba(0,0,0,0.12)";
    ctx.lineWidth = 1;
    for (let x = 0; x <= grid.width; x += grid.step) {
      ctx.beginPath();
      ctx.moveTo(x, 0);
      ctx.lineTo(x, grid.height);
      ctx.stroke();
    }
    for (let y = 0; y <= grid.height; y += grid.step) {
      ctx.beginPath();
      ctx.moveTo(0, y);
      ctx.lineTo(grid.width, y);
      ctx.stroke();
    }
  }
  for (const op of renderOverlay(state)) {
    ctx.strokeStyle = op.color;
    ctx.lineWidth = op.width;
    ctx.beginPath();
    ctx.moveTo(op.x1, op.y1);
    ctx.lineTo(op.x2, op.y2);
    ctx.stroke();
  }
}

function renderPanel(state: SessionState): void {
  panel.innerHTML = "";
  for (const [label, value] of panelRows(state)) {
    const row = panel.insertRow();
    row.insertCell().textContent = label;
    row.insertCell().textContent = value;
  }
  armedBadge.hidden = !state.hidden_armed;
  gridBadge.textContent = `grid ${state.grid}px`;
}

controller.onState = (state) => {
  draw(state);
  renderPanel(state);
  setStatus(`events: ${state.event_index}`);
};

controller.onError = (code, message) => {
  setStatus(`${code}: ${message}`, true);
};

controller.onSaved = (record) => {
  setStatus(`saved ${record.catalogue_id}${record.path ? ` → ${record.path}` : ""}`);
};

// Click coordinates in image pixel space, independent of viewport zoom.
function imageCoords(ev: MouseEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return {
    x: ((ev.clientX - rect.left) / rect.width) * canvas.width,
    y: ((ev.clientY - rect.top) / rect.height) * canvas.height,
  };
}

canvas.addEventListener("click", (ev) => {
  if (!controller.state) return;
  const { x, y } = imageCoords(ev);
  if (verticalToggle.checked) {
    void controller.rightClick(x, y);
  } else {
    void controller.leftClick(x, y);
  }
});

canvas.addEventListener("contextmenu", (ev) => {
  ev.preventDefault();
  if (!controller.state) return;
  const { x, y } = imageCoords(ev);
  void controller.rightClick(x, y);
});

window.addEventListener("keydown", (ev) => {
  if (!controller.state) return;
  if (ev.target instanceof HTMLInputElement) return;
  if (ev.key === "Backspace") {
    ev.preventDefault();
    void controller.backspace();
  } else if (ev.key === "-") {
    void controller.armHidden();
  } else if (ev.key.toLowerCase() === "s") {
    void controller.save();
  }
});

$<HTMLButtonElement>("undo-button").addEventListener("click", () => {
  void controller.backspace();
});
$<HTMLButtonElement>("hidden-button").addEventListener("click", () => {
  void controller.armHidden();
});
$<HTMLButtonElement>("save-button").addEventListener("click", () => {
  void controller.save();
});

$<HTMLFormElement>("session-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const imageUrl = $<HTMLInputElement>("image-url").value.trim();
  const start = (width: number, height: number) =>
    controller
      .createSession({
        width,
        height,
        grid: Number($<HTMLInputElement>("grid-step").value) || 5,
        catalogue_id: $<HTMLInputElement>("catalogue-id").value.trim(),
        year: Number($<HTMLInputElement>("year").value) || 0,
        image_ref: imageUrl || null,
      })
      .catch((err) => setStatus(String(err), true));

  if (imageUrl) {
    const img = new Image();
    img.onload = () => {
      background = img;
      void start(img.naturalWidth, img.naturalHeight);
    };
    img.onerror = () => setStatus(`cannot load ${imageUrl}`, true);
    img.src = imageUrl;
  } else {
    background = null;
    void start(
      Number($<HTMLInputElement>("canvas-width").value) || 500,
      Number($<HTMLInputElement>("canvas-height").value) || 400,
    );
  }
});
