/** DOM wiring for the explorer: pointer-based path editing, live clearance
 * slider, verdict badge, and witness overlay. All clearance math happens on
 * the service side. */

import { ApiClient, QueryScheduler } from "./api.js";
import { verdictColor } from "./color.js";
import { render } from "./render.js";
import {
  addVertex,
  applyReport,
  canQuery,
  clearPath,
  deleteVertex,
  dragVertex,
  hitTestVertex,
  initialState,
  loadScene,
  setClearance,
  toWorld,
  type ViewState,
} from "./state.js";
import type { Vec2 } from "./types.js";

const canvas = document.getElementById("map") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const badge = document.getElementById("badge")!;
const readout = document.getElementById("readout")!;
const slider = document.getElementById("c-slider") as HTMLInputElement;
const cEntry = document.getElementById("c-entry") as HTMLInputElement;
const banner = document.getElementById("banner")!;
const retryBtn = document.getElementById("retry") as HTMLButtonElement;
const clearBtn = document.getElementById("clear") as HTMLButtonElement;
const hint = document.getElementById("hint")!;

let state: ViewState = initialState();
const api = new ApiClient("");
const scheduler = new QueryScheduler(
  (path, c) => api.query(path, c),
  (report, token) => {
    state = applyReport(state, report, token);
    refresh();
  },
  () => showBanner("query failed; service unreachable?"),
);

function refresh(): void {
  render(ctx, state);
  const report = state.report;
  if (!canQuery(state)) {
    badge.textContent = "draw a path";
    badge.style.background = "#888";
    readout.textContent = "";
    hint.textContent = state.scene && state.scene.polygons.length === 0
      ? "empty scene: click to start drawing anyway"
      : "click to add path vertices; drag to move; double-click to delete";
    return;
  }
  hint.textContent = "";
  if (report && report.verdict) {
    badge.textContent = report.verdict === "HasClearance" ? "HAS CLEARANCE" : "VIOLATED";
    badge.style.background = verdictColor(report.verdict);
    readout.textContent = report.unbounded
      ? "min clearance: unbounded (no obstacles)"
      : `min clearance: ${report.min_clearance?.toFixed(4)}${report.intersection ? " (intersects!)" : ""}`;
  } else {
    badge.textContent = "querying…";
    badge.style.background = "#888";
  }
}

function requery(): void {
  if (canQuery(state)) {
    scheduler.request(state.path, state.c);
  }
  refresh();
}

function showBanner(text: string): void {
  state = { ...state, banner: text };
  banner.textContent = text;
  banner.style.display = "block";
  retryBtn.style.display = "inline-block";
}

function hideBanner(): void {
  banner.style.display = "none";
  retryBtn.style.display = "none";
}

async function boot(): Promise<void> {
  hideBanner();
  try {
    const scene = await api.getScene();
    state = loadScene(state, scene, canvas.width, canvas.height);
    refresh();
  } catch {
    showBanner("could not load scene from the service");
  }
}

let dragging: number | null = null;
let dragMoved = false;

canvas.addEventListener("pointerdown", (ev) => {
  const screen: Vec2 = [ev.offsetX, ev.offsetY];
  const hit = hitTestVertex(state, screen);
  if (hit !== null) {
    dragging = hit;
    dragMoved = false;
    state = { ...state, selected: hit };
    canvas.setPointerCapture(ev.pointerId);
    refresh();
  }
});

canvas.addEventListener("pointermove", (ev) => {
  if (dragging === null) return;
  dragMoved = true;
  state = dragVertex(state, dragging, toWorld(state.viewport, [ev.offsetX, ev.offsetY]));
  requery();
});

canvas.addEventListener("pointerup", (ev) => {
  const screen: Vec2 = [ev.offsetX, ev.offsetY];
  if (dragging !== null) {
    canvas.releasePointerCapture(ev.pointerId);
    if (!dragMoved) {
      state = { ...state, selected: dragging };
      refresh();
    }
    dragging = null;
    return;
  }
  state = addVertex(state, toWorld(state.viewport, screen));
  requery();
});

canvas.addEventListener("dblclick", (ev) => {
  const hit = hitTestVertex(state, [ev.offsetX, ev.offsetY]);
  if (hit !== null) {
    state = deleteVertex(state, hit);
    requery();
  }
});

function onClearanceInput(raw: string): void {
  const c = Number(raw);
  if (!(c > 0)) return; // rejected client-side
  state = setClearance(state, c);
  slider.value = String(c);
  cEntry.value = String(c);
  requery();
}

slider.addEventListener("input", () => onClearanceInput(slider.value));
cEntry.addEventListener("change", () => onClearanceInput(cEntry.value));
clearBtn.addEventListener("click", () => {
  state = clearPath(state);
  refresh();
});
retryBtn.addEventListener("click", () => void boot());

slider.value = String(state.c);
cEntry.value = String(state.c);
void boot();
refresh();
