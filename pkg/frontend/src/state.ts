/** View state and its pure update operations.
 *
 * All clearance values come from the service; the only geometry done here is
 * hit-testing for vertex dragging and the viewport transform.
 */

import type { ClearanceReport, SceneFile, Vec2 } from "./types.js";

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface ViewState {
  scene: SceneFile | null;
  path: Vec2[];
  c: number;
  report: ClearanceReport | null;
  /** Token of the report currently displayed. */
  appliedToken: number;
  selected: number | null;
  viewport: Viewport;
  banner: string | null;
}

export function initialState(): ViewState {
  return {
    scene: null,
    path: [],
    c: 1.0,
    report: null,
    appliedToken: 0,
    selected: null,
    viewport: { scale: 1, offsetX: 0, offsetY: 0 },
    banner: null,
  };
}

export function sceneBounds(scene: SceneFile): [number, number, number, number] {
  let x0 = Infinity, y0 = Infinity, x1 = -Infinity, y1 = -Infinity;
  for (const poly of scene.polygons) {
    for (const [x, y] of poly.vertices) {
      x0 = Math.min(x0, x); y0 = Math.min(y0, y);
      x1 = Math.max(x1, x); y1 = Math.max(y1, y);
    }
  }
  if (!isFinite(x0)) return [0, 0, 10, 10];
  return [x0, y0, x1, y1];
}

/** Fit the scene into a canvas with a margin, preserving aspect ratio. */
export function fitViewport(
  scene: SceneFile, width: number, height: number, margin = 40,
): Viewport {
  const [x0, y0, x1, y1] = sceneBounds(scene);
  const spanX = Math.max(x1 - x0, 1e-9);
  const spanY = Math.max(y1 - y0, 1e-9);
  const scale = Math.min(
    (width - 2 * margin) / spanX,
    (height - 2 * margin) / spanY,
  );
  return {
    scale,
    offsetX: margin - x0 * scale + (width - 2 * margin - spanX * scale) / 2,
    offsetY: margin - y0 * scale + (height - 2 * margin - spanY * scale) / 2,
  };
}

export function toScreen(v: Viewport, p: Vec2): Vec2 {
  return [p[0] * v.scale + v.offsetX, p[1] * v.scale + v.offsetY];
}

export function toWorld(v: Viewport, p: Vec2): Vec2 {
  return [(p[0] - v.offsetX) / v.scale, (p[1] - v.offsetY) / v.scale];
}

export function loadScene(state: ViewState, scene: SceneFile, width: number, height: number): ViewState {
  return { ...state, scene, viewport: fitViewport(scene, width, height), banner: null };
}

export function addVertex(state: ViewState, p: Vec2): ViewState {
  const last = state.path[state.path.length - 1];
  if (last && last[0] === p[0] && last[1] === p[1]) return state;
  return { ...state, path: [...state.path, p] };
}

export function dragVertex(state: ViewState, index: number, p: Vec2): ViewState {
  if (index < 0 || index >= state.path.length) return state;
  const path = state.path.slice();
  path[index] = p;
  return { ...state, path };
}

export function deleteVertex(state: ViewState, index: number): ViewState {
  if (index < 0 || index >= state.path.length) return state;
  const path = state.path.slice();
  path.splice(index, 1);
  return { ...state, path, selected: null, report: path.length >= 2 ? state.report : null };
}

export function clearPath(state: ViewState): ViewState {
  return { ...state, path: [], report: null, selected: null };
}

export function setClearance(state: ViewState, c: number): ViewState {
  if (!(c > 0)) return state;
  return { ...state, c };
}

/** Apply a report only if it is newer than the one on display. */
export function applyReport(state: ViewState, report: ClearanceReport, token: number): ViewState {
  if (token <= state.appliedToken) return state;
  return { ...state, report, appliedToken: token, banner: null };
}

/** Query is meaningful only for a proper polyline. */
export function canQuery(state: ViewState): boolean {
  return state.path.length >= 2;
}

/** Index of the path vertex within pickRadius (screen px) of p, or null. */
export function hitTestVertex(state: ViewState, screen: Vec2, pickRadius = 8): number | null {
  for (let i = state.path.length - 1; i >= 0; i--) {
    const [sx, sy] = toScreen(state.viewport, state.path[i]);
    const dx = sx - screen[0];
    const dy = sy - screen[1];
    if (dx * dx + dy * dy <= pickRadius * pickRadius) return i;
  }
  return null;
}
