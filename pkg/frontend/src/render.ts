/** Canvas drawing of the scene, the editable path, and the last report. */

import { segmentColor } from "./color.js";
import { toScreen, type ViewState } from "./state.js";
import type { Vec2 } from "./types.js";

export function render(ctx: CanvasRenderingContext2D, state: ViewState): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#fafafa";
  ctx.fillRect(0, 0, width, height);

  if (!state.scene) return;
  drawObstacles(ctx, state);
  drawWitness(ctx, state);
  drawPath(ctx, state);
}

function drawObstacles(ctx: CanvasRenderingContext2D, state: ViewState): void {
  for (const poly of state.scene!.polygons) {
    ctx.beginPath();
    poly.vertices.forEach((p, i) => {
      const [x, y] = toScreen(state.viewport, p);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.closePath();
    ctx.fillStyle = "rgba(70, 90, 140, 0.25)";
    ctx.strokeStyle = "#465a8c";
    ctx.lineWidth = 1.5;
    ctx.fill();
    ctx.stroke();
    const [cx, cy] = toScreen(state.viewport, centroid(poly.vertices));
    ctx.fillStyle = "#344";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(String(poly.id), cx, cy);
  }
}

function centroid(vertices: Vec2[]): Vec2 {
  let sx = 0, sy = 0;
  for (const [x, y] of vertices) {
    sx += x;
    sy += y;
  }
  return [sx / vertices.length, sy / vertices.length];
}

function drawPath(ctx: CanvasRenderingContext2D, state: ViewState): void {
  const clearances = new Map<number, number | null>();
  if (state.report) {
    for (const entry of state.report.per_segment) clearances.set(entry.segment, entry.clearance);
  }
  for (let i = 0; i + 1 < state.path.length; i++) {
    const [x0, y0] = toScreen(state.viewport, state.path[i]);
    const [x1, y1] = toScreen(state.viewport, state.path[i + 1]);
    ctx.beginPath();
    ctx.moveTo(x0, y0);
    ctx.lineTo(x1, y1);
    ctx.strokeStyle = clearances.has(i)
      ? segmentColor(clearances.get(i)!, state.c)
      : "#666";
    ctx.lineWidth = 3;
    ctx.stroke();
  }
  state.path.forEach((p, i) => {
    const [x, y] = toScreen(state.viewport, p);
    ctx.beginPath();
    ctx.arc(x, y, i === state.selected ? 7 : 5, 0, 2 * Math.PI);
    ctx.fillStyle = i === state.selected ? "#c50" : "#333";
    ctx.fill();
  });
}

function drawWitness(ctx: CanvasRenderingContext2D, state: ViewState): void {
  const w = state.report?.witness;
  if (!w) return;
  const [x0, y0] = toScreen(state.viewport, w.path_point);
  const [x1, y1] = toScreen(state.viewport, w.obstacle_point);
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x1, y1);
  ctx.setLineDash([6, 4]);
  ctx.strokeStyle = "#c0c";
  ctx.lineWidth = 2;
  ctx.stroke();
  ctx.setLineDash([]);
  for (const [x, y] of [[x0, y0], [x1, y1]] as Vec2[]) {
    ctx.beginPath();
    ctx.arc(x, y, 4, 0, 2 * Math.PI);
    ctx.fillStyle = "#c0c";
    ctx.fill();
  }
}
