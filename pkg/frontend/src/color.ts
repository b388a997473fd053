/** Per-segment coloring: red below c, amber below 2c, green with margin. */

export const RED = "#d33";
export const AMBER = "#d90";
export const GREEN = "#2a4";
export const UNKNOWN = "#888";

export function segmentColor(clearance: number | null, c: number): string {
  if (clearance === null) return GREEN; // unbounded: empty scene
  if (clearance < c) return RED;
  if (clearance < 2 * c) return AMBER;
  return GREEN;
}

export function verdictColor(verdict: "HasClearance" | "Violated" | null): string {
  if (verdict === "HasClearance") return GREEN;
  if (verdict === "Violated") return RED;
  return UNKNOWN;
}
