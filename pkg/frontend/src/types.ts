/** Wire types mirroring the query service's JSON schemas. */

export type Vec2 = [number, number];

export interface ScenePolygon {
  id: number;
  vertices: Vec2[];
}

export interface SceneFile {
  version: number;
  polygons: ScenePolygon[];
}

export interface Witness {
  path_point: Vec2;
  obstacle_point: Vec2;
  polygon_id: number;
}

export interface ClearanceReport {
  verdict: "HasClearance" | "Violated" | null;
  c: number | null;
  min_clearance: number | null;
  unbounded: boolean;
  intersection: boolean;
  witness: Witness | null;
  per_segment: { segment: number; clearance: number | null }[];
}

export interface QueryRequest {
  path: Vec2[];
  c: number;
}
