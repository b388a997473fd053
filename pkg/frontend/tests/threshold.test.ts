/** Verdict-threshold behavior on the two-square demo scene.
 *
 * The hermetic tests drive the UI logic against a fake service that mirrors
 * the backend's inclusive threshold rule, using response values frozen from
 * the real service. Set CLEARANCE_SERVICE_URL to also run the same sweep
 * against a live service.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import reportFixture from "./fixtures/demo-report-c0.5.json";
import { ApiClient, QueryScheduler } from "../src/api.js";
import { verdictColor, GREEN, RED } from "../src/color.js";
import { applyReport, initialState, type ViewState } from "../src/state.js";
import type { ClearanceReport, Vec2 } from "../src/types.js";

const DEMO_PATH: Vec2[] = [[0, 0], [5, 0], [5, 5]];
const frozen = reportFixture as ClearanceReport;
const DEMO_MIN = frozen.min_clearance!; // 1.0 for the two-square scene

function fakeService(path: Vec2[], c: number): Promise<ClearanceReport> {
  expect(path).toEqual(DEMO_PATH);
  return Promise.resolve({
    ...frozen,
    c,
    verdict: DEMO_MIN >= c ? "HasClearance" : "Violated",
  });
}

describe("verdict flips exactly at the reported min clearance", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  async function verdictAt(c: number): Promise<string> {
    let state: ViewState = initialState();
    const scheduler = new QueryScheduler(fakeService, (report, token) => {
      state = applyReport(state, report, token);
    });
    scheduler.request(DEMO_PATH, c);
    await vi.advanceTimersByTimeAsync(100);
    return state.report!.verdict!;
  }

  it("is green at and below the threshold (inclusive semantics)", async () => {
    expect(await verdictAt(0.5)).toBe("HasClearance");
    expect(await verdictAt(DEMO_MIN)).toBe("HasClearance");
  });

  it("flips red immediately above the threshold", async () => {
    const justAbove = DEMO_MIN * (1 + Number.EPSILON);
    expect(await verdictAt(justAbove)).toBe("Violated");
    expect(await verdictAt(2.0)).toBe("Violated");
  });

  it("sweeping c back and forth never shows a stale verdict", async () => {
    let state: ViewState = initialState();
    const scheduler = new QueryScheduler(fakeService, (report, token) => {
      state = applyReport(state, report, token);
    });
    const sweep = [0.2, 0.6, 1.4, 0.9, 1.1, DEMO_MIN, 3.0, 0.1];
    for (const c of sweep) {
      scheduler.request(DEMO_PATH, c);
      await vi.advanceTimersByTimeAsync(35);
    }
    await vi.advanceTimersByTimeAsync(200);
    // Only the trailing value of the rapid sweep is displayed.
    expect(state.report!.c).toBe(0.1);
    expect(state.report!.verdict).toBe("HasClearance");
  });

  it("maps verdicts to badge colors", () => {
    expect(verdictColor("HasClearance")).toBe(GREEN);
    expect(verdictColor("Violated")).toBe(RED);
  });
});

const liveUrl = process.env.CLEARANCE_SERVICE_URL;

describe.runIf(Boolean(liveUrl))("live service sweep", () => {
  it("agrees with the frozen threshold", async () => {
    const api = new ApiClient(liveUrl!);
    const at = await api.query(DEMO_PATH, DEMO_MIN);
    expect(at.verdict).toBe("HasClearance");
    expect(at.min_clearance).toBe(DEMO_MIN);
    const above = await api.query(DEMO_PATH, DEMO_MIN * (1 + Number.EPSILON));
    expect(above.verdict).toBe("Violated");
    const below = await api.query(DEMO_PATH, DEMO_MIN / 2);
    expect(below.verdict).toBe("HasClearance");
  });
});
