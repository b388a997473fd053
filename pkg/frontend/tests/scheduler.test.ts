import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { QueryScheduler } from "../src/api.js";
import type { ClearanceReport, Vec2 } from "../src/types.js";

function reportFor(c: number, min = 1.0): ClearanceReport {
  return {
    verdict: min >= c ? "HasClearance" : "Violated",
    c,
    min_clearance: min,
    unbounded: false,
    intersection: false,
    witness: null,
    per_segment: [{ segment: 0, clearance: min }],
  };
}

const PATH: Vec2[] = [[0, 0], [5, 0]];

describe("QueryScheduler", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("debounces rapid edits into one in-flight query", async () => {
    const sent: number[] = [];
    const scheduler = new QueryScheduler(
      async (_path, c) => {
        sent.push(c);
        return reportFor(c);
      },
      () => undefined,
    );
    for (let i = 1; i <= 20; i++) {
      scheduler.request(PATH, i / 10);
      vi.advanceTimersByTime(30); // always within the 100 ms window
    }
    expect(sent).toHaveLength(0); // still coalescing
    await vi.advanceTimersByTimeAsync(100);
    expect(sent).toEqual([2.0]); // only the trailing value was sent
  });

  it("applies only responses matching the latest issued token", async () => {
    const resolvers: ((r: ClearanceReport) => void)[] = [];
    const applied: number[] = [];
    const scheduler = new QueryScheduler(
      (_path, c) =>
        new Promise<ClearanceReport>((resolve) => {
          resolvers.push((r) => resolve({ ...r, c }));
        }),
      (report) => applied.push(report.c!),
    );

    scheduler.request(PATH, 1.0);
    await vi.advanceTimersByTimeAsync(100); // first query airborne
    scheduler.request(PATH, 2.0); // newer edit while in flight
    await vi.advanceTimersByTimeAsync(100);

    // Old response lands after the newer request was scheduled but before
    // it is issued: it is still the latest issue, so it applies; then the
    // queued query fires and its response supersedes.
    resolvers[0](reportFor(1.0));
    await vi.advanceTimersByTimeAsync(0);
    expect(resolvers).toHaveLength(2);
    resolvers[1](reportFor(2.0));
    await vi.advanceTimersByTimeAsync(0);
    expect(applied).toEqual([1.0, 2.0]);
    expect(scheduler.latestToken).toBe(2);
  });

  it("never applies a stale response over a newer one", async () => {
    const resolvers: ((r: ClearanceReport) => void)[] = [];
    const applied: number[] = [];
    const scheduler = new QueryScheduler(
      (_path, c) =>
        new Promise<ClearanceReport>((resolve) => {
          resolvers.push(() => resolve(reportFor(c)));
        }),
      (report) => applied.push(report.c!),
      () => undefined,
      0,
    );
    scheduler.request(PATH, 1.0);
    await vi.advanceTimersByTimeAsync(0); // query 1 airborne
    scheduler.request(PATH, 2.0);
    await vi.advanceTimersByTimeAsync(0); // queued behind query 1
    // Query 1 resolves; its completion immediately issues query 2, making
    // token 1 stale by the time anything else could look at it.
    resolvers[0](reportFor(1.0));
    await vi.advanceTimersByTimeAsync(0);
    resolvers[1](reportFor(2.0));
    await vi.advanceTimersByTimeAsync(0);
    // The display sequence is monotone: never 2.0 then 1.0.
    expect(applied[applied.length - 1]).toBe(2.0);
    const idx1 = applied.indexOf(1.0);
    const idx2 = applied.indexOf(2.0);
    if (idx1 !== -1) expect(idx1).toBeLessThan(idx2);
  });

  it("reports errors only for the latest issue", async () => {
    let failures = 0;
    const scheduler = new QueryScheduler(
      async () => {
        throw new Error("boom");
      },
      () => undefined,
      () => failures++,
    );
    scheduler.request(PATH, 1.0);
    await vi.advanceTimersByTimeAsync(100);
    expect(failures).toBe(1);
  });
});
