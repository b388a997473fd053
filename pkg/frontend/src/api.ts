/** Service client plus the debounced, token-guarded query scheduler.
 *
 * The scheduler keeps at most one query in flight. Edits arriving during the
 * debounce window or while a query is airborne coalesce into a single trailing
 * query, and a response is applied only if its token is still the latest issue,
 * so a stale verdict can never overwrite a newer one.
 */

import type { ClearanceReport, QueryRequest, SceneFile, Vec2 } from "./types.js";

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async getScene(): Promise<SceneFile> {
    const res = await fetch(`${this.baseUrl}/scene`);
    if (!res.ok) throw new ServiceError(`scene fetch failed (${res.status})`, res.status);
    return (await res.json()) as SceneFile;
  }

  async query(path: Vec2[], c: number): Promise<ClearanceReport> {
    const body: QueryRequest = { path, c };
    const res = await fetch(`${this.baseUrl}/query`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) {
      throw new ServiceError(`query failed (${res.status})`, res.status);
    }
    return (await res.json()) as ClearanceReport;
  }
}

export type QuerySender = (path: Vec2[], c: number) => Promise<ClearanceReport>;
export type ReportSink = (report: ClearanceReport, token: number) => void;
export type ErrorSink = (error: unknown) => void;

export class QueryScheduler {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private desired: { path: Vec2[]; c: number } | null = null;
  private inFlight = false;
  private issueSeq = 0;

  constructor(
    private readonly send: QuerySender,
    private readonly apply: ReportSink,
    private readonly onError: ErrorSink = () => undefined,
    readonly debounceMs: number = 100,
  ) {}

  /** Latest issued token; responses with an older token are stale. */
  get latestToken(): number {
    return this.issueSeq;
  }

  request(path: Vec2[], c: number): void {
    this.desired = { path: path.map((p) => [p[0], p[1]] as Vec2), c };
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire();
    }, this.debounceMs);
  }

  /** Issue the pending query unless one is already airborne. */
  private async fire(): Promise<void> {
    if (this.inFlight || this.desired === null) return;
    const { path, c } = this.desired;
    this.desired = null;
    const token = ++this.issueSeq;
    this.inFlight = true;
    try {
      const report = await this.send(path, c);
      if (token === this.issueSeq) {
        this.apply(report, token);
      }
    } catch (err) {
      if (token === this.issueSeq) this.onError(err);
    } finally {
      this.inFlight = false;
      if (this.desired !== null && this.timer === null) {
        void this.fire();
      }
    }
  }
}
