/** Thin typed client for the session service; every wizard action maps to
 * exactly one documented call here, and all inference stays server-side. */

import type {
  Choice,
  Correction,
  DecorationsPayload,
  ExportPayload,
  PlanPayload,
  SessionState,
  StepResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public body: string) {
    super(`HTTP ${status}: ${body}`);
  }
}

async function expectOk(res: Response): Promise<Response> {
  if (!res.ok) {
    throw new ApiError(res.status, await res.text());
  }
  return res;
}

export class SessionApi {
  constructor(public baseUrl: string, public sessionId: string | null = null) {}

  private url(path: string): string {
    return `${this.baseUrl}/sessions/${this.sessionId}${path}`;
  }

  async createSession(svgText: string): Promise<DecorationsPayload & { id: string }> {
    const res = await expectOk(await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "image/svg+xml" },
      body: svgText,
    }));
    const payload = await res.json();
    this.sessionId = payload.id;
    return payload;
  }

  async sessionState(): Promise<SessionState> {
    const res = await expectOk(await fetch(this.url("")));
    return (await res.json()).state;
  }

  async decorations(): Promise<DecorationsPayload> {
    const res = await expectOk(await fetch(this.url("/decorations")));
    return res.json();
  }

  async correct(corrections: Correction[]): Promise<DecorationsPayload> {
    const res = await expectOk(await fetch(this.url("/decorations"), {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(corrections),
    }));
    return res.json();
  }

  async deconstruct(): Promise<unknown> {
    const res = await expectOk(await fetch(this.url("/deconstruct"), { method: "POST" }));
    return res.json();
  }

  async sampleDataCsv(): Promise<string> {
    const res = await expectOk(await fetch(this.url("/sample-data")));
    return res.text();
  }

  async uploadDataset(csvText: string): Promise<{ compatibility: unknown; plan: unknown }> {
    const res = await expectOk(await fetch(this.url("/dataset"), {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csvText,
    }));
    return res.json();
  }

  async plan(): Promise<PlanPayload> {
    const res = await expectOk(await fetch(this.url("/plan")));
    return res.json();
  }

  async applyStep(index: number, choice: Choice): Promise<StepResult> {
    const res = await expectOk(await fetch(this.url(`/steps/${index}`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(choice),
    }));
    return res.json();
  }

  async back(): Promise<StepResult> {
    const res = await expectOk(await fetch(this.url("/back"), { method: "POST" }));
    return res.json();
  }

  async exportChart(): Promise<ExportPayload> {
    const res = await expectOk(await fetch(this.url("/export")));
    return res.json();
  }
}
