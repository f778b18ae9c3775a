/** Fetch client for the session service; one in-flight request per session. */

import type { ApiError, MatrixJson, SessionState, SpeciesJson } from "./types.js";

export class ServerError extends Error {
  readonly code: string;
  readonly witness: unknown;

  constructor(status: number, body: ApiError) {
    super(`${body.error}: ${JSON.stringify(body.witness)}`);
    this.code = body.error;
    this.witness = body.witness;
  }
}

async function parse(res: Response): Promise<SessionState> {
  const body = await res.json();
  if (!res.ok) {
    throw new ServerError(res.status, body as ApiError);
  }
  return body as SessionState;
}

export class SessionClient {
  private busy = false;

  constructor(readonly baseUrl: string) {}

  private async post(path: string, body?: unknown): Promise<SessionState> {
    if (this.busy) {
      throw new Error("a request is already in flight for this session");
    }
    this.busy = true;
    try {
      const res = await fetch(`${this.baseUrl}${path}`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body ?? {}),
      });
      return await parse(res);
    } finally {
      this.busy = false;
    }
  }

  createFromMatrix(matrix: MatrixJson): Promise<SessionState> {
    return this.post("/api/sessions", { matrix });
  }

  createFromSpecies(species: SpeciesJson): Promise<SessionState> {
    return this.post("/api/sessions", { species });
  }

  mutate(sessionId: string, k: number | string): Promise<SessionState> {
    return this.post(`/api/sessions/${sessionId}/mutate`, { k });
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.post(`/api/sessions/${sessionId}/undo`);
  }

  async get(sessionId: string): Promise<SessionState> {
    const res = await fetch(`${this.baseUrl}/api/sessions/${sessionId}`);
    return parse(res);
  }
}
