// Thin typed client for the session backend.  The client never does algebra:
// every value arriving here is already a canonical string.

export interface QuiverData {
  n: number;
  frozen: number[];
  matrix: number[][];
  multipliers: number[];
}

export interface TrackedData {
  text: string;
  flavor: string;
  current: string;
  values: string[];
  invariant: boolean;
}

export interface SessionState {
  id: string;
  catalog: string | null;
  quiver: QuiverData;
  labels: string[];
  a_names: string[];
  x_names: string[];
  history: number[];
  a_vars: string[];
  tracked: TrackedData[];
}

export interface InvariantRow {
  name: string;
  flavor: string;
  initial: string;
  current: string;
  unchanged: boolean;
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const detail = (body as { error?: string }).error ?? resp.statusText;
    throw new ApiError(resp.status, detail);
  }
  return body as T;
}

export class ExplorerApi {
  constructor(private base: string) {}

  async catalog(): Promise<{ entries: { name: string }[] }> {
    return asJson(await fetch(`${this.base}/catalog`));
  }

  async createSession(catalogName: string): Promise<SessionState> {
    return asJson(
      await fetch(`${this.base}/session`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ catalog: catalogName }),
      }),
    );
  }

  async getSession(id: string): Promise<SessionState> {
    return asJson(await fetch(`${this.base}/session/${id}`));
  }

  async mutate(id: string, node: number): Promise<SessionState> {
    return asJson(
      await fetch(`${this.base}/session/${id}/mutate`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ node }),
      }),
    );
  }

  async undo(id: string): Promise<SessionState> {
    return asJson(
      await fetch(`${this.base}/session/${id}/undo`, { method: "POST" }),
    );
  }

  async track(id: string, text: string, flavor: string): Promise<TrackedData> {
    return asJson(
      await fetch(`${this.base}/session/${id}/track`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ text, flavor }),
      }),
    );
  }

  async invariants(id: string): Promise<{ invariants: InvariantRow[] }> {
    return asJson(await fetch(`${this.base}/session/${id}/invariants`));
  }
}
