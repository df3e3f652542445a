// Spawn the real exact-arithmetic backend for end-to-end tests.

import { ChildProcess, spawn } from "node:child_process";
import * as net from "node:net";

export interface Backend {
  base: string;
  stop: () => void;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = net.createServer();
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr && typeof addr === "object") {
        const port = addr.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

export async function startBackend(): Promise<Backend> {
  const port = await freePort();
  const python = process.env.PYTHON ?? "/usr/bin/python3";
  const child: ChildProcess = spawn(
    python,
    ["-m", "clusterens.cli", "serve", "--port", String(port)],
    { stdio: "ignore" },
  );
  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 60_000;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${base}/catalog`);
      if (resp.ok) {
        return { base, stop: () => child.kill() };
      }
    } catch {
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  child.kill();
  throw new Error("backend did not come up");
}

export async function waitFor(
  cond: () => boolean,
  timeoutMs = 30_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error("condition not reached in time");
}
