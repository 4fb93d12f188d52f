import { vi } from "vitest";

export interface Route {
  method: string;
  path: string;
  status?: number;
  body: unknown;
}

export interface FetchCall {
  method: string;
  path: string;
  body: unknown;
}

/** Stub global fetch with a fixed route table; returns the call log. */
export function stubFetch(routes: Route[]): FetchCall[] {
  const calls: FetchCall[] = [];
  vi.stubGlobal(
    "fetch",
    async (input: string, init?: RequestInit) => {
      const method = (init?.method ?? "GET").toUpperCase();
      const path = String(input);
      calls.push({
        method,
        path,
        body: init?.body ? JSON.parse(String(init.body)) : undefined,
      });
      const route = routes.find((r) => r.method === method && r.path === path);
      if (!route) {
        return {
          ok: false,
          status: 500,
          json: async () => ({ code: "unknown", message: `no stub for ${method} ${path}` }),
        };
      }
      const status = route.status ?? 200;
      return { ok: status < 400, status, json: async () => route.body };
    },
  );
  return calls;
}

/** Every numeric leaf of a JSON payload, stringified, for provenance checks. */
export function collectNumbers(value: unknown, into = new Set<string>()): Set<string> {
  if (typeof value === "number") {
    into.add(String(value));
  } else if (Array.isArray(value)) {
    for (const item of value) collectNumbers(item, into);
  } else if (value && typeof value === "object") {
    for (const item of Object.values(value)) collectNumbers(item, into);
  }
  return into;
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}
