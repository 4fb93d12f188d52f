import type {
  Child,
  ErrorBody,
  KbResponse,
  OverrideRecord,
  StoredConsultation,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ErrorBody,
  ) {
    super(body.message || `HTTP ${status}`);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  const json = await response.json();
  if (!response.ok) {
    const body: ErrorBody =
      json && typeof json.code === "string"
        ? json
        : { code: "unknown", message: JSON.stringify(json) };
    throw new ApiError(response.status, body);
  }
  return json as T;
}

export const api = {
  getKb: () => request<KbResponse>("/kb"),

  putKb: (document: string, expectedRevision: number) =>
    request<{ revision: number; warnings: unknown[] }>("/kb", {
      method: "PUT",
      body: JSON.stringify({ document, expected_revision: expectedRevision }),
    }),

  consult: (inputs: Record<string, number>, childId: string | null) =>
    request<StoredConsultation>("/consult", {
      method: "POST",
      body: JSON.stringify({ inputs, child_id: childId }),
    }),

  listChildren: () => request<Child[]>("/children"),

  createChild: (displayLabel: string, ageYears: number) =>
    request<Child>("/children", {
      method: "POST",
      body: JSON.stringify({ display_label: displayLabel, age_years: ageYears }),
    }),

  postOverride: (consultationId: string, therapistValue: number, note: string) =>
    request<OverrideRecord>("/overrides", {
      method: "POST",
      body: JSON.stringify({
        consultation_id: consultationId,
        therapist_value: therapistValue,
        note,
      }),
    }),
};

export type Api = typeof api;
