// Override recording for the displayed consultation. Submit is blocked
// client-side while the value equals the system's conclusion and the note is
// empty, mirroring the server-side invariant.

import { ApiError, type Api } from "../api.js";
import { STRINGS } from "../strings.js";
import type { StoredConsultation } from "../types.js";

export function renderOverridePanel(
  container: HTMLElement,
  api: Api,
  consultation: StoredConsultation,
): void {
  const root = document.createElement("section");
  root.className = "override-panel";

  const h = document.createElement("h3");
  h.textContent = STRINGS.overrideHeading;

  const value = document.createElement("input");
  value.type = "number";
  value.step = "0.1";
  value.min = "0";
  value.className = "override-value";
  value.value = String(consultation.result.crisp_output);

  const note = document.createElement("textarea");
  note.className = "override-note";
  note.rows = 2;
  note.placeholder = STRINGS.overrideNote;

  const submit = document.createElement("button");
  submit.className = "override-submit";
  submit.textContent = STRINGS.overrideSubmit;

  const hint = document.createElement("small");
  hint.className = "override-hint";

  const status = document.createElement("div");
  status.className = "override-status";

  function refresh(): void {
    const same = Number(value.value) === consultation.result.crisp_output;
    const blocked = same && note.value.trim() === "";
    submit.disabled = blocked;
    hint.textContent = blocked ? STRINGS.overrideBlocked : "";
  }
  value.addEventListener("input", refresh);
  note.addEventListener("input", refresh);
  refresh();

  submit.addEventListener("click", async () => {
    try {
      const record = await api.postOverride(consultation.id, Number(value.value), note.value);
      status.textContent = STRINGS.overrideSaved(record.id);
      submit.disabled = true;
    } catch (error) {
      status.textContent = STRINGS.genericError(
        error instanceof ApiError ? error.body.message : String(error),
      );
    }
  });

  root.append(h, value, note, submit, hint, status);
  container.replaceChildren(root);
}
