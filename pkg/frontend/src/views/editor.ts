// Rule editor backed by PUT /kb with a revision guard. A stale save keeps
// the therapist's text and shows a conflict banner; server diagnostics are
// listed with line/column and click-to-jump.

import { ApiError, type Api } from "../api.js";
import { STRINGS } from "../strings.js";
import type { Diagnostic } from "../types.js";

export interface EditorHandles {
  root: HTMLElement;
  load(): Promise<void>;
  save(): Promise<void>;
  textarea: HTMLTextAreaElement;
}

export function renderEditor(container: HTMLElement, api: Api): EditorHandles {
  const root = document.createElement("section");
  root.className = "editor";
  root.id = "editor";

  const h = document.createElement("h3");
  h.textContent = STRINGS.editorHeading;
  root.appendChild(h);

  const textarea = document.createElement("textarea");
  textarea.className = "kb-document";
  textarea.rows = 20;
  textarea.spellcheck = false;

  const status = document.createElement("div");
  status.className = "editor-status";
  const banner = document.createElement("div");
  banner.className = "banner conflict-banner";
  banner.hidden = true;
  const diagnosticsBox = document.createElement("div");
  diagnosticsBox.className = "diagnostics";

  const saveButton = document.createElement("button");
  saveButton.textContent = STRINGS.editorSave;
  saveButton.className = "editor-save";
  const reloadButton = document.createElement("button");
  reloadButton.textContent = STRINGS.editorReload;
  reloadButton.className = "editor-reload";
  reloadButton.hidden = true;

  root.append(banner, textarea, saveButton, reloadButton, status, diagnosticsBox);
  container.replaceChildren(root);

  let loadedDocument = "";
  let loadedRevision = -1;

  function showDiagnostics(diagnostics: Diagnostic[]): void {
    diagnosticsBox.replaceChildren();
    const head = document.createElement("div");
    head.textContent = STRINGS.editorDiagnosticsHeading;
    diagnosticsBox.appendChild(head);
    for (const d of diagnostics) {
      const row = document.createElement("div");
      row.className = `diagnostic diagnostic-${d.severity}`;
      row.textContent = `${d.line}:${d.col} ${d.severity}[${d.code}] ${d.message}`;
      row.addEventListener("click", () => {
        const lines = textarea.value.split("\n");
        let offset = 0;
        for (let i = 0; i < d.line - 1 && i < lines.length; i++) offset += lines[i].length + 1;
        textarea.focus();
        textarea.setSelectionRange(offset + d.col - 1, offset + d.col - 1);
      });
      diagnosticsBox.appendChild(row);
    }
  }

  async function load(): Promise<void> {
    const kb = await api.getKb();
    loadedDocument = kb.document;
    loadedRevision = kb.revision;
    textarea.value = kb.document;
    banner.hidden = true;
    reloadButton.hidden = true;
    status.textContent = "";
    diagnosticsBox.replaceChildren();
  }

  async function save(): Promise<void> {
    banner.hidden = true;
    diagnosticsBox.replaceChildren();
    if (textarea.value === loadedDocument) {
      // unchanged document: a no-op, never a revision bump
      status.textContent = STRINGS.editorNoChanges;
      return;
    }
    try {
      const saved = await api.putKb(textarea.value, loadedRevision);
      loadedDocument = textarea.value;
      loadedRevision = saved.revision;
      status.textContent = STRINGS.editorSaved(saved.revision);
    } catch (error) {
      if (error instanceof ApiError && error.body.code === "stale-revision") {
        banner.textContent = STRINGS.editorConflict(error.body.current_revision ?? -1);
        banner.hidden = false;
        reloadButton.hidden = false;
        return; // textarea keeps the therapist's text
      }
      if (error instanceof ApiError && error.body.code === "invalid-document") {
        showDiagnostics(error.body.diagnostics ?? []);
        return;
      }
      status.textContent = STRINGS.genericError(
        error instanceof Error ? error.message : String(error),
      );
    }
  }

  saveButton.addEventListener("click", () => void save());
  reloadButton.addEventListener("click", () => void load());

  return { root, load, save, textarea };
}
