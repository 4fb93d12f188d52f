// Console shell: loads the knowledge base, renders the assessment form and
// wires consultation, trace display, override recording and the rule editor.

import { api, ApiError } from "./api.js";
import { STRINGS } from "./strings.js";
import { renderAssessmentForm } from "./views/form.js";
import { renderEditor } from "./views/editor.js";
import { renderOverridePanel } from "./views/overrides.js";
import { renderNoRuleFired, renderTrace } from "./views/trace.js";

export async function boot(root: HTMLElement): Promise<void> {
  const title = document.createElement("h1");
  title.textContent = STRINGS.appTitle;
  const formMount = document.createElement("div");
  const traceMount = document.createElement("div");
  traceMount.className = "trace-mount";
  const overrideMount = document.createElement("div");
  const editorMount = document.createElement("div");
  root.replaceChildren(title, formMount, traceMount, overrideMount, editorMount);

  const kb = await api.getKb();
  const children = await api.listChildren();
  const editor = renderEditor(editorMount, api);
  await editor.load();

  const form = renderAssessmentForm(
    formMount,
    kb.variables,
    children,
    async (inputs, childId) => {
      form.clearError();
      form.setBusy(true);
      try {
        const consultation = await api.consult(inputs, childId);
        renderTrace(traceMount, consultation, kb.variables);
        renderOverridePanel(overrideMount, api, consultation);
      } catch (error) {
        if (error instanceof ApiError && error.body.code === "no-rule-fired") {
          renderNoRuleFired(traceMount, () => editor.root.scrollIntoView());
        } else if (error instanceof ApiError) {
          form.showError(error.body.message);
          for (const variable of kb.variables) {
            if (error.body.message.includes(variable.name)) form.highlightField(variable.name);
          }
        } else {
          form.showError(String(error));
        }
      } finally {
        form.setBusy(false);
      }
    },
    async (label, age) => {
      await api.createChild(label, age);
      window.location.reload();
    },
  );
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
