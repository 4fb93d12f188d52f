// Assessment form: one numeric control per input variable, hard-constrained
// to the variable's universe; submit stays disabled until every value is in
// range.

import { STRINGS } from "../strings.js";
import type { Child, Variable } from "../types.js";

export interface FormHandles {
  root: HTMLElement;
  setBusy(busy: boolean): void;
  showError(message: string): void;
  clearError(): void;
  highlightField(variable: string): void;
}

export function renderAssessmentForm(
  container: HTMLElement,
  variables: Variable[],
  children: Child[],
  onSubmit: (inputs: Record<string, number>, childId: string | null) => void,
  onCreateChild: (label: string, age: number) => void,
): FormHandles {
  const root = document.createElement("form");
  root.className = "assessment-form";
  root.appendChild(heading(STRINGS.assessmentHeading));

  const childSelect = document.createElement("select");
  childSelect.className = "child-select";
  const none = document.createElement("option");
  none.value = "";
  none.textContent = STRINGS.noChild;
  childSelect.appendChild(none);
  for (const child of children) {
    const option = document.createElement("option");
    option.value = child.id;
    option.textContent = `${child.display_label} (${child.age_years})`;
    childSelect.appendChild(option);
  }
  root.appendChild(labelled(STRINGS.childLabel, childSelect));

  const newChildRow = document.createElement("div");
  newChildRow.className = "new-child-row";
  const childLabel = textInput("new-child-label", STRINGS.newChildLabel);
  const childAge = numberInput("new-child-age", 3, 8, 0.1);
  const createButton = button(STRINGS.createChild, "create-child");
  createButton.addEventListener("click", (event) => {
    event.preventDefault();
    const age = Number(childAge.value);
    if (childLabel.value && age >= 3 && age <= 8) onCreateChild(childLabel.value, age);
  });
  newChildRow.append(childLabel, childAge, createButton);
  root.appendChild(newChildRow);

  const inputs = new Map<string, HTMLInputElement>();
  const rangeNotes = new Map<string, HTMLElement>();
  const submit = button(STRINGS.runConsultation, "run-consultation");
  submit.type = "submit";
  submit.disabled = true;

  const inputVariables = variables.filter((v) => v.role === "input");
  for (const variable of inputVariables) {
    const { lo, hi } = variable.universe;
    const field = numberInput(`input-${variable.name}`, lo, hi, 0.01);
    field.dataset.variable = variable.name;
    inputs.set(variable.name, field);
    const note = document.createElement("small");
    note.className = "range-note";
    note.textContent = `[${lo}, ${hi}]`;
    rangeNotes.set(variable.name, note);
    const wrap = labelled(variable.name, field);
    wrap.appendChild(note);
    root.appendChild(wrap);
  }

  function inRange(variable: Variable, raw: string): boolean {
    if (raw === "") return false;
    const value = Number(raw);
    return Number.isFinite(value) && value >= variable.universe.lo && value <= variable.universe.hi;
  }

  function refreshValidity(): void {
    let allValid = true;
    for (const variable of inputVariables) {
      const field = inputs.get(variable.name)!;
      const ok = inRange(variable, field.value);
      field.classList.toggle("out-of-range", field.value !== "" && !ok);
      rangeNotes.get(variable.name)!.textContent = ok
        ? `[${variable.universe.lo}, ${variable.universe.hi}]`
        : STRINGS.outOfRange(variable.name, variable.universe.lo, variable.universe.hi);
      allValid &&= ok;
    }
    submit.disabled = !allValid;
  }

  root.addEventListener("input", refreshValidity);

  const errorBox = document.createElement("div");
  errorBox.className = "form-error";
  errorBox.hidden = true;

  root.appendChild(submit);
  root.appendChild(errorBox);
  root.addEventListener("submit", (event) => {
    event.preventDefault();
    if (submit.disabled) return;
    const values: Record<string, number> = {};
    for (const [name, field] of inputs) values[name] = Number(field.value);
    onSubmit(values, childSelect.value || null);
  });

  container.replaceChildren(root);
  return {
    root,
    setBusy(busy) {
      submit.disabled = busy;
      if (!busy) refreshValidity();
    },
    showError(message) {
      errorBox.hidden = false;
      errorBox.textContent = message;
    },
    clearError() {
      errorBox.hidden = true;
      errorBox.textContent = "";
      for (const field of inputs.values()) field.classList.remove("field-error");
    },
    highlightField(variable) {
      inputs.get(variable)?.classList.add("field-error");
    },
  };
}

function heading(text: string): HTMLElement {
  const h = document.createElement("h3");
  h.textContent = text;
  return h;
}

function labelled(text: string, control: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const span = document.createElement("span");
  span.textContent = text;
  wrap.append(span, control);
  return wrap;
}

function textInput(className: string, placeholder: string): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  input.className = className;
  input.placeholder = placeholder;
  return input;
}

function numberInput(className: string, min: number, max: number, step: number): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "number";
  input.className = className;
  input.min = String(min);
  input.max = String(max);
  input.step = String(step);
  return input;
}

function button(text: string, className: string): HTMLButtonElement {
  const b = document.createElement("button");
  b.type = "button";
  b.className = className;
  b.textContent = text;
  return b;
}
