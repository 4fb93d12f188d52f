// Inference trace renderer. Every number placed in the DOM is copied from
// the service's consultation response (full precision in data-value, two
// decimals in the visible text); nothing is recomputed client-side.

import { STRINGS } from "../strings.js";
import { clippedOutline, crispMarkerX, termPolyline } from "../geometry.js";
import type { StoredConsultation, Variable } from "../types.js";

const PLOT = { width: 260, height: 60 };

const fmt2 = (value: number) => value.toFixed(2);

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string): SVGElement {
  return document.createElementNS("http://www.w3.org/2000/svg", tag) as SVGElement;
}

function numberSpan(className: string, value: number): HTMLElement {
  const span = el("span", className, fmt2(value));
  span.dataset.value = String(value);
  return span;
}

function degreeNotation(container: HTMLElement, degrees: Record<string, number>): void {
  // the textual {"term"/degree, ...} reading
  container.append("{");
  Object.entries(degrees).forEach(([term, degree], i) => {
    if (i > 0) container.append(", ");
    container.append(`"${term}"/`);
    container.append(numberSpan("degree-value", degree));
  });
  container.append("}");
}

function membershipPlot(variable: Variable, cutAt: number | null): SVGElement {
  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${PLOT.width} ${PLOT.height}`);
  svg.setAttribute("class", "mf-plot");
  for (const term of variable.terms) {
    const line = svgEl("polyline");
    line.setAttribute("points", termPolyline(term, variable.universe, PLOT));
    line.setAttribute("class", "mf-line");
    svg.appendChild(line);
  }
  if (cutAt !== null) {
    const x = crispMarkerX(cutAt, variable.universe, PLOT);
    const marker = svgEl("line");
    marker.setAttribute("x1", String(x));
    marker.setAttribute("x2", String(x));
    marker.setAttribute("y1", "0");
    marker.setAttribute("y2", String(PLOT.height));
    marker.setAttribute("class", "crisp-cut");
    svg.appendChild(marker);
  }
  return svg;
}

function fuzzificationPanel(consultation: StoredConsultation, variables: Variable[]): HTMLElement {
  const panel = el("section", "panel fuzzification-panel");
  panel.appendChild(el("h3", undefined, STRINGS.fuzzificationHeading));
  const byName = new Map(variables.map((v) => [v.name, v]));
  for (const fv of consultation.result.fuzzified) {
    const row = el("div", "fuzzified-row");
    row.dataset.variable = fv.variable;
    const line = el("div", "fuzzified-line");
    line.append(`${fv.variable} (`);
    line.append(numberSpan("crisp-input", fv.crisp));
    line.append(") = ");
    degreeNotation(line, fv.degrees);
    row.appendChild(line);

    const bars = el("div", "degree-bars");
    for (const [term, degree] of Object.entries(fv.degrees)) {
      const bar = el("div", "degree-bar");
      const fill = el("span", "degree-fill");
      fill.style.width = `${degree * 100}%`;
      bar.appendChild(fill);
      bar.appendChild(el("span", "degree-label", `${term} ${fmt2(degree)}`));
      bars.appendChild(bar);
    }
    row.appendChild(bars);

    const variable = byName.get(fv.variable);
    if (variable) row.appendChild(membershipPlot(variable, fv.crisp));
    panel.appendChild(row);
  }
  return panel;
}

function rulePanel(consultation: StoredConsultation): HTMLElement {
  const panel = el("section", "panel rule-panel");
  panel.appendChild(el("h3", undefined, STRINGS.rulesHeading));
  for (const firing of consultation.result.firings) {
    const row = el("div", "rule-row");
    row.dataset.rule = firing.rule_id;
    row.appendChild(el("span", "rule-id", firing.rule_id));

    const clauses = el("span", "clauses");
    const minDegree = Math.min(...firing.clause_degrees.map(([, , d]) => d));
    firing.clause_degrees.forEach(([variable, term, degree], i) => {
      if (i > 0) clauses.append(" and ");
      const clause = el("span", "clause-degree");
      clause.title = `${variable} is ${term}`;
      clause.append(`(${variable} is ${term}) `);
      const value = numberSpan("clause-value", degree);
      if (degree === minDegree) value.classList.add("is-min");
      clause.appendChild(value);
      clauses.appendChild(clause);
    });
    row.appendChild(clauses);

    const alphaCell = el("span", "alpha-cell");
    alphaCell.append("α = ");
    alphaCell.appendChild(numberSpan("alpha-value", firing.alpha));
    const bar = el("span", "alpha-bar");
    const fill = el("span", "alpha-fill");
    fill.style.width = `${firing.alpha * 100}%`;
    bar.appendChild(fill);
    alphaCell.appendChild(bar);
    alphaCell.append(` → ${firing.consequent.term}`);
    row.appendChild(alphaCell);
    panel.appendChild(row);
  }
  return panel;
}

function aggregationPanel(consultation: StoredConsultation): HTMLElement {
  const panel = el("section", "panel aggregation-panel");
  panel.appendChild(el("h3", undefined, STRINGS.aggregationHeading));
  const { aggregate, firings } = consultation.result;
  for (const term of aggregate.variable.terms) {
    const row = el("div", "aggregate-row");
    row.dataset.term = term.name;
    const contributions = firings
      .filter((f) => f.consequent.term === term.name)
      .map((f) => fmt2(f.alpha))
      .join(", ");
    row.append(`${term.name} = max(${contributions}) = `);
    row.appendChild(numberSpan("aggregate-value", aggregate.term_alphas[term.name] ?? 0));
    panel.appendChild(row);
  }
  return panel;
}

function outputPanel(consultation: StoredConsultation): HTMLElement {
  const panel = el("section", "panel output-panel");
  panel.appendChild(el("h3", undefined, STRINGS.outputHeading));
  const { aggregate, crisp_output, recommendation, kb_revision } = consultation.result;

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${PLOT.width} ${PLOT.height}`);
  svg.setAttribute("class", "output-plot");
  const outline = svgEl("polyline");
  outline.setAttribute(
    "points",
    clippedOutline(aggregate.variable, aggregate.term_alphas, PLOT),
  );
  outline.setAttribute("class", "clipped-outline");
  svg.appendChild(outline);
  const x = crispMarkerX(crisp_output, aggregate.variable.universe, PLOT);
  const marker = svgEl("line");
  marker.setAttribute("x1", String(x));
  marker.setAttribute("x2", String(x));
  marker.setAttribute("y1", "0");
  marker.setAttribute("y2", String(PLOT.height));
  marker.setAttribute("class", "crisp-marker");
  svg.appendChild(marker);
  panel.appendChild(svg);

  const crispLine = el("div", "crisp-line");
  crispLine.append(`${STRINGS.crispLabel}: `);
  crispLine.appendChild(numberSpan("crisp-value", crisp_output));
  crispLine.append(` (${STRINGS.revisionLabel} ${kb_revision})`);
  panel.appendChild(crispLine);
  panel.appendChild(el("p", "recommendation", recommendation.note));
  return panel;
}

export function renderTrace(
  container: HTMLElement,
  consultation: StoredConsultation,
  variables: Variable[],
): void {
  container.replaceChildren(
    fuzzificationPanel(consultation, variables),
    rulePanel(consultation),
    aggregationPanel(consultation),
    outputPanel(consultation),
  );
}

export function renderNoRuleFired(container: HTMLElement, onOpenEditor: () => void): void {
  const banner = el("div", "banner no-rule-fired-banner", STRINGS.noRuleFired + " ");
  const link = el("a", "open-editor-link", STRINGS.openEditor);
  link.setAttribute("href", "#editor");
  link.addEventListener("click", (event) => {
    event.preventDefault();
    onOpenEditor();
  });
  banner.appendChild(link);
  container.replaceChildren(banner);
}
