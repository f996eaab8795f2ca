// Parameter controls generated from the catalogue schema: sliders with the
// documented grid stops for numbers, selects for choices.

import type { MethodInfo, ParamSpec } from "./types.js";

export type ParamChange = (name: string, value: number | string) => void;

function numberControl(spec: ParamSpec, value: number, onChange: ParamChange): HTMLElement {
  const wrapper = document.createElement("label");
  wrapper.className = "param";
  wrapper.textContent = spec.name;
  wrapper.title = spec.doc;

  const grid = spec.grid.filter((g): g is number => typeof g === "number");
  const input = document.createElement("input");
  const sliderable = grid.length > 1;
  input.type = sliderable ? "range" : "number";
  if (sliderable) {
    input.min = String(Math.min(...grid, value));
    input.max = String(Math.max(...grid, value));
    input.step = spec.kind === "int" ? "1" : "any";
  }
  input.value = String(value);
  input.name = spec.name;

  const readout = document.createElement("span");
  readout.className = "param-value";
  readout.textContent = String(value);

  input.addEventListener("change", () => {
    const parsed = spec.kind === "int" ? parseInt(input.value, 10) : parseFloat(input.value);
    readout.textContent = String(parsed);
    onChange(spec.name, parsed);
  });
  wrapper.appendChild(input);
  wrapper.appendChild(readout);
  if (grid.length > 0) {
    const hint = document.createElement("small");
    hint.className = "grid-hint";
    hint.textContent = `grid: ${grid.join(", ")}`;
    wrapper.appendChild(hint);
  }
  return wrapper;
}

function choiceControl(spec: ParamSpec, value: string, onChange: ParamChange): HTMLElement {
  const wrapper = document.createElement("label");
  wrapper.className = "param";
  wrapper.textContent = spec.name;
  wrapper.title = spec.doc;
  const select = document.createElement("select");
  select.name = spec.name;
  for (const choice of spec.choices) {
    const option = document.createElement("option");
    option.value = choice;
    option.textContent = choice;
    option.selected = choice === value;
    select.appendChild(option);
  }
  select.addEventListener("change", () => onChange(spec.name, select.value));
  wrapper.appendChild(select);
  return wrapper;
}

export function buildControls(
  info: MethodInfo,
  params: Record<string, number | string>,
  onChange: ParamChange,
): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "controls";
  if (info.params.length === 0) {
    const note = document.createElement("p");
    note.className = "no-params";
    note.textContent = "no parameters";
    panel.appendChild(note);
    return panel;
  }
  for (const spec of info.params) {
    const value = params[spec.name] ?? spec.default;
    panel.appendChild(
      spec.kind === "choice"
        ? choiceControl(spec, String(value), onChange)
        : numberControl(spec, Number(value), onChange),
    );
  }
  return panel;
}

/** Highlight the control whose parameter the server rejected. */
export function highlightFailingParam(panel: HTMLElement, message: string): string | null {
  const match = /parameter '([a-z_]+)'/i.exec(message);
  if (!match) return null;
  const control = panel.querySelector(`[name="${match[1]}"]`);
  control?.classList.add("invalid");
  return match[1];
}
