// Render-hint-driven visualizations.  Every displayed number is the exact
// String() form of the service value; each value element also carries a
// data-value attribute so the round-trip tests can read the figures back.

import type { BarcodeJson, VectorizeResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 280;

function svgElement(width = WIDTH, height = HEIGHT): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  return svg;
}

function extent(values: number[]): [number, number] {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (!(hi > lo)) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

export function renderTable(vector: VectorizeResponse): HTMLElement {
  const table = document.createElement("table");
  table.className = "stats-table";
  const head = table.createTHead().insertRow();
  for (const caption of ["feature", "value"]) {
    const cell = document.createElement("th");
    cell.textContent = caption;
    head.appendChild(cell);
  }
  const body = table.createTBody();
  vector.labels.forEach((label, i) => {
    const row = body.insertRow();
    row.insertCell().textContent = label;
    const cell = row.insertCell();
    cell.textContent = String(vector.values[i]);
    cell.dataset.value = String(vector.values[i]);
    cell.dataset.label = label;
  });
  return table;
}

export function renderBars(vector: VectorizeResponse): SVGSVGElement {
  const svg = svgElement();
  const values = vector.values;
  const [lo, hi] = extent([0, ...values]);
  const scale = (HEIGHT - 40) / (hi - lo);
  const baseline = HEIGHT - 20 + lo * scale;
  const slot = WIDTH / Math.max(values.length, 1);
  values.forEach((value, i) => {
    const bar = document.createElementNS(SVG_NS, "rect");
    const height = Math.abs(value) * scale;
    bar.setAttribute("x", String(i * slot + slot * 0.1));
    bar.setAttribute("width", String(slot * 0.8));
    bar.setAttribute("y", String(value >= 0 ? baseline - height : baseline));
    bar.setAttribute("height", String(height));
    bar.setAttribute("class", "bar");
    bar.dataset.value = String(value);
    bar.dataset.label = vector.labels[i];
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${vector.labels[i]} = ${String(value)}`;
    bar.appendChild(title);
    svg.appendChild(bar);
  });
  return svg;
}

interface CurveMeta {
  grid?: number[];
  levels?: number;
}

function dimMeta(vector: VectorizeResponse): Record<string, CurveMeta> {
  const out: Record<string, CurveMeta> = {};
  for (const dim of vector.dims) {
    const meta = vector.meta[`d${dim}`] as CurveMeta | undefined;
    if (meta) out[`d${dim}`] = meta;
  }
  return out;
}

/**
 * Piecewise-linear curves.  One polyline per homology dimension and, for
 * landscapes, per level; the feature vector is level-major within each dim.
 */
export function renderCurve(vector: VectorizeResponse): SVGSVGElement {
  const svg = svgElement();
  const [lo, hi] = extent([0, ...vector.values]);
  const scaleY = (HEIGHT - 30) / (hi - lo);
  const metas = dimMeta(vector);
  let offset = 0;
  let series = 0;
  for (const dim of vector.dims) {
    const meta = metas[`d${dim}`] ?? {};
    const resolution = meta.grid?.length ?? vector.values.length / vector.dims.length;
    const levels = meta.levels ?? 1;
    for (let level = 0; level < levels; level += 1) {
      const chunk = vector.values.slice(offset, offset + resolution);
      offset += resolution;
      if (chunk.length === 0) continue;
      const step = WIDTH / Math.max(chunk.length - 1, 1);
      const points = chunk
        .map((v, i) => `${i * step},${HEIGHT - 15 - (v - lo) * scaleY}`)
        .join(" ");
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", points);
      line.setAttribute("fill", "none");
      line.setAttribute("class", `curve curve-${series % 8}`);
      line.dataset.dim = String(dim);
      line.dataset.level = String(level + 1);
      line.dataset.values = JSON.stringify(chunk);
      svg.appendChild(line);
      series += 1;
    }
  }
  return svg;
}

interface HeatmapMeta {
  nx: number;
  ny: number;
}

export function renderHeatmap(vector: VectorizeResponse): SVGSVGElement {
  const metas = dimMeta(vector) as Record<string, Partial<HeatmapMeta>>;
  const svg = svgElement();
  const panels = vector.dims.length;
  const panelWidth = WIDTH / panels;
  let offset = 0;
  vector.dims.forEach((dim, panel) => {
    const meta = metas[`d${dim}`] ?? {};
    const nx = meta.nx ?? Math.round(Math.sqrt(vector.values.length / panels));
    const ny = meta.ny ?? nx;
    const chunk = vector.values.slice(offset, offset + nx * ny);
    offset += nx * ny;
    const peak = Math.max(...chunk, 1e-300);
    const cellW = (panelWidth - 10) / nx;
    const cellH = (HEIGHT - 10) / ny;
    chunk.forEach((value, i) => {
      const ix = i % nx;
      const iy = Math.floor(i / nx);
      const cell = document.createElementNS(SVG_NS, "rect");
      cell.setAttribute("x", String(panel * panelWidth + 5 + ix * cellW));
      // row 0 is the lowest lifespan; draw it at the bottom
      cell.setAttribute("y", String(HEIGHT - 5 - (iy + 1) * cellH));
      cell.setAttribute("width", String(cellW));
      cell.setAttribute("height", String(cellH));
      const intensity = peak > 0 ? value / peak : 0;
      cell.setAttribute("fill", heatColor(intensity));
      cell.dataset.value = String(value);
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${vector.labels[offset - nx * ny + i]} = ${String(value)}`;
      cell.appendChild(title);
      svg.appendChild(cell);
    });
  });
  return svg;
}

function heatColor(intensity: number): string {
  const clamped = Math.max(0, Math.min(1, intensity));
  const r = Math.round(255 * clamped);
  const b = Math.round(255 * (1 - clamped));
  const g = Math.round(64 * clamped);
  return `rgb(${r},${g},${b})`;
}

/** Dispatch on the server's render hint; new hints need no caller changes. */
export function renderVector(vector: VectorizeResponse): Element {
  switch (vector.render_hint) {
    case "table":
      return renderTable(vector);
    case "bars":
      return renderBars(vector);
    case "curve":
      return renderCurve(vector);
    case "heatmap":
      return renderHeatmap(vector);
    default:
      return renderTable(vector);
  }
}

/**
 * Interval plot: one horizontal track per homology dimension, essential bars
 * drawn as arrows leaving the right edge, hover titles with (birth, death).
 */
export function renderBarcode(barcodes: BarcodeJson): HTMLElement {
  const container = document.createElement("div");
  container.className = "barcode-view";
  const dims = Object.keys(barcodes).sort();
  const finiteValues: number[] = [];
  for (const dim of dims) {
    for (const [birth, death] of barcodes[dim]) {
      finiteValues.push(birth);
      if (death !== "inf") finiteValues.push(death);
    }
  }
  if (finiteValues.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "no bars";
    container.appendChild(empty);
    return container;
  }
  const [lo, hi] = extent(finiteValues);
  const scale = (WIDTH - 80) / (hi - lo);

  for (const dim of dims) {
    const caption = document.createElement("h3");
    caption.textContent = `dimension ${dim}`;
    container.appendChild(caption);
    const entries = barcodes[dim];
    if (entries.length === 0) {
      const empty = document.createElement("p");
      empty.className = "empty-state";
      empty.textContent = "no bars";
      container.appendChild(empty);
      continue;
    }
    const expanded: Array<[number, number | "inf"]> = [];
    for (const [birth, death, mult] of entries) {
      for (let copy = 0; copy < mult; copy += 1) expanded.push([birth, death]);
    }
    const rowHeight = 12;
    const svg = svgElement(WIDTH, Math.max(expanded.length * rowHeight + 10, 30));
    expanded.forEach(([birth, death], row) => {
      const y = 5 + row * rowHeight + rowHeight / 2;
      const x1 = 40 + (birth - lo) * scale;
      const essential = death === "inf";
      const x2 = essential ? WIDTH - 20 : 40 + ((death as number) - lo) * scale;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y1", String(y));
      line.setAttribute("y2", String(y));
      line.setAttribute("class", essential ? "bar-line essential" : "bar-line");
      line.dataset.birth = String(birth);
      line.dataset.death = essential ? "inf" : String(death);
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `(${String(birth)}, ${essential ? "inf" : String(death)})`;
      line.appendChild(title);
      svg.appendChild(line);
      if (essential) {
        const arrow = document.createElementNS(SVG_NS, "polygon");
        arrow.setAttribute(
          "points",
          `${WIDTH - 20},${y - 4} ${WIDTH - 20},${y + 4} ${WIDTH - 10},${y}`,
        );
        arrow.setAttribute("class", "essential-arrow");
        svg.appendChild(arrow);
      }
    });
    container.appendChild(svg);
  }
  return container;
}
