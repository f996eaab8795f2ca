// CSV export of feature vectors and parsing for re-import.
//
// Numbers are serialized with String(value), the shortest exact round-trip
// form, so parse(export(v)) reproduces the service payload bit for bit.

import type { VectorizeResponse } from "./types.js";

export function vectorToCsv(vector: VectorizeResponse): string {
  const lines = [vector.labels.join(",")];
  lines.push(vector.values.map((v) => String(v)).join(","));
  return lines.join("\n") + "\n";
}

export function parseVectorCsv(text: string): { labels: string[]; values: number[] } {
  const lines = text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0);
  if (lines.length !== 2) {
    throw new Error(`expected a header line and one value line, got ${lines.length}`);
  }
  const labels = lines[0].split(",");
  const values = lines[1].split(",").map((token) => {
    const value = Number(token);
    if (Number.isNaN(value)) throw new Error(`cannot parse number from ${token}`);
    return value;
  });
  if (labels.length !== values.length) {
    throw new Error("label and value counts differ");
  }
  return { labels, values };
}
