// Shared wire types for the /v1 service.

export type RenderHint = "table" | "bars" | "curve" | "heatmap";

export interface ParamSpec {
  name: string;
  kind: "int" | "float" | "choice";
  default: number | string;
  grid: Array<number | string>;
  choices: string[];
  doc: string;
}

export interface MethodInfo {
  id: string;
  label: string;
  category: string;
  render_hint: RenderHint;
  requires_fit: boolean;
  description: string;
  params: ParamSpec[];
}

/** One bar is [birth, death, multiplicity]; death may be the string "inf". */
export type BarEntry = [number, number | "inf", number];
export type BarcodeJson = Record<string, BarEntry[]>;

export interface BarcodeResponse {
  dims: number[];
  barcodes: BarcodeJson;
}

export interface VectorizeRequest {
  barcode?: BarcodeJson;
  data?: Record<string, unknown>;
  method: string;
  params?: Record<string, number | string>;
  dims?: number[];
  model_id?: string;
  training?: BarcodeJson[];
  seed?: number;
  on_empty?: "raise" | "zeros";
}

export interface VectorizeResponse {
  method: string;
  params: Record<string, number | string>;
  dims: number[];
  values: number[];
  labels: string[];
  render_hint: RenderHint;
  meta: Record<string, unknown>;
}

export interface FitResponse {
  model_id: string;
  model: Record<string, unknown>;
}

export type DatasetKind = "points" | "image" | "barcode";

export interface Dataset {
  kind: DatasetKind;
  name: string;
  /** JSON payload for POST /v1/barcode (points/image) or raw CSV text (barcode). */
  payload: Record<string, unknown> | string;
}
