// Session state, the single source of truth for what the panels display.
//
// Every vectorize request carries a sequence number per control group; when a
// response lands, it is accepted only if its sequence number is still the
// latest one issued for that group, so a slow stale response can never
// overwrite the vector belonging to the visible controls.

import type {
  BarcodeJson,
  Dataset,
  MethodInfo,
  VectorizeResponse,
} from "./types.js";

export class SessionState {
  methods: MethodInfo[] = [];
  dataset: Dataset | null = null;
  barcodes: BarcodeJson | null = null;
  selectedMethod: string | null = null;
  params: Record<string, number | string> = {};
  dims: number[] = [0, 1];
  /** fitted model ids per ensemble method id */
  modelIds: Record<string, string> = {};
  vector: VectorizeResponse | null = null;
  error: string | null = null;
  needsFit = false;

  private sequences: Record<string, number> = {};

  methodInfo(id: string | null = this.selectedMethod): MethodInfo | null {
    return this.methods.find((m) => m.id === id) ?? null;
  }

  setMethods(methods: MethodInfo[]): void {
    this.methods = methods;
  }

  setDataset(dataset: Dataset): void {
    this.dataset = dataset;
    this.barcodes = null;
    this.vector = null;
    this.error = null;
    this.needsFit = false;
  }

  setBarcodes(barcodes: BarcodeJson): void {
    this.barcodes = barcodes;
    this.vector = null;
  }

  selectMethod(id: string): void {
    const info = this.methodInfo(id);
    if (!info) throw new Error(`unknown method ${id}`);
    this.selectedMethod = id;
    this.params = {};
    for (const spec of info.params) this.params[spec.name] = spec.default;
    this.vector = null;
    this.error = null;
    this.needsFit = false;
  }

  setParam(name: string, value: number | string): void {
    this.params[name] = value;
  }

  /** Issue the next sequence number for a control group. */
  nextSeq(group: string): number {
    const next = (this.sequences[group] ?? 0) + 1;
    this.sequences[group] = next;
    return next;
  }

  /** Accept a response only when it is the latest request of its group. */
  acceptVector(group: string, seq: number, vector: VectorizeResponse): boolean {
    if (this.sequences[group] !== seq) return false;
    this.vector = vector;
    this.error = null;
    this.needsFit = false;
    return true;
  }

  acceptError(group: string, seq: number, message: string, needsFit = false): boolean {
    if (this.sequences[group] !== seq) return false;
    this.vector = null;
    this.error = message;
    this.needsFit = needsFit;
    return true;
  }

  setModelId(method: string, modelId: string): void {
    this.modelIds[method] = modelId;
  }

  canExport(): boolean {
    return this.vector !== null;
  }
}
