// App wiring: sidebar (datasets + method + parameters), barcode view,
// visualization panel, CSV download.  All numbers shown come verbatim from
// /v1 responses; this module only moves them around.

import { ApiClient, ApiError } from "./api.js";
import { buildControls, highlightFailingParam } from "./controls.js";
import { vectorToCsv } from "./csv.js";
import { renderBarcode, renderVector } from "./render.js";
import { SAMPLES } from "./samples.js";
import { SessionState } from "./state.js";
import type { Dataset, VectorizeRequest } from "./types.js";

const VECTOR_GROUP = "vectorize";

export class App {
  readonly state = new SessionState();

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.root.innerHTML = `
      <aside class="sidebar">
        <h1>barcode vectorization explorer</h1>
        <section>
          <h2>input data</h2>
          <div id="dataset-buttons"></div>
          <label class="upload">upload barcode CSV
            <input type="file" id="upload" accept=".csv,text/csv" />
          </label>
        </section>
        <section>
          <h2>method</h2>
          <select id="method-select"></select>
          <p id="method-doc" class="doc"></p>
          <div id="controls"></div>
          <div id="fit-area"></div>
        </section>
        <section>
          <button id="export" disabled>download vector CSV</button>
        </section>
      </aside>
      <main class="content">
        <section><h2>barcodes</h2><div id="barcode-panel"></div></section>
        <section>
          <h2 id="vector-heading">vectorization</h2>
          <div id="error-panel" class="error" hidden></div>
          <div id="vector-panel"></div>
        </section>
      </main>`;

    this.state.setMethods(await this.api.getMethods());
    this.buildDatasetButtons();
    this.buildMethodSelect();
    this.bindExport();
    this.bindUpload();
    await this.loadDataset(SAMPLES.points);
  }

  private element<T extends HTMLElement>(id: string): T {
    const found = this.root.querySelector<T>(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found;
  }

  private buildDatasetButtons(): void {
    const host = this.element("dataset-buttons");
    for (const sample of Object.values(SAMPLES)) {
      const button = document.createElement("button");
      button.textContent = sample.name;
      button.addEventListener("click", () => void this.loadDataset(sample));
      host.appendChild(button);
    }
  }

  private buildMethodSelect(): void {
    const select = this.element<HTMLSelectElement>("method-select");
    for (const info of this.state.methods) {
      const option = document.createElement("option");
      option.value = info.id;
      option.textContent = `${info.label} (${info.category})`;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      this.selectMethod(select.value);
      void this.refreshVector();
    });
    this.selectMethod(this.state.methods[0].id);
  }

  private selectMethod(id: string): void {
    this.state.selectMethod(id);
    const info = this.state.methodInfo();
    if (!info) return;
    this.element("method-doc").textContent = info.description;
    const controls = buildControls(info, this.state.params, (name, value) => {
      this.state.setParam(name, value);
      void this.refreshVector();
    });
    const host = this.element("controls");
    host.replaceChildren(controls);
    this.element("fit-area").replaceChildren();
  }

  private bindExport(): void {
    this.element<HTMLButtonElement>("export").addEventListener("click", () => {
      if (!this.state.vector) return;
      const blob = new Blob([vectorToCsv(this.state.vector)], { type: "text/csv" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = `${this.state.vector.method}.csv`;
      link.click();
      URL.revokeObjectURL(link.href);
    });
  }

  private bindUpload(): void {
    this.element<HTMLInputElement>("upload").addEventListener("change", async (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (!file) return;
      const text = await file.text();
      await this.loadDataset({ kind: "barcode", name: file.name, payload: text });
    });
  }

  async loadDataset(dataset: Dataset): Promise<void> {
    this.state.setDataset(dataset);
    try {
      const response = await this.api.computeBarcode(dataset);
      this.state.setBarcodes(response.barcodes);
      this.element("barcode-panel").replaceChildren(renderBarcode(response.barcodes));
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
      return;
    }
    await this.refreshVector();
  }

  /** One in-flight request per control group; stale responses are dropped. */
  async refreshVector(): Promise<void> {
    const info = this.state.methodInfo();
    if (!info || !this.state.barcodes) return;
    const seq = this.state.nextSeq(VECTOR_GROUP);
    const request: VectorizeRequest = {
      barcode: this.state.barcodes,
      method: info.id,
      params: { ...this.state.params },
      dims: this.state.dims,
      on_empty: "zeros",
    };
    const modelId = this.state.modelIds[info.id];
    if (info.requires_fit && modelId) request.model_id = modelId;
    try {
      const vector = await this.api.vectorize(request);
      if (!this.state.acceptVector(VECTOR_GROUP, seq, vector)) return;
      this.showVector();
    } catch (error) {
      const needsFit = error instanceof ApiError && error.status === 409;
      const message = error instanceof Error ? error.message : String(error);
      if (!this.state.acceptError(VECTOR_GROUP, seq, message, needsFit)) return;
      this.showError(message);
      if (needsFit) this.showFitPrompt(info.id);
      else highlightFailingParam(this.element("controls"), message);
    }
  }

  private showVector(): void {
    const vector = this.state.vector;
    if (!vector) return;
    this.element("error-panel").hidden = true;
    this.element("vector-heading").textContent =
      `vectorization: ${vector.method} (${vector.values.length} features)`;
    this.element("vector-panel").replaceChildren(renderVector(vector));
    this.element<HTMLButtonElement>("export").disabled = !this.state.canExport();
    this.element("fit-area").replaceChildren();
  }

  private showError(message: string): void {
    const panel = this.element("error-panel");
    panel.hidden = false;
    panel.textContent = message;
    this.element("vector-panel").replaceChildren();
    this.element<HTMLButtonElement>("export").disabled = true;
  }

  /** 409 path: offer to fit the ensemble model on the preloaded samples. */
  private showFitPrompt(methodId: string): void {
    const area = this.element("fit-area");
    area.replaceChildren();
    const prompt = document.createElement("div");
    prompt.className = "fit-prompt";
    const note = document.createElement("p");
    note.textContent = "this method needs a fitted model";
    prompt.appendChild(note);
    const button = document.createElement("button");
    button.id = "fit-button";
    button.textContent = "fit on the current barcodes";
    button.addEventListener("click", () => void this.fitModel(methodId));
    prompt.appendChild(button);
    area.appendChild(prompt);
  }

  async fitModel(methodId: string): Promise<void> {
    if (!this.state.barcodes) return;
    try {
      const fitted = await this.api.fit({
        method: methodId,
        params: { ...this.state.params },
        training: [this.state.barcodes],
        seed: 0,
        fit_dim: 1,
      });
      this.state.setModelId(methodId, fitted.model_id);
      await this.refreshVector();
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    }
  }
}

export function mount(root: HTMLElement, base = ""): App {
  const app = new App(new ApiClient(base), root);
  void app.start();
  return app;
}

declare global {
  interface Window {
    topovecApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.topovecApp = mount(document.getElementById("app") as HTMLElement);
}
