// Thin client for the /v1 service.  All numbers displayed anywhere in the UI
// come back through these calls; the client never recomputes anything.

import type {
  BarcodeResponse,
  Dataset,
  FitResponse,
  MethodInfo,
  VectorizeRequest,
  VectorizeResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function unwrap<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let message = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { error?: string };
      if (body.error) message = body.error;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, message);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async getMethods(): Promise<MethodInfo[]> {
    const payload = await unwrap<{ methods: MethodInfo[] }>(
      await this.fetchFn(`${this.base}/v1/methods`),
    );
    return payload.methods;
  }

  async computeBarcode(dataset: Dataset, dims: number[] = [0, 1]): Promise<BarcodeResponse> {
    const query = `?dims=${dims.join(",")}`;
    if (dataset.kind === "barcode") {
      return unwrap(
        await this.fetchFn(`${this.base}/v1/barcode${query}&kind=barcode`, {
          method: "POST",
          headers: { "content-type": "text/csv" },
          body: dataset.payload as string,
        }),
      );
    }
    return unwrap(
      await this.fetchFn(`${this.base}/v1/barcode${query}`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(dataset.payload),
      }),
    );
  }

  async vectorize(request: VectorizeRequest): Promise<VectorizeResponse> {
    return unwrap(
      await this.fetchFn(`${this.base}/v1/vectorize`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
  }

  async fit(request: {
    method: string;
    params: Record<string, number | string>;
    training: unknown[];
    seed?: number;
    fit_dim?: number;
  }): Promise<FitResponse> {
    return unwrap(
      await this.fetchFn(`${this.base}/v1/fit`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      }),
    );
  }
}
