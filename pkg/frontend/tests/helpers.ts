// Shared test scaffolding: a fetch stub that replays recorded service
// responses, keyed by method and path.

import fixtures from "../fixtures/vectorize_fixtures.json";

type Handler = (body: unknown) => { status: number; payload: unknown } | undefined;

export { fixtures };

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** A fetch replacement that dispatches on URL + parsed JSON body. */
export function fetchStub(handler: {
  methods?: () => unknown;
  barcode?: Handler;
  vectorize?: Handler;
  fit?: Handler;
}): (input: string, init?: RequestInit) => Promise<Response> {
  return async (input, init) => {
    const body = init?.body && typeof init.body === "string" && init.body.startsWith("{")
      ? JSON.parse(init.body)
      : init?.body;
    if (input.includes("/v1/methods")) {
      return jsonResponse({ methods: handler.methods ? handler.methods() : fixtures.methods });
    }
    for (const [fragment, fn] of [
      ["/v1/barcode", handler.barcode],
      ["/v1/vectorize", handler.vectorize],
      ["/v1/fit", handler.fit],
    ] as const) {
      if (input.includes(fragment)) {
        const result = fn?.(body);
        if (!result) break;
        return jsonResponse(result.payload, result.status);
      }
    }
    return jsonResponse({ error: `no stub for ${input}` }, 404);
  };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
