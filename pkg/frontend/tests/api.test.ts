import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, type ModelFile } from "../src/api.js";

const MODEL: ModelFile = {
  schema_version: 1,
  prior: [{ label: "A1", p: 1 }],
  conditional: [{ given: "A1", outcomes: [{ label: "B1", p: 1 }] }],
};

interface PendingCall {
  url: string;
  init: RequestInit;
  respond: (status: number, body: unknown) => void;
}

/** fetch double whose responses are released by the test. */
function installFetch(): PendingCall[] {
  const calls: PendingCall[] = [];
  vi.stubGlobal(
    "fetch",
    (url: string, init: RequestInit = {}) =>
      new Promise<Response>((resolve, reject) => {
        const signal = init.signal as AbortSignal | null;
        const fail = () => reject(new DOMException("aborted", "AbortError"));
        if (signal?.aborted) {
          fail();
          return;
        }
        signal?.addEventListener("abort", fail);
        calls.push({
          url,
          init,
          respond: (status, body) =>
            resolve(
              new Response(JSON.stringify(body), {
                status,
                headers: { "Content-Type": "application/json" },
              }),
            ),
        });
      }),
  );
  return calls;
}

const VALID_DOC = { schema_version: 1, kind: "validation", valid: true, violations: [] };

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("strips a trailing slash from the base URL", () => {
    expect(new ApiClient("http://x:1/").baseUrl).toBe("http://x:1");
  });

  it("posts the model to the endpoint and returns the document", async () => {
    const calls = installFetch();
    const api = new ApiClient("http://svc");
    const pending = api.validate(MODEL);
    expect(calls[0].url).toBe("http://svc/api/validate");
    expect(JSON.parse(calls[0].init.body as string)).toEqual({ model: MODEL });
    calls[0].respond(200, VALID_DOC);
    expect(await pending).toEqual(VALID_DOC);
  });

  it("latest wins: an older in-flight request resolves to null", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    const first = api.validate(MODEL);
    const second = api.validate(MODEL);
    expect(calls).toHaveLength(2);
    calls[1].respond(200, VALID_DOC);
    expect(await first).toBeNull();
    expect(await second).toEqual(VALID_DOC);
    expect(api.busy).toBe(false);
  });

  it("different endpoints do not cancel each other", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    const validation = api.validate(MODEL);
    const tree = api.tree(MODEL);
    expect(calls).toHaveLength(2);
    calls[0].respond(200, VALID_DOC);
    calls[1].respond(200, { kind: "tree" });
    expect(await validation).toEqual(VALID_DOC);
    expect((await tree) as object).toEqual({ kind: "tree" });
  });

  it("busy reflects in-flight requests", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    expect(api.busy).toBe(false);
    const pending = api.validate(MODEL);
    expect(api.busy).toBe(true);
    calls[0].respond(200, VALID_DOC);
    await pending;
    expect(api.busy).toBe(false);
  });

  it("a server error becomes an ApiError carrying the payload", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    const pending = api.posterior(MODEL, "B9");
    calls[0].respond(422, { error: "unknown outcome label 'B9'" });
    await expect(pending).rejects.toMatchObject({
      name: "ApiError",
      status: 422,
      message: "unknown outcome label 'B9'",
    });
  });

  it("validation violations ride along on 400 responses", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    const pending = api.layout(MODEL);
    calls[0].respond(400, {
      error: "model failed validation",
      violations: [{ where: "prior", message: "probabilities sum to 1.1, expected 1" }],
    });
    try {
      await pending;
      expect.unreachable("layout should have thrown");
    } catch (error) {
      expect(error).toBeInstanceOf(ApiError);
      expect((error as ApiError).violations).toEqual([
        { where: "prior", message: "probabilities sum to 1.1, expected 1" },
      ]);
    }
  });

  it("request bodies carry the optional fields", async () => {
    const calls = installFetch();
    const api = new ApiClient();
    void api.layout(MODEL, "B1");
    void api.ratio(MODEL, "B1", "A1");
    expect(JSON.parse(calls[0].init.body as string)).toEqual({ model: MODEL, given: "B1" });
    expect(JSON.parse(calls[1].init.body as string)).toEqual({
      model: MODEL,
      given: "B1",
      of: "A1",
    });
  });
});
