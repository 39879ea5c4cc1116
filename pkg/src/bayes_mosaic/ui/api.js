/**
 * Typed client for the mosaic service.
 *
 * All probability arithmetic happens server-side; this module only moves
 * documents. Each endpoint allows at most one in-flight request: firing a
 * new one aborts its predecessor, and an aborted call resolves to null so
 * callers can drop stale work (latest wins).
 */
/** Server said no: carries the HTTP status and any validation report. */
export class ApiError extends Error {
    constructor(status, message, violations = []) {
        super(message);
        this.name = "ApiError";
        this.status = status;
        this.violations = violations;
    }
}
export class ApiClient {
    constructor(baseUrl = "") {
        this.inFlight = new Map();
        this.baseUrl = baseUrl.replace(/\/$/, "");
    }
    /** True while any endpoint has an unresolved request. */
    get busy() {
        return this.inFlight.size > 0;
    }
    async examples() {
        const response = await fetch(`${this.baseUrl}/api/examples`);
        if (!response.ok) {
            throw new ApiError(response.status, `cannot list examples (${response.status})`);
        }
        return (await response.json());
    }
    validate(model) {
        return this.post("/api/validate", { model });
    }
    layout(model, given) {
        const body = { model };
        if (given !== undefined) {
            body.given = given;
        }
        return this.post("/api/layout", body);
    }
    posterior(model, given) {
        return this.post("/api/posterior", { model, given });
    }
    ratio(model, given, of) {
        return this.post("/api/ratio", { model, given, of });
    }
    tree(model) {
        return this.post("/api/tree", { model });
    }
    /** POST one document; resolves null when superseded by a newer call. */
    async post(path, body) {
        this.inFlight.get(path)?.abort();
        const controller = new AbortController();
        this.inFlight.set(path, controller);
        try {
            const response = await fetch(`${this.baseUrl}${path}`, {
                method: "POST",
                headers: { "Content-Type": "application/json" },
                body: JSON.stringify(body),
                signal: controller.signal,
            });
            const payload = await response.json();
            if (!response.ok) {
                const err = payload;
                throw new ApiError(response.status, err.error ?? `request failed (${response.status})`, err.violations ?? []);
            }
            return payload;
        }
        catch (error) {
            // Abort errors are matched by name: the DOMException class differs
            // between the page realm and the fetch implementation's realm.
            if (error instanceof Error && error.name === "AbortError") {
                return null;
            }
            throw error;
        }
        finally {
            if (this.inFlight.get(path) === controller) {
                this.inFlight.delete(path);
            }
        }
    }
}
