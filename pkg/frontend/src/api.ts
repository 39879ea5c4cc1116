/**
 * Typed client for the mosaic service.
 *
 * All probability arithmetic happens server-side; this module only moves
 * documents. Each endpoint allows at most one in-flight request: firing a
 * new one aborts its predecessor, and an aborted call resolves to null so
 * callers can drop stale work (latest wins).
 */

export interface WireEntry {
  label: string;
  p: number;
}

export interface WireConditionalRow {
  given: string;
  outcomes: WireEntry[];
}

export interface ModelFile {
  schema_version: number;
  title?: string;
  prior: WireEntry[];
  conditional: WireConditionalRow[];
}

export interface Violation {
  where: string;
  message: string;
}

export interface ValidationDoc {
  schema_version: number;
  kind: "validation";
  valid: boolean;
  violations: Violation[];
}

export interface TileDoc {
  a: number;
  b: number;
  a_label: string;
  b_label: string;
  x: number;
  y: number;
  width: number;
  height: number;
  area: number;
}

export interface HighlightDoc {
  numerator: [number, number] | null;
  denominator: [number, number][];
}

export interface MosaicDoc {
  schema_version: number;
  kind: "mosaic";
  orientation: string;
  a_labels: string[];
  b_labels: string[];
  column_edges: number[];
  tiles: TileDoc[];
  highlight: HighlightDoc | null;
  given?: string;
  marginal?: number;
}

export interface PosteriorTerm {
  label: string;
  numerator: number;
  posterior: number;
}

export interface PosteriorDoc {
  schema_version: number;
  kind: "posterior";
  given: string;
  denominator: number;
  terms: PosteriorTerm[];
}

export interface RatioQuery {
  a: number;
  b: number;
  a_label: string;
  b_label: string;
}

export interface RatioDoc {
  schema_version: number;
  kind: "ratio";
  query: RatioQuery;
  value: number;
  numerator_area: number;
  denominator_area: number;
  numerator: MosaicDoc;
  denominator: MosaicDoc;
}

export interface TreeNodeDoc {
  id: string;
  depth: number;
  a: number | null;
  b: number | null;
  x: number;
  y: number;
  label: string;
}

export interface TreeEdgeDoc {
  parent: string;
  child: string;
  p: number;
}

export interface TreeLeafDoc {
  a: number;
  b: number;
  path_prob: number;
}

export interface TreeDoc {
  schema_version: number;
  kind: "tree";
  a_labels: string[];
  b_labels: string[];
  nodes: TreeNodeDoc[];
  edges: TreeEdgeDoc[];
  leaves: TreeLeafDoc[];
}

export interface ExampleEntry {
  name: string;
  title: string;
  model: ModelFile;
}

export interface ExamplesDoc {
  schema_version: number;
  kind: "examples";
  examples: ExampleEntry[];
}

/** Server said no: carries the HTTP status and any validation report. */
export class ApiError extends Error {
  readonly status: number;
  readonly violations: Violation[];

  constructor(status: number, message: string, violations: Violation[] = []) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.violations = violations;
  }
}

interface ErrorPayload {
  error?: string;
  violations?: Violation[];
}

export class ApiClient {
  readonly baseUrl: string;
  private readonly inFlight = new Map<string, AbortController>();

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  /** True while any endpoint has an unresolved request. */
  get busy(): boolean {
    return this.inFlight.size > 0;
  }

  async examples(): Promise<ExamplesDoc> {
    const response = await fetch(`${this.baseUrl}/api/examples`);
    if (!response.ok) {
      throw new ApiError(response.status, `cannot list examples (${response.status})`);
    }
    return (await response.json()) as ExamplesDoc;
  }

  validate(model: ModelFile): Promise<ValidationDoc | null> {
    return this.post<ValidationDoc>("/api/validate", { model });
  }

  layout(model: ModelFile, given?: string): Promise<MosaicDoc | null> {
    const body: Record<string, unknown> = { model };
    if (given !== undefined) {
      body.given = given;
    }
    return this.post<MosaicDoc>("/api/layout", body);
  }

  posterior(model: ModelFile, given: string): Promise<PosteriorDoc | null> {
    return this.post<PosteriorDoc>("/api/posterior", { model, given });
  }

  ratio(model: ModelFile, given: string, of: string): Promise<RatioDoc | null> {
    return this.post<RatioDoc>("/api/ratio", { model, given, of });
  }

  tree(model: ModelFile): Promise<TreeDoc | null> {
    return this.post<TreeDoc>("/api/tree", { model });
  }

  /** POST one document; resolves null when superseded by a newer call. */
  private async post<T>(path: string, body: unknown): Promise<T | null> {
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
      const payload: unknown = await response.json();
      if (!response.ok) {
        const err = payload as ErrorPayload;
        throw new ApiError(
          response.status,
          err.error ?? `request failed (${response.status})`,
          err.violations ?? [],
        );
      }
      return payload as T;
    } catch (error) {
      // Abort errors are matched by name: the DOMException class differs
      // between the page realm and the fetch implementation's realm.
      if (error instanceof Error && error.name === "AbortError") {
        return null;
      }
      throw error;
    } finally {
      if (this.inFlight.get(path) === controller) {
        this.inFlight.delete(path);
      }
    }
  }
}
