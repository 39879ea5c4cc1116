/**
 * Explorer application: editable model tables on the left, live mosaic,
 * Bayes-rule readout, area-ratio figure, and probability tree on the
 * right. Every displayed probability comes from a server document.
 *
 * Edits are validated against the service after a short debounce; while
 * the model is invalid the offending cells are flagged and the visual
 * panels freeze at the last valid state. Each endpoint keeps at most one
 * request in flight (latest wins), so rapid edits never interleave.
 */

import { ApiClient, ApiError } from "./api.js";
import type { ExampleEntry, ModelFile, Violation } from "./api.js";
import {
  addEvent,
  addOutcome,
  cloneModel,
  initialState,
  normalizePrior,
  normalizeRow,
  removeEvent,
  removeOutcome,
  renameEvent,
  renameOutcome,
  setConditional,
  setPrior,
  violationFlags,
  type SessionState,
} from "./state.js";
import {
  applyTableFlags,
  applyTableSelection,
  renderModelTable,
  syncTableValues,
  type TableCallbacks,
} from "./table.js";
import { renderEquation, renderMosaicSvg, renderRatioFigure, renderTreeSvg } from "./views.js";

export interface AppOptions {
  baseUrl?: string;
  /** Pause after the last keystroke before the model is validated. */
  debounceMs?: number;
  dom?: Document;
}

/** Structural placeholder shown only if the example list cannot be fetched. */
const FALLBACK_MODEL: ModelFile = {
  schema_version: 1,
  title: "blank",
  prior: [{ label: "A1", p: 1 }],
  conditional: [{ given: "A1", outcomes: [{ label: "B1", p: 1 }] }],
};

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class ExplorerApp {
  readonly api: ApiClient;
  readonly state: SessionState;
  examples: ExampleEntry[] = [];

  private readonly dom: Document;
  private readonly debounceMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  /** Async pipelines currently executing (validate or refresh). */
  private working = 0;
  /** Cells whose text cannot be read as a number, keyed prior:i / cond:i:j. */
  private readonly unparseable = new Set<string>();

  private menu!: HTMLSelectElement;
  private banner!: HTMLElement;
  private tableHost!: HTMLElement;
  private violationsList!: HTMLElement;
  private frozenNote!: HTMLElement;
  private mosaicHost!: HTMLElement;
  private equationHost!: HTMLElement;
  private ratioHost!: HTMLElement;
  private treeHost!: HTMLElement;
  private viewHosts: HTMLElement[] = [];

  constructor(readonly root: HTMLElement, options: AppOptions = {}) {
    this.api = new ApiClient(options.baseUrl ?? "");
    this.debounceMs = options.debounceMs ?? 250;
    this.dom = options.dom ?? root.ownerDocument;
    this.state = initialState(cloneModel(FALLBACK_MODEL));
    this.buildShell();
  }

  // ---------------------------------------------------------------- shell

  private el(tag: string, className: string, parent: Element, text = ""): HTMLElement {
    const node = this.dom.createElement(tag) as HTMLElement;
    node.className = className;
    if (text) {
      node.textContent = text;
    }
    parent.appendChild(node);
    return node;
  }

  private buildShell(): void {
    this.root.textContent = "";

    const header = this.el("header", "app-header", this.root);
    this.el("h1", "app-title", header, "Bayes Mosaic Explorer");
    const picker = this.el("label", "example-picker", header, "example ");
    this.menu = this.dom.createElement("select");
    this.menu.className = "example-menu";
    this.menu.addEventListener("change", () => {
      void this.loadExample(this.menu.value);
    });
    picker.appendChild(this.menu);

    this.banner = this.el("div", "banner", this.root);
    this.banner.hidden = true;

    const main = this.el("main", "app-main", this.root);

    const tablePanel = this.el("section", "panel table-panel", main);
    this.el("h2", "panel-title", tablePanel, "model");
    this.tableHost = this.el("div", "table-host", tablePanel);
    this.violationsList = this.el("ul", "violations", tablePanel);
    this.violationsList.hidden = true;
    this.frozenNote = this.el(
      "div",
      "frozen-note",
      tablePanel,
      "model is invalid; views show the last valid state",
    );
    this.frozenNote.hidden = true;

    const mosaicPanel = this.el("section", "panel mosaic-panel", main);
    this.el("h2", "panel-title", mosaicPanel, "mosaic");
    this.mosaicHost = this.el("div", "view-host mosaic-host", mosaicPanel);

    const equationPanel = this.el("section", "panel equation-panel", main);
    this.el("h2", "panel-title", equationPanel, "Bayes' rule");
    this.equationHost = this.el("div", "view-host equation-host", equationPanel);

    const ratioPanel = this.el("section", "panel ratio-panel", main);
    this.el("h2", "panel-title", ratioPanel, "ratio of areas");
    this.ratioHost = this.el("div", "view-host ratio-host", ratioPanel);

    const treePanel = this.el("section", "panel tree-panel", main);
    this.el("h2", "panel-title", treePanel, "probability tree");
    this.treeHost = this.el("div", "view-host tree-host", treePanel);

    this.viewHosts = [this.mosaicHost, this.equationHost, this.ratioHost, this.treeHost];
  }

  // ------------------------------------------------------------- examples

  async start(): Promise<void> {
    try {
      const doc = await this.api.examples();
      this.examples = doc.examples;
    } catch (error) {
      this.showBanner(`cannot reach the model service: ${(error as Error).message}`);
      this.examples = [];
    }
    this.menu.textContent = "";
    for (const example of this.examples) {
      const option = this.dom.createElement("option");
      option.value = example.name;
      option.textContent = example.title || example.name;
      this.menu.appendChild(option);
    }
    if (this.examples.length > 0) {
      await this.loadExample(this.examples[0].name);
    } else {
      this.rebuildTable();
    }
  }

  async loadExample(name: string): Promise<void> {
    const example = this.examples.find((e) => e.name === name);
    if (!example) {
      this.showBanner(`no bundled example named ${name}`);
      return;
    }
    this.menu.value = name;
    this.state.model = cloneModel(example.model);
    this.state.selectedEvent = null;
    this.state.selectedOutcome = null;
    this.unparseable.clear();
    this.clearBanner();
    this.rebuildTable();
    await this.validateNow();
  }

  // ---------------------------------------------------------------- table

  private get tableCallbacks(): TableCallbacks {
    return {
      onPrior: (i, value, _text) => {
        if (value === null) {
          this.unparseable.add(`prior:${i}`);
        } else {
          this.unparseable.delete(`prior:${i}`);
          this.state.model = setPrior(this.state.model, i, value);
        }
        this.scheduleValidate();
      },
      onConditional: (i, j, value, _text) => {
        if (value === null) {
          this.unparseable.add(`cond:${i}:${j}`);
        } else {
          this.unparseable.delete(`cond:${i}:${j}`);
          this.state.model = setConditional(this.state.model, i, j, value);
        }
        this.scheduleValidate();
      },
      onRenameEvent: (i, text) => {
        this.state.model = renameEvent(this.state.model, i, text);
        this.scheduleValidate();
      },
      onRenameOutcome: (j, text) => {
        this.state.model = renameOutcome(this.state.model, j, text);
        this.scheduleValidate();
      },
      onSelectEvent: (i) => {
        this.selectEvent(i);
      },
      onSelectOutcome: (j) => {
        this.selectOutcome(j);
      },
      onNormalizePrior: () => {
        this.state.model = normalizePrior(this.state.model);
        for (const key of [...this.unparseable]) {
          if (key.startsWith("prior:")) {
            this.unparseable.delete(key);
          }
        }
        syncTableValues(this.tableHost, this.state.model);
        void this.validateNow();
      },
      onNormalizeRow: (i) => {
        this.state.model = normalizeRow(this.state.model, i);
        for (const key of [...this.unparseable]) {
          if (key.startsWith(`cond:${i}:`)) {
            this.unparseable.delete(key);
          }
        }
        syncTableValues(this.tableHost, this.state.model);
        void this.validateNow();
      },
      onAddEvent: () => {
        this.state.model = addEvent(this.state.model);
        this.afterStructureChange();
      },
      onAddOutcome: () => {
        this.state.model = addOutcome(this.state.model);
        this.afterStructureChange();
      },
      onRemoveEvent: (i) => {
        this.state.model = removeEvent(this.state.model, i);
        this.state.selectedEvent = this.dropIndex(this.state.selectedEvent, i);
        this.afterStructureChange();
      },
      onRemoveOutcome: (j) => {
        this.state.model = removeOutcome(this.state.model, j);
        this.state.selectedOutcome = this.dropIndex(this.state.selectedOutcome, j);
        if (this.state.selectedOutcome === null) {
          this.state.selectedEvent = null;
        }
        this.afterStructureChange();
      },
    };
  }

  private dropIndex(selected: number | null, removed: number): number | null {
    if (selected === null || selected === removed) {
      return null;
    }
    return selected > removed ? selected - 1 : selected;
  }

  private afterStructureChange(): void {
    this.unparseable.clear();
    this.rebuildTable();
    void this.validateNow();
  }

  private rebuildTable(): void {
    this.tableHost.textContent = "";
    this.tableHost.appendChild(renderModelTable(this.state.model, this.tableCallbacks, this.dom));
    applyTableSelection(this.tableHost, this.state.selectedEvent, this.state.selectedOutcome);
  }

  // ------------------------------------------------------------ selection

  selectOutcome(j: number): void {
    this.state.selectedOutcome = this.state.selectedOutcome === j ? null : j;
    if (this.state.selectedOutcome === null) {
      this.state.selectedEvent = null;
    }
    this.afterSelectionChange();
  }

  selectEvent(i: number): void {
    this.state.selectedEvent = this.state.selectedEvent === i ? null : i;
    this.afterSelectionChange();
  }

  /** A mosaic tile names both its event and its outcome. */
  private selectTile(a: number, b: number): void {
    this.state.selectedOutcome = b;
    this.state.selectedEvent = a;
    this.afterSelectionChange();
  }

  private afterSelectionChange(): void {
    applyTableSelection(this.tableHost, this.state.selectedEvent, this.state.selectedOutcome);
    if (this.timer === null && !this.state.frozen && this.state.validation?.valid) {
      void this.runPipeline(() => this.refresh());
    }
    // While invalid or mid-edit the views stay frozen; the pending
    // validation pass applies the new selection once the model is valid.
  }

  // ------------------------------------------------------------- pipeline

  private scheduleValidate(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.runPipeline(() => this.validateAndRefresh());
    }, this.debounceMs);
  }

  async validateNow(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    await this.runPipeline(() => this.validateAndRefresh());
  }

  private async runPipeline(step: () => Promise<void>): Promise<void> {
    this.working += 1;
    try {
      await step();
    } catch (error) {
      this.showBanner(`service error: ${(error as Error).message}`);
    } finally {
      this.working -= 1;
    }
  }

  private async validateAndRefresh(): Promise<void> {
    if (this.unparseable.size > 0) {
      this.state.frozen = true;
      this.state.validation = null;
      applyTableFlags(this.tableHost, null, this.unparseable);
      this.showViolations([
        { where: "model", message: "highlighted entries are not numbers" },
      ]);
      this.setFrozen(true);
      return;
    }
    const snapshot = this.state.model;
    let doc;
    try {
      doc = await this.api.validate(snapshot);
    } catch (error) {
      if (error instanceof ApiError) {
        this.showBanner(`validation failed: ${error.message}`);
        return;
      }
      throw error;
    }
    if (doc === null || this.state.model !== snapshot) {
      return; // superseded by a newer edit
    }
    this.state.validation = doc;
    if (!doc.valid) {
      this.state.frozen = true;
      applyTableFlags(this.tableHost, violationFlags(doc.violations), this.unparseable);
      this.showViolations(doc.violations);
      this.setFrozen(true);
      return;
    }
    this.state.frozen = false;
    applyTableFlags(this.tableHost, null);
    this.showViolations([]);
    this.clearBanner();
    await this.refresh();
    this.setFrozen(false);
  }

  /** Fetch every document the current selection needs, then redraw. */
  private async refresh(): Promise<void> {
    const model = this.state.model;
    const outcome =
      this.state.selectedOutcome !== null
        ? model.conditional[0].outcomes[this.state.selectedOutcome].label
        : null;
    const event =
      this.state.selectedEvent !== null ? model.prior[this.state.selectedEvent].label : null;

    let equationError: string | null = null;
    const grab = async <T>(call: Promise<T | null>): Promise<T | null | undefined> => {
      try {
        return await call;
      } catch (error) {
        if (error instanceof ApiError && error.status === 422) {
          equationError = error.message;
          return undefined;
        }
        throw error;
      }
    };

    const [mosaic, tree, posterior, ratio] = await Promise.all([
      grab(this.api.layout(model, outcome ?? undefined)),
      grab(this.api.tree(model)),
      outcome !== null ? grab(this.api.posterior(model, outcome)) : Promise.resolve(undefined),
      outcome !== null && event !== null
        ? grab(this.api.ratio(model, outcome, event))
        : Promise.resolve(undefined),
    ]);

    if (this.state.model !== model) {
      return; // superseded mid-flight
    }
    if (mosaic !== null && mosaic !== undefined) {
      this.state.mosaic = mosaic;
    }
    if (tree !== null && tree !== undefined) {
      this.state.tree = tree;
    }
    if (mosaic === null || tree === null) {
      return; // a newer refresh owns the redraw
    }
    this.state.posterior = posterior === null ? this.state.posterior : (posterior ?? null);
    this.state.ratio = ratio === null ? this.state.ratio : (ratio ?? null);
    this.redraw(equationError);
  }

  // --------------------------------------------------------------- redraw

  private redraw(equationError: string | null): void {
    const { mosaic, posterior, ratio, tree, selectedEvent, selectedOutcome } = this.state;

    this.mosaicHost.textContent = "";
    if (mosaic) {
      const svg = renderMosaicSvg(
        mosaic,
        { onTileClick: (a, b) => this.selectTile(a, b) },
        this.dom,
      );
      if (selectedEvent !== null && selectedOutcome !== null) {
        svg
          .querySelector(`rect.tile[data-a="${selectedEvent}"][data-b="${selectedOutcome}"]`)
          ?.classList.add("numerator");
      }
      this.mosaicHost.appendChild(svg);
      if (mosaic.given !== undefined && mosaic.marginal !== undefined) {
        this.el(
          "div",
          "mosaic-note",
          this.mosaicHost,
          `shaded: every cell of ${mosaic.given}`,
        );
      }
    }

    this.equationHost.textContent = "";
    if (equationError) {
      this.el("div", "equation-error", this.equationHost, equationError);
    } else if (posterior && selectedOutcome !== null) {
      const focusLabel = selectedEvent !== null ? posterior.terms[selectedEvent]?.label ?? null : null;
      this.equationHost.appendChild(renderEquation(posterior, focusLabel, this.dom));
    } else {
      this.el(
        "div",
        "hint",
        this.equationHost,
        "Click an outcome (column head or tile) to condition on it.",
      );
    }

    this.ratioHost.textContent = "";
    if (!equationError && ratio && selectedOutcome !== null && selectedEvent !== null) {
      this.ratioHost.appendChild(renderRatioFigure(ratio, this.dom));
    } else {
      this.el(
        "div",
        "hint",
        this.ratioHost,
        "Select an event and an outcome to see the posterior as a ratio of areas.",
      );
    }

    this.treeHost.textContent = "";
    if (tree) {
      this.treeHost.appendChild(renderTreeSvg(tree, this.dom));
    }
  }

  private setFrozen(on: boolean): void {
    this.frozenNote.hidden = !on;
    for (const host of this.viewHosts) {
      host.classList.toggle("frozen", on);
    }
  }

  private showViolations(violations: Violation[]): void {
    this.violationsList.textContent = "";
    this.violationsList.hidden = violations.length === 0;
    for (const v of violations) {
      const li = this.el("li", "violation", this.violationsList, `${v.where}: ${v.message}`);
      li.dataset.where = v.where;
    }
  }

  private showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private clearBanner(): void {
    this.banner.textContent = "";
    this.banner.hidden = true;
  }

  // ----------------------------------------------------------------- sync

  /** Resolves once no debounce is pending and no request is in flight. */
  async whenIdle(): Promise<void> {
    for (;;) {
      if (this.timer === null && this.working === 0 && !this.api.busy) {
        await sleep(0);
        if (this.timer === null && this.working === 0 && !this.api.busy) {
          return;
        }
      }
      await sleep(4);
    }
  }
}

export async function createApp(root: HTMLElement, options: AppOptions = {}): Promise<ExplorerApp> {
  const app = new ExplorerApp(root, options);
  await app.start();
  return app;
}
