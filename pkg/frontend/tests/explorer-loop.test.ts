// @vitest-environment jsdom
//
// Scripted walk through the explorer against a real service process:
// the page DOM runs in this test (jsdom), every number on it comes from
// the spawned HTTP server, and the full condition/focus/edit loop is
// exercised end to end.

import { spawn, type ChildProcess } from "node:child_process";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createApp, type ExplorerApp } from "../src/app.js";

let proc: ChildProcess;
let baseUrl = "";

beforeAll(async () => {
  proc = spawn(
    "python3",
    ["-m", "bayes_mosaic", "serve", "--host", "127.0.0.1", "--port", "0"],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  baseUrl = await new Promise<string>((resolve, reject) => {
    let buf = "";
    proc.stdout!.on("data", (chunk: Buffer) => {
      buf += String(chunk);
      const found = /serving on (http:\/\/[^/\s]+)\//.exec(buf);
      if (found) {
        resolve(found[1]);
      }
    });
    proc.stderr!.on("data", (chunk: Buffer) => {
      buf += String(chunk);
    });
    proc.on("exit", (code) => reject(new Error(`service exited early (${code}): ${buf}`)));
    setTimeout(() => reject(new Error(`service start timed out: ${buf}`)), 15000);
  });
});

afterAll(() => {
  proc?.kill();
});

async function mount(): Promise<{ app: ExplorerApp; root: HTMLElement }> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const app = await createApp(root, { baseUrl, debounceMs: 30 });
  await app.whenIdle();
  return { app, root };
}

function click(el: Element | null): void {
  expect(el, "expected a clickable element").not.toBeNull();
  el!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

function type(root: HTMLElement, selector: string, text: string): void {
  const input = root.querySelector<HTMLInputElement>(selector);
  expect(input, `no input matches ${selector}`).not.toBeNull();
  input!.value = text;
  input!.dispatchEvent(new Event("input", { bubbles: true }));
}

const outcomeHead = (root: HTMLElement, j: number) =>
  root.querySelector(`th.outcome-head[data-outcome-index="${j}"]`);
const eventHead = (root: HTMLElement, i: number) =>
  root.querySelector(`th.event-head[data-event-index="${i}"]`);
const mosaicTiles = (root: HTMLElement) =>
  root.querySelectorAll(".mosaic-host rect.tile");

describe("explorer against the live service", () => {
  it("offers exactly the bundled models and shows the first one", async () => {
    const { app, root } = await mount();
    const options = [...root.querySelectorAll<HTMLOptionElement>(".example-menu option")];
    expect(options.map((o) => o.value)).toEqual(["example1", "example2"]);
    expect(mosaicTiles(root)).toHaveLength(6);
    expect(root.querySelectorAll(".tree-host circle.node")).toHaveLength(9);
    expect(root.querySelector(".equation-host .hint")).not.toBeNull();
    expect(app.state.frozen).toBe(false);
  });

  it("switching examples swaps the whole model", async () => {
    const { app, root } = await mount();
    const menu = root.querySelector<HTMLSelectElement>(".example-menu")!;
    menu.value = "example2";
    menu.dispatchEvent(new Event("change", { bubbles: true }));
    await app.whenIdle();
    expect(mosaicTiles(root)).toHaveLength(16);
    expect(root.querySelectorAll("th.event-head")).toHaveLength(4);
  });

  it("conditions on an outcome, then focuses an event (the guided read-off)", async () => {
    const { app, root } = await mount();

    click(outcomeHead(root, 1)); // B2
    await app.whenIdle();
    const shaded = root.querySelectorAll(".mosaic-host rect.tile.highlighted");
    expect(shaded).toHaveLength(2);
    for (const rect of shaded) {
      expect(rect.getAttribute("data-b")).toBe("1");
    }
    expect(root.querySelector(".equation-host .marginal-line")!.textContent).toBe(
      "P(B2) = 0.2000",
    );

    click(eventHead(root, 0)); // A1
    await app.whenIdle();
    const focus = root.querySelector(".equation-host .posterior-line.focus")!;
    expect(focus.textContent).toBe("P(A1|B2) = 0.1800 / 0.2000 = 0.9000");
    expect(root.querySelector(".ratio-annotation")!.textContent).toBe(
      "P(A1|B2) = 0.1800 / 0.2000 = 0.9000",
    );
    const numerator = root.querySelectorAll(".ratio-numerator rect.tile.highlighted");
    expect(numerator).toHaveLength(1);
    expect(numerator[0].classList.contains("numerator")).toBe(true);
    expect(root.querySelectorAll(".ratio-denominator rect.tile.highlighted")).toHaveLength(2);
    const marked = root.querySelector('.mosaic-host rect.tile.numerator')!;
    expect(marked.getAttribute("data-a")).toBe("0");
    expect(marked.getAttribute("data-b")).toBe("1");
  });

  it("breaking normalization flags the prior and freezes the views", async () => {
    const { app, root } = await mount();
    click(outcomeHead(root, 1));
    await app.whenIdle();
    click(eventHead(root, 0));
    await app.whenIdle();
    const mosaicBefore = root.querySelector(".mosaic-host")!.innerHTML;

    type(root, 'input.prob-input[data-kind="prior"][data-i="0"]', "0.95");
    await app.whenIdle();
    expect(app.state.frozen).toBe(true);
    expect(root.querySelectorAll("td.prior-cell.flagged")).toHaveLength(2);
    expect(root.querySelectorAll("td.cond-cell.flagged")).toHaveLength(0);
    const violations = root.querySelector(".violations")!;
    expect(violations.textContent).toContain("prior: probabilities sum to 1.05");
    expect((root.querySelector(".frozen-note") as HTMLElement).hidden).toBe(false);
    for (const host of root.querySelectorAll(".view-host")) {
      expect(host.classList.contains("frozen")).toBe(true);
    }
    expect(root.querySelector(".mosaic-host")!.innerHTML).toBe(mosaicBefore);
    expect(root.querySelector(".ratio-annotation")!.textContent).toBe(
      "P(A1|B2) = 0.1800 / 0.2000 = 0.9000",
    );

    type(root, 'input.prob-input[data-kind="prior"][data-i="0"]', "0.9");
    await app.whenIdle();
    expect(app.state.frozen).toBe(false);
    expect(root.querySelectorAll("td.prob-cell.flagged")).toHaveLength(0);
    expect((root.querySelector(".frozen-note") as HTMLElement).hidden).toBe(true);
    for (const host of root.querySelectorAll(".view-host")) {
      expect(host.classList.contains("frozen")).toBe(false);
    }
    expect(root.querySelector(".equation-host .posterior-line.focus")!.textContent).toBe(
      "P(A1|B2) = 0.1800 / 0.2000 = 0.9000",
    );
  });

  it("a mosaic tile click selects the same entities as the table heads", async () => {
    const { app, root } = await mount();
    click(root.querySelector('.mosaic-host rect.tile[data-a="1"][data-b="2"]'));
    await app.whenIdle();
    expect(app.state.selectedEvent).toBe(1);
    expect(app.state.selectedOutcome).toBe(2);
    expect(eventHead(root, 1)!.classList.contains("selected")).toBe(true);
    expect(outcomeHead(root, 2)!.classList.contains("selected")).toBe(true);
    expect(root.querySelector(".equation-host .posterior-line.focus")!.textContent).toBe(
      "P(A2|B3) = 0.0200 / 0.1100 = 0.1818",
    );

    click(outcomeHead(root, 2)); // toggle the outcome off
    await app.whenIdle();
    expect(app.state.selectedOutcome).toBeNull();
    expect(app.state.selectedEvent).toBeNull();
    expect(root.querySelector(".equation-host .hint")).not.toBeNull();
    expect(root.querySelectorAll(".mosaic-host rect.tile.highlighted")).toHaveLength(0);
  });

  it("normalize row repairs a broken conditional row", async () => {
    const { app, root } = await mount();
    type(root, 'input.prob-input[data-kind="cond"][data-i="0"][data-j="0"]', "0.8");
    await app.whenIdle();
    expect(app.state.frozen).toBe(true);
    expect(root.querySelectorAll('td.cond-cell.flagged[data-i="0"]')).toHaveLength(3);

    click(root.querySelector('button.normalize-row[data-i="0"]'));
    await app.whenIdle();
    expect(app.state.frozen).toBe(false);
    expect(root.querySelectorAll("td.prob-cell.flagged")).toHaveLength(0);
    const fixed = root.querySelector<HTMLInputElement>(
      'input.prob-input[data-kind="cond"][data-i="0"][data-j="0"]',
    )!;
    expect(fixed.value).toBe(String(0.8 / 1.1));
    expect(mosaicTiles(root)).toHaveLength(6);
  });

  it("grows the model with the add buttons and normalize prior", async () => {
    const { app, root } = await mount();
    click(root.querySelector("button.add-event"));
    await app.whenIdle();
    expect(root.querySelectorAll("th.event-head")).toHaveLength(3);
    expect(app.state.frozen).toBe(false);
    expect(app.state.mosaic!.tiles).toHaveLength(9);
    // the new event has prior 0, so its column renders no tiles yet
    expect(mosaicTiles(root)).toHaveLength(6);

    type(root, 'input.prob-input[data-kind="prior"][data-i="2"]', "0.2");
    await app.whenIdle();
    expect(app.state.frozen).toBe(true);

    click(root.querySelector("button.normalize-prior"));
    await app.whenIdle();
    expect(app.state.frozen).toBe(false);
    expect(mosaicTiles(root)).toHaveLength(9);

    click(root.querySelector("button.add-outcome"));
    await app.whenIdle();
    expect(app.state.mosaic!.tiles).toHaveLength(12);
    expect(mosaicTiles(root)).toHaveLength(9); // zero-probability column is invisible
    expect(root.querySelectorAll(".tree-host circle.node")).toHaveLength(1 + 3 + 12);
  });

  it("text that is not a number freezes updates without calling the engine", async () => {
    const { app, root } = await mount();
    type(root, 'input.prob-input[data-kind="prior"][data-i="0"]', "0.9x");
    await app.whenIdle();
    expect(app.state.frozen).toBe(true);
    expect(root.querySelectorAll('td.prior-cell.flagged')).toHaveLength(1);
    expect(root.querySelector(".violations")!.textContent).toContain("not numbers");

    type(root, 'input.prob-input[data-kind="prior"][data-i="0"]', "0.9");
    await app.whenIdle();
    expect(app.state.frozen).toBe(false);
    expect(root.querySelectorAll("td.prob-cell.flagged")).toHaveLength(0);
  });

  it("an unreachable service produces a banner, not a broken page", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = await createApp(root, { baseUrl: "http://127.0.0.1:9", debounceMs: 30 });
    await app.whenIdle();
    const banner = root.querySelector(".banner") as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("cannot reach the model service");
    expect(root.querySelectorAll(".example-menu option")).toHaveLength(0);
  });
});
