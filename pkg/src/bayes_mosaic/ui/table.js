/**
 * Editable model table: one column per outcome plus a prior column, one
 * row per event. Header clicks select the entity (same selection as
 * clicking a mosaic tile); inputs edit labels and probabilities.
 *
 * The table is rebuilt only on structural changes (load, add/remove).
 * Probability and label edits keep the DOM the user is typing into, and
 * validation flags / selection marks are applied in place.
 */
import { conditionalCellFlagged, priorCellFlagged } from "./state.js";
export function parseProb(text) {
    const t = text.trim();
    if (t === "") {
        return null;
    }
    const v = Number(t);
    return Number.isFinite(v) ? v : null;
}
function probInput(dom, value, data, onInput) {
    const input = dom.createElement("input");
    input.type = "text";
    input.inputMode = "decimal";
    input.className = "prob-input";
    input.value = String(value);
    for (const [k, v] of Object.entries(data)) {
        input.dataset[k] = v;
    }
    input.addEventListener("input", () => onInput(parseProb(input.value), input.value));
    return input;
}
function labelInput(dom, value, data, onInput) {
    const input = dom.createElement("input");
    input.type = "text";
    input.className = "label-input";
    input.value = value;
    for (const [k, v] of Object.entries(data)) {
        input.dataset[k] = v;
    }
    input.addEventListener("input", () => onInput(input.value));
    return input;
}
function removeButton(dom, title, onClick) {
    const button = dom.createElement("button");
    button.type = "button";
    button.className = "remove-button";
    button.title = title;
    button.textContent = "×";
    button.addEventListener("click", (event) => {
        event.stopPropagation();
        onClick();
    });
    return button;
}
export function renderModelTable(model, cb, dom = document) {
    const k = model.prior.length;
    const m = model.conditional[0]?.outcomes.length ?? 0;
    const box = dom.createElement("div");
    box.className = "model-table";
    const table = dom.createElement("table");
    const head = dom.createElement("thead");
    const headRow = dom.createElement("tr");
    const corner = dom.createElement("th");
    corner.className = "corner";
    corner.textContent = "event";
    headRow.appendChild(corner);
    const priorHead = dom.createElement("th");
    priorHead.className = "prior-head";
    priorHead.textContent = "P(event)";
    headRow.appendChild(priorHead);
    for (let j = 0; j < m; j += 1) {
        const th = dom.createElement("th");
        th.className = "outcome-head";
        th.dataset.outcomeIndex = String(j);
        th.appendChild(labelInput(dom, model.conditional[0].outcomes[j].label, { kind: "outcomeLabel", j: String(j) }, (text) => cb.onRenameOutcome(j, text)));
        if (m > 1) {
            th.appendChild(removeButton(dom, "remove outcome", () => cb.onRemoveOutcome(j)));
        }
        th.addEventListener("click", () => cb.onSelectOutcome(j));
        headRow.appendChild(th);
    }
    const actionsHead = dom.createElement("th");
    actionsHead.className = "actions-head";
    headRow.appendChild(actionsHead);
    head.appendChild(headRow);
    table.appendChild(head);
    const body = dom.createElement("tbody");
    for (let i = 0; i < k; i += 1) {
        const tr = dom.createElement("tr");
        tr.dataset.row = String(i);
        const th = dom.createElement("th");
        th.className = "event-head";
        th.dataset.eventIndex = String(i);
        th.appendChild(labelInput(dom, model.prior[i].label, { kind: "eventLabel", i: String(i) }, (text) => cb.onRenameEvent(i, text)));
        if (k > 1) {
            th.appendChild(removeButton(dom, "remove event", () => cb.onRemoveEvent(i)));
        }
        th.addEventListener("click", () => cb.onSelectEvent(i));
        tr.appendChild(th);
        const priorCell = dom.createElement("td");
        priorCell.className = "prob-cell prior-cell";
        priorCell.dataset.prior = String(i);
        priorCell.appendChild(probInput(dom, model.prior[i].p, { kind: "prior", i: String(i) }, (value, text) => cb.onPrior(i, value, text)));
        tr.appendChild(priorCell);
        for (let j = 0; j < m; j += 1) {
            const td = dom.createElement("td");
            td.className = "prob-cell cond-cell";
            td.dataset.i = String(i);
            td.dataset.j = String(j);
            td.appendChild(probInput(dom, model.conditional[i].outcomes[j].p, { kind: "cond", i: String(i), j: String(j) }, (value, text) => cb.onConditional(i, j, value, text)));
            tr.appendChild(td);
        }
        const actions = dom.createElement("td");
        actions.className = "row-actions";
        const normalize = dom.createElement("button");
        normalize.type = "button";
        normalize.className = "normalize-row";
        normalize.dataset.i = String(i);
        normalize.textContent = "normalize row";
        normalize.addEventListener("click", () => cb.onNormalizeRow(i));
        actions.appendChild(normalize);
        tr.appendChild(actions);
        body.appendChild(tr);
    }
    table.appendChild(body);
    box.appendChild(table);
    const footer = dom.createElement("div");
    footer.className = "table-actions";
    const mkButton = (cls, text, onClick) => {
        const button = dom.createElement("button");
        button.type = "button";
        button.className = cls;
        button.textContent = text;
        button.addEventListener("click", onClick);
        footer.appendChild(button);
    };
    mkButton("normalize-prior", "normalize prior", () => cb.onNormalizePrior());
    mkButton("add-event", "+ event", () => cb.onAddEvent());
    mkButton("add-outcome", "+ outcome", () => cb.onAddOutcome());
    box.appendChild(footer);
    return box;
}
/** Overwrite every input from the model (used after programmatic edits). */
export function syncTableValues(root, model) {
    for (const input of root.querySelectorAll("input.prob-input")) {
        const i = Number(input.dataset.i);
        if (input.dataset.kind === "prior") {
            input.value = String(model.prior[i].p);
        }
        else {
            input.value = String(model.conditional[i].outcomes[Number(input.dataset.j)].p);
        }
    }
    for (const input of root.querySelectorAll("input.label-input")) {
        if (input.dataset.kind === "eventLabel") {
            input.value = model.prior[Number(input.dataset.i)].label;
        }
        else {
            input.value = model.conditional[0].outcomes[Number(input.dataset.j)].label;
        }
    }
}
/**
 * Apply validation flags to cells. `extra` marks cells whose text cannot
 * be read as a number at all (flagged before the server is consulted).
 */
export function applyTableFlags(root, flags, extra = new Set()) {
    for (const td of root.querySelectorAll("td.prior-cell")) {
        const i = Number(td.dataset.prior);
        const on = extra.has(`prior:${i}`) || (flags !== null && priorCellFlagged(flags, i));
        td.classList.toggle("flagged", on);
    }
    for (const td of root.querySelectorAll("td.cond-cell")) {
        const i = Number(td.dataset.i);
        const j = Number(td.dataset.j);
        const on = extra.has(`cond:${i}:${j}`) || (flags !== null && conditionalCellFlagged(flags, i, j));
        td.classList.toggle("flagged", on);
    }
}
/** Mark the selected event row head and outcome column head. */
export function applyTableSelection(root, eventIndex, outcomeIndex) {
    for (const th of root.querySelectorAll("th.event-head")) {
        th.classList.toggle("selected", Number(th.dataset.eventIndex) === eventIndex);
    }
    for (const th of root.querySelectorAll("th.outcome-head")) {
        th.classList.toggle("selected", Number(th.dataset.outcomeIndex) === outcomeIndex);
    }
}
