/**
 * Session state and pure model-editing helpers.
 *
 * The editable model mirrors the wire format exactly. Every helper returns
 * a fresh ModelFile, leaving the input untouched, so views can compare
 * before/after by reference. Displayed probabilities always come from
 * server documents; the only client-side arithmetic is the normalize-row
 * edit helper, which produces new *inputs* for the server to check.
 */
export function initialState(model) {
    return {
        model,
        selectedOutcome: null,
        selectedEvent: null,
        validation: null,
        mosaic: null,
        posterior: null,
        ratio: null,
        tree: null,
        frozen: false,
        banner: null,
    };
}
export function cloneModel(model) {
    return {
        schema_version: model.schema_version,
        ...(model.title !== undefined ? { title: model.title } : {}),
        prior: model.prior.map((e) => ({ ...e })),
        conditional: model.conditional.map((row) => ({
            given: row.given,
            outcomes: row.outcomes.map((o) => ({ ...o })),
        })),
    };
}
export function setPrior(model, i, p) {
    const next = cloneModel(model);
    next.prior[i].p = p;
    return next;
}
export function setConditional(model, i, j, p) {
    const next = cloneModel(model);
    next.conditional[i].outcomes[j].p = p;
    return next;
}
export function renameEvent(model, i, text) {
    const next = cloneModel(model);
    next.prior[i].label = text;
    next.conditional[i].given = text;
    return next;
}
export function renameOutcome(model, j, text) {
    const next = cloneModel(model);
    for (const row of next.conditional) {
        row.outcomes[j].label = text;
    }
    return next;
}
function freshLabel(existing, stem) {
    let n = existing.length + 1;
    while (existing.includes(`${stem}${n}`)) {
        n += 1;
    }
    return `${stem}${n}`;
}
/** Append an event with prior 0 and a uniform conditional row. */
export function addEvent(model) {
    const next = cloneModel(model);
    const label = freshLabel(next.prior.map((e) => e.label), "A");
    const m = next.conditional[0]?.outcomes.length ?? 0;
    next.prior.push({ label, p: 0 });
    next.conditional.push({
        given: label,
        outcomes: m > 0
            ? next.conditional[0].outcomes.map((o) => ({ label: o.label, p: 1 / m }))
            : [],
    });
    return next;
}
/** Append an outcome with probability 0 in every row. */
export function addOutcome(model) {
    const next = cloneModel(model);
    const label = freshLabel(next.conditional[0]?.outcomes.map((o) => o.label) ?? [], "B");
    for (const row of next.conditional) {
        row.outcomes.push({ label, p: 0 });
    }
    return next;
}
export function removeEvent(model, i) {
    const next = cloneModel(model);
    if (next.prior.length <= 1) {
        return next;
    }
    next.prior.splice(i, 1);
    next.conditional.splice(i, 1);
    return next;
}
export function removeOutcome(model, j) {
    const next = cloneModel(model);
    if ((next.conditional[0]?.outcomes.length ?? 0) <= 1) {
        return next;
    }
    for (const row of next.conditional) {
        row.outcomes.splice(j, 1);
    }
    return next;
}
/** Rescale the prior to sum to 1 (no-op on an all-zero prior). */
export function normalizePrior(model) {
    const next = cloneModel(model);
    const sum = next.prior.reduce((acc, e) => acc + e.p, 0);
    if (sum > 0) {
        for (const e of next.prior) {
            e.p = e.p / sum;
        }
    }
    return next;
}
/** Rescale conditional row i to sum to 1 (no-op on an all-zero row). */
export function normalizeRow(model, i) {
    const next = cloneModel(model);
    const row = next.conditional[i];
    const sum = row.outcomes.reduce((acc, o) => acc + o.p, 0);
    if (sum > 0) {
        for (const o of row.outcomes) {
            o.p = o.p / sum;
        }
    }
    return next;
}
const ENTRY_RE = /\bentry (\d+)\b/;
const ROW_RE = /^conditional\[(\d+)\]$/;
/**
 * Map a validation report onto table cells. Messages naming a single
 * entry ("entry 2 is ...") flag that cell; other messages for the same
 * location flag the whole row, which wins over cell-level flags.
 */
export function violationFlags(violations) {
    const flags = { prior: new Set(), rows: new Map(), global: [] };
    for (const v of violations) {
        const entry = ENTRY_RE.exec(v.message);
        const row = ROW_RE.exec(v.where);
        if (v.where === "prior") {
            if (entry && flags.prior !== null) {
                flags.prior.add(Number(entry[1]));
            }
            else {
                flags.prior = null;
            }
        }
        else if (row) {
            const i = Number(row[1]);
            const existing = flags.rows.get(i);
            if (entry && existing !== null) {
                const cells = existing ?? new Set();
                cells.add(Number(entry[1]));
                flags.rows.set(i, cells);
            }
            else {
                flags.rows.set(i, null);
            }
        }
        else {
            flags.global.push(v);
        }
    }
    return flags;
}
export function priorCellFlagged(flags, i) {
    return flags.prior === null || flags.prior.has(i);
}
export function conditionalCellFlagged(flags, i, j) {
    if (!flags.rows.has(i)) {
        return false;
    }
    const cells = flags.rows.get(i);
    return cells === null || cells.has(j);
}
