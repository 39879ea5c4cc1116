/**
 * DOM builders for the explorer's visual panels.
 *
 * Every function takes a server document and returns a detached element;
 * numbers are formatted for display but never computed here. Mosaic
 * geometry arrives in unit-square coordinates with y measured from the
 * bottom, so rendering flips y into screen space.
 */
const SVG_NS = "http://www.w3.org/2000/svg";
/** Fixed four decimals, the format used in equation lines. */
export function fmt4(x) {
    return x.toFixed(4);
}
/** Compact probability for in-figure labels: 4 decimals, trimmed to 2. */
export function fmtProb(x) {
    const [whole, frac] = x.toFixed(4).split(".");
    const trimmed = frac.replace(/0+$/, "");
    return `${whole}.${trimmed.length < 2 ? (trimmed + "00").slice(0, 2) : trimmed}`;
}
function svgEl(dom, tag, attrs = {}) {
    const el = dom.createElementNS(SVG_NS, tag);
    for (const [name, value] of Object.entries(attrs)) {
        el.setAttribute(name, value);
    }
    return el;
}
function tileScreenRect(tile, frame) {
    return {
        x: frame.left + tile.x * frame.plotW,
        y: frame.top + (1 - tile.y - tile.height) * frame.plotH,
        w: tile.width * frame.plotW,
        h: tile.height * frame.plotH,
    };
}
/**
 * Unit-square mosaic as an SVG. Tiles are `rect.tile` with `data-a` /
 * `data-b`; the highlight block adds `highlighted` to denominator cells
 * and `numerator` to the query cell.
 */
export function renderMosaicSvg(doc, options = {}, dom = document) {
    const width = options.width ?? 420;
    const height = options.height ?? 340;
    const compact = options.compact ?? false;
    const left = compact ? 2 : 40;
    const top = compact ? 2 : 22;
    const frame = {
        left,
        top,
        plotW: width - left - 2,
        plotH: height - top - 2,
    };
    const svg = svgEl(dom, "svg", {
        class: "mosaic",
        viewBox: `0 0 ${width} ${height}`,
        role: "img",
    });
    const denominator = new Set((doc.highlight?.denominator ?? []).map(([a, b]) => `${a},${b}`));
    const numerator = doc.highlight?.numerator ?? null;
    const tiles = svgEl(dom, "g", { class: "tiles" });
    for (const tile of doc.tiles) {
        const r = tileScreenRect(tile, frame);
        if (r.w <= 0 || r.h <= 0) {
            continue;
        }
        const classes = ["tile"];
        if (denominator.has(`${tile.a},${tile.b}`)) {
            classes.push("highlighted");
        }
        if (numerator && numerator[0] === tile.a && numerator[1] === tile.b) {
            classes.push("numerator");
        }
        const rect = svgEl(dom, "rect", {
            class: classes.join(" "),
            "data-a": String(tile.a),
            "data-b": String(tile.b),
            x: r.x.toFixed(2),
            y: r.y.toFixed(2),
            width: r.w.toFixed(2),
            height: r.h.toFixed(2),
        });
        const tip = svgEl(dom, "title");
        tip.textContent = `${tile.a_label} ∩ ${tile.b_label} = ${fmtProb(tile.area)}`;
        rect.appendChild(tip);
        if (options.onTileClick) {
            rect.addEventListener("click", () => options.onTileClick?.(tile.a, tile.b));
        }
        tiles.appendChild(rect);
        if (!compact && r.w >= 44 && r.h >= 16) {
            const label = svgEl(dom, "text", {
                class: "tile-area",
                x: (r.x + r.w / 2).toFixed(2),
                y: (r.y + r.h / 2).toFixed(2),
                "text-anchor": "middle",
                "dominant-baseline": "central",
                "pointer-events": "none",
            });
            label.textContent = fmtProb(tile.area);
            tiles.appendChild(label);
        }
    }
    svg.appendChild(tiles);
    if (!compact && doc.orientation === "a_as_columns") {
        const aLabels = svgEl(dom, "g", { class: "a-labels" });
        for (let i = 0; i < doc.a_labels.length; i += 1) {
            const mid = (doc.column_edges[i] + doc.column_edges[i + 1]) / 2;
            const text = svgEl(dom, "text", {
                class: "a-label",
                "data-a": String(i),
                x: (frame.left + mid * frame.plotW).toFixed(2),
                y: String(top - 8),
                "text-anchor": "middle",
            });
            text.textContent = doc.a_labels[i];
            aLabels.appendChild(text);
        }
        svg.appendChild(aLabels);
        const bLabels = svgEl(dom, "g", { class: "b-labels" });
        for (const tile of doc.tiles) {
            if (tile.a !== 0) {
                continue;
            }
            const r = tileScreenRect(tile, frame);
            if (r.h < 12) {
                continue;
            }
            const text = svgEl(dom, "text", {
                class: "b-label",
                "data-b": String(tile.b),
                x: String(frame.left - 6),
                y: (r.y + r.h / 2).toFixed(2),
                "text-anchor": "end",
                "dominant-baseline": "central",
            });
            text.textContent = doc.b_labels[tile.b];
            bLabels.appendChild(text);
        }
        svg.appendChild(bLabels);
    }
    return svg;
}
/** Probability tree: root left, events mid, outcome leaves right. */
export function renderTreeSvg(doc, dom = document) {
    const leafCount = doc.leaves.length;
    const width = 460;
    const height = Math.max(220, 26 * leafCount + 30);
    const left = 16;
    const top = 14;
    const plotW = width - left - 120;
    const plotH = height - top - 14;
    const svg = svgEl(dom, "svg", {
        class: "tree",
        viewBox: `0 0 ${width} ${height}`,
        role: "img",
    });
    const place = new Map();
    for (const node of doc.nodes) {
        place.set(node.id, { px: left + node.x * plotW, py: top + node.y * plotH });
    }
    const edges = svgEl(dom, "g", { class: "edges" });
    for (const edge of doc.edges) {
        const from = place.get(edge.parent);
        const to = place.get(edge.child);
        if (!from || !to) {
            continue;
        }
        edges.appendChild(svgEl(dom, "line", {
            class: "edge",
            x1: from.px.toFixed(2),
            y1: from.py.toFixed(2),
            x2: to.px.toFixed(2),
            y2: to.py.toFixed(2),
        }));
        const label = svgEl(dom, "text", {
            class: "edge-prob",
            x: ((from.px + to.px) / 2).toFixed(2),
            y: ((from.py + to.py) / 2 - 4).toFixed(2),
            "text-anchor": "middle",
        });
        label.textContent = fmtProb(edge.p);
        edges.appendChild(label);
    }
    svg.appendChild(edges);
    const pathProb = new Map(doc.leaves.map((l) => [`${l.a},${l.b}`, l.path_prob]));
    const nodes = svgEl(dom, "g", { class: "nodes" });
    for (const node of doc.nodes) {
        const at = place.get(node.id);
        if (!at) {
            continue;
        }
        nodes.appendChild(svgEl(dom, "circle", {
            class: "node",
            "data-id": node.id,
            cx: at.px.toFixed(2),
            cy: at.py.toFixed(2),
            r: "3",
        }));
        if (node.label) {
            const isLeaf = node.a !== null && node.b !== null;
            const text = svgEl(dom, "text", {
                class: isLeaf ? "leaf-label" : "node-label",
                x: (at.px + 7).toFixed(2),
                y: at.py.toFixed(2),
                "dominant-baseline": "central",
            });
            const prob = isLeaf ? pathProb.get(`${node.a},${node.b}`) : undefined;
            text.textContent =
                prob !== undefined ? `${node.label}  (${fmtProb(prob)})` : node.label;
            nodes.appendChild(text);
        }
    }
    svg.appendChild(nodes);
    return svg;
}
/**
 * Posterior fraction as two stacked mosaic copies: query cell over all
 * cells of the conditioning outcome, annotated with the ratio of areas.
 */
export function renderRatioFigure(doc, dom = document) {
    const box = dom.createElement("div");
    box.className = "ratio-figure";
    const caption = dom.createElement("div");
    caption.className = "ratio-annotation";
    caption.textContent =
        `P(${doc.query.a_label}|${doc.query.b_label}) = ` +
            `${fmt4(doc.numerator_area)} / ${fmt4(doc.denominator_area)} = ${fmt4(doc.value)}`;
    box.appendChild(caption);
    const compact = { compact: true, width: 210, height: 150 };
    const numerator = dom.createElement("div");
    numerator.className = "ratio-numerator";
    numerator.appendChild(renderMosaicSvg(doc.numerator, compact, dom));
    box.appendChild(numerator);
    const bar = dom.createElement("div");
    bar.className = "fraction-bar";
    box.appendChild(bar);
    const denominator = dom.createElement("div");
    denominator.className = "ratio-denominator";
    denominator.appendChild(renderMosaicSvg(doc.denominator, compact, dom));
    box.appendChild(denominator);
    return box;
}
/**
 * Text panel for the conditioning state: the outcome's total probability
 * and one posterior line per event, the selected event emphasized.
 */
export function renderEquation(doc, selectedEvent, dom = document) {
    const box = dom.createElement("div");
    box.className = "equation";
    const marginal = dom.createElement("div");
    marginal.className = "marginal-line";
    marginal.textContent = `P(${doc.given}) = ${fmt4(doc.denominator)}`;
    box.appendChild(marginal);
    const list = dom.createElement("div");
    list.className = "posterior-lines";
    for (const term of doc.terms) {
        const line = dom.createElement("div");
        line.className = "posterior-line" + (term.label === selectedEvent ? " focus" : "");
        line.dataset.event = term.label;
        line.textContent =
            term.label === selectedEvent
                ? `P(${term.label}|${doc.given}) = ${fmt4(term.numerator)} / ` +
                    `${fmt4(doc.denominator)} = ${fmt4(term.posterior)}`
                : `P(${term.label}|${doc.given}) = ${fmt4(term.posterior)}`;
        list.appendChild(line);
    }
    box.appendChild(list);
    return box;
}
