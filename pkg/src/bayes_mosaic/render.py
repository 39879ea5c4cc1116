"""Deterministic SVG output for mosaics, ratio figures, and trees.

Pixel geometry is the unit square scaled to the canvas; gutters shrink
tiles symmetrically about their centers and never shift neighbors, so the
model's area relationships survive rendering (exactly, at gutter zero).
Identical inputs produce byte-identical documents.

Every cell rect carries ``data-a``/``data-b`` attributes so tests and the
explorer UI can identify cells without geometric inference.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from xml.sax.saxutils import escape

from .mosaic import HighlightSpec, MosaicLayout, RatioFigureModel
from .tree import TreeDiagram

SVG_NS = "http://www.w3.org/2000/svg"


class StyleError(ValueError):
    """Render style is unusable (degenerate canvas, negative gutter, ...)."""


class LabelMode(enum.Enum):
    NONE = "none"
    LABELS = "labels"
    LABELS_AND_PROBS = "labels_and_probs"


@dataclass(frozen=True)
class RenderStyle:
    canvas_width: float = 480.0
    canvas_height: float = 480.0
    gutter: float = 2.0
    base_fill: str = "#d9d9d9"
    highlight_fill: str = "#4472c4"
    stroke: str = "#000000"
    font_size: float = 12.0
    label_mode: LabelMode = LabelMode.LABELS_AND_PROBS
    min_render_extent: float = 0.5


def _check_style(style: RenderStyle) -> None:
    if style.canvas_width <= 0 or style.canvas_height <= 0:
        raise StyleError(
            f"degenerate canvas {style.canvas_width} x {style.canvas_height}"
        )
    if style.gutter < 0:
        raise StyleError(f"gutter must be >= 0, got {style.gutter}")
    if style.min_render_extent < 0:
        raise StyleError(f"min_render_extent must be >= 0, got {style.min_render_extent}")
    if style.font_size <= 0:
        raise StyleError(f"font size must be > 0, got {style.font_size}")


def _num(v: float) -> str:
    # 10 decimal places keeps round-tripped areas within 1e-12 of the model.
    s = f"{v:.10f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def decimal_text(value: float, places: int = 4) -> str:
    """Fixed-point display rounding, ties away from zero."""
    q = Decimal(value).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
    return f"{q:.{places}f}"


def prob_label(p: float) -> str:
    """Probability for in-figure labels: 4 decimals, trailing zeros trimmed to 2."""
    whole, frac = decimal_text(p, 4).split(".")
    frac = frac.rstrip("0")
    if len(frac) < 2:
        frac = (frac + "00")[:2]
    return f"{whole}.{frac}"


def _attr(v: str) -> str:
    return escape(v, {'"': "&quot;"})


def _text_el(x: float, y: float, content: str, style: RenderStyle, anchor: str = "middle") -> str:
    return (
        f'<text x="{_num(x)}" y="{_num(y)}" text-anchor="{anchor}" '
        f'dominant-baseline="middle" font-family="sans-serif" '
        f'font-size="{_num(style.font_size)}">{escape(content)}</text>'
    )


def _mosaic_body(
    layout: MosaicLayout, highlight: HighlightSpec | None, style: RenderStyle
) -> list[str]:
    """Rects and labels for one mosaic, in canvas-local coordinates."""
    w_px, h_px = style.canvas_width, style.canvas_height
    shaded = highlight.denominator if highlight is not None else frozenset()
    marker = highlight.numerator if highlight is not None else None
    parts: list[str] = []
    labels: list[str] = []

    for t in layout.tiles:
        raw_w = t.width * w_px
        raw_h = t.height * h_px
        if raw_w < style.min_render_extent or raw_h < style.min_render_extent:
            continue
        gw = max(raw_w - style.gutter, 0.0)
        gh = max(raw_h - style.gutter, 0.0)
        if gw <= 0.0 or gh <= 0.0:
            continue
        raw_x = t.x * w_px
        raw_y = (1.0 - (t.y + t.height)) * h_px  # flip: model y grows upward
        gx = raw_x + (raw_w - gw) / 2.0
        gy = raw_y + (raw_h - gh) / 2.0
        cell = (t.a_index, t.b_index)
        fill = style.highlight_fill if cell in shaded else style.base_fill
        extra = ' data-numerator="1"' if cell == marker else ""
        parts.append(
            f'<rect data-a="{t.a_index}" data-b="{t.b_index}" '
            f'x="{_num(gx)}" y="{_num(gy)}" width="{_num(gw)}" height="{_num(gh)}" '
            f'fill="{_attr(fill)}" stroke="{_attr(style.stroke)}" stroke-width="1"{extra}/>'
        )

        if style.label_mode is LabelMode.NONE:
            continue
        name = f"{layout.a_labels[t.a_index]}∩{layout.b_labels[t.b_index]}"
        lines = [name]
        if style.label_mode is LabelMode.LABELS_AND_PROBS:
            lines.append(prob_label(t.area))
        est_w = max(len(line) for line in lines) * style.font_size * 0.62
        est_h = len(lines) * style.font_size * 1.25
        if est_w > gw or est_h > gh:
            continue
        cx = gx + gw / 2.0
        cy = gy + gh / 2.0
        offset0 = -(len(lines) - 1) * style.font_size * 0.625
        for li, line in enumerate(lines):
            labels.append(_text_el(cx, cy + offset0 + li * style.font_size * 1.25, line, style))

    return parts + labels


def _svg_open(width: float, height: float) -> str:
    return (
        f'<svg xmlns="{SVG_NS}" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">'
    )


def render_mosaic(
    layout: MosaicLayout,
    highlight: HighlightSpec | None = None,
    style: RenderStyle = RenderStyle(),
) -> str:
    """One SVG rect per tile at or above the minimum render extent."""
    _check_style(style)
    lines = [_svg_open(style.canvas_width, style.canvas_height)]
    lines.extend(_mosaic_body(layout, highlight, style))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_ratio(figure: RatioFigureModel, style: RenderStyle = RenderStyle()) -> str:
    """Numerator mosaic over a fraction bar over the denominator mosaic.

    The annotation prints the query and its value, e.g. ``P(A1|B2) = 0.9000``.
    """
    _check_style(style)
    w_px, h_px = style.canvas_width, style.canvas_height
    pad = 24.0
    bar_gap = 3.0 * pad
    a, b = figure.query
    lay = figure.numerator.layout
    annotation = (
        f"P({lay.a_labels[a]}|{lay.b_labels[b]}) = {decimal_text(figure.value, 4)}"
    )
    ann_w = len(annotation) * style.font_size * 0.62 + pad

    total_w = pad + w_px + pad + ann_w
    total_h = pad + h_px + bar_gap + h_px + pad
    bar_y = pad + h_px + bar_gap / 2.0

    lines = [_svg_open(total_w, total_h)]
    lines.append(f'<g id="numerator-mosaic" transform="translate({_num(pad)} {_num(pad)})">')
    lines.extend(_mosaic_body(figure.numerator.layout, figure.numerator.highlight, style))
    lines.append("</g>")
    lines.append(
        f'<line x1="{_num(pad)}" y1="{_num(bar_y)}" x2="{_num(pad + w_px)}" y2="{_num(bar_y)}" '
        f'stroke="{_attr(style.stroke)}" stroke-width="3"/>'
    )
    lines.append(_text_el(pad + w_px + pad, bar_y, annotation, style, anchor="start"))
    lines.append(
        f'<g id="denominator-mosaic" '
        f'transform="translate({_num(pad)} {_num(pad + h_px + bar_gap)})">'
    )
    lines.extend(_mosaic_body(figure.denominator.layout, figure.denominator.highlight, style))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_tree(tree: TreeDiagram, style: RenderStyle = RenderStyle()) -> str:
    """Left-to-right tree: edges as lines, nodes labeled, edge probabilities printed."""
    _check_style(style)
    w_px, h_px = style.canvas_width, style.canvas_height

    def px(node_x: float) -> float:
        return (0.05 + 0.75 * node_x) * w_px

    def py(node_y: float) -> float:
        return (0.06 + 0.88 * node_y) * h_px

    pos = {n.node_id: (px(n.x), py(n.y)) for n in tree.nodes}
    lines = [_svg_open(w_px, h_px)]

    for e in tree.edges:
        x1, y1 = pos[e.parent]
        x2, y2 = pos[e.child]
        lines.append(
            f'<line class="edge" x1="{_num(x1)}" y1="{_num(y1)}" '
            f'x2="{_num(x2)}" y2="{_num(y2)}" '
            f'stroke="{_attr(style.stroke)}" stroke-width="1"/>'
        )
        if style.label_mode is not LabelMode.NONE:
            mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
            lines.append(_text_el(mx, my - style.font_size * 0.55, prob_label(e.probability), style))

    for n in tree.nodes:
        x, y = pos[n.node_id]
        lines.append(
            f'<circle class="node" cx="{_num(x)}" cy="{_num(y)}" r="2.5" '
            f'fill="{_attr(style.stroke)}"/>'
        )
        if style.label_mode is LabelMode.NONE or not n.label:
            continue
        if n.depth == 2:
            text = n.label
            if style.label_mode is LabelMode.LABELS_AND_PROBS:
                assert n.a_index is not None and n.b_index is not None
                text += f"  ({prob_label(tree.leaf_probs[n.a_index][n.b_index])})"
            lines.append(_text_el(x + 8.0, y, text, style, anchor="start"))
        else:
            lines.append(_text_el(x, y - style.font_size * 0.9, n.label, style))

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
