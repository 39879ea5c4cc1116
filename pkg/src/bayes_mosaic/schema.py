"""JSON document serialization for layouts, figures, trees, and posteriors.

Every document carries ``schema_version`` and a ``kind`` discriminator.
This is the wire contract consumed by the export command and by the
explorer UI; field names are part of the public interface.
"""

from __future__ import annotations

from .core import PosteriorResult, Violation
from .mosaic import HighlightSpec, MosaicLayout, RatioFigureModel, shaded_area
from .tree import TreeDiagram

SCHEMA_VERSION = 1


def highlight_to_dict(highlight: HighlightSpec) -> dict:
    return {
        "numerator": list(highlight.numerator) if highlight.numerator else None,
        "denominator": [list(cell) for cell in sorted(highlight.denominator)],
    }


def mosaic_document(
    layout: MosaicLayout,
    highlight: HighlightSpec | None = None,
    given: str | None = None,
    marginal: float | None = None,
) -> dict:
    """Mosaic layout document; highlight/given/marginal included when present."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "mosaic",
        "orientation": layout.orientation.value,
        "a_labels": list(layout.a_labels),
        "b_labels": list(layout.b_labels),
        "column_edges": list(layout.column_edges),
        "tiles": [
            {
                "a": t.a_index,
                "b": t.b_index,
                "a_label": layout.a_labels[t.a_index],
                "b_label": layout.b_labels[t.b_index],
                "x": t.x,
                "y": t.y,
                "width": t.width,
                "height": t.height,
                "area": t.area,
            }
            for t in layout.tiles
        ],
        "highlight": highlight_to_dict(highlight) if highlight is not None else None,
    }
    if given is not None:
        doc["given"] = given
    if marginal is not None:
        doc["marginal"] = marginal
    return doc


def ratio_document(figure: RatioFigureModel) -> dict:
    a, b = figure.query
    lay = figure.numerator.layout
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "ratio",
        "query": {
            "a": a,
            "b": b,
            "a_label": lay.a_labels[a],
            "b_label": lay.b_labels[b],
        },
        "value": figure.value,
        "numerator_area": lay.tile(a, b).area,
        "denominator_area": shaded_area(lay, figure.denominator.highlight),
        "numerator": mosaic_document(figure.numerator.layout, figure.numerator.highlight),
        "denominator": mosaic_document(figure.denominator.layout, figure.denominator.highlight),
    }


def tree_document(tree: TreeDiagram) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "tree",
        "a_labels": list(tree.a_labels),
        "b_labels": list(tree.b_labels),
        "nodes": [
            {
                "id": n.node_id,
                "depth": n.depth,
                "a": n.a_index,
                "b": n.b_index,
                "x": n.x,
                "y": n.y,
                "label": n.label,
            }
            for n in tree.nodes
        ],
        "edges": [
            {"parent": e.parent, "child": e.child, "p": e.probability}
            for e in tree.edges
        ],
        "leaves": [
            {"a": i, "b": j, "path_prob": tree.leaf_probs[i][j]}
            for i in range(len(tree.a_labels))
            for j in range(len(tree.b_labels))
        ],
    }


def posterior_document(result: PosteriorResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "posterior",
        "given": result.conditioned_on.text,
        "denominator": result.denominator,
        "terms": [
            {
                "label": lab.text,
                "numerator": result.numerator_terms[i],
                "posterior": result.posterior[i],
            }
            for i, lab in enumerate(result.events)
        ],
    }


def validation_document(violations: tuple[Violation, ...]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "validation",
        "valid": not violations,
        "violations": [{"where": v.where, "message": v.message} for v in violations],
    }
