"""Exact Bayes'-rule engine with area-true mosaic figures.

The core idea: lay the full sample space out as the unit square, split it
into bands by the prior and into tiles by the conditional probabilities,
and a posterior P(A|B) becomes the visible ratio of a tile's area to the
shaded area of its outcome.  This package computes those quantities
exactly, renders them as deterministic SVG, and serves them to an
interactive explorer.
"""

from .core import (
    BayesModel,
    ConditionalTable,
    EventLabel,
    InvalidModelError,
    JointDistribution,
    PosteriorResult,
    PriorDistribution,
    UnknownLabelError,
    Violation,
    ZeroMarginalError,
    joint,
    make_model,
    marginal_outcome,
    posterior,
    validate_model,
)
from .model_io import (
    ModelFileError,
    bundled_examples,
    load_model,
    loads_model,
    model_from_dict,
    model_to_dict,
)
from .mosaic import (
    HighlightSpec,
    MosaicLayout,
    Orientation,
    RatioFigureModel,
    Tile,
    highlight_condition,
    layout,
    ratio_figure,
    shaded_area,
)
from .render import LabelMode, RenderStyle, render_mosaic, render_ratio, render_tree
from .schema import (
    mosaic_document,
    posterior_document,
    ratio_document,
    tree_document,
    validation_document,
)
from .tree import TreeDiagram, build_tree

__version__ = "0.1.0"

__all__ = [
    "BayesModel",
    "ConditionalTable",
    "EventLabel",
    "HighlightSpec",
    "InvalidModelError",
    "JointDistribution",
    "LabelMode",
    "ModelFileError",
    "MosaicLayout",
    "Orientation",
    "PosteriorResult",
    "PriorDistribution",
    "RatioFigureModel",
    "RenderStyle",
    "Tile",
    "TreeDiagram",
    "UnknownLabelError",
    "Violation",
    "ZeroMarginalError",
    "build_tree",
    "bundled_examples",
    "highlight_condition",
    "joint",
    "layout",
    "load_model",
    "loads_model",
    "make_model",
    "marginal_outcome",
    "model_from_dict",
    "model_to_dict",
    "mosaic_document",
    "posterior",
    "posterior_document",
    "ratio_document",
    "ratio_figure",
    "render_mosaic",
    "render_ratio",
    "render_tree",
    "shaded_area",
    "tree_document",
    "validate_model",
    "validation_document",
]
