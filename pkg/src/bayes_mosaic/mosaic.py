"""Tile geometry: a BayesModel partitioned into the unit square.

The unit square is split along one axis into bands whose extents are the
prior probabilities (the first, unconditional split), and each band is
subdivided along the other axis into tiles whose extents are the
conditional probabilities.  Every tile's area therefore equals the joint
probability of its cell, which is the whole point: a Bayes query becomes a
ratio of shaded areas.

Model coordinates contain no gaps; visual gutters belong to the renderer.
Coordinates use y measured from the bottom, with outcome 0 stacked at the
top of each column (the renderer flips y for screen space).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    BayesModel,
    posterior,
    require_valid,
    _check_event_index,
    _check_outcome_index,
)


class Orientation(enum.Enum):
    """Which screen axis carries the prior (first-split) bands."""

    A_AS_COLUMNS = "a_as_columns"
    A_AS_ROWS = "a_as_rows"


@dataclass(frozen=True)
class Tile:
    """One cell (A_a, B_b) positioned in the unit square."""

    a_index: int
    b_index: int
    x: float
    y: float
    width: float
    height: float
    area: float


@dataclass(frozen=True)
class MosaicLayout:
    """All k*m tiles plus the cumulative band edges along the prior axis."""

    tiles: tuple[Tile, ...]
    column_edges: tuple[float, ...]
    orientation: Orientation
    a_labels: tuple[str, ...]
    b_labels: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.a_labels)

    @property
    def m(self) -> int:
        return len(self.b_labels)

    def tile(self, a: int, b: int) -> Tile:
        return self.tiles[a * self.m + b]


@dataclass(frozen=True)
class HighlightSpec:
    """A Bayes query expressed as tile sets.

    ``denominator`` is the set of shaded cells; ``numerator``, when present,
    marks the single query cell and must be a member of the denominator.
    """

    numerator: tuple[int, int] | None
    denominator: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class HighlightedMosaic:
    layout: MosaicLayout
    highlight: HighlightSpec


@dataclass(frozen=True)
class RatioFigureModel:
    """Two copies of the same mosaic stacked as a fraction.

    The numerator copy shades the single query cell, the denominator copy
    shades every cell of the conditioning outcome; ``value`` is the
    posterior probability, equal to the ratio of shaded areas.
    """

    numerator: HighlightedMosaic
    denominator: HighlightedMosaic
    query: tuple[int, int]
    value: float


def layout(model: BayesModel, orientation: Orientation = Orientation.A_AS_COLUMNS) -> MosaicLayout:
    """Partition the unit square according to ``model``.

    Column i spans ``[column_edges[i], column_edges[i+1]]`` with width
    ``prior[i]``; within it, tile (i, j) has height ``rows[i][j]`` with
    j = 0 at the top.  Tile edges are computed once and shared, so the
    tiling has no gaps or overlaps bit for bit.  ``A_AS_ROWS`` is the same
    layout with x/y and width/height swapped per tile.
    """
    require_valid(model)
    k, m = model.k, model.m
    rows = model.conditional.rows

    edges = [0.0]
    x = 0.0
    for p in model.prior.probs:
        x += p
        edges.append(x)

    tiles: list[Tile] = []
    for i in range(k):
        # Stack from y=0 upward in reverse outcome order, leaving j=0 on top.
        column: list[Tile] = []
        y = 0.0
        for j in reversed(range(m)):
            h = rows[i][j]
            w = model.prior.probs[i]
            column.append(
                Tile(
                    a_index=i,
                    b_index=j,
                    x=edges[i],
                    y=y,
                    width=w,
                    height=h,
                    area=w * h,
                )
            )
            y += h
        tiles.extend(reversed(column))

    if orientation is Orientation.A_AS_ROWS:
        tiles = [
            Tile(
                a_index=t.a_index,
                b_index=t.b_index,
                x=t.y,
                y=t.x,
                width=t.height,
                height=t.width,
                area=t.area,
            )
            for t in tiles
        ]

    return MosaicLayout(
        tiles=tuple(tiles),
        column_edges=tuple(edges),
        orientation=orientation,
        a_labels=model.event_texts,
        b_labels=model.outcome_texts,
    )


def highlight_condition(lay: MosaicLayout, b: int) -> HighlightSpec:
    """Shade every cell of outcome ``b`` -- the denominator of Bayes' rule."""
    if not 0 <= b < lay.m:
        raise IndexError(
            f"outcome index {b} out of range; outcomes are " + ", ".join(lay.b_labels)
        )
    return HighlightSpec(
        numerator=None,
        denominator=frozenset((i, b) for i in range(lay.k)),
    )


def shaded_area(lay: MosaicLayout, highlight: HighlightSpec) -> float:
    """Total area of the highlighted denominator cells."""
    return math.fsum(lay.tile(a, b).area for a, b in sorted(highlight.denominator))


def ratio_figure(model: BayesModel, a: int, b: int) -> RatioFigureModel:
    """Build the fraction-of-mosaics figure for the query P(A_a | B_b)."""
    require_valid(model)
    _check_event_index(model, a)
    _check_outcome_index(model, b)
    post = posterior(model, b)  # raises ZeroMarginalError on a null condition
    lay = layout(model)
    numerator = HighlightedMosaic(
        layout=lay,
        highlight=HighlightSpec(numerator=(a, b), denominator=frozenset({(a, b)})),
    )
    denominator = HighlightedMosaic(
        layout=lay,
        highlight=highlight_condition(lay, b),
    )
    return RatioFigureModel(
        numerator=numerator,
        denominator=denominator,
        query=(a, b),
        value=post.posterior[a],
    )
