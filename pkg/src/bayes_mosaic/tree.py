"""Baseline probability-tree diagram for side-by-side comparison.

The tree shows the same two-stage system as the mosaic: main branches for
the prior events, sub-branches for the conditional outcomes, leaf path
probabilities equal to the joint cells.  Leaves are spaced evenly
regardless of probability -- deliberately, since the tree's lack of
visual weighting is exactly what the mosaic is meant to fix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import BayesModel, require_valid


@dataclass(frozen=True)
class TreeNode:
    """Node in abstract layout coordinates: x in {0, 0.5, 1}, y in [0, 1]."""

    node_id: str
    depth: int
    a_index: int | None
    b_index: int | None
    x: float
    y: float
    label: str


@dataclass(frozen=True)
class TreeEdge:
    parent: str
    child: str
    probability: float


@dataclass(frozen=True)
class TreeDiagram:
    nodes: tuple[TreeNode, ...]
    edges: tuple[TreeEdge, ...]
    leaf_probs: tuple[tuple[float, ...], ...]
    a_labels: tuple[str, ...]
    b_labels: tuple[str, ...]

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def build_tree(model: BayesModel) -> TreeDiagram:
    """Root at the left, k main branches, m sub-branches each.

    Leaf (i, j) carries path probability ``prior[i] * rows[i][j]``; leaves
    are evenly spaced top to bottom in (i, j) order.
    """
    require_valid(model)
    k, m = model.k, model.m
    leaf_count = k * m

    nodes: list[TreeNode] = [
        TreeNode(node_id="root", depth=0, a_index=None, b_index=None, x=0.0, y=0.5, label="")
    ]
    edges: list[TreeEdge] = []
    leaf_probs: list[tuple[float, ...]] = []

    for i in range(k):
        a_id = f"a{i}"
        nodes.append(
            TreeNode(
                node_id=a_id,
                depth=1,
                a_index=i,
                b_index=None,
                x=0.5,
                y=(i + 0.5) / k,
                label=model.event_texts[i],
            )
        )
        edges.append(TreeEdge(parent="root", child=a_id, probability=model.prior.probs[i]))

        row: list[float] = []
        for j in range(m):
            leaf_id = f"a{i}b{j}"
            t = i * m + j
            nodes.append(
                TreeNode(
                    node_id=leaf_id,
                    depth=2,
                    a_index=i,
                    b_index=j,
                    x=1.0,
                    y=(t + 0.5) / leaf_count,
                    label=model.outcome_texts[j],
                )
            )
            p_branch = model.conditional.rows[i][j]
            edges.append(TreeEdge(parent=a_id, child=leaf_id, probability=p_branch))
            row.append(model.prior.probs[i] * p_branch)
        leaf_probs.append(tuple(row))

    return TreeDiagram(
        nodes=tuple(nodes),
        edges=tuple(edges),
        leaf_probs=tuple(leaf_probs),
        a_labels=model.event_texts,
        b_labels=model.outcome_texts,
    )
