import math

import pytest
from hypothesis import given, settings

from bayes_mosaic.core import InvalidModelError, joint, make_model
from bayes_mosaic.tree import build_tree

from .util import example1_model, example2_model, models


class TestStructure:
    def test_example1_node_count(self):
        # 1 root + 2 events + 2*3 leaves
        tree = build_tree(example1_model())
        assert tree.node_count == 9
        assert len(tree.edges) == 8

    def test_example2_node_count(self):
        tree = build_tree(example2_model())
        assert tree.node_count == 1 + 4 + 16
        assert len(tree.edges) == 4 + 16

    def test_node_ids_and_depths(self):
        tree = build_tree(example1_model())
        by_id = {n.node_id: n for n in tree.nodes}
        assert by_id["root"].depth == 0
        assert by_id["a1"].depth == 1
        assert by_id["a1"].a_index == 1
        assert by_id["a0b2"].depth == 2
        assert (by_id["a0b2"].a_index, by_id["a0b2"].b_index) == (0, 2)

    def test_every_edge_connects_existing_nodes(self):
        tree = build_tree(example2_model())
        ids = {n.node_id for n in tree.nodes}
        for e in tree.edges:
            assert e.parent in ids and e.child in ids

    def test_edge_probabilities_come_from_the_model(self):
        model = example1_model()
        tree = build_tree(model)
        by_pair = {(e.parent, e.child): e.probability for e in tree.edges}
        assert by_pair[("root", "a0")] == 0.9
        assert by_pair[("root", "a1")] == 0.1
        assert by_pair[("a0", "a0b1")] == 0.2
        assert by_pair[("a1", "a1b0")] == 0.6

    def test_invalid_model_rejected(self):
        bad = make_model(["A1", "A2"], [0.9, 0.2], ["B1"], [[1.0], [1.0]])
        with pytest.raises(InvalidModelError):
            build_tree(bad)


class TestGeometry:
    def test_three_rank_columns(self):
        tree = build_tree(example2_model())
        xs = {0: 0.0, 1: 0.5, 2: 1.0}
        for n in tree.nodes:
            assert n.x == xs[n.depth]

    def test_leaves_evenly_spaced(self):
        tree = build_tree(example1_model())
        leaf_ys = [n.y for n in tree.nodes if n.depth == 2]
        assert leaf_ys == [(t + 0.5) / 6 for t in range(6)]
        gaps = {round(b - a, 12) for a, b in zip(leaf_ys, leaf_ys[1:])}
        assert len(gaps) == 1  # even spacing, whatever the probabilities

    def test_event_nodes_centered_per_branch(self):
        tree = build_tree(example2_model())
        ys = [n.y for n in tree.nodes if n.depth == 1]
        assert ys == [0.125, 0.375, 0.625, 0.875]

    @settings(max_examples=100)
    @given(models())
    def test_coordinates_stay_in_unit_box(self, model):
        tree = build_tree(model)
        for n in tree.nodes:
            assert 0.0 <= n.x <= 1.0
            assert 0.0 <= n.y <= 1.0


class TestLeafProbabilities:
    def test_example1_leaves_match_joint(self):
        model = example1_model()
        tree = build_tree(model)
        j = joint(model)
        assert tree.leaf_probs == j.cells

    @settings(max_examples=150)
    @given(models())
    def test_leaves_equal_joint_bitwise(self, model):
        tree = build_tree(model)
        j = joint(model)
        for i in range(model.k):
            for b in range(model.m):
                assert tree.leaf_probs[i][b] == j.cell(i, b)

    @settings(max_examples=100)
    @given(models())
    def test_leaves_sum_to_one(self, model):
        tree = build_tree(model)
        total = math.fsum(p for row in tree.leaf_probs for p in row)
        assert abs(total - 1.0) <= 1e-12
