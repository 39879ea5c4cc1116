import json

from hypothesis import given, settings

from bayes_mosaic.core import posterior, validate_model, make_model
from bayes_mosaic.mosaic import highlight_condition, layout, ratio_figure
from bayes_mosaic.schema import (
    SCHEMA_VERSION,
    mosaic_document,
    posterior_document,
    ratio_document,
    tree_document,
    validation_document,
)
from bayes_mosaic.tree import build_tree

from .util import example1_model, example2_model, models


def test_every_document_is_json_and_versioned():
    model = example1_model()
    lay = layout(model)
    docs = [
        mosaic_document(lay),
        mosaic_document(lay, highlight_condition(lay, 1), given="B2", marginal=0.2),
        ratio_document(ratio_figure(model, 0, 1)),
        tree_document(build_tree(model)),
        posterior_document(posterior(model, 1)),
        validation_document(validate_model(model)),
    ]
    kinds = [d["kind"] for d in docs]
    assert kinds == ["mosaic", "mosaic", "ratio", "tree", "posterior", "validation"]
    for doc in docs:
        assert doc["schema_version"] == SCHEMA_VERSION
        json.loads(json.dumps(doc))  # plain data, no custom types


class TestMosaicDocument:
    def test_tiles_carry_cells_and_geometry(self):
        lay = layout(example1_model())
        doc = mosaic_document(lay)
        assert doc["a_labels"] == ["A1", "A2"]
        assert doc["b_labels"] == ["B1", "B2", "B3"]
        assert doc["column_edges"] == [0.0, 0.9, 1.0]
        assert len(doc["tiles"]) == 6
        first = doc["tiles"][0]
        assert first == {
            "a": 0,
            "b": 0,
            "a_label": "A1",
            "b_label": "B1",
            "x": 0.0,
            "y": lay.tile(0, 0).y,
            "width": 0.9,
            "height": 0.7,
            "area": 0.63,
        }
        assert doc["highlight"] is None
        assert "given" not in doc and "marginal" not in doc

    def test_highlight_block(self):
        lay = layout(example1_model())
        doc = mosaic_document(lay, highlight_condition(lay, 1), given="B2", marginal=0.2)
        assert doc["highlight"] == {"numerator": None, "denominator": [[0, 1], [1, 1]]}
        assert doc["given"] == "B2"
        assert doc["marginal"] == 0.2

    @settings(max_examples=50)
    @given(models())
    def test_tile_count_and_numbers_survive_json(self, model):
        doc = json.loads(json.dumps(mosaic_document(layout(model))))
        assert len(doc["tiles"]) == model.k * model.m
        for tile in doc["tiles"]:
            assert tile["area"] == tile["width"] * tile["height"]


class TestRatioDocument:
    def test_example2_query(self):
        doc = ratio_document(ratio_figure(example2_model(), 3, 2))
        assert doc["query"] == {"a": 3, "b": 2, "a_label": "A4", "b_label": "B3"}
        assert abs(doc["value"] - 0.21052631578947367) <= 1e-12
        assert abs(doc["numerator_area"] - 0.02) <= 1e-15
        assert abs(doc["denominator_area"] - 0.095) <= 1e-15
        assert doc["value"] == doc["numerator_area"] / doc["denominator_area"]
        assert doc["numerator"]["kind"] == "mosaic"
        assert doc["numerator"]["highlight"]["numerator"] == [3, 2]
        assert doc["denominator"]["highlight"]["numerator"] is None
        assert len(doc["denominator"]["highlight"]["denominator"]) == 4


class TestTreeDocument:
    def test_example1_shape(self):
        doc = tree_document(build_tree(example1_model()))
        assert len(doc["nodes"]) == 9
        assert len(doc["edges"]) == 8
        assert len(doc["leaves"]) == 6
        root = doc["nodes"][0]
        assert root == {
            "id": "root", "depth": 0, "a": None, "b": None, "x": 0.0, "y": 0.5, "label": "",
        }
        assert {(l["a"], l["b"]) for l in doc["leaves"]} == {
            (i, j) for i in range(2) for j in range(3)
        }
        by_cell = {(l["a"], l["b"]): l["path_prob"] for l in doc["leaves"]}
        assert by_cell[(0, 0)] == 0.63


class TestPosteriorDocument:
    def test_example1_b2(self):
        doc = posterior_document(posterior(example1_model(), 1))
        assert doc["given"] == "B2"
        assert abs(doc["denominator"] - 0.2) <= 1e-12
        assert [t["label"] for t in doc["terms"]] == ["A1", "A2"]
        assert abs(doc["terms"][0]["posterior"] - 0.9) <= 1e-12
        for t in doc["terms"]:
            assert t["posterior"] == t["numerator"] / doc["denominator"]


class TestValidationDocument:
    def test_valid_model(self):
        doc = validation_document(validate_model(example1_model()))
        assert doc == {
            "schema_version": SCHEMA_VERSION,
            "kind": "validation",
            "valid": True,
            "violations": [],
        }

    def test_invalid_model_lists_violations(self):
        bad = make_model(["A1", "A2"], [0.9, 0.2], ["B1"], [[1.0], [1.0]])
        doc = validation_document(validate_model(bad))
        assert doc["valid"] is False
        assert doc["violations"]
        assert all(set(v) == {"where", "message"} for v in doc["violations"])
