import json

import pytest
from hypothesis import given, settings

from bayes_mosaic.core import validate_model
from bayes_mosaic.model_io import (
    ModelFileError,
    bundled_examples,
    load_model,
    load_model_csv,
    load_model_json,
    loads_model,
    model_from_dict,
    model_to_dict,
)

from .util import MODELS_DIR, example1_model, example2_model, models

EX1_CSV = """given,outcome,p
,A1,0.9
,A2,0.1
A1,B1,0.7
A1,B2,0.2
A1,B3,0.1
A2,B1,0.6
A2,B2,0.2
A2,B3,0.2
"""


class TestJsonRoundTrip:
    def test_dict_round_trip_is_exact(self):
        for model in (example1_model(), example2_model()):
            back, title = model_from_dict(model_to_dict(model, title="t"))
            assert back == model
            assert title == "t"

    def test_text_round_trip_is_exact(self):
        model = example2_model()
        back, _ = loads_model(json.dumps(model_to_dict(model)))
        assert back == model

    def test_title_is_optional(self):
        doc = model_to_dict(example1_model())
        assert "title" not in doc
        _, title = model_from_dict(doc)
        assert title is None

    @settings(max_examples=100)
    @given(models())
    def test_round_trip_property(self, model):
        back, _ = model_from_dict(model_to_dict(model))
        assert back == model


class TestBundledFiles:
    def test_files_match_builtin_models(self):
        by_name = {name: (title, model) for name, title, model in bundled_examples()}
        assert set(by_name) == {"example1", "example2"}
        for name, (title, model) in by_name.items():
            parsed, parsed_title = load_model_json(MODELS_DIR / f"{name}.json")
            assert parsed == model
            assert parsed_title == title

    def test_bundled_models_are_valid(self):
        for _, _, model in bundled_examples():
            assert validate_model(model) == ()

    def test_fixture_tables_match(self):
        by_name = {name: model for name, _, model in bundled_examples()}
        assert by_name["example1"] == example1_model()
        assert by_name["example2"] == example2_model()


class TestJsonErrors:
    def test_not_an_object(self):
        with pytest.raises(ModelFileError, match="must be an object"):
            model_from_dict([1, 2])

    def test_unsupported_schema_version(self):
        doc = model_to_dict(example1_model())
        doc["schema_version"] = 2
        with pytest.raises(ModelFileError, match="unsupported schema_version"):
            model_from_dict(doc)

    def test_missing_version_defaults_to_current(self):
        doc = model_to_dict(example1_model())
        del doc["schema_version"]
        back, _ = model_from_dict(doc)
        assert back == example1_model()

    def test_missing_prior(self):
        with pytest.raises(ModelFileError, match="'prior'"):
            model_from_dict({"conditional": []})

    def test_prior_entry_missing_p(self):
        doc = model_to_dict(example1_model())
        del doc["prior"][0]["p"]
        with pytest.raises(ModelFileError, match=r"prior\[0\]"):
            model_from_dict(doc)

    def test_p_must_be_numeric(self):
        doc = model_to_dict(example1_model())
        doc["prior"][0]["p"] = "0.9"
        with pytest.raises(ModelFileError, match="must be a number"):
            model_from_dict(doc)

    def test_bool_is_not_a_probability(self):
        doc = model_to_dict(example1_model())
        doc["prior"][0]["p"] = True
        with pytest.raises(ModelFileError, match="must be a number"):
            model_from_dict(doc)

    def test_label_must_be_string(self):
        doc = model_to_dict(example1_model())
        doc["prior"][0]["label"] = 7
        with pytest.raises(ModelFileError, match="must be a string"):
            model_from_dict(doc)

    def test_rows_must_share_outcome_order(self):
        doc = model_to_dict(example1_model())
        doc["conditional"][1]["outcomes"].reverse()
        with pytest.raises(ModelFileError, match="disagree"):
            model_from_dict(doc)

    def test_invalid_json_reports_position(self):
        with pytest.raises(ModelFileError, match="invalid JSON at line 1"):
            loads_model("{nope")

    def test_parsing_does_not_enforce_probability_axioms(self):
        doc = model_to_dict(example1_model())
        doc["prior"][0]["p"] = 1.0  # sums to 1.1 now
        model, _ = model_from_dict(doc)
        report = validate_model(model)
        assert any(v.where == "prior" for v in report)


class TestCsv:
    def test_example1_round_trip(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(EX1_CSV, encoding="utf-8")
        model, title = load_model_csv(path)
        assert model == example1_model()
        assert title is None

    def test_header_is_case_insensitive(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(EX1_CSV.replace("given,outcome,p", "Given, Outcome, P"), encoding="utf-8")
        model, _ = load_model_csv(path)
        assert model == example1_model()

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(EX1_CSV.replace("A1,B1,0.7", "\nA1,B1,0.7\n"), encoding="utf-8")
        model, _ = load_model_csv(path)
        assert model == example1_model()

    def test_missing_combinations_default_to_zero(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(
            "given,outcome,p\n,A1,1.0\nA1,B1,0.5\nA1,B2,0.5\n", encoding="utf-8"
        )
        model, _ = load_model_csv(path)
        assert model.conditional.rows == ((0.5, 0.5),)
        path.write_text(
            "given,outcome,p\n,A1,0.5\n,A2,0.5\nA1,B1,1.0\nA2,B2,1.0\n",
            encoding="utf-8",
        )
        model, _ = load_model_csv(path)
        assert model.conditional.rows == ((1.0, 0.0), (0.0, 1.0))

    def test_bad_header(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("a,b,c\n,A1,1.0\n", encoding="utf-8")
        with pytest.raises(ModelFileError, match="header"):
            load_model_csv(path)

    def test_bad_number_reports_line(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("given,outcome,p\n,A1,lots\n", encoding="utf-8")
        with pytest.raises(ModelFileError, match="line 2"):
            load_model_csv(path)

    def test_duplicate_prior_label(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("given,outcome,p\n,A1,0.5\n,A1,0.5\nA1,B1,1.0\n", encoding="utf-8")
        with pytest.raises(ModelFileError, match="duplicate prior"):
            load_model_csv(path)

    def test_duplicate_conditional_entry(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(
            "given,outcome,p\n,A1,1.0\nA1,B1,0.5\nA1,B1,0.5\n", encoding="utf-8"
        )
        with pytest.raises(ModelFileError, match="duplicate conditional"):
            load_model_csv(path)

    def test_conditional_for_unknown_event(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(
            "given,outcome,p\n,A1,1.0\nA1,B1,1.0\nA9,B1,1.0\n", encoding="utf-8"
        )
        with pytest.raises(ModelFileError, match="no prior.*A9"):
            load_model_csv(path)

    def test_no_prior_rows(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("given,outcome,p\nA1,B1,1.0\n", encoding="utf-8")
        with pytest.raises(ModelFileError, match="no prior rows"):
            load_model_csv(path)


class TestLoadDispatch:
    def test_json_by_default(self):
        model, _ = load_model(MODELS_DIR / "example1.json")
        assert model == example1_model()

    def test_csv_on_request(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text(EX1_CSV, encoding="utf-8")
        model, _ = load_model(path, from_csv=True)
        assert model == example1_model()
