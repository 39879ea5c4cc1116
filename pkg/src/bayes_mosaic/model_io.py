"""Model files: JSON schema, CSV import, and the two bundled examples.

A model file is a JSON document::

    {
      "schema_version": 1,
      "title": "optional display name",
      "prior": [{"label": "A1", "p": 0.9}, ...],
      "conditional": [
        {"given": "A1", "outcomes": [{"label": "B1", "p": 0.7}, ...]},
        ...
      ]
    }

Every conditional row must list the same outcome labels in the same order.
Parsing enforces structure only; probability axioms are the validator's
job, so a structurally sound file with a bad prior still parses and then
fails validation.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .core import BayesModel, ConditionalTable, PriorDistribution, make_labels

MODEL_SCHEMA_VERSION = 1


class ModelFileError(ValueError):
    """The file cannot be read as a model: bad JSON, shape, or types."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ModelFileError(msg)


def _as_prob(value: object, where: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{where}: 'p' must be a number, got {value!r}")
    return float(value)  # type: ignore[arg-type]


def _as_text(value: object, where: str) -> str:
    _require(isinstance(value, str), f"{where}: label must be a string, got {value!r}")
    return value  # type: ignore[return-value]


def model_from_dict(doc: object) -> tuple[BayesModel, str | None]:
    """Parse a ModelFile dict into (model, title).  Raises ModelFileError."""
    _require(isinstance(doc, dict), f"model document must be an object, got {type(doc).__name__}")
    assert isinstance(doc, dict)

    version = doc.get("schema_version", MODEL_SCHEMA_VERSION)
    _require(version == MODEL_SCHEMA_VERSION,
             f"unsupported schema_version {version!r}, expected {MODEL_SCHEMA_VERSION}")

    title = doc.get("title")
    if title is not None:
        title = _as_text(title, "title")

    prior_entries = doc.get("prior")
    _require(isinstance(prior_entries, list) and prior_entries,
             "'prior' must be a non-empty list")
    event_texts: list[str] = []
    prior_probs: list[float] = []
    for n, entry in enumerate(prior_entries):
        where = f"prior[{n}]"
        _require(isinstance(entry, dict), f"{where}: expected an object")
        _require("label" in entry and "p" in entry, f"{where}: needs 'label' and 'p'")
        event_texts.append(_as_text(entry["label"], where))
        prior_probs.append(_as_prob(entry["p"], where))

    cond_entries = doc.get("conditional")
    _require(isinstance(cond_entries, list) and cond_entries,
             "'conditional' must be a non-empty list")
    given_texts: list[str] = []
    outcome_texts: list[str] | None = None
    rows: list[tuple[float, ...]] = []
    for n, entry in enumerate(cond_entries):
        where = f"conditional[{n}]"
        _require(isinstance(entry, dict), f"{where}: expected an object")
        _require("given" in entry and "outcomes" in entry,
                 f"{where}: needs 'given' and 'outcomes'")
        given_texts.append(_as_text(entry["given"], where))
        outcomes = entry["outcomes"]
        _require(isinstance(outcomes, list) and outcomes,
                 f"{where}: 'outcomes' must be a non-empty list")
        labels_here: list[str] = []
        probs_here: list[float] = []
        for o, out in enumerate(outcomes):
            owhere = f"{where}.outcomes[{o}]"
            _require(isinstance(out, dict), f"{owhere}: expected an object")
            _require("label" in out and "p" in out, f"{owhere}: needs 'label' and 'p'")
            labels_here.append(_as_text(out["label"], owhere))
            probs_here.append(_as_prob(out["p"], owhere))
        if outcome_texts is None:
            outcome_texts = labels_here
        else:
            _require(labels_here == outcome_texts,
                     f"{where}: outcome labels {labels_here} disagree with "
                     f"conditional[0] {outcome_texts}")
        rows.append(tuple(probs_here))

    assert outcome_texts is not None
    model = BayesModel(
        prior=PriorDistribution(labels=make_labels(event_texts), probs=tuple(prior_probs)),
        conditional=ConditionalTable(
            given_labels=make_labels(given_texts),
            outcome_labels=make_labels(outcome_texts),
            rows=tuple(rows),
        ),
    )
    return model, title


def model_to_dict(model: BayesModel, title: str | None = None) -> dict:
    doc: dict = {"schema_version": MODEL_SCHEMA_VERSION}
    if title is not None:
        doc["title"] = title
    doc["prior"] = [
        {"label": lab.text, "p": p} for lab, p in zip(model.prior.labels, model.prior.probs)
    ]
    doc["conditional"] = [
        {
            "given": lab.text,
            "outcomes": [
                {"label": out.text, "p": p}
                for out, p in zip(model.conditional.outcome_labels, row)
            ],
        }
        for lab, row in zip(model.conditional.given_labels, model.conditional.rows)
    ]
    return doc


def loads_model(text: str) -> tuple[BayesModel, str | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return model_from_dict(doc)


def load_model_json(path: str | Path) -> tuple[BayesModel, str | None]:
    return loads_model(Path(path).read_text(encoding="utf-8"))


def load_model_csv(path: str | Path) -> tuple[BayesModel, str | None]:
    """Flat CSV import for spreadsheet-born data.

    Header ``given,outcome,p``.  Rows with an empty ``given`` field form the
    prior section (``outcome`` holds the event label).  Remaining rows give
    P(outcome | given); combinations never listed default to 0.  Label order
    follows first appearance.
    """
    raw = Path(path).read_text(encoding="utf-8")
    reader = csv.reader(raw.splitlines())
    header = next(reader, None)
    _require(header is not None and [h.strip().lower() for h in header] == ["given", "outcome", "p"],
             "CSV header must be: given,outcome,p")

    event_texts: list[str] = []
    prior_probs: dict[str, float] = {}
    outcome_texts: list[str] = []
    cond: dict[tuple[str, str], float] = {}

    for n, row in enumerate(reader, start=2):
        if not row or all(not f.strip() for f in row):
            continue
        _require(len(row) == 3, f"line {n}: expected 3 fields, got {len(row)}")
        given, outcome, p_text = (f.strip() for f in row)
        try:
            p = float(p_text)
        except ValueError:
            raise ModelFileError(f"line {n}: 'p' must be a number, got {p_text!r}") from None
        if not given:
            _require(bool(outcome), f"line {n}: prior row needs an event label")
            _require(outcome not in prior_probs, f"line {n}: duplicate prior label {outcome!r}")
            event_texts.append(outcome)
            prior_probs[outcome] = p
        else:
            _require(bool(outcome), f"line {n}: conditional row needs an outcome label")
            _require((given, outcome) not in cond,
                     f"line {n}: duplicate conditional entry ({given!r}, {outcome!r})")
            if outcome not in outcome_texts:
                outcome_texts.append(outcome)
            cond[(given, outcome)] = p

    _require(bool(event_texts), "no prior rows found (rows with an empty 'given' field)")
    _require(bool(cond), "no conditional rows found")
    unknown = sorted({g for g, _ in cond} - set(event_texts))
    _require(not unknown,
             f"conditional rows reference events with no prior: {', '.join(unknown)}")

    rows = tuple(
        tuple(cond.get((g, o), 0.0) for o in outcome_texts) for g in event_texts
    )
    model = BayesModel(
        prior=PriorDistribution(
            labels=make_labels(event_texts),
            probs=tuple(prior_probs[g] for g in event_texts),
        ),
        conditional=ConditionalTable(
            given_labels=make_labels(event_texts),
            outcome_labels=make_labels(outcome_texts),
            rows=rows,
        ),
    )
    return model, None


def load_model(path: str | Path, from_csv: bool = False) -> tuple[BayesModel, str | None]:
    if from_csv:
        return load_model_csv(path)
    return load_model_json(path)


def bundled_examples() -> tuple[tuple[str, str, BayesModel], ...]:
    """The two bundled demo models as (name, title, model)."""
    from .core import make_model

    example1 = make_model(
        ["A1", "A2"],
        [0.90, 0.10],
        ["B1", "B2", "B3"],
        [
            [0.70, 0.20, 0.10],
            [0.60, 0.20, 0.20],
        ],
    )
    example2 = make_model(
        ["A1", "A2", "A3", "A4"],
        [0.60, 0.25, 0.10, 0.05],
        ["B1", "B2", "B3", "B4"],
        [
            [0.05, 0.40, 0.05, 0.50],
            [0.10, 0.20, 0.10, 0.60],
            [0.25, 0.35, 0.20, 0.20],
            [0.35, 0.15, 0.40, 0.10],
        ],
    )
    return (
        ("example1", "Two events, three outcomes (2x3)", example1),
        ("example2", "Four events, four outcomes (4x4)", example2),
    )
