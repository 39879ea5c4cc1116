"""Shared test helpers: independent oracles, fixture tables, model generators.

The oracles deliberately use plain loops and plain ``sum`` so they share no
code path (and no accumulation strategy) with the engine under test.
"""

from __future__ import annotations

import random
from pathlib import Path

from hypothesis import strategies as st

from bayes_mosaic.core import BayesModel, make_model

REPO_ROOT = Path(__file__).resolve().parents[1]
MODELS_DIR = REPO_ROOT / "models"
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"

# 2x3 demo table: priors and conditional rows.
EX1_EVENTS = ["A1", "A2"]
EX1_PRIORS = [0.90, 0.10]
EX1_OUTCOMES = ["B1", "B2", "B3"]
EX1_ROWS = [
    [0.70, 0.20, 0.10],
    [0.60, 0.20, 0.20],
]

# 4x4 demo table.
EX2_EVENTS = ["A1", "A2", "A3", "A4"]
EX2_PRIORS = [0.60, 0.25, 0.10, 0.05]
EX2_OUTCOMES = ["B1", "B2", "B3", "B4"]
EX2_ROWS = [
    [0.05, 0.40, 0.05, 0.50],
    [0.10, 0.20, 0.10, 0.60],
    [0.25, 0.35, 0.20, 0.20],
    [0.35, 0.15, 0.40, 0.10],
]


def example1_model() -> BayesModel:
    return make_model(EX1_EVENTS, EX1_PRIORS, EX1_OUTCOMES, EX1_ROWS)


def example2_model() -> BayesModel:
    return make_model(EX2_EVENTS, EX2_PRIORS, EX2_OUTCOMES, EX2_ROWS)


def joint_oracle(priors, rows):
    """Brute force: enumerate every (i, j) and multiply."""
    table = []
    for i in range(len(priors)):
        table.append([priors[i] * rows[i][j] for j in range(len(rows[i]))])
    return table


def marginal_oracle(priors, rows, b):
    total = 0.0
    cells = []
    for i in range(len(priors)):
        cells.append(priors[i] * rows[i][b])
    for c in cells:
        total += c
    return total


def posterior_oracle(priors, rows, b):
    denom = marginal_oracle(priors, rows, b)
    return [priors[i] * rows[i][b] / denom for i in range(len(priors))]


def normalize(weights):
    s = sum(weights)
    return [w / s for w in weights]


def random_model(rng: random.Random, k: int | None = None, m: int | None = None) -> BayesModel:
    k = k if k is not None else rng.randint(1, 8)
    m = m if m is not None else rng.randint(1, 8)
    priors = normalize([rng.uniform(0.05, 1.0) for _ in range(k)])
    rows = [normalize([rng.uniform(0.05, 1.0) for _ in range(m)]) for _ in range(k)]
    events = [f"A{i + 1}" for i in range(k)]
    outcomes = [f"B{j + 1}" for j in range(m)]
    return make_model(events, priors, outcomes, rows)


def permuted_model(model: BayesModel, perm: list[int]) -> BayesModel:
    """Reorder the partition events by ``perm`` (new position -> old index)."""
    events = [model.event_texts[old] for old in perm]
    priors = [model.prior.probs[old] for old in perm]
    rows = [list(model.conditional.rows[old]) for old in perm]
    return make_model(events, priors, list(model.outcome_texts), rows)


@st.composite
def models(draw, max_k: int = 8, max_m: int = 8):
    """Hypothesis strategy for valid models with integer-weight distributions."""
    k = draw(st.integers(min_value=1, max_value=max_k))
    m = draw(st.integers(min_value=1, max_value=max_m))
    prior_w = draw(st.lists(st.integers(1, 100), min_size=k, max_size=k))
    row_ws = draw(
        st.lists(
            st.lists(st.integers(1, 100), min_size=m, max_size=m),
            min_size=k,
            max_size=k,
        )
    )
    events = [f"A{i + 1}" for i in range(k)]
    outcomes = [f"B{j + 1}" for j in range(m)]
    return make_model(
        events,
        normalize(prior_w),
        outcomes,
        [normalize(ws) for ws in row_ws],
    )
