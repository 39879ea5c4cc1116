"""Exact arithmetic for finite prior/conditional probability systems.

A :class:`BayesModel` couples a prior distribution over a partition of
events ``A_1 .. A_k`` with a conditional table giving ``P(B_j | A_i)`` for
outcomes ``B_1 .. B_m``.  From it we derive the joint distribution, the
marginal of each outcome (law of total probability), and posterior
distributions ``P(A_i | B_j)`` via Bayes' rule, keeping every intermediate
term exposed so callers can reconstruct the fraction term by term.

All probabilities are double-precision floats.  Sums are accumulated with
``math.fsum`` so they are independent of term order, which makes posterior
results exactly invariant under relabelling of the partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Absolute tolerance for user-entered distributions: hand-typed decimal
# tables must pass, a prior that sums to 1.10 must fail.
NORMALIZATION_TOL = 1e-9

# Tighter tolerance used by internal identity checks and tests.
IDENTITY_TOL = 1e-12


class InvalidModelError(ValueError):
    """An operation received a model that fails validation.

    Carries the full validation report in ``violations``.
    """

    def __init__(self, violations: tuple["Violation", ...]):
        self.violations = tuple(violations)
        super().__init__(
            "model failed validation: " + "; ".join(str(v) for v in self.violations)
        )


class ZeroMarginalError(ValueError):
    """Raised when conditioning on an outcome with zero marginal probability."""


class UnknownLabelError(KeyError):
    """A label text does not name any event in the model."""

    def __init__(self, label: str, valid: tuple[str, ...], kind: str):
        self.label = label
        self.valid = tuple(valid)
        self.kind = kind
        super().__init__(
            f"unknown {kind} label {label!r}; valid labels: {', '.join(valid)}"
        )

    def __str__(self) -> str:  # KeyError would repr() the message
        return self.args[0]


@dataclass(frozen=True)
class Violation:
    """One failed invariant: where it occurred and a human-readable message."""

    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


@dataclass(frozen=True)
class EventLabel:
    """A named category at a fixed 0-based position within its partition."""

    text: str
    index: int


@dataclass(frozen=True)
class PriorDistribution:
    """Ordered unconditional probabilities over a partition."""

    labels: tuple[EventLabel, ...]
    probs: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class ConditionalTable:
    """k x m table of P(outcome_j | given_i); every row is a distribution."""

    given_labels: tuple[EventLabel, ...]
    outcome_labels: tuple[EventLabel, ...]
    rows: tuple[tuple[float, ...], ...]

    @property
    def k(self) -> int:
        return len(self.given_labels)

    @property
    def m(self) -> int:
        return len(self.outcome_labels)


@dataclass(frozen=True)
class BayesModel:
    """A prior plus a conditional table; the single source of truth."""

    prior: PriorDistribution
    conditional: ConditionalTable

    @property
    def k(self) -> int:
        return self.prior.k

    @property
    def m(self) -> int:
        return self.conditional.m

    @property
    def event_texts(self) -> tuple[str, ...]:
        return tuple(lab.text for lab in self.prior.labels)

    @property
    def outcome_texts(self) -> tuple[str, ...]:
        return tuple(lab.text for lab in self.conditional.outcome_labels)

    def find_event(self, text: str) -> int:
        """Index of the prior event named ``text``; UnknownLabelError otherwise."""
        try:
            return self.event_texts.index(text)
        except ValueError:
            raise UnknownLabelError(text, self.event_texts, "event") from None

    def find_outcome(self, text: str) -> int:
        """Index of the outcome named ``text``; UnknownLabelError otherwise."""
        try:
            return self.outcome_texts.index(text)
        except ValueError:
            raise UnknownLabelError(text, self.outcome_texts, "outcome") from None


@dataclass(frozen=True)
class JointDistribution:
    """Matrix of P(A_i and B_j) = prior_i * P(B_j | A_i)."""

    a_labels: tuple[EventLabel, ...]
    b_labels: tuple[EventLabel, ...]
    cells: tuple[tuple[float, ...], ...]

    def cell(self, a: int, b: int) -> float:
        return self.cells[a][b]

    @property
    def total(self) -> float:
        return math.fsum(v for row in self.cells for v in row)


@dataclass(frozen=True)
class PosteriorResult:
    """Bayes' rule, term by term, for one observed outcome.

    ``posterior[i] = numerator_terms[i] / denominator`` where the
    denominator is the law-of-total-probability sum of the numerator terms.
    """

    conditioned_on: EventLabel
    events: tuple[EventLabel, ...]
    numerator_terms: tuple[float, ...]
    denominator: float
    posterior: tuple[float, ...]


def make_labels(texts: list[str] | tuple[str, ...]) -> tuple[EventLabel, ...]:
    """Build position-indexed labels from a sequence of texts."""
    return tuple(EventLabel(text=t, index=i) for i, t in enumerate(texts))


def make_model(
    event_texts: list[str] | tuple[str, ...],
    prior_probs: list[float] | tuple[float, ...],
    outcome_texts: list[str] | tuple[str, ...],
    rows: list[list[float]] | tuple[tuple[float, ...], ...],
) -> BayesModel:
    """Assemble a BayesModel from plain sequences.  Performs no validation."""
    labels = make_labels(tuple(event_texts))
    return BayesModel(
        prior=PriorDistribution(labels=labels, probs=tuple(prior_probs)),
        conditional=ConditionalTable(
            given_labels=labels,
            outcome_labels=make_labels(tuple(outcome_texts)),
            rows=tuple(tuple(r) for r in rows),
        ),
    )


def _check_labels(labels: tuple[EventLabel, ...], where: str, out: list[Violation]) -> None:
    seen: dict[str, int] = {}
    for pos, lab in enumerate(labels):
        if not lab.text:
            out.append(Violation(where, f"label at position {pos} has empty text"))
        if lab.index != pos:
            out.append(
                Violation(where, f"label {lab.text!r} carries index {lab.index}, expected {pos}")
            )
        if lab.text in seen:
            out.append(
                Violation(
                    where,
                    f"duplicate label {lab.text!r} at positions {seen[lab.text]} and {pos}",
                )
            )
        else:
            seen[lab.text] = pos


def _check_probs(values: tuple[float, ...], where: str, out: list[Violation]) -> None:
    # range check shares the sum tolerance: a value one ulp past 1.0 from a
    # float round trip is representation error, not a wrong input
    for pos, p in enumerate(values):
        if not isinstance(p, (int, float)) or isinstance(p, bool) or math.isnan(p):
            out.append(Violation(where, f"entry {pos} is not a probability: {p!r}"))
        elif p < -NORMALIZATION_TOL or p > 1.0 + NORMALIZATION_TOL:
            out.append(Violation(where, f"entry {pos} is {p!r}, outside [0, 1]"))


def _check_sums_to_one(values: tuple[float, ...], where: str, out: list[Violation]) -> None:
    total = math.fsum(values)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        out.append(Violation(where, f"probabilities sum to {total:.6g}, expected 1"))


def validate_model(model: BayesModel) -> tuple[Violation, ...]:
    """Check every model invariant; returns the empty tuple iff valid.

    Violations are data, not failures: any candidate model can be inspected.
    """
    out: list[Violation] = []
    prior, cond = model.prior, model.conditional

    if prior.k < 1:
        out.append(Violation("prior", "partition is empty; need at least one event"))
    if len(prior.probs) != prior.k:
        out.append(
            Violation(
                "prior",
                f"{prior.k} labels but {len(prior.probs)} probabilities",
            )
        )
    _check_labels(prior.labels, "prior", out)
    _check_probs(prior.probs, "prior", out)
    if prior.probs and len(prior.probs) == prior.k:
        _check_sums_to_one(prior.probs, "prior", out)

    if cond.m < 1:
        out.append(Violation("conditional", "no outcomes; need at least one"))
    _check_labels(cond.outcome_labels, "conditional outcomes", out)
    _check_labels(cond.given_labels, "conditional givens", out)
    if len(cond.rows) != cond.k:
        out.append(
            Violation(
                "conditional",
                f"{cond.k} given labels but {len(cond.rows)} rows",
            )
        )
    for i, row in enumerate(cond.rows):
        where = f"conditional[{i}]"
        if len(row) != cond.m:
            out.append(Violation(where, f"row has {len(row)} entries, expected {cond.m}"))
            continue
        _check_probs(row, where, out)
        _check_sums_to_one(row, where, out)

    if prior.k != cond.k:
        out.append(
            Violation(
                "model",
                f"prior has {prior.k} events but conditional has {cond.k} rows of givens",
            )
        )
    else:
        for i, (pl, gl) in enumerate(zip(prior.labels, cond.given_labels)):
            if pl.text != gl.text:
                out.append(
                    Violation(
                        "model",
                        f"prior label {pl.text!r} != conditional given {gl.text!r} at position {i}",
                    )
                )
    return tuple(out)


def require_valid(model: BayesModel) -> None:
    """Raise InvalidModelError (with the report attached) unless valid."""
    violations = validate_model(model)
    if violations:
        raise InvalidModelError(violations)


def _check_outcome_index(model: BayesModel, b: int) -> None:
    if not 0 <= b < model.m:
        raise IndexError(
            f"outcome index {b} out of range; outcomes are "
            + ", ".join(model.outcome_texts)
        )


def _check_event_index(model: BayesModel, a: int) -> None:
    if not 0 <= a < model.k:
        raise IndexError(
            f"event index {a} out of range; events are " + ", ".join(model.event_texts)
        )


def joint(model: BayesModel) -> JointDistribution:
    """Joint distribution: cell (i, j) is prior_i times P(B_j | A_i)."""
    require_valid(model)
    cells = tuple(
        tuple(p * r for r in row)
        for p, row in zip(model.prior.probs, model.conditional.rows)
    )
    return JointDistribution(
        a_labels=model.prior.labels,
        b_labels=model.conditional.outcome_labels,
        cells=cells,
    )


def marginal_outcome(model: BayesModel, b: int) -> float:
    """P(B_b) by the law of total probability: sum_i prior_i * P(B_b | A_i)."""
    require_valid(model)
    _check_outcome_index(model, b)
    return math.fsum(
        model.prior.probs[i] * model.conditional.rows[i][b] for i in range(model.k)
    )


def posterior(model: BayesModel, b: int) -> PosteriorResult:
    """Bayes' rule for outcome ``b``: P(A_i | B_b) for every event A_i.

    The numerator terms and the denominator are exposed so the full
    fraction can be reconstructed term by term.
    """
    require_valid(model)
    _check_outcome_index(model, b)
    terms = tuple(
        model.prior.probs[i] * model.conditional.rows[i][b] for i in range(model.k)
    )
    denominator = math.fsum(terms)
    if denominator == 0.0:
        label = model.conditional.outcome_labels[b]
        raise ZeroMarginalError(
            f"conditioning on probability-zero event {label.text!r}"
        )
    return PosteriorResult(
        conditioned_on=model.conditional.outcome_labels[b],
        events=model.prior.labels,
        numerator_terms=terms,
        denominator=denominator,
        posterior=tuple(t / denominator for t in terms),
    )
