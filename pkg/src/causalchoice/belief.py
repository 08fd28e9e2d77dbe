"""Subjective probability over a finite family of causal models.

A belief state is a normalized weight vector over fully parameterized
candidate models that share one variable signature. "Model" here means
graph plus tables: two candidates may share a graph and differ only in
their parameters. Updating is Bayesian with interventional likelihoods:
after playing ``do(iv)`` and seeing an outcome, each candidate is scored
by the probability it assigned to that outcome under that intervention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    AllZeroWeightsError,
    DuplicateNameError,
    HeterogeneousFamilyError,
    LengthMismatchError,
    SchemaError,
    UnknownValueError,
    UnknownVariableError,
    ZeroTotalLikelihoodError,
)
from .intervention import Distribution, Intervention, interventional_distribution
from .model import CausalModel

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ModelFamily:
    """Ordered, non-empty collection of models over one variable signature."""

    models: tuple[CausalModel, ...]
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.models:
            raise SchemaError("a model family must contain at least one model")
        if len(self.names) != len(self.models):
            raise LengthMismatchError(
                f"{len(self.names)} names for {len(self.models)} models"
            )
        if len(set(self.names)) != len(self.names):
            raise DuplicateNameError("family entry names must be unique")
        reference = _signature(self.models[0])
        for name, model in zip(self.names, self.models):
            if _signature(model) != reference:
                raise HeterogeneousFamilyError(
                    f"family entry {name!r} does not share the family's variables and domains"
                )
        object.__setattr__(self, "_signature", reference)

    @classmethod
    def of(cls, models: Sequence[CausalModel], names: Sequence[str] | None = None) -> "ModelFamily":
        if names is None:
            names = tuple(f"model_{i}" for i in range(len(models)))
        return cls(models=tuple(models), names=tuple(names))

    def __len__(self) -> int:
        return len(self.models)

    @property
    def signature(self) -> Mapping[str, tuple[str, ...]]:
        return self._signature  # type: ignore[attr-defined]

    def domain(self, variable: str) -> tuple[str, ...]:
        try:
            return self.signature[variable]
        except KeyError:
            raise UnknownVariableError(
                f"variable {variable!r} is not in the family's signature"
            ) from None


def _signature(model: CausalModel) -> dict[str, tuple[str, ...]]:
    return {v.name: v.domain for v in model.variables}


@dataclass(frozen=True)
class BeliefState:
    """A family plus normalized nonnegative weights aligned with it.

    Immutable: updates return a new state, so sharing across threads or
    episode replicas is safe.
    """

    family: ModelFamily
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.family):
            raise LengthMismatchError(
                f"{len(self.weights)} weights for {len(self.family)} models"
            )
        if any(w < 0.0 or not math.isfinite(w) for w in self.weights):
            raise SchemaError("belief weights must be finite and nonnegative")
        if abs(math.fsum(self.weights) - 1.0) > _SUM_TOL:
            raise SchemaError(
                f"belief weights sum to {math.fsum(self.weights)!r}; "
                "use normalize_belief for raw weights"
            )

    @classmethod
    def uniform(cls, family: ModelFamily) -> "BeliefState":
        return normalize_belief(family, [1.0] * len(family))

    def weight_of(self, name: str) -> float:
        try:
            return self.weights[self.family.names.index(name)]
        except ValueError:
            raise UnknownVariableError(f"no family entry named {name!r}") from None


def normalize_belief(family: ModelFamily, raw_weights: Sequence[float]) -> BeliefState:
    """Build a belief state from raw nonnegative weights by dividing by the sum."""
    if len(raw_weights) != len(family):
        raise LengthMismatchError(
            f"{len(raw_weights)} weights for {len(family)} models"
        )
    weights = [float(w) for w in raw_weights]
    if any(w < 0.0 or not math.isfinite(w) for w in weights):
        raise SchemaError("raw weights must be finite and nonnegative")
    total = math.fsum(weights)
    if total <= 0.0:
        raise AllZeroWeightsError("at least one weight must be positive")
    return BeliefState(family=family, weights=tuple(w / total for w in weights))


def mixture_interventional(
    belief: BeliefState, iv: Intervention, target: str
) -> Distribution:
    """Weight-averaged interventional marginal across the family:
    ``p(c) = sum_m w_m * P_m(c | do(iv))``."""
    labels = belief.family.domain(target)
    terms: dict[str, list[float]] = {label: [] for label in labels}
    for model, weight in zip(belief.family.models, belief.weights):
        if weight == 0.0:
            continue
        dist = interventional_distribution(model, iv, target)
        for label, p in zip(dist.labels, dist.probs):
            terms[label].append(weight * p)
    return Distribution(
        variable=target,
        labels=labels,
        probs=tuple(math.fsum(terms[label]) for label in labels),
    )


def update_belief(
    belief: BeliefState, iv: Intervention, observed_var: str, observed_value: str
) -> BeliefState:
    """Bayes update after intervening ``do(iv)`` and observing a value.

    Each positively-weighted candidate's likelihood is the probability it
    assigns to the observation under the intervention; posterior weights are
    proportional to prior times likelihood. Zero-weight candidates stay at
    zero. Raises :class:`ZeroTotalLikelihoodError` when the observation is
    impossible under every supported candidate, which signals a misspecified
    family rather than something to paper over.
    """
    observed_value = str(observed_value)
    if observed_value not in belief.family.domain(observed_var):
        raise UnknownValueError(
            f"value {observed_value!r} is not in the domain of {observed_var!r}"
        )
    scores: list[float] = []
    for model, weight in zip(belief.family.models, belief.weights):
        if weight == 0.0:
            scores.append(0.0)
            continue
        likelihood = interventional_distribution(model, iv, observed_var).p(observed_value)
        scores.append(weight * likelihood)
    total = math.fsum(scores)
    if total <= 0.0:
        raise ZeroTotalLikelihoodError(
            f"observing {observed_var}={observed_value} after do({dict(iv)}) is impossible "
            "under every positively-weighted model"
        )
    return BeliefState(family=belief.family, weights=tuple(s / total for s in scores))
