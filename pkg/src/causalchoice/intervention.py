"""Graph surgery and exact interventional/observational queries.

Forcing variables (``do``) differs from observing them: an intervention cuts
every edge into the forced variables and replaces their tables with point
masses, so upstream variables keep their original distribution instead of
being filtered by Bayes conditioning. Both query styles below are computed
by exhaustive enumeration of the (possibly mutilated) joint.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .errors import SchemaError, UnknownVariableError, ZeroProbabilityEvidenceError
from .model import Assignment, CausalModel, _draw, joint_probability, validate_model

# Mapping of variable names to forced value labels; must be non-empty.
Intervention = Mapping[str, str]

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Distribution:
    """Probability vector over one variable's domain, in domain order."""

    variable: str
    labels: tuple[str, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.probs):
            raise SchemaError("distribution labels and probabilities must align")
        if any(p < 0.0 for p in self.probs):
            raise SchemaError(f"negative probability in distribution over {self.variable!r}")
        if abs(math.fsum(self.probs) - 1.0) > _SUM_TOL:
            raise SchemaError(
                f"distribution over {self.variable!r} sums to {math.fsum(self.probs)!r}"
            )

    def p(self, label: str) -> float:
        try:
            return self.probs[self.labels.index(label)]
        except ValueError:
            raise UnknownVariableError(
                f"label {label!r} is not in the domain of {self.variable!r}"
            ) from None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.probs))

    def sample(self, rng: random.Random) -> str:
        return _draw(self.labels, self.probs, rng)


def _point_mass(variable: str, labels: tuple[str, ...], value: str) -> Distribution:
    return Distribution(
        variable=variable,
        labels=labels,
        probs=tuple(1.0 if label == value else 0.0 for label in labels),
    )


def _checked_items(
    model: CausalModel, mapping: Mapping[str, str], what: str
) -> tuple[tuple[str, str], ...]:
    """Validate names/values against the model; return hashable sorted items."""
    if not isinstance(mapping, Mapping):
        raise SchemaError(f"{what} must be a mapping of variable names to values")
    items = {str(k): str(v) for k, v in mapping.items()}
    for name, value in items.items():
        model.value_position(name, value)
    return tuple(sorted(items.items()))


def _intervention_items(model: CausalModel, iv: Intervention) -> tuple[tuple[str, str], ...]:
    items = _checked_items(model, iv, "intervention")
    if not items:
        raise SchemaError("intervention must force at least one variable")
    return items


@lru_cache(maxsize=4096)
def _mutilated(model: CausalModel, items: tuple[tuple[str, str], ...]) -> CausalModel:
    forced = dict(items)
    raw = {
        "variables": [{"name": v.name, "domain": list(v.domain)} for v in model.variables],
        "edges": sorted((p, c) for p, c in model.dag.edges if c not in forced),
        "cpts": [],
    }
    for spec in model.variables:
        if spec.name in forced:
            value = forced[spec.name]
            rows = [{"given": {}, "p": [1.0 if lab == value else 0.0 for lab in spec.domain]}]
            raw["cpts"].append({"variable": spec.name, "parents": [], "rows": rows})
        else:
            cpt = model.cpt(spec.name)
            rows = [
                {"given": dict(zip(cpt.parents, key)), "p": list(probs)}
                for key, probs in cpt.rows
            ]
            raw["cpts"].append({"variable": spec.name, "parents": list(cpt.parents), "rows": rows})
    return validate_model(raw)


def mutilate(model: CausalModel, iv: Intervention) -> CausalModel:
    """Apply ``do(iv)`` by graph surgery.

    Every intervened variable loses its incoming edges and gets a point-mass
    table at the forced value; everything else is untouched. The result is a
    fully validated model, and the operation is idempotent for a fixed
    intervention.
    """
    return _mutilated(model, _intervention_items(model, iv))


def _marginal_by_enumeration(model: CausalModel, target: str) -> Distribution:
    labels = model.domain(target)
    mass = {label: [] for label in labels}
    for assignment in model.assignments():
        mass[assignment[target]].append(joint_probability(model, assignment))
    return Distribution(
        variable=target,
        labels=labels,
        probs=tuple(math.fsum(mass[label]) for label in labels),
    )


@lru_cache(maxsize=4096)
def _interventional(
    model: CausalModel, items: tuple[tuple[str, str], ...], target: str
) -> Distribution:
    return _marginal_by_enumeration(_mutilated(model, items), target)


def interventional_distribution(
    model: CausalModel, iv: Intervention, target: str
) -> Distribution:
    """Exact marginal of ``target`` under ``do(iv)``.

    Equals the marginal of the mutilated model's joint, computed by summing
    the truncated factorization over every full assignment. A target that is
    itself intervened yields a point mass at its forced value.
    """
    items = _intervention_items(model, iv)
    forced = dict(items)
    if target in forced:
        return _point_mass(target, model.domain(target), forced[target])
    model.variable(target)
    return _interventional(model, items, target)


@lru_cache(maxsize=4096)
def _observational(
    model: CausalModel, items: tuple[tuple[str, str], ...], target: str
) -> Distribution:
    evidence = dict(items)
    labels = model.domain(target)
    mass = {label: [] for label in labels}
    for assignment in model.assignments():
        if all(assignment[name] == value for name, value in evidence.items()):
            mass[assignment[target]].append(joint_probability(model, assignment))
    totals = {label: math.fsum(mass[label]) for label in labels}
    denom = math.fsum(totals.values())
    if denom <= 0.0:
        raise ZeroProbabilityEvidenceError(
            f"evidence {evidence!r} has probability zero under the model"
        )
    return Distribution(
        variable=target,
        labels=labels,
        probs=tuple(totals[label] / denom for label in labels),
    )


def observational_distribution(
    model: CausalModel, evidence: Assignment, target: str
) -> Distribution:
    """Exact conditional marginal P(target | evidence) on the unmutilated joint.

    ``evidence`` may be empty (plain marginal) or partial. Raises
    :class:`ZeroProbabilityEvidenceError` when the evidence event has zero
    mass; a silent fallback would hide modelling bugs.
    """
    model.variable(target)
    return _observational(model, _checked_items(model, evidence, "evidence"), target)
