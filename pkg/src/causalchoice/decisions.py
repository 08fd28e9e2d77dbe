"""Expected-utility decision rules for known and uncertain causal models.

Two criteria are implemented. With a known model, the best action maximizes
``sum_c P(c | do(a)) * u(c)`` (the interventional expected-utility rule,
after Pearl). When only a weighted family of candidate models is available,
the Savage-style rule maximizes

    sum_c u(c) * sum_m w_m * P_m(c | do(a))

which reduces exactly to the known-model rule on a singleton family. Argmax
ties are broken by the earliest value in the action variable's declared
domain order, so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .belief import BeliefState, mixture_interventional
from .errors import SchemaError, UnknownValueError
from .intervention import Distribution, interventional_distribution
from .model import CausalModel

# Maps every outcome value label to a finite real utility.
UtilityFunction = Mapping[str, float]


@dataclass(frozen=True)
class DecisionProblem:
    """Designated action and outcome variables plus a utility over outcomes.

    Actions are interventions: choosing ``a`` means forcing
    ``action_variable = a``. The action set is the action variable's domain,
    so it is finite and utilities attain their extremes.
    """

    action_variable: str
    outcome_variable: str
    utility: UtilityFunction

    def __post_init__(self) -> None:
        if self.action_variable == self.outcome_variable:
            raise SchemaError("action and outcome variable must differ")
        if not self.utility:
            raise SchemaError("utility must not be empty")
        for label, value in self.utility.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(float(value)):
                raise SchemaError(f"utility of outcome {label!r} must be a finite number")


class Decision(NamedTuple):
    action: str
    expected_utility: float


def _check_utility(problem: DecisionProblem, outcome_domain: tuple[str, ...]) -> None:
    missing = [label for label in outcome_domain if label not in problem.utility]
    if missing:
        raise UnknownValueError(f"utility does not cover outcome value(s) {missing}")
    extra = [label for label in problem.utility if label not in outcome_domain]
    if extra:
        raise UnknownValueError(f"utility names value(s) {extra} outside the outcome domain")


def _expected_utility(problem: DecisionProblem, outcome_dist: Distribution) -> float:
    u = problem.utility
    return math.fsum(u[label] * p for label, p in zip(outcome_dist.labels, outcome_dist.probs))


def _check_action(domain: tuple[str, ...], action: str) -> str:
    action = str(action)
    if action not in domain:
        raise UnknownValueError(f"action {action!r} is not in the action variable's domain")
    return action


def pearl_expected_utility(model: CausalModel, problem: DecisionProblem, action: str) -> float:
    """Expected utility of forcing the action on a known model."""
    action = _check_action(model.domain(problem.action_variable), action)
    _check_utility(problem, model.domain(problem.outcome_variable))
    dist = interventional_distribution(
        model, {problem.action_variable: action}, problem.outcome_variable
    )
    return _expected_utility(problem, dist)


def savage_expected_utility(belief: BeliefState, problem: DecisionProblem, action: str) -> float:
    """Expected utility of an action under a weighted family of models.

    Computed in the criterion's own order: for each outcome value, average
    the interventional probability over the family, then weight by utility.
    """
    action = _check_action(belief.family.domain(problem.action_variable), action)
    _check_utility(problem, belief.family.domain(problem.outcome_variable))
    mixture = mixture_interventional(
        belief, {problem.action_variable: action}, problem.outcome_variable
    )
    return _expected_utility(problem, mixture)


def _argmax(domain: tuple[str, ...], score) -> Decision:
    best: Decision | None = None
    for action in domain:
        value = score(action)
        if best is None or value > best.expected_utility:
            best = Decision(action=action, expected_utility=value)
    assert best is not None  # domains are non-empty by construction
    return best


def pearl_optimal_action(model: CausalModel, problem: DecisionProblem) -> Decision:
    """Argmax of :func:`pearl_expected_utility` over the action domain."""
    return _argmax(
        model.domain(problem.action_variable),
        lambda action: pearl_expected_utility(model, problem, action),
    )


def savage_optimal_action(belief: BeliefState, problem: DecisionProblem) -> Decision:
    """Argmax of :func:`savage_expected_utility` over the action domain."""
    return _argmax(
        belief.family.domain(problem.action_variable),
        lambda action: savage_expected_utility(belief, problem, action),
    )
