"""Sequential experiment harness: hidden true model, belief-updating agents.

Each round the agent picks an action by policy, the hidden model's
interventional distribution generates an outcome, and the agent's belief
over its candidate family is Bayes-updated on that evidence. Regret is
measured against the interventional optimum of the true model on expected
utilities (pseudo-regret), not realized draws, so the oracle's regret is
exactly zero and the series is deterministic noise-free.

Everything is seeded: a single stream per episode drives both the random
policy and outcome sampling, and replica ``r`` of a run uses ``seed + r``.
"""

from __future__ import annotations

import csv
import io
import math
import random
import statistics
from dataclasses import dataclass
from typing import Sequence

from .belief import BeliefState, ModelFamily, normalize_belief, update_belief
from .decisions import DecisionProblem, pearl_expected_utility, pearl_optimal_action, savage_optimal_action
from .errors import SchemaError, ZeroTotalLikelihoodError
from .intervention import interventional_distribution
from .model import CausalModel

POLICIES = ("savage", "random", "oracle")

CSV_COLUMNS = (
    "policy",
    "replica",
    "round",
    "action",
    "outcome",
    "utility",
    "regret",
    "weight_true_model",
)


@dataclass(frozen=True)
class EpisodeConfig:
    """Everything one episode needs, including its seed."""

    true_model: CausalModel
    agent_family: ModelFamily
    agent_prior: tuple[float, ...]
    problem: DecisionProblem
    policy: str
    horizon: int
    seed: int

    def __post_init__(self) -> None:
        if self.policy not in POLICIES:
            raise SchemaError(f"policy must be one of {POLICIES}, got {self.policy!r}")
        if self.horizon < 0:
            raise SchemaError("horizon must be nonnegative")
        normalize_belief(self.agent_family, self.agent_prior)
        for variable in (self.problem.action_variable, self.problem.outcome_variable):
            self.true_model.variable(variable)
            self.agent_family.domain(variable)


@dataclass(frozen=True)
class RoundRecord:
    round: int
    action: str
    outcome: str
    utility: float
    posterior: tuple[float, ...]


@dataclass(frozen=True)
class Trace:
    records: tuple[RoundRecord, ...]

    @property
    def actions(self) -> tuple[str, ...]:
        return tuple(r.action for r in self.records)

    def __len__(self) -> int:
        return len(self.records)


def run_episode(config: EpisodeConfig) -> Trace:
    """Play one seeded episode and return its per-round trace.

    All three policies track beliefs, so traces are directly comparable;
    they differ only in how the action is chosen. A belief update that hits
    zero total likelihood aborts the episode with the failing round index.
    """
    problem = config.problem
    belief = normalize_belief(config.agent_family, config.agent_prior)
    rng = random.Random(config.seed)
    action_domain = config.true_model.domain(problem.action_variable)
    oracle_choice = pearl_optimal_action(config.true_model, problem)

    records: list[RoundRecord] = []
    for t in range(1, config.horizon + 1):
        if config.policy == "savage":
            action = savage_optimal_action(belief, problem).action
        elif config.policy == "random":
            action = rng.choice(action_domain)
        else:
            action = oracle_choice.action
        outcome = interventional_distribution(
            config.true_model, {problem.action_variable: action}, problem.outcome_variable
        ).sample(rng)
        try:
            belief = update_belief(
                belief, {problem.action_variable: action}, problem.outcome_variable, outcome
            )
        except ZeroTotalLikelihoodError as exc:
            raise ZeroTotalLikelihoodError(f"episode failed at round {t}: {exc}") from exc
        records.append(
            RoundRecord(
                round=t,
                action=action,
                outcome=outcome,
                utility=float(problem.utility[outcome]),
                posterior=belief.weights,
            )
        )
    return Trace(records=tuple(records))


def cumulative_regret(
    trace: Trace, true_model: CausalModel, problem: DecisionProblem
) -> list[float]:
    """Running sum of the oracle's expected-utility edge over each chosen action."""
    best = pearl_optimal_action(true_model, problem).expected_utility
    series: list[float] = []
    total = 0.0
    for record in trace.records:
        total += best - pearl_expected_utility(true_model, problem, record.action)
        series.append(total)
    return series


def _true_model_indices(family: ModelFamily, true_model: CausalModel) -> tuple[int, ...]:
    return tuple(i for i, m in enumerate(family.models) if m == true_model)


def _weight_on(weights: Sequence[float], indices: tuple[int, ...]) -> float:
    return math.fsum(weights[i] for i in indices)


def _format(x: float) -> str:
    return f"{x:.10g}"


def episode_rows(config: EpisodeConfig, replica: int, trace: Trace) -> list[list[str]]:
    """Per-round CSV rows (strings) for one finished episode."""
    indices = _true_model_indices(config.agent_family, config.true_model)
    regrets = cumulative_regret(trace, config.true_model, config.problem)
    rows: list[list[str]] = []
    for record, regret in zip(trace.records, regrets):
        weight = _format(_weight_on(record.posterior, indices)) if indices else ""
        rows.append(
            [
                config.policy,
                str(replica),
                str(record.round),
                record.action,
                record.outcome,
                _format(record.utility),
                _format(regret),
                weight,
            ]
        )
    return rows


def simulation_csv(configs: Sequence[EpisodeConfig], replicas: int) -> str:
    """Run every config for ``replicas`` seeds and emit the per-round CSV.

    Replica ``r`` runs with ``config.seed + r``. Output is deterministic:
    identical configs and seeds give byte-identical text.
    """
    if replicas < 1:
        raise SchemaError("replicas must be at least 1")
    buffer = io.StringIO()
    # csv's default line terminator is \r\n; force \n for byte-stable files.
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for config in configs:
        for replica in range(replicas):
            seeded = EpisodeConfig(
                true_model=config.true_model,
                agent_family=config.agent_family,
                agent_prior=config.agent_prior,
                problem=config.problem,
                policy=config.policy,
                horizon=config.horizon,
                seed=config.seed + replica,
            )
            writer.writerows(episode_rows(seeded, replica, run_episode(seeded)))
    return buffer.getvalue()


@dataclass(frozen=True)
class PolicySummary:
    policy: str
    replicas: int
    mean_final_regret: float
    min_final_regret: float
    max_final_regret: float
    mean_final_weight_true: float | None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[PolicySummary, ...]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            [
                "policy",
                "replicas",
                "mean_final_regret",
                "min_final_regret",
                "max_final_regret",
                "mean_final_weight_true",
            ]
        )
        for row in self.rows:
            writer.writerow(
                [
                    row.policy,
                    str(row.replicas),
                    _format(row.mean_final_regret),
                    _format(row.min_final_regret),
                    _format(row.max_final_regret),
                    "" if row.mean_final_weight_true is None else _format(row.mean_final_weight_true),
                ]
            )
        return buffer.getvalue()


def compare_policies(configs: Sequence[EpisodeConfig], replicas: int) -> ComparisonReport:
    """Aggregate final regret and final true-model weight per config.

    All configs must share the true model and the decision problem so the
    regret scale is comparable; each runs ``replicas`` episodes with seeds
    ``seed + 0 .. seed + replicas - 1``.
    """
    if replicas < 1:
        raise SchemaError("replicas must be at least 1")
    if not configs:
        raise SchemaError("compare_policies needs at least one config")
    reference = configs[0]
    for config in configs[1:]:
        if config.true_model != reference.true_model or config.problem != reference.problem:
            raise SchemaError("configs must share the true model and the problem")

    summaries: list[PolicySummary] = []
    for config in configs:
        indices = _true_model_indices(config.agent_family, config.true_model)
        finals: list[float] = []
        weights: list[float] = []
        for replica in range(replicas):
            seeded = EpisodeConfig(
                true_model=config.true_model,
                agent_family=config.agent_family,
                agent_prior=config.agent_prior,
                problem=config.problem,
                policy=config.policy,
                horizon=config.horizon,
                seed=config.seed + replica,
            )
            trace = run_episode(seeded)
            series = cumulative_regret(trace, config.true_model, config.problem)
            finals.append(series[-1] if series else 0.0)
            if indices:
                if trace.records:
                    weights.append(_weight_on(trace.records[-1].posterior, indices))
                else:
                    prior = normalize_belief(config.agent_family, config.agent_prior)
                    weights.append(_weight_on(prior.weights, indices))
        summaries.append(
            PolicySummary(
                policy=config.policy,
                replicas=replicas,
                mean_final_regret=statistics.fmean(finals),
                min_final_regret=min(finals),
                max_final_regret=max(finals),
                mean_final_weight_true=statistics.fmean(weights) if weights else None,
            )
        )
    return ComparisonReport(rows=tuple(summaries))
