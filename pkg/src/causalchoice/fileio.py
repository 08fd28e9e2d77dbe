"""JSON file formats for models, problems, families, games and simulations.

Model files are the canonical interchange format:

    {"variables": [{"name": ..., "domain": [...]}, ...],
     "edges": [[parent, child], ...],
     "cpts": [{"variable": ..., "parents": [...],
               "rows": [{"given": {parent: value, ...}, "p": [...]}, ...]}]}

Canonical serialization is bit-exact: object keys sorted, probabilities
written as decimal strings, edges sorted, rows in parent-domain product
order. Elements that reference other files (family members, a game's state
space, a simulation's parts) may be inline objects or path strings resolved
relative to the referencing file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .belief import ModelFamily
from .decisions import DecisionProblem
from .errors import SchemaError
from .games import CausalGame, Player
from .model import CausalModel, validate_model
from .simulate import POLICIES, EpisodeConfig


def _read_json(path: Path | str):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Models


def load_model(path: Path | str) -> CausalModel:
    return validate_model(_require_mapping(_read_json(path), f"model file {path}"))


def model_to_dict(model: CausalModel) -> dict:
    """Canonical plain-dict form with probabilities as decimal strings."""
    return {
        "variables": [{"name": v.name, "domain": list(v.domain)} for v in model.variables],
        "edges": sorted([p, c] for p, c in model.dag.edges),
        "cpts": [
            {
                "variable": cpt.variable,
                "parents": list(cpt.parents),
                "rows": [
                    {"given": dict(zip(cpt.parents, key)), "p": [repr(p) for p in probs]}
                    for key, probs in cpt.rows
                ],
            }
            for cpt in model.cpts
        ],
    }


def dumps_model(model: CausalModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2) + "\n"


def _require_mapping(raw, what: str) -> Mapping:
    if not isinstance(raw, Mapping):
        raise SchemaError(f"{what} must be a JSON object")
    return raw


def _model_from_ref(ref, base_dir: Path, what: str) -> CausalModel:
    if isinstance(ref, str):
        return load_model(base_dir / ref)
    return validate_model(_require_mapping(ref, what))


# ---------------------------------------------------------------------------
# Decision problems


def problem_from_dict(raw: Mapping) -> DecisionProblem:
    raw = _require_mapping(raw, "decision problem")
    for key in ("action_variable", "outcome_variable", "utility"):
        if key not in raw:
            raise SchemaError(f"decision problem is missing the {key!r} field")
    utility = _require_mapping(raw["utility"], "'utility'")
    return DecisionProblem(
        action_variable=str(raw["action_variable"]),
        outcome_variable=str(raw["outcome_variable"]),
        utility={str(k): _as_number(v, f"utility of {k!r}") for k, v in utility.items()},
    )


def load_problem(path: Path | str) -> DecisionProblem:
    return problem_from_dict(_read_json(path))


def _as_number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{what} must be a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise SchemaError(f"{what} must be finite")
    return x


# ---------------------------------------------------------------------------
# Model families


def family_from_dict(
    raw: Mapping, base_dir: Path | str = "."
) -> tuple[ModelFamily, list[float] | None]:
    """Build a family plus the file's weight vector, if it has one."""
    raw = _require_mapping(raw, "family")
    base_dir = Path(base_dir)
    entries = raw.get("models")
    if not isinstance(entries, (list, tuple)) or not entries:
        raise SchemaError("family file needs a non-empty 'models' list")
    models = [
        _model_from_ref(entry, base_dir, f"family model #{i}") for i, entry in enumerate(entries)
    ]
    names = raw.get("names")
    if names is not None:
        if not isinstance(names, (list, tuple)):
            raise SchemaError("'names' must be a list of strings")
        names = [str(n) for n in names]
    family = ModelFamily.of(models, names)
    weights = raw.get("weights")
    if weights is not None:
        if not isinstance(weights, (list, tuple)):
            raise SchemaError("'weights' must be a list of numbers")
        weights = [_as_number(w, "family weight") for w in weights]
    return family, weights


def load_family(path: Path | str) -> tuple[ModelFamily, list[float] | None]:
    path = Path(path)
    return family_from_dict(_read_json(path), path.parent)


# ---------------------------------------------------------------------------
# Games


def game_from_dict(raw: Mapping, base_dir: Path | str = ".") -> CausalGame:
    raw = _require_mapping(raw, "game")
    base_dir = Path(base_dir)
    if "outcome_variable" not in raw or "players" not in raw or "states" not in raw:
        raise SchemaError("game file needs 'players', 'outcome_variable' and 'states'")

    states_ref = raw["states"]
    if isinstance(states_ref, str):
        states, _ = load_family(base_dir / states_ref)
    elif isinstance(states_ref, (list, tuple)):
        states = ModelFamily.of(
            [_model_from_ref(m, base_dir, "state model") for m in states_ref]
        )
    else:
        states, _ = family_from_dict(_require_mapping(states_ref, "'states'"), base_dir)
    n_states = len(states)

    entries = raw["players"]
    if not isinstance(entries, (list, tuple)) or not entries:
        raise SchemaError("game file needs a non-empty 'players' list")
    players = []
    for entry in entries:
        entry = _require_mapping(entry, "player entry")
        for key in ("name", "action_variable", "utility"):
            if key not in entry:
                raise SchemaError(f"player entry is missing the {key!r} field")
        utility = {
            str(k): _as_number(v, f"utility of {k!r}")
            for k, v in _require_mapping(entry["utility"], "player utility").items()
        }
        prior = entry.get("prior")
        if prior is None:
            prior = [1.0 / n_states] * n_states
        elif not isinstance(prior, (list, tuple)):
            raise SchemaError("player 'prior' must be a list of numbers")
        prior = tuple(_as_number(w, "prior entry") for w in prior)
        partition_raw = entry.get("signal_partition")
        if partition_raw is None:
            partition = {"all": tuple(range(n_states))}
        else:
            partition_raw = _require_mapping(partition_raw, "'signal_partition'")
            partition = {}
            for label, cell in partition_raw.items():
                if not isinstance(cell, (list, tuple)):
                    raise SchemaError(f"signal cell {label!r} must be a list of state indices")
                partition[str(label)] = tuple(int(i) for i in cell)
        players.append(
            Player(
                name=str(entry["name"]),
                action_variable=str(entry["action_variable"]),
                utility=utility,
                prior=prior,
                signal_partition=partition,
            )
        )
    return CausalGame(
        players=tuple(players),
        outcome_variable=str(raw["outcome_variable"]),
        states=states,
    )


def load_game(path: Path | str) -> CausalGame:
    path = Path(path)
    return game_from_dict(_read_json(path), path.parent)


# ---------------------------------------------------------------------------
# Simulation configs


@dataclass(frozen=True)
class SimulationSpec:
    configs: tuple[EpisodeConfig, ...]
    replicas: int


def sim_spec_from_dict(
    raw: Mapping,
    base_dir: Path | str = ".",
    policy: str | None = None,
    horizon: int | None = None,
    seed: int | None = None,
    replicas: int | None = None,
) -> SimulationSpec:
    """Build episode configs from a simulation file plus optional overrides.

    The file names a hidden true model, the agent's candidate family (its
    weights are the agent's prior unless a 'weights' field overrides them),
    the decision problem, and one or more policies.
    """
    raw = _require_mapping(raw, "simulation config")
    base_dir = Path(base_dir)
    for key in ("true_model", "family", "problem"):
        if key not in raw:
            raise SchemaError(f"simulation config is missing the {key!r} field")

    true_model = _model_from_ref(raw["true_model"], base_dir, "'true_model'")
    family_ref = raw["family"]
    if isinstance(family_ref, str):
        family, file_weights = load_family(base_dir / family_ref)
    else:
        family, file_weights = family_from_dict(
            _require_mapping(family_ref, "'family'"), base_dir
        )
    weights = raw.get("weights", file_weights)
    if weights is None:
        raise SchemaError("no agent prior: give the family 'weights' or a top-level 'weights'")
    weights = tuple(_as_number(w, "prior weight") for w in weights)

    problem_ref = raw["problem"]
    if isinstance(problem_ref, str):
        problem = load_problem(base_dir / problem_ref)
    else:
        problem = problem_from_dict(_require_mapping(problem_ref, "'problem'"))

    if policy is not None:
        policies = [policy]
    elif "policies" in raw:
        if not isinstance(raw["policies"], (list, tuple)) or not raw["policies"]:
            raise SchemaError("'policies' must be a non-empty list")
        policies = [str(p) for p in raw["policies"]]
    elif "policy" in raw:
        policies = [str(raw["policy"])]
    else:
        raise SchemaError(f"no policy: give 'policy' or 'policies' (one of {POLICIES})")

    if horizon is None:
        if "horizon" not in raw:
            raise SchemaError("no horizon: give 'horizon' in the file or --horizon")
        horizon = int(raw["horizon"])
    if seed is None:
        seed = int(raw.get("seed", 0))
    if replicas is None:
        replicas = int(raw.get("replicas", 1))

    configs = tuple(
        EpisodeConfig(
            true_model=true_model,
            agent_family=family,
            agent_prior=weights,
            problem=problem,
            policy=p,
            horizon=horizon,
            seed=seed,
        )
        for p in policies
    )
    return SimulationSpec(configs=configs, replicas=replicas)


def load_sim_spec(path: Path | str, **overrides) -> SimulationSpec:
    path = Path(path)
    return sim_spec_from_dict(_read_json(path), path.parent, **overrides)
