"""Command-line front end.

One subcommand per capability: validate a model file, run interventional or
observational queries, pick optimal actions, update beliefs, enumerate game
equilibria, and run seeded simulations. Every command is a thin adapter over
the library; probabilities print with 10 significant digits and follow the
declared domain order, so outputs are byte-stable golden-file material.

Exit codes: 0 success, 1 domain error (reported on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Mapping, Sequence

from . import fileio
from .belief import normalize_belief, update_belief
from .decisions import pearl_optimal_action, savage_optimal_action
from .errors import CausalError
from .games import enumerate_equilibria
from .intervention import interventional_distribution, observational_distribution
from .model import validate_model
from .simulate import POLICIES, simulation_csv


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _parse_bindings(pairs: Sequence[str], flag: str) -> dict[str, str]:
    bindings: dict[str, str] = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise UsageError(f"{flag} expects VAR=VALUE, got {pair!r}")
        if name in bindings:
            raise UsageError(f"{flag} names variable {name!r} twice")
        bindings[name] = value
    return bindings


def _parse_weights(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"--weights expects comma-separated numbers, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalchoice",
        description="Decision criteria, games and simulations over discrete causal models.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("validate", help="check a model file against all invariants")
    p.add_argument("model", help="model JSON file")

    p = sub.add_parser("query", help="interventional (--do) or observational (--given) marginal")
    p.add_argument("model", help="model JSON file")
    p.add_argument("--do", action="append", default=[], metavar="VAR=VALUE")
    p.add_argument("--given", action="append", default=[], metavar="VAR=VALUE")
    p.add_argument("--target", required=True, metavar="VAR")

    p = sub.add_parser("decide", help="optimal action for a model or a weighted family")
    p.add_argument("source", help="model JSON file, or family JSON file (has a 'models' list)")
    p.add_argument("problem", help="decision problem JSON file")
    p.add_argument("--weights", metavar="W1,W2,...", help="belief weights (overrides the family file)")

    p = sub.add_parser("update", help="Bayes-update family weights on an intervention outcome")
    p.add_argument("family", help="family JSON file")
    p.add_argument("--weights", metavar="W1,W2,...", help="prior weights (overrides the family file)")
    p.add_argument("--do", action="append", default=[], metavar="VAR=VALUE")
    p.add_argument("--observed", required=True, metavar="VAR=VALUE")

    p = sub.add_parser("equilibrium", help="enumerate pure causal Nash equilibria of a game")
    p.add_argument("game", help="game JSON file")

    p = sub.add_parser("simulate", help="run seeded episodes and emit the per-round CSV")
    p.add_argument("config", help="simulation config JSON file")
    p.add_argument("--policy", choices=POLICIES)
    p.add_argument("--horizon", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--replicas", type=int)
    p.add_argument("--out", metavar="FILE", help="write the CSV here instead of stdout")
    return parser


def _cmd_validate(args) -> int:
    fileio.load_model(args.model)
    print("OK")
    return 0


def _cmd_query(args) -> int:
    if args.do and args.given:
        raise UsageError("--do and --given cannot be combined")
    model = fileio.load_model(args.model)
    if args.do:
        dist = interventional_distribution(model, _parse_bindings(args.do, "--do"), args.target)
    else:
        dist = observational_distribution(model, _parse_bindings(args.given, "--given"), args.target)
    for label, p in zip(dist.labels, dist.probs):
        print(f"{args.target}={label}:{_fmt(p)}")
    return 0


def _cmd_decide(args) -> int:
    problem = fileio.load_problem(args.problem)
    raw = fileio._read_json(Path(args.source))
    if isinstance(raw, Mapping) and "models" in raw:
        family, file_weights = fileio.family_from_dict(raw, Path(args.source).parent)
        weights = _parse_weights(args.weights) or file_weights
        if weights is None:
            raise UsageError("family has no weights; pass --weights")
        decision = savage_optimal_action(normalize_belief(family, weights), problem)
    else:
        if args.weights is not None:
            raise UsageError("--weights only applies to a family source")
        model = validate_model(raw if isinstance(raw, Mapping) else {})
        decision = pearl_optimal_action(model, problem)
    print(f"action {problem.action_variable}={decision.action}")
    print(f"expected_utility {_fmt(decision.expected_utility)}")
    return 0


def _cmd_update(args) -> int:
    family, file_weights = fileio.load_family(args.family)
    weights = _parse_weights(args.weights) or file_weights
    if weights is None:
        raise UsageError("family has no weights; pass --weights")
    if not args.do:
        raise UsageError("update requires at least one --do VAR=VALUE")
    observed = _parse_bindings([args.observed], "--observed")
    (observed_var, observed_value), = observed.items()
    posterior = update_belief(
        normalize_belief(family, weights),
        _parse_bindings(args.do, "--do"),
        observed_var,
        observed_value,
    )
    for name, weight in zip(family.names, posterior.weights):
        print(f"{name}:{_fmt(weight)}")
    return 0


def _cmd_equilibrium(args) -> int:
    game = fileio.load_game(args.game)
    profiles = enumerate_equilibria(game)
    if not profiles:
        print("none")
        return 0
    for profile in profiles:
        print(",".join(f"{p.name}={profile[p.name]}" for p in game.players))
    return 0


def _cmd_simulate(args) -> int:
    spec = fileio.load_sim_spec(
        args.config,
        policy=args.policy,
        horizon=args.horizon,
        seed=args.seed,
        replicas=args.replicas,
    )
    text = simulation_csv(spec.configs, spec.replicas)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


_HANDLERS = {
    "validate": _cmd_validate,
    "query": _cmd_query,
    "decide": _cmd_decide,
    "update": _cmd_update,
    "equilibrium": _cmd_equilibrium,
    "simulate": _cmd_simulate,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep its code.
        return 0 if exc.code is None else int(exc.code)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except CausalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
