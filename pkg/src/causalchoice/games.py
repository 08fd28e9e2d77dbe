"""Strategic games played through an unknown causal mechanism.

Each player controls one action variable of a causal model drawn from a
finite state space of candidate models. A whole action profile is applied
as a joint intervention, the model then causes an outcome, and each player
scores it with their own utility. Payoffs average over the player's belief
about which candidate model is the true one, so beliefs need not be common
across players.

Equilibrium is the usual best-response condition on these belief-weighted
causal payoffs, checked for pure profiles by exhaustive search. The induced
game (one player per original-player/signal pair) ties the signal structure
back to classical Bayesian-game analysis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence

from .belief import BeliefState, ModelFamily, mixture_interventional
from .errors import (
    DuplicateNameError,
    IncompleteAssignmentError,
    LengthMismatchError,
    SchemaError,
    UnknownSignalError,
    UnknownValueError,
)
from .intervention import interventional_distribution

# One action value per player, keyed by player name.
ActionProfile = Mapping[str, str]

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Player:
    """One participant: an action variable, preferences over outcomes, a
    prior over the state space and a signal partition of it.

    ``signal_partition`` maps signal labels to tuples of state indices; the
    cells must partition the full index range and each must carry positive
    prior mass, otherwise the posterior given that signal is undefined.
    """

    name: str
    action_variable: str
    utility: Mapping[str, float]
    prior: tuple[float, ...]
    signal_partition: Mapping[str, tuple[int, ...]]


@dataclass(frozen=True)
class CausalGame:
    """A strategic game over a family of candidate causal models."""

    players: tuple[Player, ...]
    outcome_variable: str
    states: ModelFamily

    def __post_init__(self) -> None:
        if not self.players:
            raise SchemaError("a game needs at least one player")
        names = [p.name for p in self.players]
        if len(set(names)) != len(names):
            raise DuplicateNameError("player names must be unique")
        action_vars = [p.action_variable for p in self.players]
        if len(set(action_vars)) != len(action_vars):
            raise DuplicateNameError("players must control distinct action variables")
        if self.outcome_variable in action_vars:
            raise SchemaError("the outcome variable cannot be a player's action variable")
        outcome_domain = self.states.domain(self.outcome_variable)
        n_states = len(self.states)
        for player in self.players:
            self.states.domain(player.action_variable)
            _check_player_utility(player, outcome_domain)
            if len(player.prior) != n_states:
                raise LengthMismatchError(
                    f"prior of player {player.name!r} has {len(player.prior)} entries "
                    f"for {n_states} states"
                )
            if any(w < 0.0 or not math.isfinite(w) for w in player.prior):
                raise SchemaError(f"prior of player {player.name!r} must be nonnegative")
            if abs(math.fsum(player.prior) - 1.0) > _SUM_TOL:
                raise SchemaError(f"prior of player {player.name!r} does not sum to 1")
            _check_partition(player, n_states)

    def player(self, name: str) -> Player:
        for player in self.players:
            if player.name == name:
                return player
        raise SchemaError(f"no player named {name!r}")

    def action_domain(self, player: Player) -> tuple[str, ...]:
        return self.states.domain(player.action_variable)

    def prior_belief(self, player: Player) -> BeliefState:
        return BeliefState(family=self.states, weights=player.prior)


def _check_player_utility(player: Player, outcome_domain: tuple[str, ...]) -> None:
    missing = [label for label in outcome_domain if label not in player.utility]
    if missing:
        raise UnknownValueError(
            f"utility of player {player.name!r} does not cover outcome value(s) {missing}"
        )
    extra = [label for label in player.utility if label not in outcome_domain]
    if extra:
        raise UnknownValueError(
            f"utility of player {player.name!r} names value(s) {extra} outside the outcome domain"
        )
    for value in player.utility.values():
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(float(value)):
            raise SchemaError(f"utility of player {player.name!r} must be finite numbers")


def _check_partition(player: Player, n_states: int) -> None:
    if not player.signal_partition:
        raise SchemaError(f"player {player.name!r} needs at least one signal cell")
    seen: set[int] = set()
    for label, cell in player.signal_partition.items():
        if not cell:
            raise SchemaError(f"signal {label!r} of player {player.name!r} has an empty cell")
        for index in cell:
            if not isinstance(index, int) or index < 0 or index >= n_states:
                raise SchemaError(
                    f"signal {label!r} of player {player.name!r} names invalid state {index!r}"
                )
            if index in seen:
                raise SchemaError(
                    f"state {index} appears in two signal cells of player {player.name!r}"
                )
            seen.add(index)
        if math.fsum(player.prior[i] for i in cell) <= 0.0:
            raise SchemaError(
                f"signal {label!r} of player {player.name!r} has zero prior mass"
            )
    if len(seen) != n_states:
        raise SchemaError(
            f"signal cells of player {player.name!r} do not cover every state"
        )


def posterior_given_signal(game: CausalGame, player_name: str, signal: str) -> BeliefState:
    """Belief over states after receiving a signal: prior restricted to the
    signal's cell and renormalized; zero outside the cell."""
    player = game.player(player_name)
    if signal not in player.signal_partition:
        raise UnknownSignalError(f"player {player_name!r} has no signal {signal!r}")
    cell = set(player.signal_partition[signal])
    mass = math.fsum(player.prior[i] for i in cell)
    weights = tuple(
        (player.prior[i] / mass if i in cell else 0.0) for i in range(len(game.states))
    )
    return BeliefState(family=game.states, weights=weights)


def _checked_profile(game: CausalGame, profile: ActionProfile) -> dict[str, str]:
    if not isinstance(profile, Mapping):
        raise SchemaError("an action profile must map player names to actions")
    for name in profile:
        game.player(str(name))
    chosen: dict[str, str] = {}
    for player in game.players:
        if player.name not in profile:
            raise IncompleteAssignmentError(f"profile is missing player {player.name!r}")
        action = str(profile[player.name])
        if action not in game.action_domain(player):
            raise UnknownValueError(
                f"action {action!r} is not available to player {player.name!r}"
            )
        chosen[player.name] = action
    return chosen


def _profile_intervention(game: CausalGame, profile: Mapping[str, str]) -> dict[str, str]:
    # Every player's choice is an act: the whole profile is one joint do().
    return {game.player(name).action_variable: action for name, action in profile.items()}


def causal_payoff(
    game: CausalGame,
    profile: ActionProfile,
    player_name: str,
    belief: BeliefState | None = None,
) -> float:
    """Belief-weighted causal expected utility of a full action profile.

    ``sum_c u_i(c) * sum_s w(s) * P_s(c | do(profile))`` where the profile is
    applied as a joint intervention on every player's action variable.
    ``belief`` defaults to the player's prior; pass a signal posterior for
    interim evaluation.
    """
    player = game.player(player_name)
    chosen = _checked_profile(game, profile)
    if belief is None:
        belief = game.prior_belief(player)
    elif belief.family != game.states:
        raise SchemaError("belief must range over the game's state space")
    mixture = mixture_interventional(
        belief, _profile_intervention(game, chosen), game.outcome_variable
    )
    return math.fsum(
        player.utility[label] * p for label, p in zip(mixture.labels, mixture.probs)
    )


class Deviation(NamedTuple):
    player: str
    action: str
    gain: float


@dataclass(frozen=True)
class EquilibriumCheck:
    """Verdict for one profile plus, per player, the most profitable
    unilateral deviation (omitted for players with a single action)."""

    profile: Mapping[str, str]
    is_equilibrium: bool
    best_deviations: tuple[Deviation, ...]

    @property
    def certificate(self) -> Deviation | None:
        """The maximal-gain deviation across players; None if none improves."""
        improving = [d for d in self.best_deviations if d.gain > 0.0]
        if not improving:
            return None
        return max(improving, key=lambda d: d.gain)


def verify_equilibrium(
    game: CausalGame,
    profile: ActionProfile,
    beliefs: Mapping[str, BeliefState] | None = None,
) -> EquilibriumCheck:
    """Check the best-response condition for every player.

    A profile passes when no player can strictly gain by changing only their
    own action, each player evaluating payoffs with their own belief
    (``beliefs`` overrides per player name; the default is each player's
    prior). Comparisons are exact.
    """
    chosen = _checked_profile(game, profile)
    deviations: list[Deviation] = []
    is_equilibrium = True
    for player in game.players:
        belief = beliefs.get(player.name) if beliefs else None
        base = causal_payoff(game, chosen, player.name, belief)
        best: Deviation | None = None
        for action in game.action_domain(player):
            if action == chosen[player.name]:
                continue
            alternative = dict(chosen)
            alternative[player.name] = action
            gain = causal_payoff(game, alternative, player.name, belief) - base
            if best is None or gain > best.gain:
                best = Deviation(player=player.name, action=action, gain=gain)
        if best is not None:
            deviations.append(best)
            if best.gain > 0.0:
                is_equilibrium = False
    return EquilibriumCheck(
        profile=dict(chosen), is_equilibrium=is_equilibrium, best_deviations=tuple(deviations)
    )


def enumerate_equilibria(
    game: CausalGame, beliefs: Mapping[str, BeliefState] | None = None
) -> list[dict[str, str]]:
    """All pure equilibria, in lexicographic order of the action profiles
    (players in declared order, actions in declared domain order)."""
    domains = [game.action_domain(p) for p in game.players]
    names = [p.name for p in game.players]
    found: list[dict[str, str]] = []
    for combo in itertools.product(*domains):
        profile = dict(zip(names, combo))
        if verify_equilibrium(game, profile, beliefs).is_equilibrium:
            found.append(profile)
    return found


@dataclass(frozen=True)
class StrategicGame:
    """Normal-form game whose players are (original player, signal) pairs.

    ``payoffs`` maps each profile over the expanded player set (a tuple of
    actions aligned with ``players``) to one payoff per expanded player.
    """

    players: tuple[tuple[str, str], ...]
    action_sets: tuple[tuple[str, ...], ...]
    payoffs: Mapping[tuple[str, ...], tuple[float, ...]]

    def payoff(self, profile: Sequence[str], player_index: int) -> float:
        return self.payoffs[tuple(profile)][player_index]

    def pure_equilibria(self) -> list[tuple[str, ...]]:
        """Pure Nash profiles of the expanded game, in lexicographic order."""
        found: list[tuple[str, ...]] = []
        for profile in itertools.product(*self.action_sets):
            if all(
                self.payoff(profile, i)
                >= max(
                    self.payoff(profile[:i] + (alt,) + profile[i + 1 :], i)
                    for alt in self.action_sets[i]
                )
                for i in range(len(self.players))
            ):
                found.append(profile)
        return found


def induced_star_game(game: CausalGame) -> StrategicGame:
    """Expand signals into players: one expanded player per (player, signal).

    At an expanded profile, the payoff of ``(i, t)`` conditions on signal
    ``t``: for each state in the signal's cell, every original player ``j``
    plays whatever the expanded player ``(j, signal_j(state))`` chose, the
    resulting joint intervention is evaluated on that state's model, and the
    outcomes are averaged with the posterior given ``t``.
    """
    star_players: list[tuple[str, str]] = []
    action_sets: list[tuple[str, ...]] = []
    for player in game.players:
        for label in player.signal_partition:
            star_players.append((player.name, label))
            action_sets.append(game.action_domain(player))

    # signal_of[player name][state index] -> signal label
    signal_of: dict[str, dict[int, str]] = {}
    for player in game.players:
        cells: dict[int, str] = {}
        for label, cell in player.signal_partition.items():
            for index in cell:
                cells[index] = label
        signal_of[player.name] = cells

    payoffs: dict[tuple[str, ...], tuple[float, ...]] = {}
    for combo in itertools.product(*action_sets):
        chosen = dict(zip(star_players, combo))
        row: list[float] = []
        for player in game.players:
            for label in player.signal_partition:
                posterior = posterior_given_signal(game, player.name, label)
                value = 0.0
                for index, weight in enumerate(posterior.weights):
                    if weight == 0.0:
                        continue
                    profile = {
                        other.name: chosen[(other.name, signal_of[other.name][index])]
                        for other in game.players
                    }
                    dist = interventional_distribution(
                        game.states.models[index],
                        _profile_intervention(game, profile),
                        game.outcome_variable,
                    )
                    value += weight * math.fsum(
                        player.utility[lab] * p for lab, p in zip(dist.labels, dist.probs)
                    )
                row.append(value)
        payoffs[combo] = tuple(row)
    return StrategicGame(
        players=tuple(star_players), action_sets=tuple(action_sets), payoffs=payoffs
    )
