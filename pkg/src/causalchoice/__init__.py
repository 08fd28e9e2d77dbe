"""Exact decision making and game solving over discrete causal models.

The package covers three layers: interventional inference on fully
specified causal graphical models (graph surgery plus enumeration),
expected-utility decision rules for a known model or a weighted family of
candidates, and pure Nash equilibria for strategic games whose moves act on
an unknown causal mechanism. A seeded simulation harness measures how a
belief-updating agent compares with oracle and random baselines.
"""

from .belief import (
    BeliefState,
    ModelFamily,
    mixture_interventional,
    normalize_belief,
    update_belief,
)
from .decisions import (
    Decision,
    DecisionProblem,
    UtilityFunction,
    pearl_expected_utility,
    pearl_optimal_action,
    savage_expected_utility,
    savage_optimal_action,
)
from .errors import (
    AllZeroWeightsError,
    CausalError,
    CyclicGraphError,
    DuplicateNameError,
    HeterogeneousFamilyError,
    IncompleteAssignmentError,
    InvalidCptError,
    LengthMismatchError,
    SchemaError,
    UnknownSignalError,
    UnknownValueError,
    UnknownVariableError,
    ZeroProbabilityEvidenceError,
    ZeroTotalLikelihoodError,
)
from .games import (
    ActionProfile,
    CausalGame,
    Deviation,
    EquilibriumCheck,
    Player,
    StrategicGame,
    causal_payoff,
    enumerate_equilibria,
    induced_star_game,
    posterior_given_signal,
    verify_equilibrium,
)
from .intervention import (
    Distribution,
    Intervention,
    interventional_distribution,
    mutilate,
    observational_distribution,
)
from .model import (
    Assignment,
    CausalModel,
    Cpt,
    Dag,
    VariableSpec,
    joint_probability,
    sample_assignment,
    validate_model,
)
from .simulate import (
    ComparisonReport,
    EpisodeConfig,
    PolicySummary,
    RoundRecord,
    Trace,
    compare_policies,
    cumulative_regret,
    run_episode,
    simulation_csv,
)

__all__ = [
    "ActionProfile",
    "AllZeroWeightsError",
    "Assignment",
    "BeliefState",
    "CausalError",
    "CausalGame",
    "CausalModel",
    "ComparisonReport",
    "Cpt",
    "CyclicGraphError",
    "Dag",
    "Decision",
    "DecisionProblem",
    "Deviation",
    "Distribution",
    "DuplicateNameError",
    "EpisodeConfig",
    "EquilibriumCheck",
    "HeterogeneousFamilyError",
    "IncompleteAssignmentError",
    "InvalidCptError",
    "Intervention",
    "LengthMismatchError",
    "ModelFamily",
    "Player",
    "PolicySummary",
    "RoundRecord",
    "SchemaError",
    "StrategicGame",
    "Trace",
    "UnknownSignalError",
    "UnknownValueError",
    "UnknownVariableError",
    "UtilityFunction",
    "VariableSpec",
    "ZeroProbabilityEvidenceError",
    "ZeroTotalLikelihoodError",
    "causal_payoff",
    "compare_policies",
    "cumulative_regret",
    "enumerate_equilibria",
    "induced_star_game",
    "interventional_distribution",
    "joint_probability",
    "mixture_interventional",
    "mutilate",
    "normalize_belief",
    "observational_distribution",
    "pearl_expected_utility",
    "pearl_optimal_action",
    "posterior_given_signal",
    "run_episode",
    "sample_assignment",
    "savage_expected_utility",
    "savage_optimal_action",
    "simulation_csv",
    "update_belief",
    "validate_model",
    "verify_equilibrium",
]

__version__ = "0.1.0"
