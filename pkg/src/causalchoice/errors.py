"""Exception taxonomy shared across the toolkit.

Every domain-level failure raises a subclass of :class:`CausalError`, so
callers (notably the CLI) can separate modelling errors from genuine bugs.
"""


class CausalError(Exception):
    """Base class for all domain errors raised by this package."""


class SchemaError(CausalError):
    """Malformed input: bad file structure, missing fields, invalid shapes."""


class DuplicateNameError(CausalError):
    """A name (variable, value label, edge, player, ...) was declared twice."""


class CyclicGraphError(CausalError):
    """The declared edges contain a directed cycle or self-loop."""


class UnknownVariableError(CausalError):
    """A referenced variable does not exist in the model."""


class UnknownValueError(CausalError):
    """A referenced value label is not in the variable's domain."""


class InvalidCptError(CausalError):
    """A conditional probability table is malformed: missing or duplicate
    rows, wrong vector length, entries outside [0, 1], or a row sum that is
    off by more than the tolerance."""


class IncompleteAssignmentError(CausalError):
    """A full assignment was required but some variables are missing."""


class ZeroProbabilityEvidenceError(CausalError):
    """Conditioning event has probability zero under the model."""


class HeterogeneousFamilyError(CausalError):
    """Models in a family do not share the same variables and domains."""


class AllZeroWeightsError(CausalError):
    """Every raw belief weight is zero; no distribution can be formed."""


class LengthMismatchError(CausalError):
    """A weight vector's length does not match what it must align with."""


class ZeroTotalLikelihoodError(CausalError):
    """The observation is impossible under every positively-weighted model."""


class UnknownSignalError(CausalError):
    """A signal label does not exist in the player's partition."""
