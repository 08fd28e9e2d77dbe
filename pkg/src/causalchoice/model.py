"""Discrete causal graphical models with exact enumeration-based inference.

A model is an immutable value object: variables with finite ordered domains,
a DAG of direct-cause edges, and one conditional probability table (CPT) per
variable. The joint distribution is the product of each variable's CPT entry
given its parents. All quantities are computed by exhaustive enumeration of
the assignment space, which keeps every query exact at desk scale.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import (
    CyclicGraphError,
    DuplicateNameError,
    IncompleteAssignmentError,
    InvalidCptError,
    SchemaError,
    UnknownValueError,
    UnknownVariableError,
)

# A (possibly partial) mapping of variable names to value labels.
Assignment = Mapping[str, str]

ROW_SUM_TOL = 1e-9
# Rows whose sum is already this close to 1 are stored untouched, so that
# re-validating a validated model reproduces it bit for bit.
_RENORM_SKIP = 1e-12


@dataclass(frozen=True)
class VariableSpec:
    """A named variable with a finite, ordered domain of value labels."""

    name: str
    domain: tuple[str, ...]


@dataclass(frozen=True)
class Dag:
    """Directed graph over variable names; acyclicity is established by
    :func:`validate_model`. Any finite nonempty acyclic graph necessarily
    has at least one parentless (exogenous) node."""

    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def parents_of(self, node: str) -> frozenset[str]:
        return frozenset(p for p, c in self.edges if c == node)

    def children_of(self, node: str) -> frozenset[str]:
        return frozenset(c for p, c in self.edges if p == node)


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table for one variable.

    ``rows`` pairs every full parent assignment (values aligned with
    ``parents``) with a probability vector over the variable's domain, in
    the canonical order produced by :func:`validate_model`.
    """

    variable: str
    parents: tuple[str, ...]
    rows: tuple[tuple[tuple[str, ...], tuple[float, ...]], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_parents", dict(self.rows))

    def row(self, parent_values: tuple[str, ...]) -> tuple[float, ...]:
        return self._by_parents[parent_values]  # type: ignore[attr-defined]


@dataclass(frozen=True)
class CausalModel:
    """A validated causal graphical model.

    Construct via :func:`validate_model`; instances are immutable and all
    operations on them are pure functions, so they are safe to share across
    threads. ``variables`` keeps the declared order, which is the canonical
    iteration order everywhere; ``topo_order`` is recomputed at validation.
    """

    variables: tuple[VariableSpec, ...]
    dag: Dag
    cpts: tuple[Cpt, ...]
    topo_order: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_var_by_name", {v.name: v for v in self.variables})
        object.__setattr__(self, "_cpt_by_name", {c.variable: c for c in self.cpts})
        object.__setattr__(
            self,
            "_value_pos",
            {v.name: {label: i for i, label in enumerate(v.domain)} for v in self.variables},
        )

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def has_variable(self, name: str) -> bool:
        return name in self._var_by_name  # type: ignore[attr-defined]

    def variable(self, name: str) -> VariableSpec:
        try:
            return self._var_by_name[name]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownVariableError(f"unknown variable: {name!r}") from None

    def domain(self, name: str) -> tuple[str, ...]:
        return self.variable(name).domain

    def cpt(self, name: str) -> Cpt:
        self.variable(name)
        return self._cpt_by_name[name]  # type: ignore[attr-defined]

    def value_position(self, name: str, value: str) -> int:
        positions = self._value_pos[self.variable(name).name]  # type: ignore[attr-defined]
        try:
            return positions[value]
        except KeyError:
            raise UnknownValueError(
                f"value {value!r} is not in the domain of variable {name!r}"
            ) from None

    def assignments(self) -> Iterator[dict[str, str]]:
        """All full assignments, varying the last declared variable fastest."""
        names = self.variable_names
        for combo in itertools.product(*(v.domain for v in self.variables)):
            yield dict(zip(names, combo))


def _check_identifier(name: object, what: str) -> str:
    if not isinstance(name, str) or not name:
        raise SchemaError(f"{what} must be a non-empty string, got {name!r}")
    return name


def _as_probability(value: object, context: str) -> float:
    # Canonical files carry probabilities as decimal strings.
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise InvalidCptError(f"{context}: {value!r} is not a number") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidCptError(f"{context}: {value!r} is not a number")
    p = float(value)
    if not math.isfinite(p) or p < 0.0 or p > 1.0:
        raise InvalidCptError(f"{context}: probability {p!r} outside [0, 1]")
    return p


def _topological_order(names: tuple[str, ...], parents: Mapping[str, set[str]]) -> tuple[str, ...]:
    # Repeated stable scan: earliest declared ready node first. Quadratic,
    # which is irrelevant at the intended model sizes.
    placed: list[str] = []
    done: set[str] = set()
    while len(placed) < len(names):
        progressed = False
        for name in names:
            if name not in done and parents[name] <= done:
                placed.append(name)
                done.add(name)
                progressed = True
        if not progressed:
            stuck = [n for n in names if n not in done]
            raise CyclicGraphError(f"edges contain a directed cycle among {stuck}")
    return tuple(placed)


def validate_model(raw: Mapping) -> CausalModel:
    """Check an arbitrary raw model description and build a :class:`CausalModel`.

    ``raw`` follows the model file schema: ``variables`` (list of
    ``{name, domain}``), ``edges`` (list of ``[parent, child]`` pairs) and
    ``cpts`` (list of ``{variable, parents, rows}`` where each row is
    ``{given, p}``). Value labels are coerced to strings. CPT rows must sum
    to 1 within ``1e-9`` and are renormalized exactly.

    Raises :class:`SchemaError`, :class:`DuplicateNameError`,
    :class:`UnknownVariableError`, :class:`CyclicGraphError` or
    :class:`InvalidCptError` on the first violation found.
    """
    if not isinstance(raw, Mapping):
        raise SchemaError("model description must be a mapping")
    for key in ("variables", "edges", "cpts"):
        if key not in raw:
            raise SchemaError(f"model description is missing the {key!r} field")

    # Variables and domains.
    if not isinstance(raw["variables"], (list, tuple)) or not raw["variables"]:
        raise SchemaError("'variables' must be a non-empty list")
    variables: list[VariableSpec] = []
    seen_names: set[str] = set()
    for entry in raw["variables"]:
        if not isinstance(entry, Mapping) or "name" not in entry or "domain" not in entry:
            raise SchemaError(f"variable entry must have 'name' and 'domain': {entry!r}")
        name = _check_identifier(entry["name"], "variable name")
        if name in seen_names:
            raise DuplicateNameError(f"duplicate variable name: {name!r}")
        seen_names.add(name)
        domain_raw = entry["domain"]
        if not isinstance(domain_raw, (list, tuple)) or not domain_raw:
            raise SchemaError(f"domain of {name!r} must be a non-empty list")
        domain = tuple(str(label) for label in domain_raw)
        if len(set(domain)) != len(domain):
            raise DuplicateNameError(f"duplicate value label in domain of {name!r}")
        variables.append(VariableSpec(name=name, domain=domain))
    names = tuple(v.name for v in variables)
    order_of = {n: i for i, n in enumerate(names)}
    domain_of = {v.name: v.domain for v in variables}

    # Edges.
    if not isinstance(raw["edges"], (list, tuple)):
        raise SchemaError("'edges' must be a list of [parent, child] pairs")
    edges: set[tuple[str, str]] = set()
    parents_of: dict[str, set[str]] = {n: set() for n in names}
    for pair in raw["edges"]:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(f"edge must be a [parent, child] pair: {pair!r}")
        parent, child = str(pair[0]), str(pair[1])
        for endpoint in (parent, child):
            if endpoint not in order_of:
                raise UnknownVariableError(f"edge endpoint {endpoint!r} is not a declared variable")
        if parent == child:
            raise CyclicGraphError(f"self-loop on {parent!r}")
        if (parent, child) in edges:
            raise DuplicateNameError(f"duplicate edge {parent!r} -> {child!r}")
        edges.add((parent, child))
        parents_of[child].add(parent)

    topo = _topological_order(names, parents_of)

    # CPTs: exactly one per variable, covering the parent-domain product.
    if not isinstance(raw["cpts"], (list, tuple)):
        raise SchemaError("'cpts' must be a list")
    raw_cpt_by_var: dict[str, Mapping] = {}
    for entry in raw["cpts"]:
        if not isinstance(entry, Mapping) or "variable" not in entry:
            raise SchemaError(f"cpt entry must name its variable: {entry!r}")
        var = str(entry["variable"])
        if var not in order_of:
            raise UnknownVariableError(f"cpt refers to unknown variable {var!r}")
        if var in raw_cpt_by_var:
            raise DuplicateNameError(f"duplicate cpt for variable {var!r}")
        raw_cpt_by_var[var] = entry
    missing = [n for n in names if n not in raw_cpt_by_var]
    if missing:
        raise InvalidCptError(f"missing cpt for variable(s): {missing}")

    cpts: list[Cpt] = []
    for spec in variables:
        entry = raw_cpt_by_var[spec.name]
        declared_parents = entry.get("parents", [])
        if not isinstance(declared_parents, (list, tuple)):
            raise SchemaError(f"cpt parents of {spec.name!r} must be a list")
        declared_parents = [str(p) for p in declared_parents]
        if len(set(declared_parents)) != len(declared_parents):
            raise DuplicateNameError(f"duplicate parent in cpt of {spec.name!r}")
        for p in declared_parents:
            if p not in order_of:
                raise UnknownVariableError(f"cpt of {spec.name!r} names unknown parent {p!r}")
        if set(declared_parents) != parents_of[spec.name]:
            raise InvalidCptError(
                f"cpt parents of {spec.name!r} are {sorted(declared_parents)}, "
                f"but the graph gives {sorted(parents_of[spec.name])}"
            )
        # Parents in declaration order of the variables: canonical row keys.
        parents = tuple(sorted(declared_parents, key=order_of.__getitem__))

        rows_raw = entry.get("rows")
        if not isinstance(rows_raw, (list, tuple)):
            raise InvalidCptError(f"cpt of {spec.name!r} has no row list")
        provided: dict[tuple[str, ...], tuple[float, ...]] = {}
        for row in rows_raw:
            if not isinstance(row, Mapping) or "given" not in row or "p" not in row:
                raise InvalidCptError(f"cpt row of {spec.name!r} must have 'given' and 'p': {row!r}")
            given = row["given"]
            if not isinstance(given, Mapping):
                raise InvalidCptError(f"cpt row 'given' of {spec.name!r} must be a mapping")
            given = {str(k): str(v) for k, v in given.items()}
            if set(given) != set(parents):
                raise InvalidCptError(
                    f"cpt row of {spec.name!r} conditions on {sorted(given)}, expected {sorted(parents)}"
                )
            key = tuple(given[p] for p in parents)
            for p, v in zip(parents, key):
                if v not in domain_of[p]:
                    raise InvalidCptError(
                        f"cpt row of {spec.name!r}: {v!r} is not in the domain of parent {p!r}"
                    )
            if key in provided:
                raise InvalidCptError(f"duplicate cpt row of {spec.name!r} for parents {key}")
            vector = row["p"]
            if not isinstance(vector, (list, tuple)) or len(vector) != len(spec.domain):
                raise InvalidCptError(
                    f"cpt row of {spec.name!r} must give {len(spec.domain)} probabilities"
                )
            probs = tuple(
                _as_probability(x, f"cpt of {spec.name!r}, row {key}") for x in vector
            )
            total = math.fsum(probs)
            if abs(total - 1.0) > ROW_SUM_TOL:
                raise InvalidCptError(
                    f"cpt row of {spec.name!r} for parents {key} sums to {total!r}"
                )
            if abs(total - 1.0) > _RENORM_SKIP:
                probs = tuple(p / total for p in probs)
            provided[key] = probs

        expected = list(itertools.product(*(domain_of[p] for p in parents)))
        if len(provided) != len(expected):
            absent = [k for k in expected if k not in provided]
            raise InvalidCptError(f"cpt of {spec.name!r} is missing rows for parents {absent}")
        cpts.append(
            Cpt(variable=spec.name, parents=parents, rows=tuple((k, provided[k]) for k in expected))
        )

    model = CausalModel(
        variables=tuple(variables),
        dag=Dag(nodes=frozenset(names), edges=frozenset(edges)),
        cpts=tuple(cpts),
        topo_order=topo,
    )
    total = math.fsum(joint_probability(model, a) for a in model.assignments())
    if abs(total - 1.0) > ROW_SUM_TOL:
        raise InvalidCptError(f"joint distribution sums to {total!r}, not 1")
    return model


def _full_assignment(model: CausalModel, assignment: Assignment) -> dict[str, str]:
    for name in assignment:
        model.variable(name)
    missing = [n for n in model.variable_names if n not in assignment]
    if missing:
        raise IncompleteAssignmentError(f"assignment is missing variable(s): {missing}")
    return {n: assignment[n] for n in model.variable_names}


def joint_probability(model: CausalModel, assignment: Assignment) -> float:
    """Probability of a full assignment: the product over variables of the
    CPT entry for the assigned value given the assigned parent values."""
    full = _full_assignment(model, assignment)
    p = 1.0
    for spec in model.variables:
        cpt = model.cpt(spec.name)
        row = cpt.row(tuple(full[parent] for parent in cpt.parents))
        p *= row[model.value_position(spec.name, full[spec.name])]
    return p


def _draw(labels: tuple[str, ...], probs: tuple[float, ...], rng: random.Random) -> str:
    u = rng.random()
    acc = 0.0
    for label, p in zip(labels, probs):
        acc += p
        if u < acc:
            return label
    return labels[-1]  # guards against accumulated float error at u ~ 1


def sample_with_rng(model: CausalModel, rng: random.Random) -> dict[str, str]:
    """Ancestral sampling in topological order from a caller-owned stream."""
    result: dict[str, str] = {}
    for name in model.topo_order:
        cpt = model.cpt(name)
        row = cpt.row(tuple(result[parent] for parent in cpt.parents))
        result[name] = _draw(model.domain(name), row, rng)
    return {n: result[n] for n in model.variable_names}


def sample_assignment(model: CausalModel, seed: int) -> dict[str, str]:
    """Draw one full assignment deterministically from ``seed``."""
    return sample_with_rng(model, random.Random(seed))
