"""Core vocabulary for contracts-as-processes.

A contract state is the set of norms currently in force: obligations
("bearer must see to it that <proposition>") and powers ("bearer may bring
a legal relation into force by exercising"). Transitions between states are
labelled with party actions: fulfilments, violations (possibly refined into
failure dimensions), and power exercises. Rules map a guarding norm plus a
transition label to effects on the norm set.

Everything here is an immutable value; the operations are pure functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from typing import Iterable, Union


class SpecError(ValueError):
    """A structurally invalid spec or spec fragment."""


class EffectConflictError(SpecError):
    """Fired rules demand terminations of conflicting outcome classes."""


_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _require_ident(name: str, what: str) -> None:
    if not _IDENT_RE.match(name or ""):
        raise SpecError(f"{what} {name!r} is not a valid identifier")


class TerminalOutcome(Enum):
    HAPPY = "happy"
    UNHAPPY = "unhappy"


class FramePolicy(Enum):
    """What happens to norms a transition's rules do not mention."""

    DISCHARGE_UNMENTIONED = "discharge"
    PERSIST_UNMENTIONED = "persist"


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Obligation:
    """bearer must see to it that the named proposition obtains."""

    bearer: str
    prop: str

    def __post_init__(self) -> None:
        _require_ident(self.bearer, "agent")
        _require_ident(self.prop, "proposition")


@dataclass(frozen=True)
class TerminatedState:
    """Final contract state; doubles as the 'void' content of a power."""

    outcome: TerminalOutcome


@dataclass(frozen=True)
class Power:
    """bearer may, by exercising, bring `effect` into force.

    Content is one nesting level only: either a single obligation or a
    terminal marker (the contract is declared over with that outcome).
    """

    bearer: str
    effect: Union[Obligation, TerminatedState]

    def __post_init__(self) -> None:
        _require_ident(self.bearer, "agent")
        if not isinstance(self.effect, (Obligation, TerminatedState)):
            raise SpecError("power content must be an obligation or a terminal marker")


NormAtom = Union[Obligation, Power]


# ---------------------------------------------------------------------------
# Time and transition labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Before:
    """Satisfied by instants <= t (a deadline, inclusive)."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise SpecError("time bound must be non-negative")


@dataclass(frozen=True)
class After:
    """Satisfied by instants strictly past t."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise SpecError("time bound must be non-negative")


@dataclass(frozen=True)
class Between:
    """Satisfied by instants in (t1, t2]; chains gaplessly with Before/After."""

    t1: int
    t2: int

    def __post_init__(self) -> None:
        if self.t1 < 0:
            raise SpecError("time bound must be non-negative")
        if self.t1 >= self.t2:
            raise SpecError(f"between({self.t1},{self.t2}) is an empty interval")


TemporalQualifier = Union[Before, After, Between, None]


def satisfies(at: int, qualifier: TemporalQualifier) -> bool:
    """Does an instant fall inside a temporal window? None means anytime."""
    if qualifier is None:
        return True
    if isinstance(qualifier, Before):
        return at <= qualifier.t
    if isinstance(qualifier, After):
        return at > qualifier.t
    return qualifier.t1 < at <= qualifier.t2


@dataclass(frozen=True)
class ViolationRefinement:
    """Which dimensions of an obligation a violation failed on.

    `lapse` marks the degenerate violation where no event occurred at all
    (deadline passed quietly); it excludes the other dimensions. A non-lapse
    refinement must name at least one failed dimension.
    """

    nonconforming: bool = False
    late: bool = False
    wrong_performer: bool = False
    lapse: bool = False

    def __post_init__(self) -> None:
        others = self.nonconforming or self.late or self.wrong_performer
        if self.lapse and others:
            raise SpecError("a lapse refinement cannot carry other dimensions")
        if not self.lapse and not others:
            raise SpecError("a refinement must fail at least one dimension")

    def dimensions(self) -> tuple[str, ...]:
        if self.lapse:
            return ("lapse",)
        dims = []
        if self.nonconforming:
            dims.append("nonconforming")
        if self.late:
            dims.append("late")
        if self.wrong_performer:
            dims.append("wrong_performer")
        return tuple(dims)


LAPSE = ViolationRefinement(lapse=True)


@dataclass(frozen=True)
class Fulfil:
    agent: str
    prop: str
    qualifier: TemporalQualifier = None


@dataclass(frozen=True)
class Violate:
    """refinement=None is the generic 'did not see to it' label."""

    agent: str
    prop: str
    refinement: ViolationRefinement | None = None
    qualifier: TemporalQualifier = None


@dataclass(frozen=True)
class ExercisePower:
    agent: str
    effect: Union[Obligation, TerminatedState]
    qualifier: TemporalQualifier = None


TransitionLabel = Union[Fulfil, Violate, ExercisePower]


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ActiveState:
    norms: frozenset[NormAtom]

    def __post_init__(self) -> None:
        object.__setattr__(self, "norms", frozenset(self.norms))


ContractState = Union[ActiveState, TerminatedState]


def active(*atoms: NormAtom) -> ActiveState:
    return ActiveState(frozenset(atoms))


def is_terminal(state: ContractState) -> bool:
    return isinstance(state, TerminatedState)


def atom_text(atom: NormAtom) -> str:
    if isinstance(atom, Obligation):
        return f"O({atom.bearer}, {atom.prop})"
    if isinstance(atom.effect, TerminatedState):
        return f"POW({atom.bearer}, terminated {atom.effect.outcome.value})"
    return f"POW({atom.bearer}, {atom_text(atom.effect)})"


def qualifier_text(qualifier: TemporalQualifier) -> str:
    if qualifier is None:
        return ""
    if isinstance(qualifier, Before):
        return f"@before({qualifier.t})"
    if isinstance(qualifier, After):
        return f"@after({qualifier.t})"
    return f"@between({qualifier.t1},{qualifier.t2})"


def label_text(label: TransitionLabel) -> str:
    """Surface syntax for a label, e.g. ``not susan: delivery / late @after(30)``."""
    if isinstance(label, Fulfil):
        body = f"{label.agent}: {label.prop}"
    elif isinstance(label, Violate):
        body = f"not {label.agent}: {label.prop}"
        if label.refinement is not None:
            body += " / " + "+".join(label.refinement.dimensions())
    else:
        if isinstance(label.effect, TerminatedState):
            content = f"terminated {label.effect.outcome.value}"
        else:
            content = atom_text(label.effect)
        body = f"exercise {label.agent}: {content}"
    suffix = qualifier_text(label.qualifier)
    return f"{body} {suffix}" if suffix else body


def state_text(state: ContractState) -> str:
    if isinstance(state, TerminatedState):
        return f"terminated {state.outcome.value}"
    if not state.norms:
        return "{}"
    return "{" + ", ".join(sorted(atom_text(a) for a in state.norms)) + "}"


def canonical_key(state: ContractState) -> str:
    """Order-insensitive identity of a state, used to merge graph nodes.

    Distinct norm sets map to distinct keys because atom_text is injective
    over identifier-named agents and propositions.
    """
    if isinstance(state, TerminatedState):
        return f"terminated:{state.outcome.value}"
    return "active:" + ";".join(sorted(atom_text(a) for a in state.norms))


def holds(state: ContractState, atom: NormAtom) -> bool:
    """Is the norm in force in this state? Terminal states hold nothing."""
    if isinstance(state, TerminatedState):
        return False
    return atom in state.norms


# ---------------------------------------------------------------------------
# Rules and effects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Add:
    atom: NormAtom


@dataclass(frozen=True)
class Remove:
    atom: NormAtom


@dataclass(frozen=True)
class Terminate:
    outcome: TerminalOutcome


Consequent = Union[Add, Remove, Terminate]


@dataclass(frozen=True)
class Rule:
    """``when <guard> holds, <label> leads to <consequents>``."""

    id: str
    guard: NormAtom
    label: TransitionLabel
    consequents: tuple[Consequent, ...]

    def __post_init__(self) -> None:
        _require_ident(self.id, "rule id")
        object.__setattr__(self, "consequents", tuple(self.consequents))
        terms = [c for c in self.consequents if isinstance(c, Terminate)]
        if terms and len(self.consequents) > 1:
            raise SpecError(f"rule {self.id}: a terminate consequent must stand alone")
        if not self.consequents:
            raise SpecError(f"rule {self.id}: at least one consequent required")

    @property
    def terminates(self) -> TerminalOutcome | None:
        for c in self.consequents:
            if isinstance(c, Terminate):
                return c.outcome
        return None


def apply_effects(
    state: ContractState, fired: Iterable[Rule], policy: FramePolicy
) -> ContractState:
    """Combine the consequents of the rules that fired on one transition.

    A Terminate consequent dominates everything else. Otherwise, under
    DISCHARGE_UNMENTIONED the next state is exactly the union of Adds (any
    norm not re-stated is discharged); under PERSIST_UNMENTIONED the prior
    norms survive minus the fired guards and explicit Removes, plus Adds.
    """
    if not isinstance(state, ActiveState):
        raise SpecError("effects apply to active states only")
    fired = list(fired)
    for rule in fired:
        if not holds(state, rule.guard):
            raise SpecError(f"rule {rule.id} fired but its guard does not hold")

    outcomes = {r.terminates for r in fired if r.terminates is not None}
    if len(outcomes) > 1:
        ids = ", ".join(r.id for r in fired if r.terminates is not None)
        raise EffectConflictError(f"conflicting termination outcomes from rules: {ids}")
    if outcomes:
        return TerminatedState(outcomes.pop())

    adds = {c.atom for r in fired for c in r.consequents if isinstance(c, Add)}
    if policy is FramePolicy.DISCHARGE_UNMENTIONED:
        return ActiveState(frozenset(adds))
    removes = {c.atom for r in fired for c in r.consequents if isinstance(c, Remove)}
    guards = {r.guard for r in fired}
    return ActiveState((state.norms - guards - removes) | adds)


# ---------------------------------------------------------------------------
# Declarations
# ---------------------------------------------------------------------------

AttrValue = Union[str, Decimal]


@dataclass
class Proposition:
    """A state of affairs a party may be obliged to bring about.

    Attributes capture the agreed description (size, quantity, amounts...);
    conformance of a reported event is exact equality on this map. The
    expected performer, when set, is who must bring the proposition about
    in person.
    """

    name: str
    display: str = ""
    attrs: dict[str, AttrValue] = field(default_factory=dict)
    performer: str | None = None

    def __post_init__(self) -> None:
        _require_ident(self.name, "proposition")
        if not self.display:
            self.display = self.name
        for key in self.attrs:
            _require_ident(key, "attribute key")


@dataclass(frozen=True)
class EngineConfig:
    frame_policy: FramePolicy = FramePolicy.DISCHARGE_UNMENTIONED
    violation_axiom: bool = True
    state_bound: int = 10_000

    def __post_init__(self) -> None:
        if self.state_bound < 1:
            raise SpecError("state bound must be at least 1")


@dataclass
class ContractSpec:
    name: str
    agents: tuple[str, ...]
    propositions: dict[str, Proposition]
    initial: frozenset[NormAtom]
    rules: tuple[Rule, ...]
    config: EngineConfig = EngineConfig()

    def __post_init__(self) -> None:
        self.agents = tuple(self.agents)
        self.initial = frozenset(self.initial)
        self.rules = tuple(self.rules)
        _require_ident(self.name, "contract name")
        if len(set(self.agents)) != len(self.agents):
            raise SpecError("duplicate agent declaration")
        for name, prop in self.propositions.items():
            if name != prop.name:
                raise SpecError(f"proposition registered under wrong name: {name}")
            if prop.performer is not None and prop.performer not in self.agents:
                raise SpecError(f"proposition {name}: performer {prop.performer} undeclared")
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise SpecError("duplicate rule id")
        for atom in self.initial:
            self._check_atom(atom, "initially")
        for rule in self.rules:
            self._check_atom(rule.guard, f"rule {rule.id} guard")
            self._check_label(rule.label, rule.id)
            for c in rule.consequents:
                if isinstance(c, (Add, Remove)):
                    self._check_atom(c.atom, f"rule {rule.id} consequent")

    def _check_atom(self, atom: NormAtom, where: str) -> None:
        if isinstance(atom, Obligation):
            if atom.bearer not in self.agents:
                raise SpecError(f"{where}: agent {atom.bearer} undeclared")
            if atom.prop not in self.propositions:
                raise SpecError(f"{where}: proposition {atom.prop} undeclared")
        else:
            if atom.bearer not in self.agents:
                raise SpecError(f"{where}: agent {atom.bearer} undeclared")
            if isinstance(atom.effect, Obligation):
                self._check_atom(atom.effect, where)

    def _check_label(self, label: TransitionLabel, rule_id: str) -> None:
        where = f"rule {rule_id} label"
        if isinstance(label, (Fulfil, Violate)):
            if label.agent not in self.agents:
                raise SpecError(f"{where}: agent {label.agent} undeclared")
            if label.prop not in self.propositions:
                raise SpecError(f"{where}: proposition {label.prop} undeclared")
        else:
            if label.agent not in self.agents:
                raise SpecError(f"{where}: agent {label.agent} undeclared")
            if isinstance(label.effect, Obligation):
                self._check_atom(label.effect, where)

    def declared_atoms(self) -> frozenset[NormAtom]:
        """Every norm atom spelled out anywhere in the spec."""
        atoms: set[NormAtom] = set(self.initial)
        for rule in self.rules:
            atoms.add(rule.guard)
            if isinstance(rule.label, ExercisePower):
                atoms.add(Power(rule.label.agent, rule.label.effect))
            for c in rule.consequents:
                if isinstance(c, (Add, Remove)):
                    atoms.add(c.atom)
        for atom in list(atoms):
            if isinstance(atom, Power) and isinstance(atom.effect, Obligation):
                atoms.add(atom.effect)
        return frozenset(atoms)


# ---------------------------------------------------------------------------
# Events
# ---------------------------------------------------------------------------


class Tick:
    """A pure passage-of-time event; carries no actor and no attributes."""

    _instance: "Tick | None" = None

    def __new__(cls) -> "Tick":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Tick()"


TICK = Tick()


@dataclass(frozen=True)
class Exercise:
    """The event of exercising a power; effect may be omitted when the
    actor holds exactly one power."""

    effect: Union[Obligation, TerminatedState, None] = None


@dataclass
class Event:
    """A timestamped, attributed party action reported to the monitor."""

    at: int
    actor: str | None
    act: Union[str, Tick, Exercise]
    attrs: dict[str, AttrValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.at < 0:
            raise SpecError("event time must be non-negative")
        if isinstance(self.act, Tick):
            if self.actor is not None or self.attrs:
                raise SpecError("a tick carries no actor and no attributes")
        elif not self.actor:
            raise SpecError("a party action needs an actor")
