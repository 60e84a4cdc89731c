"""Explicit state-space construction and static analyses.

The rules of a contract implicitly define a transition system over norm
sets. This module makes it explicit: successor semantics with the built-in
axioms (an obligation can always be fulfilled; a power can always be
exercised, and exercising puts its content in force; optionally, an
obligation can always be violated), breadth-first graph construction,
terminal classification, reparation-structure detection, breach-regime
classification, and DOT/structured exports.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from pacta import wire
from pacta.model import (
    ActiveState,
    Add,
    Remove,
    ContractSpec,
    ContractState,
    ExercisePower,
    FramePolicy,
    Fulfil,
    NormAtom,
    Obligation,
    Power,
    Rule,
    SpecError,
    TerminatedState,
    TerminalOutcome,
    TransitionLabel,
    Violate,
    LAPSE,
    apply_effects,
    atom_text,
    canonical_key,
    holds,
    is_terminal,
    label_text,
    state_text,
)


class NotEnabledError(SpecError):
    """The label's subject norm is not in force in the given state."""


class StateBoundExceeded(RuntimeError):
    def __init__(self, bound: int, frontier: int):
        super().__init__(
            f"state space exceeds the configured bound of {bound} nodes "
            f"({frontier} states still unexplored)"
        )
        self.bound = bound
        self.frontier = frontier


def initial_state(spec: ContractSpec) -> ActiveState:
    return ActiveState(frozenset(spec.initial))


# ---------------------------------------------------------------------------
# Enabled labels and successors
# ---------------------------------------------------------------------------


def _label_subject(label: TransitionLabel) -> NormAtom:
    if isinstance(label, ExercisePower):
        return Power(label.agent, label.effect)
    return Obligation(label.agent, label.prop)


def enabled_transitions(spec: ContractSpec, state: ContractState) -> list[TransitionLabel]:
    """The finite set of labels the state graph explores from a state.

    Rule-mentioned labels come first, in rule order: fulfilments and power
    exercises whose subject norm is in force, and refined violations of
    obligations in force. Then the built-in ones, in canonical atom order:
    a bare fulfilment for every obligation no rule gives a fulfil label to,
    the quiet-lapse violation of every obligation, and a bare exercise for
    every power no rule mentions. Generic (unrefined) violation labels on
    rules are catch-all handlers, not transitions of their own.
    """
    if is_terminal(state):
        return []
    assert isinstance(state, ActiveState)
    labels: list[TransitionLabel] = []
    seen: set[TransitionLabel] = set()
    fulfil_covered: set[Obligation] = set()
    exercise_covered: set[Power] = set()

    def emit(label: TransitionLabel) -> None:
        if label not in seen:
            seen.add(label)
            labels.append(label)

    for rule in spec.rules:
        label = rule.label
        subject = _label_subject(label)
        if not holds(state, subject):
            continue
        if isinstance(label, Fulfil):
            fulfil_covered.add(subject)  # type: ignore[arg-type]
            emit(label)
        elif isinstance(label, Violate):
            if spec.config.violation_axiom and label.refinement is not None:
                emit(label)
        else:
            exercise_covered.add(subject)  # type: ignore[arg-type]
            emit(label)

    for atom in sorted(state.norms, key=atom_text):
        if isinstance(atom, Obligation):
            if atom not in fulfil_covered:
                emit(Fulfil(atom.bearer, atom.prop))
            if spec.config.violation_axiom:
                emit(Violate(atom.bearer, atom.prop, LAPSE))
        else:
            if atom not in exercise_covered:
                emit(ExercisePower(atom.bearer, atom.effect))
    return labels


def _qualifier_tier(rule_q, label_q) -> int | None:
    """Specificity of a rule's time window against the label's: exact beats
    unqualified; a mismatching window does not match at all."""
    if rule_q == label_q:
        return 1
    if rule_q is None:
        return 0
    return None


def matching_rules(spec: ContractSpec, state: ContractState, label: TransitionLabel) -> list[Rule]:
    """All rules fired by this label in this state.

    Violations match most-specific-first: rules naming the exact refinement
    beat generic ``not x: Y`` rules, which catch the lapse and every
    refinement no rule names. Qualified labels likewise prefer rules with
    the exact time window over unqualified ones.
    """
    scored: list[tuple[int, int, Rule]] = []
    for index, rule in enumerate(spec.rules):
        if not holds(state, rule.guard):
            continue
        score = _match_score(rule.label, label)
        if score is not None:
            scored.append((score, index, rule))
    if not scored:
        return []
    best = max(score for score, _, _ in scored)
    return [rule for score, _, rule in sorted(scored, key=lambda t: t[1]) if score == best]


def _match_score(rule_label: TransitionLabel, label: TransitionLabel) -> int | None:
    if isinstance(label, Fulfil):
        if not isinstance(rule_label, Fulfil):
            return None
        if (rule_label.agent, rule_label.prop) != (label.agent, label.prop):
            return None
        return _qualifier_tier(rule_label.qualifier, label.qualifier)
    if isinstance(label, Violate):
        if not isinstance(rule_label, Violate):
            return None
        if (rule_label.agent, rule_label.prop) != (label.agent, label.prop):
            return None
        q_tier = _qualifier_tier(rule_label.qualifier, label.qualifier)
        if q_tier is None:
            return None
        if rule_label.refinement == label.refinement:
            return 2 + q_tier
        if rule_label.refinement is None:
            return q_tier
        return None
    if not isinstance(rule_label, ExercisePower):
        return None
    if (rule_label.agent, rule_label.effect) != (label.agent, label.effect):
        return None
    return _qualifier_tier(rule_label.qualifier, label.qualifier)


def successor(spec: ContractSpec, state: ContractState, label: TransitionLabel) -> ContractState:
    """The state reached by taking `label` from `state`. Pure and total over
    labels whose subject norm is in force.

    Where no rule fires: a fulfilled obligation is simply discharged; a
    violated obligation with no handling rule ends the agreement badly (the
    unclassified-breach reading); an exercised power is replaced by its
    content. Exercising always puts the power's content in force, whatever
    the fired rules say.
    """
    if is_terminal(state):
        raise NotEnabledError("terminal states have no transitions")
    assert isinstance(state, ActiveState)
    subject = _label_subject(label)
    if not holds(state, subject):
        raise NotEnabledError(f"{label_text(label)} is not enabled in {state_text(state)}")
    if isinstance(label, Violate) and not spec.config.violation_axiom:
        raise NotEnabledError("violations are disabled for this contract")

    fired = matching_rules(spec, state, label)

    if fired:
        result = apply_effects(state, fired, spec.config.frame_policy)
    elif isinstance(label, Fulfil):
        # no rule: the fulfilled obligation is discharged, nothing else moves
        result = ActiveState(state.norms - {subject})
    elif isinstance(label, Violate):
        # no rule: an unprovided-for breach ends the agreement badly
        result = TerminatedState(TerminalOutcome.UNHAPPY)
    elif isinstance(label.effect, TerminatedState):
        result = label.effect
    else:
        # no rule: the power is spent and its content comes into force
        result = ActiveState((state.norms - {subject}) | {label.effect})

    if isinstance(label, ExercisePower):
        result = _enforce_exercised_content(label, result)
    return result


def _enforce_exercised_content(label: ExercisePower, result: ContractState) -> ContractState:
    # whatever rules fired, the exercised legal relation obtains afterwards
    if isinstance(label.effect, TerminatedState):
        if isinstance(result, TerminatedState) and result.outcome != label.effect.outcome:
            raise SpecError(
                "rules for a void-declaring exercise disagree with the power's outcome"
            )
        return label.effect
    if isinstance(result, TerminatedState):
        raise SpecError(
            "a rule terminates the agreement on an exercise whose content is an "
            "obligation; the exercised relation could never obtain"
        )
    return ActiveState(result.norms | {label.effect})


# ---------------------------------------------------------------------------
# Graph construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    source: str
    label: TransitionLabel
    target: str


@dataclass
class StateGraph:
    spec: ContractSpec
    nodes: dict[str, ContractState]
    edges: list[Edge]
    initial: str

    def successors_of(self, key: str) -> list[Edge]:
        return [e for e in self.edges if e.source == key]


def build_graph(spec: ContractSpec) -> StateGraph:
    """Breadth-first closure of the rule system from the initial state,
    merging states by canonical key; stops once the node count would pass
    the configured bound."""
    bound = spec.config.state_bound
    start = initial_state(spec)
    start_key = canonical_key(start)
    nodes: dict[str, ContractState] = {start_key: start}
    edges: list[Edge] = []
    queue: deque[str] = deque([start_key])
    while queue:
        key = queue.popleft()
        state = nodes[key]
        for label in enabled_transitions(spec, state):
            nxt = successor(spec, state, label)
            nxt_key = canonical_key(nxt)
            if nxt_key not in nodes:
                if len(nodes) >= bound:
                    raise StateBoundExceeded(bound, len(queue) + 1)
                nodes[nxt_key] = nxt
                queue.append(nxt_key)
            edges.append(Edge(key, label, nxt_key))
    return StateGraph(spec=spec, nodes=nodes, edges=edges, initial=start_key)


def classify_terminals(graph: StateGraph) -> dict[str, TerminalOutcome]:
    """Outcome class of every terminal node. Every terminal in this engine
    is constructed with its class (explicit terminate consequents, the
    unhandled-breach default, or a void-declaring power), so the happy/
    unhappy split is read straight off the nodes."""
    return {
        key: state.outcome
        for key, state in graph.nodes.items()
        if isinstance(state, TerminatedState)
    }


# ---------------------------------------------------------------------------
# Reparation structures (secondary obligations born of breach)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CtdTriple:
    """A breach of `primary` that puts `secondary` (same bearer) in force,
    directly or through a counter-party power waiting to be exercised."""

    primary: Obligation
    via: Violate
    secondary: Obligation

    def __post_init__(self) -> None:
        if self.primary.bearer != self.secondary.bearer:
            raise SpecError("a reparation duty binds the breaching party")


def detect_ctd(graph: StateGraph) -> list[CtdTriple]:
    found: list[CtdTriple] = []
    seen: set[tuple[Obligation, Obligation]] = set()
    for edge in graph.edges:
        if not isinstance(edge.label, Violate):
            continue
        primary = Obligation(edge.label.agent, edge.label.prop)
        target = graph.nodes[edge.target]
        if not isinstance(target, ActiveState):
            continue
        for atom in sorted(target.norms, key=atom_text):
            secondary: Obligation | None = None
            if isinstance(atom, Obligation):
                secondary = atom
            elif isinstance(atom.effect, Obligation):
                secondary = atom.effect
            if secondary is None or secondary.bearer != primary.bearer:
                continue
            if secondary.prop == primary.prop:
                continue
            if (primary, secondary) in seen:
                continue
            seen.add((primary, secondary))
            found.append(CtdTriple(primary, edge.label, secondary))
    return found


# ---------------------------------------------------------------------------
# Breach-regime classification
# ---------------------------------------------------------------------------


class ProvisionClass(Enum):
    PROMISSORY_CONDITION = "promissory_condition"
    WARRANTY = "warranty"
    INTERMEDIATE_TERM = "intermediate_term"


def classify_provision(spec: ContractSpec, obligation: Obligation) -> ProvisionClass:
    """How the contract treats breach of this obligation.

    No rule for its violation: the parties left the consequences open (an
    intermediate term). Breach ending the agreement or releasing the other
    side, directly or through a power to void or to impose reparations: a
    promissory condition. Breach that keeps the other side bound while a
    reparation duty arises: a warranty.
    """
    if not any(rule.guard == obligation for rule in spec.rules):
        raise SpecError(f"{atom_text(obligation)} does not guard any rule")
    breach_rules = [
        rule
        for rule in spec.rules
        if isinstance(rule.label, Violate)
        and (rule.label.agent, rule.label.prop) == (obligation.bearer, obligation.prop)
    ]
    if not breach_rules:
        return ProvisionClass.INTERMEDIATE_TERM

    terminates = False
    reparation = False
    counterparty_added = False
    counterparty_removed = False
    for rule in breach_rules:
        if rule.terminates is not None:
            terminates = True
        for c in rule.consequents:
            if isinstance(c, Add):
                for target in _obligations_effected(c.atom):
                    if target.bearer == obligation.bearer and target.prop != obligation.prop:
                        reparation = True
                    if target.bearer != obligation.bearer:
                        counterparty_added = True
                if isinstance(c.atom, Power) and isinstance(c.atom.effect, TerminatedState):
                    terminates = True
            elif isinstance(c, Remove):
                for target in _obligations_effected(c.atom):
                    if target.bearer != obligation.bearer:
                        counterparty_removed = True

    persists = spec.config.frame_policy is FramePolicy.PERSIST_UNMENTIONED
    counterparty_bound = counterparty_added or (persists and not counterparty_removed)
    if terminates:
        return ProvisionClass.PROMISSORY_CONDITION
    if reparation and counterparty_bound:
        return ProvisionClass.WARRANTY
    if reparation:
        return ProvisionClass.PROMISSORY_CONDITION
    return ProvisionClass.INTERMEDIATE_TERM


def _obligations_effected(atom: NormAtom) -> Iterable[Obligation]:
    if isinstance(atom, Obligation):
        yield atom
    elif isinstance(atom.effect, Obligation):
        yield atom.effect


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: StateGraph) -> str:
    """Deterministic DOT rendering: nodes named n0, n1, ... in canonical-key
    order, labelled with their norms; terminals shaped by outcome."""
    keys = sorted(graph.nodes)
    ids = {key: f"n{i}" for i, key in enumerate(keys)}
    lines = ["digraph contract {", "  rankdir=LR;"]
    for key in keys:
        state = graph.nodes[key]
        attrs = [f"label={_dot_quote(state_text(state))}"]
        if isinstance(state, TerminatedState):
            attrs.append("shape=doublecircle")
            attrs.append(
                'color="#2e7d32"' if state.outcome is TerminalOutcome.HAPPY else 'color="#c62828"'
            )
        else:
            attrs.append("shape=box")
        if key == graph.initial:
            attrs.append("penwidth=2")
        lines.append(f"  {ids[key]} [{', '.join(attrs)}];")
    for edge in sorted(graph.edges, key=lambda e: (e.source, label_text(e.label), e.target)):
        lines.append(
            f"  {ids[edge.source]} -> {ids[edge.target]} "
            f"[label={_dot_quote(label_text(edge.label))}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_structured_graph(graph: StateGraph) -> dict[str, Any]:
    """Machine-readable node/edge document in the service wire format."""
    terminals = classify_terminals(graph)
    nodes = [wire.encode_state(graph.nodes[key]) for key in sorted(graph.nodes)]
    edges = [
        {
            "source": edge.source,
            "label": wire.encode_label(edge.label),
            "target": edge.target,
        }
        for edge in graph.edges
    ]
    return {
        "contract": graph.spec.name,
        "initial": graph.initial,
        "nodes": nodes,
        "edges": edges,
        "terminals": {key: outcome.value for key, outcome in sorted(terminals.items())},
    }
