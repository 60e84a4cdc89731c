"""What-if exploration for drafting and for the next move while monitoring.

Scenario trees unroll the transition system from any state to a bounded
depth, marking re-entered states instead of looping forever. Path queries
enumerate the simple label sequences that reach a target. Hypothetical
event runs are evaluated on a copy of a session, leaving the original
untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from pacta.model import (
    ContractSpec,
    ContractState,
    Event,
    TransitionLabel,
    canonical_key,
)
from pacta.monitor import MonitorError, Session, TransitionRecord
from pacta.statespace import StateGraph, enabled_transitions, successor

TargetPredicate = "callable[[ContractState], bool]"


@dataclass
class ScenarioNode:
    state: ContractState
    via: TransitionLabel | None = None
    children: list["ScenarioNode"] = field(default_factory=list)
    revisit: str | None = None  # canonical key of the earlier state on this path

    def leaves(self) -> list["ScenarioNode"]:
        if not self.children:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]


def expand(spec: ContractSpec, state: ContractState, depth: int) -> ScenarioNode:
    """Unroll every enabled transition from `state`, recursively to `depth`.
    A state already on the path from the root becomes a revisit leaf."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return _expand(spec, state, None, depth, path=frozenset({canonical_key(state)}))


def _expand(
    spec: ContractSpec,
    state: ContractState,
    via: TransitionLabel | None,
    depth: int,
    path: frozenset[str],
) -> ScenarioNode:
    node = ScenarioNode(state=state, via=via)
    if depth == 0:
        return node
    for label in enabled_transitions(spec, state):
        nxt = successor(spec, state, label)
        key = canonical_key(nxt)
        if key in path:
            node.children.append(ScenarioNode(state=nxt, via=label, revisit=key))
        else:
            node.children.append(_expand(spec, nxt, label, depth - 1, path | {key}))
    return node


def find_paths(
    graph: StateGraph, target, max_len: int
) -> list[list[TransitionLabel]]:
    """All simple paths from the initial state to a state satisfying
    `target`, at most `max_len` edges long, ordered lexicographically by
    each state's enabled-transition order."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    outgoing: dict[str, list] = {key: [] for key in graph.nodes}
    for edge in graph.edges:
        outgoing[edge.source].append(edge)

    paths: list[list[TransitionLabel]] = []

    def walk(key: str, trail: list[TransitionLabel], visited: frozenset[str]) -> None:
        if target(graph.nodes[key]):
            paths.append(list(trail))
        if len(trail) >= max_len:
            return
        for edge in outgoing[key]:
            if edge.target in visited:
                continue
            trail.append(edge.label)
            walk(edge.target, trail, visited | {edge.target})
            trail.pop()

    walk(graph.initial, [], frozenset({graph.initial}))
    return paths


@dataclass
class WhatIfResult:
    state: ContractState
    records: list[TransitionRecord]
    errors: list[tuple[int, str]]  # (event index, reason) for events that failed


def what_if(session: Session, events: list[Event]) -> WhatIfResult:
    """Run hypothetical events over a copy of the session; the session
    itself is never touched. Failing events are reported and skipped."""
    twin = session.copy()
    mark = len(twin.log)
    errors: list[tuple[int, str]] = []
    for index, event in enumerate(events):
        try:
            twin.submit_event(event)
        except MonitorError as exc:
            errors.append((index, str(exc)))
    return WhatIfResult(state=twin.state, records=twin.log[mark:], errors=errors)
