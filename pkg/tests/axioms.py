"""Built-in axiom checks run over every reachable state of a graph."""

from __future__ import annotations

from pacta.model import (
    ActiveState,
    ExercisePower,
    Fulfil,
    Obligation,
    TerminatedState,
    Violate,
    holds,
)
from pacta.statespace import StateGraph


def assert_axioms(graph: StateGraph) -> None:
    spec = graph.spec
    outgoing: dict[str, list] = {key: [] for key in graph.nodes}
    for edge in graph.edges:
        outgoing[edge.source].append(edge)

    assert len(graph.nodes) <= spec.config.state_bound

    for key, state in graph.nodes.items():
        edges = outgoing[key]
        if isinstance(state, TerminatedState):
            assert edges == [], f"terminal {key} has outgoing edges"
            continue
        assert isinstance(state, ActiveState)
        for atom in state.norms:
            if isinstance(atom, Obligation):
                # an obligation can always be fulfilled
                assert any(
                    isinstance(e.label, Fulfil)
                    and (e.label.agent, e.label.prop) == (atom.bearer, atom.prop)
                    for e in edges
                ), f"no fulfilment of {atom} from {key}"
                if spec.config.violation_axiom:
                    # and, when the optional axiom is on, always violated
                    assert any(
                        isinstance(e.label, Violate)
                        and (e.label.agent, e.label.prop) == (atom.bearer, atom.prop)
                        for e in edges
                    ), f"no violation of {atom} from {key}"
            else:
                # a power can always be exercised
                assert any(
                    isinstance(e.label, ExercisePower)
                    and (e.label.agent, e.label.effect) == (atom.bearer, atom.effect)
                    for e in edges
                ), f"no exercise of {atom} from {key}"

    # exercising puts the power's content in force
    for edge in graph.edges:
        if not isinstance(edge.label, ExercisePower):
            continue
        target = graph.nodes[edge.target]
        if isinstance(edge.label.effect, TerminatedState):
            assert target == edge.label.effect, f"void exercise missed terminal: {edge}"
        else:
            assert holds(target, edge.label.effect), f"exercised content absent: {edge}"
