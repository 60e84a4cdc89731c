"""pacta: model legal contracts as processes over sets of active norms."""

from pacta.dsl import parse, pretty_print, validate
from pacta.explore import expand, find_paths, what_if
from pacta.monitor import classify_event, open_session
from pacta.statespace import (
    build_graph,
    classify_provision,
    classify_terminals,
    detect_ctd,
    enabled_transitions,
    export_dot,
    export_structured_graph,
    initial_state,
    successor,
)
from pacta.model import (
    ActiveState,
    Add,
    After,
    Before,
    Between,
    ContractSpec,
    ContractState,
    EngineConfig,
    Event,
    Exercise,
    ExercisePower,
    FramePolicy,
    Fulfil,
    LAPSE,
    NormAtom,
    Obligation,
    Power,
    Proposition,
    Remove,
    Rule,
    SpecError,
    Terminate,
    TerminatedState,
    TerminalOutcome,
    TICK,
    TransitionLabel,
    Violate,
    ViolationRefinement,
    active,
    apply_effects,
    canonical_key,
    holds,
)

__all__ = [
    "ActiveState",
    "Add",
    "After",
    "Before",
    "Between",
    "ContractSpec",
    "ContractState",
    "EngineConfig",
    "Event",
    "Exercise",
    "ExercisePower",
    "FramePolicy",
    "Fulfil",
    "LAPSE",
    "NormAtom",
    "Obligation",
    "Power",
    "Proposition",
    "Remove",
    "Rule",
    "SpecError",
    "Terminate",
    "TerminatedState",
    "TerminalOutcome",
    "TICK",
    "TransitionLabel",
    "Violate",
    "ViolationRefinement",
    "active",
    "apply_effects",
    "build_graph",
    "canonical_key",
    "classify_event",
    "classify_provision",
    "classify_terminals",
    "detect_ctd",
    "enabled_transitions",
    "expand",
    "export_dot",
    "export_structured_graph",
    "find_paths",
    "holds",
    "initial_state",
    "open_session",
    "parse",
    "pretty_print",
    "successor",
    "validate",
    "what_if",
]

__version__ = "0.1.0"
