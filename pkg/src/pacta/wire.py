"""JSON-friendly encoding of engine values.

This is the stable wire format the HTTP service speaks and the session
store persists. Field names here are a compatibility surface; change them
only with a version bump of the snapshot header.
"""

from __future__ import annotations

from decimal import Decimal
from typing import Any

from pacta.model import (
    ActiveState,
    After,
    AttrValue,
    Before,
    Between,
    ContractState,
    Event,
    Exercise,
    ExercisePower,
    Fulfil,
    NormAtom,
    Obligation,
    Power,
    SpecError,
    TemporalQualifier,
    TerminatedState,
    TerminalOutcome,
    Tick,
    TICK,
    TransitionLabel,
    Violate,
    ViolationRefinement,
    atom_text,
    canonical_key,
    label_text,
    state_text,
)


def encode_attrs(attrs: dict[str, AttrValue]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in sorted(attrs.items()):
        if isinstance(value, Decimal):
            out[key] = {"kind": "amount", "value": str(value)}
        else:
            out[key] = {"kind": "text", "value": value}
    return out


def decode_attrs(data: dict[str, Any]) -> dict[str, AttrValue]:
    attrs: dict[str, AttrValue] = {}
    for key, entry in data.items():
        if not isinstance(entry, dict) or "value" not in entry:
            raise SpecError(f"malformed attribute {key!r}")
        if entry.get("kind") == "amount":
            attrs[key] = Decimal(str(entry["value"]))
        else:
            attrs[key] = str(entry["value"])
    return attrs


def encode_atom(atom: NormAtom) -> dict[str, Any]:
    if isinstance(atom, Obligation):
        return {
            "kind": "obligation",
            "bearer": atom.bearer,
            "prop": atom.prop,
            "text": atom_text(atom),
        }
    if isinstance(atom.effect, TerminatedState):
        effect: dict[str, Any] = {"kind": "terminated", "outcome": atom.effect.outcome.value}
    else:
        effect = encode_atom(atom.effect)
    return {"kind": "power", "bearer": atom.bearer, "effect": effect, "text": atom_text(atom)}


def decode_atom(data: dict[str, Any]) -> NormAtom:
    kind = data.get("kind")
    if kind == "obligation":
        return Obligation(data["bearer"], data["prop"])
    if kind == "power":
        effect = data["effect"]
        if effect.get("kind") == "terminated":
            return Power(data["bearer"], TerminatedState(TerminalOutcome(effect["outcome"])))
        inner = decode_atom(effect)
        if not isinstance(inner, Obligation):
            raise SpecError("power content must be an obligation")
        return Power(data["bearer"], inner)
    raise SpecError(f"unknown norm kind {kind!r}")


def encode_qualifier(q: TemporalQualifier) -> dict[str, Any] | None:
    if q is None:
        return None
    if isinstance(q, Before):
        return {"kind": "before", "t": q.t}
    if isinstance(q, After):
        return {"kind": "after", "t": q.t}
    return {"kind": "between", "t1": q.t1, "t2": q.t2}


def decode_qualifier(data: dict[str, Any] | None) -> TemporalQualifier:
    if data is None:
        return None
    kind = data.get("kind")
    if kind == "before":
        return Before(int(data["t"]))
    if kind == "after":
        return After(int(data["t"]))
    if kind == "between":
        return Between(int(data["t1"]), int(data["t2"]))
    raise SpecError(f"unknown qualifier kind {kind!r}")


def encode_refinement(r: ViolationRefinement | None) -> dict[str, Any] | None:
    if r is None:
        return None
    return {
        "nonconforming": r.nonconforming,
        "late": r.late,
        "wrong_performer": r.wrong_performer,
        "lapse": r.lapse,
    }


def decode_refinement(data: dict[str, Any] | None) -> ViolationRefinement | None:
    if data is None:
        return None
    return ViolationRefinement(
        nonconforming=bool(data.get("nonconforming")),
        late=bool(data.get("late")),
        wrong_performer=bool(data.get("wrong_performer")),
        lapse=bool(data.get("lapse")),
    )


def encode_label(label: TransitionLabel) -> dict[str, Any]:
    base: dict[str, Any]
    if isinstance(label, Fulfil):
        base = {"kind": "fulfil", "agent": label.agent, "prop": label.prop}
    elif isinstance(label, Violate):
        base = {
            "kind": "violate",
            "agent": label.agent,
            "prop": label.prop,
            "refinement": encode_refinement(label.refinement),
        }
    else:
        if isinstance(label.effect, TerminatedState):
            effect: dict[str, Any] = {"kind": "terminated", "outcome": label.effect.outcome.value}
        else:
            effect = encode_atom(label.effect)
        base = {"kind": "exercise", "agent": label.agent, "effect": effect}
    base["qualifier"] = encode_qualifier(label.qualifier)
    base["text"] = label_text(label)
    return base


def decode_label(data: dict[str, Any]) -> TransitionLabel:
    kind = data.get("kind")
    qualifier = decode_qualifier(data.get("qualifier"))
    if kind == "fulfil":
        return Fulfil(data["agent"], data["prop"], qualifier)
    if kind == "violate":
        return Violate(data["agent"], data["prop"], decode_refinement(data.get("refinement")), qualifier)
    if kind == "exercise":
        effect = data["effect"]
        if effect.get("kind") == "terminated":
            return ExercisePower(
                data["agent"], TerminatedState(TerminalOutcome(effect["outcome"])), qualifier
            )
        inner = decode_atom(effect)
        if not isinstance(inner, Obligation):
            raise SpecError("exercised content must be an obligation")
        return ExercisePower(data["agent"], inner, qualifier)
    raise SpecError(f"unknown label kind {kind!r}")


def encode_state(state: ContractState) -> dict[str, Any]:
    if isinstance(state, TerminatedState):
        return {
            "kind": "terminated",
            "key": canonical_key(state),
            "outcome": state.outcome.value,
            "text": state_text(state),
        }
    return {
        "kind": "active",
        "key": canonical_key(state),
        "norms": [encode_atom(a) for a in sorted(state.norms, key=_atom_sort_key)],
        "text": state_text(state),
    }


def decode_state(data: dict[str, Any]) -> ContractState:
    if data.get("kind") == "terminated":
        return TerminatedState(TerminalOutcome(data["outcome"]))
    return ActiveState(frozenset(decode_atom(a) for a in data.get("norms", ())))


def _atom_sort_key(atom: NormAtom) -> str:
    return atom_text(atom)


def encode_event(event: Event) -> dict[str, Any]:
    if isinstance(event.act, Tick):
        act: dict[str, Any] = {"kind": "tick"}
    elif isinstance(event.act, Exercise):
        if event.act.effect is None:
            act = {"kind": "exercise", "effect": None}
        elif isinstance(event.act.effect, TerminatedState):
            act = {
                "kind": "exercise",
                "effect": {"kind": "terminated", "outcome": event.act.effect.outcome.value},
            }
        else:
            act = {"kind": "exercise", "effect": encode_atom(event.act.effect)}
    else:
        act = {"kind": "perform", "prop": event.act}
    return {
        "at": event.at,
        "actor": event.actor,
        "act": act,
        "attrs": encode_attrs(event.attrs),
    }


def decode_event(data: dict[str, Any]) -> Event:
    act_data = data.get("act") or {}
    kind = act_data.get("kind")
    if kind == "tick":
        return Event(int(data["at"]), None, TICK)
    if kind == "exercise":
        effect_data = act_data.get("effect")
        if effect_data is None:
            effect = None
        elif effect_data.get("kind") == "terminated":
            effect = TerminatedState(TerminalOutcome(effect_data["outcome"]))
        else:
            inner = decode_atom(effect_data)
            if not isinstance(inner, Obligation):
                raise SpecError("exercised content must be an obligation")
            effect = inner
        return Event(int(data["at"]), data.get("actor"), Exercise(effect), decode_attrs(data.get("attrs", {})))
    if kind == "perform":
        return Event(
            int(data["at"]),
            data.get("actor"),
            str(act_data["prop"]),
            decode_attrs(data.get("attrs", {})),
        )
    raise SpecError(f"unknown event act kind {kind!r}")
