"""Snapshot persistence for monitoring sessions.

A snapshot is a versioned JSON document holding the contract source, the
session's replay script (the accepted inputs, in order), and the resulting
transition records. Loading never trusts the stored state: the inputs are
replayed through a fresh session and the produced records must match the
stored ones, so a tampered or truncated log is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pacta import wire
from pacta.dsl import parse
from pacta.model import Event
from pacta.monitor import MonitorError, Session, TransitionRecord

SNAPSHOT_VERSION = 1


class SnapshotError(RuntimeError):
    """The snapshot is corrupt, tampered with, or from an unknown version."""


def encode_record(record: TransitionRecord) -> dict[str, Any]:
    return {
        "at": record.at,
        "trigger": "event" if record.event is not None else "lapse",
        "event": wire.encode_event(record.event) if record.event is not None else None,
        "label": wire.encode_label(record.label),
        "before_key": record.before_key,
        "after_key": record.after_key,
        "activated": [wire.encode_atom(a) for a in record.activated],
        "discharged": [wire.encode_atom(a) for a in record.discharged],
    }


def decode_record(data: dict[str, Any]) -> TransitionRecord:
    return TransitionRecord(
        at=int(data["at"]),
        event=wire.decode_event(data["event"]) if data.get("event") else None,
        label=wire.decode_label(data["label"]),
        before_key=data["before_key"],
        after_key=data["after_key"],
        activated=tuple(wire.decode_atom(a) for a in data.get("activated", [])),
        discharged=tuple(wire.decode_atom(a) for a in data.get("discharged", [])),
    )


def _encode_input(entry: tuple[str, Any]) -> dict[str, Any]:
    kind, payload = entry
    if kind == "advance":
        return {"kind": "advance", "to": payload}
    return {"kind": "event", "event": wire.encode_event(payload)}


def _decode_input(data: dict[str, Any]) -> tuple[str, Any]:
    if data.get("kind") == "advance":
        return ("advance", int(data["to"]))
    if data.get("kind") == "event":
        return ("event", wire.decode_event(data["event"]))
    raise SnapshotError(f"unknown input kind {data.get('kind')!r}")


@dataclass
class StoredSession:
    id: str
    contract_id: str
    spec_source: str
    epoch: int
    clock: int
    state_key: str
    inputs: list[dict[str, Any]]
    records: list[dict[str, Any]]
    tokens: dict[str, Any] = field(default_factory=dict)
    version: int = SNAPSHOT_VERSION

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": self.version,
                "id": self.id,
                "contract_id": self.contract_id,
                "spec_source": self.spec_source,
                "epoch": self.epoch,
                "clock": self.clock,
                "state_key": self.state_key,
                "inputs": self.inputs,
                "records": self.records,
                "tokens": self.tokens,
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "StoredSession":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SnapshotError(f"snapshot is not valid JSON: {exc}") from exc
        if data.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(f"unsupported snapshot version {data.get('version')!r}")
        try:
            return cls(
                id=data["id"],
                contract_id=data["contract_id"],
                spec_source=data["spec_source"],
                epoch=int(data["epoch"]),
                clock=int(data["clock"]),
                state_key=data["state_key"],
                inputs=list(data["inputs"]),
                records=list(data["records"]),
                tokens=dict(data.get("tokens", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SnapshotError(f"snapshot is missing fields: {exc}") from exc


def save_session(
    session: Session,
    session_id: str,
    contract_id: str,
    spec_source: str,
    tokens: dict[str, Any] | None = None,
) -> StoredSession:
    from pacta.model import canonical_key

    return StoredSession(
        id=session_id,
        contract_id=contract_id,
        spec_source=spec_source,
        epoch=session.epoch,
        clock=session.clock,
        state_key=canonical_key(session.state),
        inputs=[_encode_input(entry) for entry in session.inputs],
        records=[encode_record(r) for r in session.log],
        tokens=dict(tokens or {}),
    )


def load_session(stored: StoredSession) -> Session:
    """Rebuild a session by replaying its inputs; reject any snapshot whose
    stored records or final state disagree with the replay."""
    result = parse(stored.spec_source)
    if result.spec is None:
        raise SnapshotError("snapshot contract source no longer parses")
    try:
        session = Session(result.spec, stored.epoch)
    except MonitorError as exc:
        raise SnapshotError(f"snapshot contract is invalid: {exc}") from exc

    for encoded in stored.inputs:
        kind, payload = _decode_input(encoded)
        try:
            if kind == "advance":
                session.advance_clock(payload)
            else:
                assert isinstance(payload, Event)
                session.submit_event(payload)
        except MonitorError as exc:
            raise SnapshotError(f"snapshot log does not replay: {exc}") from exc

    replayed = [encode_record(r) for r in session.log]
    if replayed != stored.records:
        raise SnapshotError("snapshot records disagree with replay; refusing to load")
    if session.clock != stored.clock:
        raise SnapshotError("snapshot clock disagrees with replay; refusing to load")
    from pacta.model import canonical_key

    if canonical_key(session.state) != stored.state_key:
        raise SnapshotError("snapshot state disagrees with replay; refusing to load")
    return session


def write_snapshot(path: Path, stored: StoredSession) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(stored.to_json(), encoding="utf-8")
    tmp.replace(path)


def read_snapshot(path: Path) -> StoredSession:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SnapshotError(f"cannot read snapshot: {exc}") from exc
    return StoredSession.from_json(text)
