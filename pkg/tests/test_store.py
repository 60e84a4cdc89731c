from __future__ import annotations

from decimal import Decimal

import pytest

from pacta import corpus
from pacta.model import Event, canonical_key
from pacta.monitor import open_session
from pacta.store import (
    SnapshotError,
    StoredSession,
    load_session,
    read_snapshot,
    save_session,
    write_snapshot,
)

DELIVERY_ATTRS = {
    "size": "large",
    "description": "good-earth-vegetarian-no-onions",
    "quantity": Decimal("1"),
}


def _timed_session():
    return open_session(corpus.load("pizza_timed"), epoch=0)


def _snapshot(session, sid="abc123"):
    return save_session(session, sid, "contract-1", corpus.read_text("pizza_timed.pact"))


def test_fresh_session_round_trips():
    session = _timed_session()
    loaded = load_session(_snapshot(session))
    assert loaded.state == session.state
    assert loaded.clock == session.clock
    assert loaded.history() == []


def test_event_log_round_trips():
    session = _timed_session()
    session.advance_clock(31)
    session.submit_event(Event(45, "susan", "delivery", dict(DELIVERY_ATTRS)))
    session.submit_event(Event(50, "peter", "pay_reduced", {"amount": Decimal("12.95")}))
    stored = _snapshot(session)
    assert len(stored.records) == 3  # lapse + delivery + payment

    loaded = load_session(stored)
    assert loaded.state == session.state
    assert loaded.clock == session.clock
    assert loaded.history() == session.history()


def test_tampered_after_key_is_rejected():
    session = _timed_session()
    session.submit_event(Event(45, "susan", "delivery", dict(DELIVERY_ATTRS)))
    stored = _snapshot(session)
    stored.records[0]["after_key"] = "active:forged"
    with pytest.raises(SnapshotError):
        load_session(stored)


def test_truncated_log_is_rejected():
    session = _timed_session()
    session.submit_event(Event(45, "susan", "delivery", dict(DELIVERY_ATTRS)))
    stored = _snapshot(session)
    stored.records.pop()
    with pytest.raises(SnapshotError):
        load_session(stored)


def test_state_key_mismatch_is_rejected():
    session = _timed_session()
    stored = _snapshot(session)
    stored.state_key = canonical_key(session.state) + "-tampered"
    with pytest.raises(SnapshotError):
        load_session(stored)


def test_snapshot_file_round_trip(tmp_path):
    session = _timed_session()
    session.advance_clock(31)
    stored = _snapshot(session)
    path = tmp_path / "session.json"
    write_snapshot(path, stored)
    again = read_snapshot(path)
    assert again == stored
    assert load_session(again).state == session.state


def test_unknown_version_is_rejected():
    stored = _snapshot(_timed_session())
    text = stored.to_json().replace('"version": 1', '"version": 99')
    with pytest.raises(SnapshotError):
        StoredSession.from_json(text)


def test_garbage_file_is_rejected(tmp_path):
    path = tmp_path / "session.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SnapshotError):
        read_snapshot(path)


def test_rejected_events_do_not_break_replay():
    session = _timed_session()
    try:
        session.submit_event(Event(40, "peter", "pay_full", {"amount": Decimal("13.95")}))
    except Exception:
        pass  # nothing due yet, but the clock (and the lapse) moved
    session.submit_event(Event(45, "susan", "delivery", dict(DELIVERY_ATTRS)))
    loaded = load_session(_snapshot(session))
    assert loaded.state == session.state
    assert loaded.history() == session.history()
