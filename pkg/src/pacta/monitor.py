"""Live contract-performance monitoring.

A session holds a contract, its current state, and a clock counting time
units since the contract epoch. Reported events are classified against the
obligations in force (does the content conform? was it in time? was it the
right performer?) and drive the same successor semantics the static graph
uses, so a monitored run is always a path through the analysable state
space. Deadlines lapse when the clock crosses them; every transition is
recorded in an auditable, replayable log.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pacta.dsl import Severity, validate
from pacta.model import (
    ActiveState,
    Before,
    Between,
    ContractSpec,
    ContractState,
    Event,
    Exercise,
    ExercisePower,
    Fulfil,
    LAPSE,
    NormAtom,
    Obligation,
    Power,
    TemporalQualifier,
    Tick,
    TransitionLabel,
    Violate,
    ViolationRefinement,
    atom_text,
    canonical_key,
    is_terminal,
    satisfies,
)
from pacta.statespace import initial_state, successor


class MonitorError(Exception):
    pass


class InvalidSpecError(MonitorError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


class TerminatedSessionError(MonitorError):
    pass


class StaleEventError(MonitorError):
    pass


class UnexpectedEventError(MonitorError):
    """The event matches no norm currently in force."""


class NotApplicableError(MonitorError):
    """The event concerns a different proposition than the obligation."""


@dataclass(frozen=True)
class TransitionRecord:
    at: int
    event: Event | None  # None marks a deadline lapse
    label: TransitionLabel
    before_key: str
    after_key: str
    activated: tuple[NormAtom, ...]
    discharged: tuple[NormAtom, ...]


@dataclass(frozen=True)
class ActiveNorm:
    """A norm in force, with the obligation's nearest deadline if it has one."""

    atom: NormAtom
    deadline: int | None = None


def fulfilment_windows(spec: ContractSpec, obligation: Obligation) -> list[TemporalQualifier]:
    """Time windows the spec's rules open for fulfilling this obligation,
    in rule order; an unqualified fulfil label contributes None (anytime)."""
    windows: list[TemporalQualifier] = []
    for rule in spec.rules:
        label = rule.label
        if isinstance(label, Fulfil) and (label.agent, label.prop) == (
            obligation.bearer,
            obligation.prop,
        ):
            if label.qualifier not in windows:
                windows.append(label.qualifier)
    return windows


def nearest_deadline(spec: ContractSpec, obligation: Obligation) -> int | None:
    """The earliest upper time bound on fulfilling the obligation, if any."""
    bounds = []
    for window in fulfilment_windows(spec, obligation):
        if isinstance(window, Before):
            bounds.append(window.t)
        elif isinstance(window, Between):
            bounds.append(window.t2)
    return min(bounds) if bounds else None


def _lapse_deadline(spec: ContractSpec, obligation: Obligation) -> int | None:
    """The instant past which fulfilment becomes impossible, or None if the
    obligation never lapses (no window, or some window reaches onward)."""
    windows = fulfilment_windows(spec, obligation)
    if not windows or not all(isinstance(w, Before) for w in windows):
        return None
    return max(w.t for w in windows)  # type: ignore[union-attr]


def classify_event(
    spec: ContractSpec,
    event: Event,
    obligation: Obligation,
    deadline: TemporalQualifier = None,
) -> TransitionLabel:
    """Label a reported action against one obligation.

    Checks three independent dimensions: content conformance (the event's
    attributes equal the proposition's, exactly), timeliness (the event
    instant satisfies the deadline window; no deadline means always timely),
    and performer (the expected performer, where declared, acted in person).
    All three pass: a fulfilment. Anything else: a violation refined with
    exactly the failed dimensions.
    """
    if not isinstance(event.act, str):
        raise NotApplicableError("only performance events classify against obligations")
    if event.act != obligation.prop:
        raise NotApplicableError(
            f"event performs {event.act!r}, obligation concerns {obligation.prop!r}"
        )
    windows = [deadline] if deadline is not None else []
    conforming, in_time, performer_ok = _dimensions(spec, event, obligation, windows)
    if conforming and in_time and performer_ok:
        return Fulfil(obligation.bearer, obligation.prop)
    return Violate(
        obligation.bearer,
        obligation.prop,
        ViolationRefinement(
            nonconforming=not conforming,
            late=not in_time,
            wrong_performer=not performer_ok,
        ),
    )


def _dimensions(
    spec: ContractSpec,
    event: Event,
    obligation: Obligation,
    windows: list[TemporalQualifier],
) -> tuple[bool, bool, bool]:
    prop = spec.propositions[obligation.prop]
    conforming = event.attrs == prop.attrs
    in_time = not windows or any(satisfies(event.at, w) for w in windows)
    performer_ok = prop.performer is None or event.actor == prop.performer
    return conforming, in_time, performer_ok


class Session:
    """Single-writer monitoring session; distinct sessions are independent."""

    def __init__(self, spec: ContractSpec, epoch: int = 0):
        diagnostics = [d for d in validate(spec) if d.severity is Severity.ERROR]
        if diagnostics:
            raise InvalidSpecError(diagnostics)
        if epoch < 0:
            raise MonitorError("epoch must be non-negative")
        self.spec = spec
        self.epoch = epoch
        self.state: ContractState = initial_state(spec)
        self.clock = epoch
        self.log: list[TransitionRecord] = []
        self.rejected: list[tuple[Event, str]] = []
        self.inputs: list[tuple[str, object]] = []  # replay script for persistence

    # -- reads --

    def active_norms(self) -> list[ActiveNorm]:
        if is_terminal(self.state):
            return []
        assert isinstance(self.state, ActiveState)
        norms = []
        for atom in sorted(self.state.norms, key=atom_text):
            deadline = nearest_deadline(self.spec, atom) if isinstance(atom, Obligation) else None
            norms.append(ActiveNorm(atom, deadline))
        return norms

    def history(self) -> list[TransitionRecord]:
        return list(self.log)

    def copy(self) -> "Session":
        twin = object.__new__(Session)
        twin.spec = self.spec
        twin.epoch = self.epoch
        twin.state = self.state
        twin.clock = self.clock
        twin.log = list(self.log)
        twin.rejected = list(self.rejected)
        twin.inputs = list(self.inputs)
        return twin

    # -- writes --

    def advance_clock(self, to: int) -> list[TransitionRecord]:
        """Move time forward, firing a quiet-lapse violation for every
        obligation whose last fulfilment deadline the advance crosses."""
        if to < self.clock:
            raise StaleEventError(f"clock is at {self.clock}, cannot move back to {to}")
        self.inputs.append(("advance", to))
        records = self._advance(to)
        return records

    def submit_event(self, event: Event) -> TransitionRecord | None:
        """Process one reported action: lapses due before it fire first, then
        the event is classified against the norms in force and applied.
        Returns the event's own record (None for a bare tick)."""
        if is_terminal(self.state):
            self.rejected.append((event, "session already terminated"))
            raise TerminatedSessionError("the agreement has terminated; no further events")
        if event.at < self.clock:
            self.rejected.append((event, f"stale timestamp {event.at} < clock {self.clock}"))
            raise StaleEventError(f"event at {event.at} is behind the clock at {self.clock}")
        self._advance(event.at)
        if isinstance(event.act, Tick):
            self.inputs.append(("advance", event.at))
            return None
        if is_terminal(self.state):
            # time itself ended the agreement; the event arrives too late
            self.inputs.append(("advance", event.at))
            self.rejected.append((event, "a deadline lapse terminated the agreement first"))
            raise TerminatedSessionError("a deadline lapse terminated the agreement first")
        try:
            label = self._label_for(event)
        except MonitorError:
            # the clock still moved; keep the replay script faithful
            self.inputs.append(("advance", event.at))
            raise
        record = self._apply(label, event)
        self.inputs.append(("event", event))
        return record

    # -- internals --

    def _advance(self, to: int) -> list[TransitionRecord]:
        records = []
        while not is_terminal(self.state):
            due = self._lapses_due(to)
            if not due:
                break
            deadline, obligation = due[0]
            record = self._apply(
                Violate(obligation.bearer, obligation.prop, LAPSE),
                event=None,
                at=deadline + 1,
            )
            records.append(record)
        self.clock = max(self.clock, to)
        return records

    def _lapses_due(self, to: int) -> list[tuple[int, Obligation]]:
        if is_terminal(self.state):
            return []
        assert isinstance(self.state, ActiveState)
        due = []
        for atom in self.state.norms:
            if not isinstance(atom, Obligation):
                continue
            deadline = _lapse_deadline(self.spec, atom)
            # fires exactly when this advance crosses the deadline
            if deadline is not None and self.clock <= deadline < to:
                due.append((deadline, atom))
        due.sort(key=lambda pair: (pair[0], atom_text(pair[1])))
        return due

    def _label_for(self, event: Event) -> TransitionLabel:
        assert isinstance(self.state, ActiveState)
        if isinstance(event.act, Exercise):
            return self._exercise_label(event, event.act)
        candidates = [
            atom
            for atom in sorted(self.state.norms, key=atom_text)
            if isinstance(atom, Obligation) and atom.prop == event.act
        ]
        if not candidates:
            message = f"no norm in force concerns {event.act!r}"
            self.rejected.append((event, message))
            raise UnexpectedEventError(message)
        obligation = candidates[0]
        windows = fulfilment_windows(self.spec, obligation)
        conforming, in_time, performer_ok = _dimensions(self.spec, event, obligation, windows)
        if conforming and in_time and performer_ok:
            qualifier = next((w for w in windows if satisfies(event.at, w)), None)
            return Fulfil(obligation.bearer, obligation.prop, qualifier)
        return Violate(
            obligation.bearer,
            obligation.prop,
            ViolationRefinement(
                nonconforming=not conforming,
                late=not in_time,
                wrong_performer=not performer_ok,
            ),
        )

    def _exercise_label(self, event: Event, act: Exercise) -> TransitionLabel:
        assert isinstance(self.state, ActiveState)
        powers = [
            atom
            for atom in sorted(self.state.norms, key=atom_text)
            if isinstance(atom, Power)
            and atom.bearer == event.actor
            and (act.effect is None or atom.effect == act.effect)
        ]
        if not powers:
            message = f"{event.actor} holds no matching power to exercise"
            self.rejected.append((event, message))
            raise UnexpectedEventError(message)
        if len(powers) > 1 and act.effect is None:
            message = f"{event.actor} holds several powers; name the one exercised"
            self.rejected.append((event, message))
            raise UnexpectedEventError(message)
        power = powers[0]
        return ExercisePower(power.bearer, power.effect)

    def _apply(
        self, label: TransitionLabel, event: Event | None, at: int | None = None
    ) -> TransitionRecord:
        at = at if at is not None else (event.at if event is not None else self.clock)
        before = self.state
        after = successor(self.spec, before, label)
        before_norms = before.norms if isinstance(before, ActiveState) else frozenset()
        after_norms = after.norms if isinstance(after, ActiveState) else frozenset()
        record = TransitionRecord(
            at=at,
            event=event,
            label=label,
            before_key=canonical_key(before),
            after_key=canonical_key(after),
            activated=tuple(sorted(after_norms - before_norms, key=atom_text)),
            discharged=tuple(sorted(before_norms - after_norms, key=atom_text)),
        )
        self.state = after
        self.clock = max(self.clock, at)
        self.log.append(record)
        return record


def open_session(spec: ContractSpec, epoch: int = 0) -> Session:
    return Session(spec, epoch)


def replay(spec: ContractSpec, state: ContractState, records: Iterable[TransitionRecord]) -> bool:
    """Fold a record log over the initial state; true iff every intermediate
    key matches the log and the fold lands on `state`."""
    current: ContractState = initial_state(spec)
    for record in records:
        if canonical_key(current) != record.before_key:
            return False
        try:
            current = successor(spec, current, record.label)
        except Exception:
            return False
        if canonical_key(current) != record.after_key:
            return False
    return canonical_key(current) == canonical_key(state)
