"""Acceptance suite: one test per release criterion, each printing a
PASS line (run with ``pytest tests/test_acceptance.py -s`` to see them).
"""

from __future__ import annotations

import itertools
import random
import time
from decimal import Decimal

from axioms import assert_axioms
from oracle import naive_graph
from specgen import generate_small_spec, generate_spec
from pacta import corpus
from pacta.dsl import parse, pretty_print
from pacta.model import (
    Event,
    Exercise,
    Fulfil,
    LAPSE,
    Obligation,
    TerminatedState,
    TerminalOutcome,
    TICK,
    Violate,
    ViolationRefinement,
    active,
    canonical_key,
)
from pacta.monitor import MonitorError, classify_event, open_session, replay
from pacta.statespace import (
    ProvisionClass,
    build_graph,
    classify_provision,
    detect_ctd,
)
from pacta.model import Before

O_DELIVERY = Obligation("susan", "delivery")
O_PAYMENT = Obligation("peter", "payment")
O_DAMAGES = Obligation("susan", "damages")
HAPPY = canonical_key(TerminatedState(TerminalOutcome.HAPPY))
UNHAPPY = canonical_key(TerminatedState(TerminalOutcome.UNHAPPY))

DELIVERY_ATTRS = {
    "size": "large",
    "description": "good-earth-vegetarian-no-onions",
    "quantity": Decimal("1"),
}


def test_simple_contract_state_diagram_reproduction():
    started = time.monotonic()
    graph = build_graph(corpus.load("pizza_simple"))

    k_delivery = canonical_key(active(O_DELIVERY))
    k_payment = canonical_key(active(O_PAYMENT))
    k_damages = canonical_key(active(O_DAMAGES))
    assert set(graph.nodes) == {k_delivery, k_payment, k_damages, HAPPY, UNHAPPY}

    edges = {(e.source, e.label, e.target) for e in graph.edges}
    assert edges == {
        (k_delivery, Fulfil("susan", "delivery"), k_payment),
        (k_delivery, Violate("susan", "delivery", LAPSE), k_damages),
        (k_damages, Fulfil("susan", "damages"), k_payment),
        (k_damages, Violate("susan", "damages", LAPSE), UNHAPPY),
        (k_payment, Fulfil("peter", "payment"), HAPPY),
        (k_payment, Violate("peter", "payment", LAPSE), UNHAPPY),
    }
    # fulfilling the delivery duty and fulfilling the damages duty converge
    assert graph.initial == k_delivery
    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    print(f"\nPASS  simple-contract diagram: 5 states, 6 edges, converging payments ({elapsed:.3f}s)")


def test_timed_contract_reproduction():
    spec = corpus.load("pizza_timed")

    on_time = open_session(spec, epoch=0)
    on_time.submit_event(Event(20, "susan", "delivery", dict(DELIVERY_ATTRS)))
    (norm,) = on_time.active_norms()
    assert norm.atom == Obligation("peter", "pay_full")
    prop = spec.propositions["pay_full"]
    assert prop.attrs["amount"] == Decimal("13.95")
    assert "£13.95" in prop.display

    late = open_session(spec, epoch=0)
    late.submit_event(Event(45, "susan", "delivery", dict(DELIVERY_ATTRS)))
    (norm,) = late.active_norms()
    assert norm.atom == Obligation("peter", "pay_reduced")
    reduced = spec.propositions["pay_reduced"]
    assert reduced.attrs["amount"] == Decimal("12.95")
    assert reduced.attrs["amount"] == Decimal("13.95") - Decimal("1.00")
    assert "£12.95" in reduced.display

    quiet = open_session(spec, epoch=0)
    records = quiet.advance_clock(31)
    assert len(records) == 1
    assert records[0].at == 31
    assert records[0].label == Violate("susan", "delivery", LAPSE)
    assert quiet.advance_clock(60) == []  # the lapse fires exactly once

    print("PASS  timed contract: t=20 pays £13.95, t=45 pays £12.95, one lapse at 31")


def test_axiom_suite_on_bundled_and_generated_specs():
    started = time.monotonic()
    checked = 0
    for name in corpus.SPEC_NAMES:
        assert_axioms(build_graph(corpus.load(name)))
        checked += 1
    for seed in range(100):
        assert_axioms(build_graph(generate_spec(seed)))
        checked += 1
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    print(f"PASS  axiom suite: {checked} state graphs, zero violations ({elapsed:.2f}s)")


def test_reparation_detection_counts():
    simple = detect_ctd(build_graph(corpus.load("pizza_simple")))
    assert len(simple) == 1
    assert (simple[0].primary, simple[0].secondary) == (O_DELIVERY, O_DAMAGES)
    assert isinstance(simple[0].via, Violate)
    assert (simple[0].via.agent, simple[0].via.prop) == ("susan", "delivery")

    powered = detect_ctd(build_graph(corpus.load("pizza_power")))
    assert len(powered) == 1
    assert (powered[0].primary, powered[0].secondary) == (O_DELIVERY, O_DAMAGES)

    assert detect_ctd(build_graph(corpus.load("pizza_promissory"))) == []
    print("PASS  reparation structures: 1 on simple, 1 via power, 0 on promissory")


REMEDY_FREE = "\n".join(
    [
        "contract pizza_intermediate",
        "agents susan, peter",
        "proposition delivery",
        "proposition payment",
        "initially O(susan, delivery)",
        "rule deliver_ok: O(susan, delivery) -[ susan: delivery ]-> O(peter, payment)",
        "rule pay_ok: O(peter, payment) -[ peter: payment ]-> terminated happy",
        "rule pay_fail: O(peter, payment) -[ not peter: payment ]-> terminated unhappy",
    ]
)


def test_breach_regime_classification():
    assert (
        classify_provision(corpus.load("pizza_promissory"), O_DELIVERY)
        is ProvisionClass.PROMISSORY_CONDITION
    )
    assert (
        classify_provision(corpus.load("pizza_warranty"), O_DELIVERY)
        is ProvisionClass.WARRANTY
    )
    remedy_free = parse(REMEDY_FREE).spec
    assert remedy_free is not None
    assert classify_provision(remedy_free, O_DELIVERY) is ProvisionClass.INTERMEDIATE_TERM
    print("PASS  breach regimes: promissory / warranty / intermediate as drafted")


def test_refinement_classification_matches_brute_force():
    spec = corpus.load("pizza_timed")
    deadline = Before(30)
    outcomes = set()
    for conforming, in_time, right_performer in itertools.product([True, False], repeat=3):
        event = Event(
            at=20 if in_time else 45,
            actor="susan" if right_performer else "driver",
            act="delivery",
            attrs=dict(DELIVERY_ATTRS) if conforming else {"size": "small"},
        )
        label = classify_event(spec, event, O_DELIVERY, deadline)

        # independent oracle: recompute the three dimensions from scratch
        oracle_conforming = event.attrs == spec.propositions["delivery"].attrs
        oracle_in_time = event.at <= 30
        oracle_performer = event.actor == "susan"
        assert (oracle_conforming, oracle_in_time, oracle_performer) == (
            conforming,
            in_time,
            right_performer,
        )
        if oracle_conforming and oracle_in_time and oracle_performer:
            expected = Fulfil("susan", "delivery")
        else:
            expected = Violate(
                "susan",
                "delivery",
                ViolationRefinement(
                    nonconforming=not oracle_conforming,
                    late=not oracle_in_time,
                    wrong_performer=not oracle_performer,
                ),
            )
        assert label == expected
        outcomes.add(label)
    assert len(outcomes) == 8  # each grid cell maps to exactly one label class
    print("PASS  refinement grid: all 8 outcomes match the brute-force oracle")


def _random_events(spec, rng, count):
    events = []
    t = 0
    actors = list(spec.agents) + ["courier"]
    props = list(spec.propositions.values())
    for _ in range(count):
        t += rng.randint(0, 15)
        roll = rng.random()
        if roll < 0.10:
            events.append(Event(t, None, TICK))
        elif roll < 0.22:
            events.append(Event(t, rng.choice(actors), Exercise()))
        else:
            prop = rng.choice(props)
            conforming = rng.random() < 0.6
            attrs = dict(prop.attrs) if conforming else {"surprise": "yes"}
            if prop.performer is not None and rng.random() < 0.7:
                actor = prop.performer
            else:
                actor = rng.choice(actors)
            events.append(Event(t, actor, prop.name, attrs))
    return events


def test_replay_invariant_on_random_event_sequences():
    sequences_per_spec = 100
    checked = 0
    for name in corpus.SPEC_NAMES:
        spec = corpus.load(name)
        for index in range(sequences_per_spec):
            rng = random.Random(hash((name, index)) & 0xFFFFFFFF)
            session = open_session(spec, epoch=0)
            for event in _random_events(spec, rng, count=8):
                try:
                    session.submit_event(event)
                except MonitorError:
                    continue
            assert replay(spec, session.state, session.history()), (
                f"replay mismatch for {name} sequence {index}"
            )
            checked += 1
    assert checked == sequences_per_spec * len(corpus.SPEC_NAMES)
    print(f"PASS  replay invariant: {checked} random sessions fold back to their live state")


def test_round_trip_identity():
    for name in corpus.SPEC_NAMES:
        spec = corpus.load(name)
        assert parse(pretty_print(spec)).spec == spec, f"round-trip broke {name}"
    for seed in range(100):
        spec = generate_spec(seed)
        assert parse(pretty_print(spec)).spec == spec, f"round-trip broke seed {seed}"
    print(f"PASS  round-trip: parse o pretty_print fixed {len(corpus.SPEC_NAMES)} bundled + 100 generated specs")


def test_graph_equals_brute_force_enumeration():
    checked = 0
    for name in corpus.SPEC_NAMES:
        spec = corpus.load(name)
        if len(spec.propositions) > 3 or len(spec.rules) > 8:
            continue
        graph = build_graph(spec)
        nodes, edges = naive_graph(spec)
        assert set(graph.nodes) == nodes, f"node mismatch on {name}"
        assert {(e.source, e.label, e.target) for e in graph.edges} == edges
        checked += 1
    for seed in range(60):
        spec = generate_small_spec(seed)
        if len(spec.propositions) > 3 or len(spec.rules) > 8:
            continue
        graph = build_graph(spec)
        nodes, edges = naive_graph(spec)
        assert set(graph.nodes) == nodes, f"node mismatch on seed {seed}"
        assert {(e.source, e.label, e.target) for e in graph.edges} == edges
        checked += 1
    assert checked >= 40
    print(f"PASS  oracle equivalence: {checked} small graphs equal subset enumeration")
