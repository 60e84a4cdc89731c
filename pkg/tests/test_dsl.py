from __future__ import annotations

from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pacta import corpus
from pacta.dsl import Severity, parse, pretty_print, validate
from pacta.model import (
    Add,
    Before,
    FramePolicy,
    Fulfil,
    Obligation,
    Power,
    Remove,
    TerminatedState,
    TerminalOutcome,
    Violate,
)


def errors(diags):
    return [d for d in diags if d.severity is Severity.ERROR]


def warnings(diags):
    return [d for d in diags if d.severity is Severity.WARNING]


# -- parsing the bundled corpus ----------------------------------------------


def test_pizza_simple_parses_to_six_rules_plus_initial():
    spec = corpus.load("pizza_simple")
    assert len(spec.rules) == 6
    assert spec.initial == frozenset({Obligation("susan", "delivery")})
    assert spec.agents == ("susan", "peter")
    assert [r.id for r in spec.rules] == [
        "deliver_ok",
        "deliver_fail",
        "damages_ok",
        "damages_fail",
        "pay_ok",
        "pay_fail",
    ]


def test_pizza_simple_breach_rule_shape():
    spec = corpus.load("pizza_simple")
    breach = spec.rules[1]
    assert breach.label == Violate("susan", "delivery")
    assert breach.consequents == (
        Remove(Obligation("peter", "payment")),
        Add(Obligation("susan", "damages")),
    )


def test_pizza_timed_declarations():
    spec = corpus.load("pizza_timed")
    assert spec.rules[0].label == Fulfil("susan", "delivery", Before(30))
    assert spec.propositions["pay_full"].attrs["amount"] == Decimal("13.95")
    assert spec.propositions["pay_reduced"].attrs["amount"] == Decimal("12.95")
    assert spec.propositions["delivery"].performer == "susan"


def test_pizza_warranty_uses_persist_frame():
    assert corpus.load("pizza_warranty").config.frame_policy is FramePolicy.PERSIST_UNMENTIONED
    assert corpus.load("pizza_simple").config.frame_policy is FramePolicy.DISCHARGE_UNMENTIONED


def test_pizza_promissory_power_content_is_terminal():
    spec = corpus.load("pizza_promissory")
    breach = spec.rules[1]
    added = [c.atom for c in breach.consequents if isinstance(c, Add)]
    assert added == [Power("peter", TerminatedState(TerminalOutcome.UNHAPPY))]


@pytest.mark.parametrize("name", corpus.SPEC_NAMES)
def test_every_bundled_spec_is_clean(name):
    spec = corpus.load(name)
    assert errors(validate(spec)) == []
    assert warnings(validate(spec)) == []


# -- parse failures ----------------------------------------------------------


def test_empty_source_reports_missing_contract():
    result = parse("")
    assert result.spec is None
    assert any("no contract declaration" in d.message for d in errors(result.diagnostics))


def test_undeclared_agent_is_named_with_span():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "rule r1: O(q, alpha) -[ s: alpha ]-> terminated happy",
        ]
    )
    result = parse(src)
    assert result.spec is None
    (diag,) = [d for d in errors(result.diagnostics) if "'q'" in d.message]
    assert diag.span.line == 4
    line = src.splitlines()[3]
    assert line[diag.span.col_start - 1 : diag.span.col_end] == "q"


def test_duplicate_rule_id_rejected():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "rule r1: O(s, alpha) -[ s: alpha ]-> terminated happy",
            "rule r1: O(s, alpha) -[ not s: alpha ]-> terminated unhappy",
        ]
    )
    result = parse(src)
    assert result.spec is None
    assert any("duplicate rule id" in d.message for d in errors(result.diagnostics))


def test_duplicate_declarations_rejected():
    result = parse("contract c\nagents s, s\nproposition alpha\nproposition alpha\ninitially O(s, alpha)")
    assert result.spec is None
    messages = " | ".join(d.message for d in errors(result.diagnostics))
    assert "duplicate agent" in messages
    assert "duplicate proposition" in messages


def test_empty_between_interval_rejected_at_parse():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "rule r1: O(s, alpha) -[ s: alpha @between(30,10) ]-> terminated happy",
        ]
    )
    result = parse(src)
    assert result.spec is None
    assert any("empty interval" in d.message for d in errors(result.diagnostics))


def test_terminated_cannot_be_a_guard():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "rule r1: terminated happy -[ s: alpha ]-> terminated happy",
        ]
    )
    result = parse(src)
    assert result.spec is None
    assert any("guard on a terminated construct" in d.message for d in errors(result.diagnostics))


def test_terminate_consequent_must_stand_alone():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "rule r1: O(s, alpha) -[ s: alpha ]-> terminated happy, O(s, alpha)",
        ]
    )
    result = parse(src)
    assert result.spec is None


def test_every_error_span_lies_inside_the_source():
    src = "contract c\nagents s,\nrule ??? what\nproposition \"\"\n@@@"
    result = parse(src)
    assert result.spec is None
    lines = src.splitlines()
    for diag in result.diagnostics:
        assert 1 <= diag.span.line <= len(lines)
        assert 1 <= diag.span.col_start <= diag.span.col_end
        assert diag.span.col_start <= max(len(lines[diag.span.line - 1]), 1)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=200))
def test_parse_is_total(source):
    result = parse(source)
    assert (result.spec is None) == bool(errors(result.diagnostics))


# -- validate ----------------------------------------------------------------


def test_unused_proposition_warns():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "proposition gamma",
            "initially O(s, alpha)",
            "rule r1: O(s, alpha) -[ s: alpha ]-> terminated happy",
        ]
    )
    spec = parse(src).spec
    assert spec is not None
    warn = warnings(validate(spec))
    assert any("gamma" in d.message for d in warn)


def test_unreachable_guard_warns():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "proposition beta",
            "initially O(s, alpha)",
            "rule r1: O(s, alpha) -[ s: alpha ]-> terminated happy",
            "rule r2: O(s, beta) -[ s: beta ]-> terminated happy",
        ]
    )
    spec = parse(src).spec
    assert spec is not None
    assert any("unreachable" in d.message and "r2" in d.message for d in warnings(validate(spec)))


def test_conflicting_terminations_for_same_transition_error():
    src = "\n".join(
        [
            "contract c",
            "agents s",
            "proposition alpha",
            "initially O(s, alpha)",
            "rule r1: O(s, alpha) -[ s: alpha ]-> terminated happy",
            "rule r2: O(s, alpha) -[ s: alpha ]-> terminated unhappy",
        ]
    )
    spec = parse(src).spec
    assert spec is not None
    assert any("disagree" in d.message for d in errors(validate(spec)))


def test_compatible_duplicate_transitions_are_fine():
    src = "\n".join(
        [
            "contract c",
            "agents s, p",
            "proposition alpha",
            "proposition beta",
            "proposition gamma",
            "initially O(s, alpha)",
            "rule r1: O(s, alpha) -[ s: alpha ]-> O(p, beta)",
            "rule r2: O(s, alpha) -[ s: alpha ]-> O(p, gamma)",
            "rule r3: O(p, beta) -[ p: beta ]-> terminated happy",
            "rule r4: O(p, gamma) -[ p: gamma ]-> terminated happy",
        ]
    )
    spec = parse(src).spec
    assert spec is not None
    assert errors(validate(spec)) == []


# -- pretty-print round-trips ------------------------------------------------


@pytest.mark.parametrize("name", corpus.SPEC_NAMES)
def test_round_trip_on_bundled_specs(name):
    spec = corpus.load(name)
    reparsed = parse(pretty_print(spec))
    assert reparsed.spec == spec


def test_pretty_print_preserves_rule_order():
    spec = corpus.load("pizza_timed")
    text = pretty_print(spec)
    positions = [text.index(f"rule {r.id}:") for r in spec.rules]
    assert positions == sorted(positions)


def test_pretty_print_renders_temporal_qualifier():
    assert "@before(30)" in pretty_print(corpus.load("pizza_timed"))


def test_pretty_print_is_canonical():
    spec = corpus.load("pizza_warranty")
    once = pretty_print(spec)
    twice = pretty_print(parse(once).spec)
    assert once == twice
