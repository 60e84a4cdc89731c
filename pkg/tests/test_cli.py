from __future__ import annotations

from decimal import Decimal

import pytest

from pacta import corpus
from pacta.cli import main
from pacta.events import EventSyntaxError, parse_events
from pacta.model import Event, Exercise, TICK


@pytest.fixture
def corpus_dir(tmp_path):
    for name in corpus.SPEC_NAMES:
        (tmp_path / f"{name}.pact").write_text(
            corpus.read_text(f"{name}.pact"), encoding="utf-8"
        )
    for name in ("late.events", "on_time.events"):
        (tmp_path / name).write_text(corpus.read_text(name), encoding="utf-8")
    return tmp_path


# -- event files -------------------------------------------------------------


def test_parse_bundled_event_files():
    late = parse_events(corpus.read_text("late.events"))
    assert [e.at for e in late] == [45, 50]
    assert late[0].act == "delivery"
    assert late[0].attrs["quantity"] == Decimal("1")
    on_time = parse_events(corpus.read_text("on_time.events"))
    assert on_time[0] == Event(10, None, TICK)


def test_parse_exercise_line():
    (event,) = parse_events("t=35 agent=peter act=exercise")
    assert event == Event(35, "peter", Exercise())


def test_event_syntax_error_carries_line():
    with pytest.raises(EventSyntaxError) as exc:
        parse_events("t=10 tick\nt=oops agent=s act=x")
    assert exc.value.line == 2


# -- check -------------------------------------------------------------------


def test_check_bundled_spec_passes(corpus_dir, capsys):
    assert main(["check", str(corpus_dir / "pizza_simple.pact")]) == 0
    out = capsys.readouterr()
    assert "ok" in out.out
    assert out.err == ""


def test_check_reports_errors_to_stderr(tmp_path, capsys):
    bad = tmp_path / "bad.pact"
    bad.write_text("contract c\nagents s\nrule r1: O(q, alpha) -[ s: alpha ]-> terminated happy\n")
    assert main(["check", str(bad)]) == 1
    assert "error" in capsys.readouterr().err


def test_check_missing_file(capsys):
    assert main(["check", "/nonexistent.pact"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


# -- graph -------------------------------------------------------------------


def test_graph_dot_is_stable(corpus_dir, capsys):
    path = str(corpus_dir / "pizza_simple.pact")
    assert main(["graph", path, "--dot"]) == 0
    first = capsys.readouterr().out
    assert main(["graph", path]) == 0  # dot is the default
    second = capsys.readouterr().out
    assert first == second
    assert first.startswith("digraph")
    assert first.count("->") == 6


def test_graph_structured(corpus_dir, capsys):
    import json

    assert main(["graph", str(corpus_dir / "pizza_simple.pact"), "--structured"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["nodes"]) == 5
    assert len(doc["edges"]) == 6


# -- analyze -----------------------------------------------------------------


def test_analyze_lists_one_reparation(corpus_dir, capsys):
    assert main(["analyze", str(corpus_dir / "pizza_simple.pact")]) == 0
    out = capsys.readouterr().out
    assert "reparation structures: 1" in out
    assert "O(susan, delivery)" in out
    assert "breach regimes:" in out


def test_analyze_promissory_class(corpus_dir, capsys):
    assert main(["analyze", str(corpus_dir / "pizza_promissory.pact")]) == 0
    out = capsys.readouterr().out
    assert "reparation structures: 0" in out
    assert "promissory condition" in out


# -- simulate ----------------------------------------------------------------


def test_simulate_late_events_ends_with_reduced_price(corpus_dir, capsys):
    assert (
        main(
            [
                "simulate",
                str(corpus_dir / "pizza_timed.pact"),
                "--events",
                str(corpus_dir / "late.events"),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "not susan: delivery / lapse" in out  # the deadline passed first
    assert "+ O(peter, pay_reduced)" in out
    assert "final state: terminated happy" in out


def test_simulate_on_time_events(corpus_dir, capsys):
    assert (
        main(
            [
                "simulate",
                str(corpus_dir / "pizza_timed.pact"),
                "--events",
                str(corpus_dir / "on_time.events"),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "+ O(peter, pay_full)" in out
    assert "final state: terminated happy" in out


def test_simulate_reports_rejected_events(corpus_dir, tmp_path, capsys):
    events = tmp_path / "weird.events"
    events.write_text('t=5 agent=peter act=payment attrs{amount=13.95}\n', encoding="utf-8")
    assert (
        main(
            [
                "simulate",
                str(corpus_dir / "pizza_simple.pact"),
                "--events",
                str(events),
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    assert "rejected" in out
    assert "final state: {O(susan, delivery)}" in out


# -- corpus ------------------------------------------------------------------


def test_corpus_list_and_cat(capsys):
    assert main(["corpus", "list"]) == 0
    assert "pizza_timed" in capsys.readouterr().out
    assert main(["corpus", "cat", "pizza_simple"]) == 0
    assert "contract pizza_simple" in capsys.readouterr().out
    assert main(["corpus", "cat", "nope"]) == 1
