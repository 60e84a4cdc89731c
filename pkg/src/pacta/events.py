"""Line-oriented replay files for the monitor (conventionally ``.events``).

One event per line, ``#`` comments:

    t=<int> tick
    t=<int> agent=<id> act=<prop> [attrs{k="v", amount=12.95}]
    t=<int> agent=<id> act=exercise

``act=exercise`` exercises the sole power the agent holds at that moment;
richer power targeting is available programmatically and over the API.
"""

from __future__ import annotations

from decimal import Decimal

from pacta.dsl import LineSyntaxError, _Cursor, _tokenize
from pacta.model import AttrValue, Event, Exercise, SpecError, TICK


class EventSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_events(text: str) -> list[Event]:
    events = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            tokens = _tokenize(line, lineno)
        except LineSyntaxError as exc:
            raise EventSyntaxError(exc.message, lineno) from exc
        if not tokens:
            continue
        cur = _Cursor(tokens, lineno, len(line))
        try:
            events.append(_parse_line(cur))
        except LineSyntaxError as exc:
            raise EventSyntaxError(exc.message, lineno) from exc
        except SpecError as exc:
            raise EventSyntaxError(str(exc), lineno) from exc
    return events


def _parse_line(cur: _Cursor) -> Event:
    cur.expect("t")
    cur.expect("=")
    at = int(cur.expect_number().text)
    head = cur.expect_ident("'tick' or 'agent'")
    if head.text == "tick":
        cur.expect_end()
        return Event(at, None, TICK)
    if head.text != "agent":
        raise LineSyntaxError("expected 'tick' or 'agent=<id>'", head.span)
    cur.expect("=")
    actor = cur.expect_ident("agent name").text
    act_kw = cur.expect_ident("'act'")
    if act_kw.text != "act":
        raise LineSyntaxError("expected 'act=<proposition>'", act_kw.span)
    cur.expect("=")
    act_tok = cur.expect_ident("proposition name")
    attrs: dict[str, AttrValue] = {}
    if cur.matches("attrs"):
        cur.next()
        attrs = _parse_attr_block(cur)
    cur.expect_end()
    if act_tok.text == "exercise":
        if attrs:
            raise LineSyntaxError("an exercise carries no attributes", act_tok.span)
        return Event(at, actor, Exercise())
    return Event(at, actor, act_tok.text, attrs)


def _parse_attr_block(cur: _Cursor) -> dict[str, AttrValue]:
    cur.expect("{")
    attrs: dict[str, AttrValue] = {}
    if cur.matches("}"):
        cur.next()
        return attrs
    while True:
        key = cur.expect_ident("attribute key").text
        cur.expect("=")
        tok = cur.next("attribute value")
        if tok.kind == "string":
            value: AttrValue = tok.text[1:-1].replace('\\"', '"').replace("\\\\", "\\")
        elif tok.kind == "number":
            value = Decimal(tok.text)
        else:
            raise LineSyntaxError(f"expected attribute value, found {tok.text!r}", tok.span)
        attrs[key] = value
        if cur.matches("}"):
            cur.next()
            return attrs
        cur.expect(",")
