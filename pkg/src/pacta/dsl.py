"""Textual contract language: parse, validate, pretty-print.

The format is line-oriented UTF-8 (conventionally ``.pact`` files).
``#`` starts a comment. One statement per line:

    contract <name>
    agents <id>, <id>, ...
    proposition <id> ["display text"] [by <agent>] [attrs{k="v", amount=12.95}]
    frame discharge|persist
    violations on|off
    bound <int>
    initially <atom>, <atom>, ...
    rule <id>: <atom> -[ <label> ]-> <consequent>, ...

Atoms are ``O(agent, prop)``, ``POW(agent, O(agent, prop))`` or
``POW(agent, terminated happy|unhappy)``. Labels are ``agent: prop``,
``not agent: prop [/ dim+dim | / lapse]`` or ``exercise agent: <content>``,
each optionally followed by ``@before(t)``, ``@after(t)`` or
``@between(t1,t2)``. Consequents are atoms (activate), ``not <atom>``
(explicitly lift) or ``terminated happy|unhappy``.

Declarations must precede use. Parsing never raises on bad input; it
returns diagnostics with source spans instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum

from pacta.model import (
    Add,
    After,
    AttrValue,
    Before,
    Between,
    Consequent,
    ContractSpec,
    EngineConfig,
    ExercisePower,
    FramePolicy,
    Fulfil,
    NormAtom,
    Obligation,
    Power,
    Proposition,
    Remove,
    Rule,
    SpecError,
    TemporalQualifier,
    Terminate,
    TerminatedState,
    TerminalOutcome,
    TransitionLabel,
    Violate,
    ViolationRefinement,
    atom_text,
    qualifier_text,
)

KEYWORDS = frozenset(
    {
        "contract",
        "agents",
        "proposition",
        "initially",
        "rule",
        "terminated",
        "happy",
        "unhappy",
        "O",
        "POW",
        "exercise",
        "not",
        "by",
        "attrs",
        "frame",
        "discharge",
        "persist",
        "violations",
        "on",
        "off",
        "bound",
        "before",
        "after",
        "between",
        "lapse",
    }
)

REFINEMENT_DIMENSIONS = ("nonconforming", "late", "wrong_performer")


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    col_start: int
    col_end: int

    def __post_init__(self) -> None:
        if self.col_start > self.col_end:
            raise SpecError("span columns out of order")


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.col_start}: {self.severity.value}: {self.message}"


@dataclass
class ParseResult:
    spec: ContractSpec | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.spec is not None


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t]+)
      | (?P<comment>\#.*)
      | (?P<string>"(?:[^"\\\n]|\\.)*")
      | (?P<badstring>"(?:[^"\\\n]|\\.)*)
      | (?P<number>\d+(?:\.\d+)?)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<arrow_open>-\[)
      | (?P<arrow_close>\]->)
      | (?P<punct>[{}(),:=/+@])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int  # 1-based

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.col, self.col + max(len(self.text), 1) - 1)


class LineSyntaxError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(message)
        self.message = message
        self.span = span


def _tokenize(line: str, lineno: int) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            raise LineSyntaxError(
                f"unexpected character {line[pos]!r}",
                SourceSpan(lineno, pos + 1, pos + 1),
            )
        kind = m.lastgroup or ""
        text = m.group()
        if kind == "badstring":
            raise LineSyntaxError(
                "unterminated string literal", SourceSpan(lineno, pos + 1, len(line))
            )
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, lineno, pos + 1))
        pos = m.end()
    return tokens


class _Cursor:
    """Walk one line's tokens; raises LineSyntaxError with spans on mismatch."""

    def __init__(self, tokens: list[Token], lineno: int, line_len: int):
        self.tokens = tokens
        self.index = 0
        self.lineno = lineno
        self.line_len = line_len

    def _eol_span(self) -> SourceSpan:
        col = max(self.line_len, 1)
        return SourceSpan(self.lineno, col, col)

    def peek(self) -> Token | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def at_end(self) -> bool:
        return self.index >= len(self.tokens)

    def next(self, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise LineSyntaxError(
                f"unexpected end of line (expected {expected or 'more input'})",
                self._eol_span(),
            )
        self.index += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.next(repr(text))
        if tok.text != text:
            raise LineSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.span)
        return tok

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.next(what)
        if tok.kind != "ident":
            raise LineSyntaxError(f"expected {what}, found {tok.text!r}", tok.span)
        return tok

    def expect_number(self) -> Token:
        tok = self.next("number")
        if tok.kind != "number":
            raise LineSyntaxError(f"expected number, found {tok.text!r}", tok.span)
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise LineSyntaxError(f"trailing input {tok.text!r}", tok.span)

    def matches(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text


def _unquote(raw: str) -> str:
    body = raw[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.diagnostics: list[Diagnostic] = []
        self.contract_name: str | None = None
        self.agents: list[str] = []
        self.propositions: dict[str, Proposition] = {}
        self.initial: set[NormAtom] = set()
        self.rules: list[Rule] = []
        self.rule_ids: dict[str, int] = {}
        self.frame = FramePolicy.DISCHARGE_UNMENTIONED
        self.violation_axiom = True
        self.state_bound = 10_000

    def error(self, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, message, span))

    def run(self) -> ParseResult:
        for lineno, line in enumerate(self.source.splitlines(), start=1):
            try:
                tokens = _tokenize(line, lineno)
            except LineSyntaxError as exc:
                self.error(exc.message, exc.span)
                continue
            if not tokens:
                continue
            cur = _Cursor(tokens, lineno, len(line))
            try:
                self._statement(cur)
            except LineSyntaxError as exc:
                self.error(exc.message, exc.span)
        if self.contract_name is None:
            self.error("no contract declaration", SourceSpan(1, 1, 1))
        if any(d.severity is Severity.ERROR for d in self.diagnostics):
            return ParseResult(None, self.diagnostics)
        spec = ContractSpec(
            name=self.contract_name,
            agents=tuple(self.agents),
            propositions=self.propositions,
            initial=frozenset(self.initial),
            rules=tuple(self.rules),
            config=EngineConfig(
                frame_policy=self.frame,
                violation_axiom=self.violation_axiom,
                state_bound=self.state_bound,
            ),
        )
        return ParseResult(spec, self.diagnostics)

    # -- statements --

    def _statement(self, cur: _Cursor) -> None:
        head = cur.next("statement keyword")
        if head.kind != "ident":
            raise LineSyntaxError(f"expected a statement, found {head.text!r}", head.span)
        handler = {
            "contract": self._stmt_contract,
            "agents": self._stmt_agents,
            "proposition": self._stmt_proposition,
            "frame": self._stmt_frame,
            "violations": self._stmt_violations,
            "bound": self._stmt_bound,
            "initially": self._stmt_initially,
            "rule": self._stmt_rule,
        }.get(head.text)
        if handler is None:
            raise LineSyntaxError(f"unknown statement {head.text!r}", head.span)
        handler(cur)

    def _stmt_contract(self, cur: _Cursor) -> None:
        tok = cur.expect_ident("contract name")
        cur.expect_end()
        if self.contract_name is not None:
            self.error("duplicate contract declaration", tok.span)
            return
        self.contract_name = tok.text

    def _stmt_agents(self, cur: _Cursor) -> None:
        while True:
            tok = cur.expect_ident("agent name")
            self._check_fresh_name(tok)
            if tok.text in self.agents:
                self.error(f"duplicate agent {tok.text!r}", tok.span)
            else:
                self.agents.append(tok.text)
            if cur.at_end():
                return
            cur.expect(",")

    def _check_fresh_name(self, tok: Token) -> None:
        if tok.text in KEYWORDS:
            self.error(f"{tok.text!r} is a reserved word", tok.span)

    def _stmt_proposition(self, cur: _Cursor) -> None:
        name_tok = cur.expect_ident("proposition name")
        self._check_fresh_name(name_tok)
        if name_tok.text in self.propositions:
            self.error(f"duplicate proposition {name_tok.text!r}", name_tok.span)
            return
        display = ""
        performer: str | None = None
        attrs: dict[str, AttrValue] = {}
        tok = cur.peek()
        if tok is not None and tok.kind == "string":
            display = _unquote(cur.next().text)
        if cur.matches("by"):
            cur.next()
            agent_tok = cur.expect_ident("agent name")
            performer = self._resolve_agent(agent_tok)
        if cur.matches("attrs"):
            cur.next()
            attrs = self._parse_attrs(cur)
        cur.expect_end()
        self.propositions[name_tok.text] = Proposition(
            name=name_tok.text, display=display, attrs=attrs, performer=performer
        )

    def _parse_attrs(self, cur: _Cursor) -> dict[str, AttrValue]:
        cur.expect("{")
        attrs: dict[str, AttrValue] = {}
        if cur.matches("}"):
            cur.next()
            return attrs
        while True:
            key_tok = cur.expect_ident("attribute key")
            cur.expect("=")
            val_tok = cur.next("attribute value")
            if val_tok.kind == "string":
                value: AttrValue = _unquote(val_tok.text)
            elif val_tok.kind == "number":
                value = Decimal(val_tok.text)
            else:
                raise LineSyntaxError(
                    f"expected attribute value, found {val_tok.text!r}", val_tok.span
                )
            if key_tok.text in attrs:
                self.error(f"duplicate attribute key {key_tok.text!r}", key_tok.span)
            attrs[key_tok.text] = value
            if cur.matches("}"):
                cur.next()
                return attrs
            cur.expect(",")

    def _stmt_frame(self, cur: _Cursor) -> None:
        tok = cur.next("'discharge' or 'persist'")
        if tok.text == "discharge":
            self.frame = FramePolicy.DISCHARGE_UNMENTIONED
        elif tok.text == "persist":
            self.frame = FramePolicy.PERSIST_UNMENTIONED
        else:
            raise LineSyntaxError("frame must be 'discharge' or 'persist'", tok.span)
        cur.expect_end()

    def _stmt_violations(self, cur: _Cursor) -> None:
        tok = cur.next("'on' or 'off'")
        if tok.text not in ("on", "off"):
            raise LineSyntaxError("violations must be 'on' or 'off'", tok.span)
        self.violation_axiom = tok.text == "on"
        cur.expect_end()

    def _stmt_bound(self, cur: _Cursor) -> None:
        tok = cur.expect_number()
        cur.expect_end()
        bound = int(Decimal(tok.text))
        if bound < 1 or "." in tok.text:
            raise LineSyntaxError("bound must be a positive integer", tok.span)
        self.state_bound = bound

    def _stmt_initially(self, cur: _Cursor) -> None:
        while True:
            self.initial.add(self._parse_atom(cur))
            if cur.at_end():
                return
            cur.expect(",")

    def _stmt_rule(self, cur: _Cursor) -> None:
        id_tok = cur.expect_ident("rule id")
        self._check_fresh_name(id_tok)
        cur.expect(":")
        guard_head = cur.peek()
        if guard_head is not None and guard_head.text == "terminated":
            # a terminal is not a norm; nothing can be guarded on it
            raise LineSyntaxError("guard on a terminated construct", guard_head.span)
        guard = self._parse_atom(cur)
        cur.expect("-[")
        label = self._parse_label(cur)
        cur.expect("]->")
        consequents = self._parse_consequents(cur)
        cur.expect_end()
        if id_tok.text in self.rule_ids:
            self.error(f"duplicate rule id {id_tok.text!r}", id_tok.span)
            return
        try:
            rule = Rule(id_tok.text, guard, label, tuple(consequents))
        except SpecError as exc:
            self.error(str(exc), id_tok.span)
            return
        self.rule_ids[id_tok.text] = len(self.rules)
        self.rules.append(rule)

    # -- shared pieces --

    def _resolve_agent(self, tok: Token) -> str:
        if tok.text not in self.agents:
            self.error(f"undeclared agent {tok.text!r}", tok.span)
        return tok.text

    def _resolve_prop(self, tok: Token) -> str:
        if tok.text not in self.propositions:
            self.error(f"undeclared proposition {tok.text!r}", tok.span)
        return tok.text

    def _parse_atom(self, cur: _Cursor) -> NormAtom:
        head = cur.next("'O' or 'POW'")
        if head.text == "O":
            cur.expect("(")
            bearer = self._resolve_agent(cur.expect_ident("agent name"))
            cur.expect(",")
            prop = self._resolve_prop(cur.expect_ident("proposition name"))
            cur.expect(")")
            return Obligation(bearer, prop)
        if head.text == "POW":
            cur.expect("(")
            bearer = self._resolve_agent(cur.expect_ident("agent name"))
            cur.expect(",")
            effect = self._parse_power_content(cur)
            cur.expect(")")
            return Power(bearer, effect)
        raise LineSyntaxError(f"expected a norm atom, found {head.text!r}", head.span)

    def _parse_power_content(self, cur: _Cursor) -> Obligation | TerminatedState:
        tok = cur.peek()
        if tok is not None and tok.text == "terminated":
            cur.next()
            return TerminatedState(self._parse_outcome(cur))
        inner = self._parse_atom(cur)
        if not isinstance(inner, Obligation):
            raise LineSyntaxError(
                "power content must be an obligation or 'terminated <outcome>'",
                tok.span if tok else cur._eol_span(),
            )
        return inner

    def _parse_outcome(self, cur: _Cursor) -> TerminalOutcome:
        tok = cur.next("'happy' or 'unhappy'")
        if tok.text == "happy":
            return TerminalOutcome.HAPPY
        if tok.text == "unhappy":
            return TerminalOutcome.UNHAPPY
        raise LineSyntaxError("expected 'happy' or 'unhappy'", tok.span)

    def _parse_label(self, cur: _Cursor) -> TransitionLabel:
        tok = cur.peek()
        if tok is None:
            raise LineSyntaxError("expected a transition label", cur._eol_span())
        if tok.text == "not":
            cur.next()
            agent = self._resolve_agent(cur.expect_ident("agent name"))
            cur.expect(":")
            prop = self._resolve_prop(cur.expect_ident("proposition name"))
            refinement = None
            if cur.matches("/"):
                cur.next()
                refinement = self._parse_refinement(cur)
            return Violate(agent, prop, refinement, self._parse_qualifier(cur))
        if tok.text == "exercise":
            cur.next()
            agent = self._resolve_agent(cur.expect_ident("agent name"))
            cur.expect(":")
            nxt = cur.peek()
            if nxt is not None and nxt.text == "terminated":
                cur.next()
                effect: Obligation | TerminatedState = TerminatedState(self._parse_outcome(cur))
            else:
                inner = self._parse_atom(cur)
                if not isinstance(inner, Obligation):
                    raise LineSyntaxError(
                        "exercised content must be an obligation or 'terminated <outcome>'",
                        nxt.span if nxt else cur._eol_span(),
                    )
                effect = inner
            return ExercisePower(agent, effect, self._parse_qualifier(cur))
        agent = self._resolve_agent(cur.expect_ident("agent name"))
        cur.expect(":")
        prop = self._resolve_prop(cur.expect_ident("proposition name"))
        return Fulfil(agent, prop, self._parse_qualifier(cur))

    def _parse_refinement(self, cur: _Cursor) -> ViolationRefinement:
        first = cur.expect_ident("violation dimension")
        if first.text == "lapse":
            return ViolationRefinement(lapse=True)
        dims = {first.text}
        first_span = first.span
        while cur.matches("+"):
            cur.next()
            dims.add(cur.expect_ident("violation dimension").text)
        unknown = dims - set(REFINEMENT_DIMENSIONS)
        if unknown:
            raise LineSyntaxError(
                f"unknown violation dimension {sorted(unknown)[0]!r} "
                f"(expected {', '.join(REFINEMENT_DIMENSIONS)} or lapse)",
                first_span,
            )
        return ViolationRefinement(
            nonconforming="nonconforming" in dims,
            late="late" in dims,
            wrong_performer="wrong_performer" in dims,
        )

    def _parse_qualifier(self, cur: _Cursor) -> TemporalQualifier:
        if not cur.matches("@"):
            return None
        cur.next()
        kind = cur.expect_ident("'before', 'after' or 'between'")
        cur.expect("(")
        if kind.text == "between":
            t1 = int(cur.expect_number().text)
            cur.expect(",")
            t2_tok = cur.expect_number()
            cur.expect(")")
            if t1 >= int(t2_tok.text):
                raise LineSyntaxError(
                    f"between({t1},{t2_tok.text}) is an empty interval", t2_tok.span
                )
            return Between(t1, int(t2_tok.text))
        t_tok = cur.expect_number()
        cur.expect(")")
        if kind.text == "before":
            return Before(int(t_tok.text))
        if kind.text == "after":
            return After(int(t_tok.text))
        raise LineSyntaxError("expected 'before', 'after' or 'between'", kind.span)

    def _parse_consequents(self, cur: _Cursor) -> list[Consequent]:
        consequents: list[Consequent] = []
        while True:
            tok = cur.peek()
            if tok is None:
                raise LineSyntaxError("expected a consequent", cur._eol_span())
            if tok.text == "terminated":
                cur.next()
                consequents.append(Terminate(self._parse_outcome(cur)))
            elif tok.text == "not":
                cur.next()
                consequents.append(Remove(self._parse_atom(cur)))
            else:
                consequents.append(Add(self._parse_atom(cur)))
            if not cur.matches(","):
                return consequents
            cur.next()


def parse(source: str) -> ParseResult:
    """Parse contract text; returns a spec or error diagnostics, never both."""
    return _Parser(source).run()


# ---------------------------------------------------------------------------
# Semantic validation
# ---------------------------------------------------------------------------


def validate(spec: ContractSpec) -> list[Diagnostic]:
    """Semantic checks beyond grammar; diagnostics only, never raises.

    Structural impossibilities (a terminal in guard position, an empty
    between-interval) are already rejected while parsing; the checks here
    re-cover what a programmatically built spec could still get wrong,
    plus lint-grade warnings.
    """
    diags: list[Diagnostic] = []
    nowhere = SourceSpan(1, 1, 1)

    by_transition: dict[tuple[NormAtom, TransitionLabel], TerminalOutcome | None] = {}
    for rule in spec.rules:
        key = (rule.guard, rule.label)
        outcome = rule.terminates
        if key in by_transition:
            prior = by_transition[key]
            if prior is not None and outcome is not None and prior != outcome:
                diags.append(
                    Diagnostic(
                        Severity.ERROR,
                        f"rules for the same transition '{atom_text(rule.guard)}' disagree "
                        f"on termination outcome",
                        nowhere,
                    )
                )
            by_transition[key] = outcome or prior
        else:
            by_transition[key] = outcome

    for rule in spec.rules:
        q = rule.label.qualifier
        if isinstance(q, Between) and q.t1 >= q.t2:  # unconstructible, checked anyway
            diags.append(
                Diagnostic(Severity.ERROR, f"rule {rule.id}: empty interval", nowhere)
            )
        if (
            isinstance(rule.label, ExercisePower)
            and isinstance(rule.label.effect, Obligation)
            and rule.terminates is not None
        ):
            diags.append(
                Diagnostic(
                    Severity.ERROR,
                    f"rule {rule.id}: terminating on an exercise that creates an "
                    f"obligation contradicts the exercised relation taking force",
                    nowhere,
                )
            )

    used: set[str] = set()
    for atom in spec.initial:
        used.update(_atom_props(atom))
    for rule in spec.rules:
        used.update(_atom_props(rule.guard))
        if isinstance(rule.label, (Fulfil, Violate)):
            used.add(rule.label.prop)
        elif isinstance(rule.label.effect, Obligation):
            used.add(rule.label.effect.prop)
        for c in rule.consequents:
            if isinstance(c, (Add, Remove)):
                used.update(_atom_props(c.atom))
    for name in spec.propositions:
        if name not in used:
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    f"proposition {name!r} is never used in any rule",
                    nowhere,
                )
            )

    reachable = _syntactic_reach(spec)
    for rule in spec.rules:
        if rule.guard not in reachable:
            diags.append(
                Diagnostic(
                    Severity.WARNING,
                    f"rule {rule.id}: guard {atom_text(rule.guard)} looks unreachable "
                    f"from the initial state",
                    nowhere,
                )
            )
    return diags


def _atom_props(atom: NormAtom) -> set[str]:
    if isinstance(atom, Obligation):
        return {atom.prop}
    if isinstance(atom.effect, Obligation):
        return {atom.effect.prop}
    return set()


def _syntactic_reach(spec: ContractSpec) -> set[NormAtom]:
    """Over-approximate which atoms can ever be in force: seed with the
    initial set, then close over rule consequents and power contents."""
    reachable = set(spec.initial)
    changed = True
    while changed:
        changed = False
        for atom in list(reachable):
            if isinstance(atom, Power) and isinstance(atom.effect, Obligation):
                if atom.effect not in reachable:
                    reachable.add(atom.effect)
                    changed = True
        for rule in spec.rules:
            if rule.guard in reachable:
                for c in rule.consequents:
                    if isinstance(c, Add) and c.atom not in reachable:
                        reachable.add(c.atom)
                        changed = True
    return reachable


# ---------------------------------------------------------------------------
# Pretty-printer
# ---------------------------------------------------------------------------


def _attr_value_text(value: AttrValue) -> str:
    if isinstance(value, Decimal):
        return str(value)
    return _quote(value)


def _attrs_text(attrs: dict[str, AttrValue]) -> str:
    inner = ", ".join(f"{k}={_attr_value_text(v)}" for k, v in sorted(attrs.items()))
    return "attrs{" + inner + "}"


def _label_source(label: TransitionLabel) -> str:
    if isinstance(label, Fulfil):
        body = f"{label.agent}: {label.prop}"
    elif isinstance(label, Violate):
        body = f"not {label.agent}: {label.prop}"
        if label.refinement is not None:
            body += " / " + "+".join(label.refinement.dimensions())
    else:
        if isinstance(label.effect, TerminatedState):
            content = f"terminated {label.effect.outcome.value}"
        else:
            content = atom_text(label.effect)
        body = f"exercise {label.agent}: {content}"
    suffix = qualifier_text(label.qualifier)
    return f"{body} {suffix}" if suffix else body


def _consequent_source(consequent: Consequent) -> str:
    if isinstance(consequent, Add):
        return atom_text(consequent.atom)
    if isinstance(consequent, Remove):
        return f"not {atom_text(consequent.atom)}"
    return f"terminated {consequent.outcome.value}"


def pretty_print(spec: ContractSpec) -> str:
    """Canonical source text; reparsing it yields a spec equal to the input."""
    lines = [f"contract {spec.name}", ""]
    if spec.agents:
        lines.append("agents " + ", ".join(spec.agents))
        lines.append("")
    config_lines = []
    if spec.config.frame_policy is FramePolicy.PERSIST_UNMENTIONED:
        config_lines.append("frame persist")
    if not spec.config.violation_axiom:
        config_lines.append("violations off")
    if spec.config.state_bound != 10_000:
        config_lines.append(f"bound {spec.config.state_bound}")
    if config_lines:
        lines.extend(config_lines)
        lines.append("")
    for prop in spec.propositions.values():
        parts = [f"proposition {prop.name}"]
        if prop.display != prop.name:
            parts.append(_quote(prop.display))
        if prop.performer is not None:
            parts.append(f"by {prop.performer}")
        if prop.attrs:
            parts.append(_attrs_text(prop.attrs))
        lines.append(" ".join(parts))
    if spec.propositions:
        lines.append("")
    if spec.initial:
        atoms = ", ".join(sorted(atom_text(a) for a in spec.initial))
        lines.append(f"initially {atoms}")
        lines.append("")
    for rule in spec.rules:
        consequents = ", ".join(_consequent_source(c) for c in rule.consequents)
        lines.append(
            f"rule {rule.id}: {atom_text(rule.guard)} "
            f"-[ {_label_source(rule.label)} ]-> {consequents}"
        )
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines) + "\n"
