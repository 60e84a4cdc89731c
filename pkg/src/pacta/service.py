"""HTTP service exposing parsing, analysis, monitoring, and exploration.

One process, file-backed: contracts are stored under their content hash,
sessions as replay-verified snapshots, one file each. All operations on a
given session are serialized behind a per-session lock; contract analyses
are read-only and freely concurrent.
"""

from __future__ import annotations

import hashlib
import json
import secrets
import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from pacta import corpus, wire
from pacta.dsl import Diagnostic, Severity, parse, pretty_print, validate
from pacta.explore import ScenarioNode, expand, what_if
from pacta.model import (
    ContractSpec,
    Obligation,
    Power,
    SpecError,
    atom_text,
)
from pacta.monitor import (
    MonitorError,
    Session,
    StaleEventError,
    TerminatedSessionError,
    UnexpectedEventError,
    open_session,
)
from pacta.statespace import (
    StateBoundExceeded,
    build_graph,
    classify_provision,
    classify_terminals,
    detect_ctd,
    export_dot,
    export_structured_graph,
)
from pacta.store import (
    SnapshotError,
    encode_record,
    load_session,
    read_snapshot,
    save_session,
    write_snapshot,
)


class ContractIn(BaseModel):
    source: str


class SessionIn(BaseModel):
    contract_id: str
    epoch: int = 0
    token: str | None = None


class EventIn(BaseModel):
    event: dict[str, Any]
    token: str | None = None


class ClockIn(BaseModel):
    to: int
    token: str | None = None


class ExploreIn(BaseModel):
    depth: int | None = None
    events: list[dict[str, Any]] | None = None


class ApiError(Exception):
    def __init__(self, status: int, message: str, **extra: Any):
        super().__init__(message)
        self.status = status
        self.payload = {"error": message, **extra}


def _diag_json(diag: Diagnostic) -> dict[str, Any]:
    return {
        "severity": diag.severity.value,
        "message": diag.message,
        "line": diag.span.line,
        "col_start": diag.span.col_start,
        "col_end": diag.span.col_end,
    }


def contract_id_for(spec: ContractSpec) -> str:
    normalized = pretty_print(spec).encode("utf-8")
    return hashlib.sha256(normalized).hexdigest()[:16]


class _SessionHandle:
    def __init__(self, session: Session, contract_id: str, spec_source: str):
        self.session = session
        self.contract_id = contract_id
        self.spec_source = spec_source
        self.tokens: dict[str, Any] = {}
        self.lock = threading.Lock()


class Gateway:
    """All service state; the FastAPI app is a thin shell over this."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.contracts_dir = data_dir / "contracts"
        self.sessions_dir = data_dir / "sessions"
        self.contracts_dir.mkdir(parents=True, exist_ok=True)
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._contracts: dict[str, tuple[str, ContractSpec]] = {}
        self._sessions: dict[str, _SessionHandle] = {}
        self._registry_lock = threading.Lock()
        self._create_tokens: dict[str, str] = {}
        self._load_create_tokens()

    # -- contracts --

    def add_contract(self, source: str) -> tuple[str, ContractSpec, list[Diagnostic]]:
        result = parse(source)
        if result.spec is None:
            raise ApiError(
                422,
                "the contract text has errors",
                diagnostics=[_diag_json(d) for d in result.diagnostics],
            )
        warnings = [d for d in validate(result.spec) if d.severity is Severity.WARNING]
        errors = [d for d in validate(result.spec) if d.severity is Severity.ERROR]
        if errors:
            raise ApiError(
                422,
                "the contract is not internally consistent",
                diagnostics=[_diag_json(d) for d in errors],
            )
        cid = contract_id_for(result.spec)
        with self._registry_lock:
            if cid not in self._contracts:
                self._contracts[cid] = (source, result.spec)
                (self.contracts_dir / f"{cid}.pact").write_text(source, encoding="utf-8")
        return cid, result.spec, warnings

    def contract(self, cid: str) -> tuple[str, ContractSpec]:
        with self._registry_lock:
            if cid in self._contracts:
                return self._contracts[cid]
        path = self.contracts_dir / f"{cid}.pact"
        if not path.exists():
            raise ApiError(404, f"no contract {cid!r}")
        source = path.read_text(encoding="utf-8")
        result = parse(source)
        if result.spec is None:
            raise ApiError(500, f"stored contract {cid!r} no longer parses")
        with self._registry_lock:
            self._contracts.setdefault(cid, (source, result.spec))
        return source, result.spec

    def list_contracts(self) -> list[dict[str, str]]:
        with self._registry_lock:
            known = dict(self._contracts)
        for path in self.contracts_dir.glob("*.pact"):
            cid = path.stem
            if cid not in known:
                result = parse(path.read_text(encoding="utf-8"))
                if result.spec is not None:
                    known[cid] = ("", result.spec)
        return sorted(
            ({"id": cid, "name": spec.name} for cid, (_, spec) in known.items()),
            key=lambda item: item["name"],
        )

    # -- sessions --

    def create_session(self, body: SessionIn) -> tuple[str, _SessionHandle]:
        if body.token is not None:
            with self._registry_lock:
                existing = self._create_tokens.get(body.token)
            if existing is not None:
                return existing, self.handle(existing)
        source, spec = self.contract(body.contract_id)
        try:
            session = open_session(spec, epoch=body.epoch)
        except MonitorError as exc:
            raise ApiError(422, str(exc))
        sid = secrets.token_hex(8)
        handle = _SessionHandle(session, body.contract_id, source)
        with self._registry_lock:
            self._sessions[sid] = handle
            if body.token is not None:
                self._create_tokens[body.token] = sid
                self._save_create_tokens()
        self._persist(sid, handle)
        return sid, handle

    def handle(self, sid: str) -> _SessionHandle:
        with self._registry_lock:
            if sid in self._sessions:
                return self._sessions[sid]
        path = self.sessions_dir / f"{sid}.json"
        if not path.exists():
            raise ApiError(404, f"no session {sid!r}")
        try:
            stored = read_snapshot(path)
            session = load_session(stored)
        except SnapshotError as exc:
            raise ApiError(500, f"session snapshot is unusable: {exc}")
        handle = _SessionHandle(session, stored.contract_id, stored.spec_source)
        handle.tokens = dict(stored.tokens)
        with self._registry_lock:
            self._sessions.setdefault(sid, handle)
            return self._sessions[sid]

    def _persist(self, sid: str, handle: _SessionHandle) -> None:
        stored = save_session(
            handle.session, sid, handle.contract_id, handle.spec_source, handle.tokens
        )
        write_snapshot(self.sessions_dir / f"{sid}.json", stored)

    def _load_create_tokens(self) -> None:
        path = self.data_dir / "session_tokens.json"
        if path.exists():
            try:
                self._create_tokens = dict(json.loads(path.read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError):
                self._create_tokens = {}

    def _save_create_tokens(self) -> None:
        path = self.data_dir / "session_tokens.json"
        path.write_text(json.dumps(self._create_tokens, sort_keys=True), encoding="utf-8")


def _norm_payload(handle: _SessionHandle) -> list[dict[str, Any]]:
    session = handle.session
    spec = session.spec
    norms = []
    for norm in session.active_norms():
        entry = wire.encode_atom(norm.atom)
        entry["deadline"] = norm.deadline
        if isinstance(norm.atom, Obligation):
            prop = spec.propositions[norm.atom.prop]
            entry["display"] = f"{norm.atom.bearer} must see to it that {prop.display}"
        else:
            assert isinstance(norm.atom, Power)
            if isinstance(norm.atom.effect, Obligation):
                target = atom_text(norm.atom.effect)
                entry["display"] = f"{norm.atom.bearer} may bring {target} into force"
            else:
                outcome = norm.atom.effect.outcome.value
                entry["display"] = f"{norm.atom.bearer} may declare the agreement over ({outcome})"
        norms.append(entry)
    return norms


def _state_payload(sid: str, handle: _SessionHandle) -> dict[str, Any]:
    session = handle.session
    return {
        "session_id": sid,
        "contract_id": handle.contract_id,
        "contract": session.spec.name,
        "epoch": session.epoch,
        "clock": session.clock,
        "state": wire.encode_state(session.state),
        "norms": _norm_payload(handle),
        "record_count": len(session.log),
    }


def _scenario_payload(node: ScenarioNode) -> dict[str, Any]:
    return {
        "state": wire.encode_state(node.state),
        "via": wire.encode_label(node.via) if node.via is not None else None,
        "revisit": node.revisit,
        "children": [_scenario_payload(child) for child in node.children],
    }


def create_app(data_dir: Path, static_dir: Path | None = None) -> FastAPI:
    gateway = Gateway(data_dir)
    app = FastAPI(title="pacta", version="0.1.0")
    app.state.gateway = gateway
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.payload)

    @app.exception_handler(RequestValidationError)
    async def _malformed(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed body", "detail": exc.errors()})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.get("/corpus")
    def corpus_listing():
        return [
            {"name": name, "source": corpus.read_text(f"{name}.pact")}
            for name in corpus.SPEC_NAMES
        ]

    @app.post("/contracts", status_code=201)
    def post_contract(body: ContractIn):
        cid, spec, warnings = gateway.add_contract(body.source)
        return {
            "id": cid,
            "name": spec.name,
            "diagnostics": [_diag_json(d) for d in warnings],
        }

    @app.get("/contracts")
    def get_contracts():
        return gateway.list_contracts()

    @app.get("/contracts/{cid}")
    def get_contract(cid: str):
        source, spec = gateway.contract(cid)
        return {"id": cid, "name": spec.name, "source": source}

    @app.get("/contracts/{cid}/graph")
    def get_graph(cid: str, format: str = "structured"):
        _, spec = gateway.contract(cid)
        if format not in ("structured", "dot"):
            raise ApiError(400, f"unknown graph format {format!r}")
        try:
            graph = build_graph(spec)
        except StateBoundExceeded as exc:
            raise ApiError(422, str(exc))
        if format == "dot":
            return PlainTextResponse(export_dot(graph))
        return export_structured_graph(graph)

    @app.get("/contracts/{cid}/analysis")
    def get_analysis(cid: str):
        _, spec = gateway.contract(cid)
        try:
            graph = build_graph(spec)
        except StateBoundExceeded as exc:
            raise ApiError(422, str(exc))
        terminals = classify_terminals(graph)
        provisions = []
        seen = set()
        for rule in spec.rules:
            guard = rule.guard
            if isinstance(guard, Obligation) and guard not in seen:
                seen.add(guard)
                provisions.append(
                    {
                        "obligation": wire.encode_atom(guard),
                        "class": classify_provision(spec, guard).value,
                    }
                )
        return {
            "contract": spec.name,
            "states": len(graph.nodes),
            "edges": len(graph.edges),
            "terminals": {key: outcome.value for key, outcome in sorted(terminals.items())},
            "ctd": [
                {
                    "primary": wire.encode_atom(t.primary),
                    "via": wire.encode_label(t.via),
                    "secondary": wire.encode_atom(t.secondary),
                }
                for t in detect_ctd(graph)
            ],
            "provisions": provisions,
        }

    @app.post("/sessions", status_code=201)
    def post_session(body: SessionIn):
        sid, handle = gateway.create_session(body)
        return _state_payload(sid, handle)

    @app.get("/sessions/{sid}/state")
    def get_state(sid: str):
        handle = gateway.handle(sid)
        with handle.lock:
            return _state_payload(sid, handle)

    @app.get("/sessions/{sid}/history")
    def get_history(sid: str):
        handle = gateway.handle(sid)
        with handle.lock:
            return {
                "session_id": sid,
                "records": [encode_record(r) for r in handle.session.history()],
                "rejected": [
                    {"event": wire.encode_event(event), "reason": reason}
                    for event, reason in handle.session.rejected
                ],
            }

    @app.post("/sessions/{sid}/events")
    def post_event(sid: str, body: EventIn):
        handle = gateway.handle(sid)
        with handle.lock:
            if body.token is not None and body.token in handle.tokens:
                return handle.tokens[body.token]
            try:
                event = wire.decode_event(body.event)
            except (SpecError, KeyError, ValueError) as exc:
                raise ApiError(400, f"malformed event: {exc}")
            mark = len(handle.session.log)
            try:
                record = handle.session.submit_event(event)
            except (StaleEventError, TerminatedSessionError, UnexpectedEventError) as exc:
                gateway._persist(sid, handle)  # lapses may have committed
                raise ApiError(409, str(exc))
            new = handle.session.log[mark:]
            lapses = [r for r in new if r is not record]
            response = {
                "record": encode_record(record) if record is not None else None,
                "lapses": [encode_record(r) for r in lapses],
                "state": _state_payload(sid, handle),
            }
            if body.token is not None:
                handle.tokens[body.token] = response
            gateway._persist(sid, handle)
            return response

    @app.post("/sessions/{sid}/clock")
    def post_clock(sid: str, body: ClockIn):
        handle = gateway.handle(sid)
        with handle.lock:
            if body.token is not None and body.token in handle.tokens:
                return handle.tokens[body.token]
            try:
                records = handle.session.advance_clock(body.to)
            except StaleEventError as exc:
                raise ApiError(409, str(exc))
            response = {
                "records": [encode_record(r) for r in records],
                "state": _state_payload(sid, handle),
            }
            if body.token is not None:
                handle.tokens[body.token] = response
            gateway._persist(sid, handle)
            return response

    @app.post("/sessions/{sid}/explore")
    def post_explore(sid: str, body: ExploreIn):
        handle = gateway.handle(sid)
        with handle.lock:
            if body.depth is None and body.events is None:
                raise ApiError(400, "explore needs a depth or a list of events")
            if body.depth is not None:
                if body.depth < 0 or body.depth > 8:
                    raise ApiError(400, "depth must be between 0 and 8")
                tree = expand(handle.session.spec, handle.session.state, body.depth)
                return {"tree": _scenario_payload(tree)}
            try:
                events = [wire.decode_event(e) for e in body.events or []]
            except (SpecError, KeyError, ValueError) as exc:
                raise ApiError(400, f"malformed event: {exc}")
            result = what_if(handle.session, events)
            return {
                "state": wire.encode_state(result.state),
                "records": [encode_record(r) for r in result.records],
                "errors": [{"index": i, "reason": reason} for i, reason in result.errors],
            }

    if static_dir is not None and static_dir.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=static_dir, html=True), name="workbench")

    return app
