"""Command-line front end.

    pacta check <file>                 parse + validate, diagnostics to stderr
    pacta graph <file> [--dot|--structured]
    pacta analyze <file>               terminals, reparation structures, breach regimes
    pacta simulate <file> --events <file> [--epoch N]
    pacta serve [--host H] [--port P] [--data-dir D] [--static DIR]
    pacta corpus list | cat <name>     bundled example contracts
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from pacta import corpus
from pacta.dsl import Severity, parse, validate
from pacta.events import EventSyntaxError, parse_events
from pacta.model import Obligation, SpecError, atom_text, label_text, state_text
from pacta.monitor import MonitorError, open_session
from pacta.statespace import (
    StateBoundExceeded,
    build_graph,
    classify_provision,
    classify_terminals,
    detect_ctd,
    export_dot,
    export_structured_graph,
)


def _load_spec(path: str):
    """Parse + validate a contract file; returns (spec, had_errors)."""
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"pacta: cannot read {path}: {exc}", file=sys.stderr)
        return None, True
    result = parse(source)
    diagnostics = list(result.diagnostics)
    if result.spec is not None:
        diagnostics.extend(validate(result.spec))
    for diag in diagnostics:
        print(f"{path}:{diag}", file=sys.stderr)
    errors = any(d.severity is Severity.ERROR for d in diagnostics)
    return (None if errors else result.spec), errors


def _cmd_check(args) -> int:
    spec, errors = _load_spec(args.file)
    if errors:
        return 1
    print(f"{args.file}: ok ({spec.name}: {len(spec.rules)} rules)")
    return 0


def _cmd_graph(args) -> int:
    spec, errors = _load_spec(args.file)
    if errors:
        return 1
    try:
        graph = build_graph(spec)
    except StateBoundExceeded as exc:
        print(f"pacta: {exc}", file=sys.stderr)
        return 1
    if args.structured:
        print(json.dumps(export_structured_graph(graph), indent=2, sort_keys=True))
    else:
        sys.stdout.write(export_dot(graph))
    return 0


def _cmd_analyze(args) -> int:
    spec, errors = _load_spec(args.file)
    if errors:
        return 1
    try:
        graph = build_graph(spec)
    except StateBoundExceeded as exc:
        print(f"pacta: {exc}", file=sys.stderr)
        return 1
    terminals = classify_terminals(graph)
    print(f"contract: {spec.name}")
    print(f"states: {len(graph.nodes)} ({len(terminals)} terminal), edges: {len(graph.edges)}")
    print("terminal outcomes:")
    if not terminals:
        print("  (none: the agreement never terminates)")
    for key in sorted(terminals):
        print(f"  {key}: {terminals[key].value}")
    triples = detect_ctd(graph)
    print(f"reparation structures: {len(triples)}")
    for t in triples:
        print(
            f"  {atom_text(t.primary)} --[{label_text(t.via)}]--> {atom_text(t.secondary)}"
        )
    print("breach regimes:")
    seen = set()
    for rule in spec.rules:
        guard = rule.guard
        if not isinstance(guard, Obligation) or guard in seen:
            continue
        seen.add(guard)
        regime = classify_provision(spec, guard).value.replace("_", " ")
        print(f"  {atom_text(guard)}: {regime}")
    return 0


def _cmd_simulate(args) -> int:
    spec, errors = _load_spec(args.file)
    if errors:
        return 1
    try:
        text = Path(args.events).read_text(encoding="utf-8")
        events = parse_events(text)
    except OSError as exc:
        print(f"pacta: cannot read {args.events}: {exc}", file=sys.stderr)
        return 1
    except EventSyntaxError as exc:
        print(f"pacta: {args.events}: {exc}", file=sys.stderr)
        return 1
    try:
        session = open_session(spec, epoch=args.epoch)
    except MonitorError as exc:
        print(f"pacta: {exc}", file=sys.stderr)
        return 1
    for event in events:
        mark = len(session.log)
        try:
            session.submit_event(event)
        except MonitorError as exc:
            _print_records(session.log[mark:])
            print(f"t={event.at} rejected: {exc}")
            continue
        _print_records(session.log[mark:])
    print(f"clock: {session.clock}")
    print(f"final state: {state_text(session.state)}")
    norms = session.active_norms()
    if norms:
        print("in force:")
        for norm in norms:
            deadline = f" (deadline {norm.deadline})" if norm.deadline is not None else ""
            prop = None
            if isinstance(norm.atom, Obligation):
                prop = spec.propositions[norm.atom.prop]
            gloss = f"  {atom_text(norm.atom)}{deadline}"
            if prop is not None and prop.display != prop.name:
                gloss += f"  -- {prop.display}"
            print(gloss)
    return 0


def _print_records(records) -> None:
    for r in records:
        trigger = "lapse" if r.event is None else "event"
        print(f"t={r.at} {trigger}: {label_text(r.label)}")
        for atom in r.discharged:
            print(f"      - {atom_text(atom)}")
        for atom in r.activated:
            print(f"      + {atom_text(atom)}")


def _cmd_serve(args) -> int:
    import uvicorn

    from pacta.service import create_app

    static = Path(args.static) if args.static else None
    app = create_app(Path(args.data_dir), static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.SPEC_NAMES:
            print(name)
        return 0
    if not args.name:
        print("pacta: corpus cat needs a name", file=sys.stderr)
        return 1
    filename = args.name if "." in args.name else f"{args.name}.pact"
    try:
        sys.stdout.write(corpus.read_text(filename))
    except (KeyError, FileNotFoundError):
        print(f"pacta: nothing bundled under the name {args.name!r}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacta", description="contract process analysis and monitoring"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse and validate a contract file")
    check.add_argument("file")

    graph = sub.add_parser("graph", help="emit the contract's state graph")
    graph.add_argument("file")
    fmt = graph.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="GraphViz DOT (default)")
    fmt.add_argument("--structured", action="store_true", help="JSON document")

    analyze = sub.add_parser("analyze", help="terminals, reparations, breach regimes")
    analyze.add_argument("file")

    simulate = sub.add_parser("simulate", help="replay an event file against a contract")
    simulate.add_argument("file")
    simulate.add_argument("--events", required=True)
    simulate.add_argument("--epoch", type=int, default=0)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data-dir", default="pacta_data")
    serve.add_argument("--static", default=None, help="directory with the workbench build")

    corpus_cmd = sub.add_parser("corpus", help="bundled example contracts")
    corpus_cmd.add_argument("action", choices=["list", "cat"])
    corpus_cmd.add_argument("name", nargs="?")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handlers = {
        "check": _cmd_check,
        "graph": _cmd_graph,
        "analyze": _cmd_analyze,
        "simulate": _cmd_simulate,
        "serve": _cmd_serve,
        "corpus": _cmd_corpus,
    }
    try:
        return handlers[args.command](args)
    except SpecError as exc:
        print(f"pacta: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
