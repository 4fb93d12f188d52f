"""Operator command line: validate/format knowledge bases, run consultations,
launch the service.

Exit codes: 0 ok, 1 diagnostics or failed consultation, 2 usage, 3 runtime
(unreadable file, occupied port).
"""

from __future__ import annotations

import argparse
import socket
import sys
from pathlib import Path

from .document import load_document, parse_kb, render_kb, validate
from .engine import DEFAULT_RESOLUTION, infer, render_report
from .errors import FuzzyPlanError, KbDocumentError

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _print_diagnostics(path: str, diagnostics) -> None:
    for d in diagnostics:
        print(f"{path}:{d.line}:{d.col}: {d.severity}[{d.code}] {d.message}", file=sys.stderr)


def _parse_assignments(pairs, source: str) -> dict[str, float]:
    inputs = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"malformed assignment {pair!r} in {source}: expected var=value")
        try:
            inputs[name.strip().lower()] = float(value)
        except ValueError:
            raise UsageError(f"malformed value in {pair!r}: {value!r} is not a number") from None
    return inputs


class UsageError(Exception):
    pass


def cmd_validate(args) -> int:
    try:
        text = _read(args.kb_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        kb = parse_kb(text)
    except KbDocumentError as exc:
        _print_diagnostics(args.kb_path, exc.diagnostics)
        return EXIT_DIAGNOSTICS
    diagnostics = validate(kb)
    _print_diagnostics(args.kb_path, diagnostics)
    if any(d.severity == "error" for d in diagnostics):
        return EXIT_DIAGNOSTICS
    return EXIT_OK


def cmd_fmt(args) -> int:
    try:
        text = _read(args.kb_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        kb = parse_kb(text)
    except KbDocumentError as exc:
        _print_diagnostics(args.kb_path, exc.diagnostics)
        return EXIT_DIAGNOSTICS
    sys.stdout.write(render_kb(kb))
    return EXIT_OK


def cmd_consult(args) -> int:
    try:
        text = _read(args.kb_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        kb = load_document(text)
    except KbDocumentError as exc:
        _print_diagnostics(args.kb_path, exc.diagnostics)
        return EXIT_DIAGNOSTICS

    if args.inputs:
        return _consult_batch(kb, args)

    inputs = _parse_assignments(args.set or [], "--set")
    try:
        result = infer(kb, inputs, args.resolution)
    except FuzzyPlanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTICS
    print(render_report(result, trace=args.trace))
    return EXIT_OK


def _consult_batch(kb, args) -> int:
    try:
        lines = _read(args.inputs).splitlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    failed = False
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            inputs = _parse_assignments([p.strip() for p in line.split(",")], "batch line")
            result = infer(kb, inputs, args.resolution)
        except (UsageError, FuzzyPlanError) as exc:
            print(f"error: {exc}")
            failed = True
            continue
        print(f"output={result.crisp_output:.2f}; {result.recommendation.note}")
    return EXIT_DIAGNOSTICS if failed else EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import CaseStore, create_app
    from .store import KnowledgeBaseStore

    if args.data_dir:
        data_dir = Path(args.data_dir)
    elif args.kb:
        data_dir = Path(args.kb).parent
    else:
        print("error: serve needs --kb and/or --data-dir", file=sys.stderr)
        return EXIT_USAGE

    try:
        if (data_dir / "kb.fkb").exists():
            kb_store = KnowledgeBaseStore(data_dir)
        elif args.kb:
            kb_store = KnowledgeBaseStore.initialize(data_dir, _read(args.kb))
        else:
            print(f"error: no knowledge base at {data_dir / 'kb.fkb'}", file=sys.stderr)
            return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KbDocumentError as exc:
        _print_diagnostics(args.kb or str(data_dir / "kb.fkb"), exc.diagnostics)
        return EXIT_DIAGNOSTICS

    # fail fast on an occupied port instead of letting uvicorn stack-trace
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        print(f"error: cannot listen on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    finally:
        probe.close()

    app = create_app(
        kb_store,
        CaseStore(data_dir),
        default_resolution=args.resolution,
        console_dir=args.console_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyplan", description="Fuzzy rule-based therapy session planner."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a knowledge-base file")
    p.add_argument("kb_path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("consult", help="run a consultation against a knowledge-base file")
    p.add_argument("kb_path")
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--set", action="append", metavar="VAR=VALUE", help="one crisp input (repeatable)"
    )
    group.add_argument("--inputs", metavar="FILE", help="batch file, one consultation per line")
    p.add_argument("--trace", action="store_true", help="print the full inference trace")
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.set_defaults(func=cmd_consult)

    p = sub.add_parser("fmt", help="print the canonical form of a knowledge-base file")
    p.add_argument("kb_path")
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--kb", help="knowledge-base document used to seed the store")
    p.add_argument("--data-dir", help="store directory (default: the --kb file's directory)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--console-dir", help="directory with the built therapist console")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
