"""Command-line surface: profile, match, diagnose, compose, vocab.

Exit codes are part of the contract so callers can branch on the remedy
without parsing the report: 0 success/feasible, 2 grounding failure,
3 trust failure, 4 expressivity failure, 64 usage error, 65 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .errors import KgaapError, ParseError, RelativeIriError
from .matcher import (
    DEFAULT_CONFORMANCE_FLOOR,
    FailureDimension,
    compose,
    feasible,
    rank,
)
from .model import Iri, KgDescriptor
from .parser import parse_graph
from .profile import compose_entry_from_document, emit_profile, utc_clock
from .registry import load_registry
from .report import (
    dimensions_json,
    explanation_json,
    plan_json,
    report_json,
    verdict_json,
)
from .serializer import serialize_graph
from .tasks import load_catalogue
from .vocab import vocabulary_graph

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_INPUT = 65
FAILURE_EXIT = {FailureDimension.G: 2, FailureDimension.R: 3, FailureDimension.E: 4}

REGISTRY_ENV = "KGAAP_REGISTRY"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _load_graph(path: str, format: str):
    try:
        return parse_graph(Path(path).read_bytes(), format)
    except FileNotFoundError as exc:
        raise KgaapError(f"cannot read {path}: {exc}") from exc


def _registry_dir(args) -> Path:
    if args.registry:
        return Path(args.registry)
    env = os.environ.get(REGISTRY_ENV)
    if env:
        return Path(env)
    raise _UsageError(f"--registry is required (or set {REGISTRY_ENV})")


def _print(report: dict, stream=None):
    json.dump(report, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def build_parser() -> _Parser:
    parser = _Parser(prog="kgaap", description="Affordance profiling and matching for knowledge graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="compute a profile document for one KG")
    p.add_argument("--schema", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--metadata", required=True)
    p.add_argument("--reference", default=None, help="shared reference ontology usable for derivation")
    p.add_argument("--tasks", required=True, help="task catalogue JSON file")
    p.add_argument("--kg-id", required=True, help="IRI identifying the knowledge graph")
    p.add_argument("--out", required=True, help="where to write the Turtle profile document")
    p.add_argument("--format", default="turtle", choices=["turtle", "ntriples"], help="input graph format")

    m = sub.add_parser("match", help="rank every registry KG against one task")
    m.add_argument("--registry", default=None)
    m.add_argument("--task", required=True, help="task id from the catalogue")
    m.add_argument("--tasks", required=True)
    m.add_argument("--explain", action="store_true", help="include derivation provenance per name")

    d = sub.add_parser("diagnose", help="verdict, failure dimension and remedy for one KG and task")
    d.add_argument("--registry", default=None)
    d.add_argument("--kg", required=True)
    d.add_argument("--task", required=True)
    d.add_argument("--tasks", required=True)

    c = sub.add_parser("compose", help="check a task against the union of several KGs' closures")
    c.add_argument("--registry", default=None)
    c.add_argument("--kgs", required=True, help="comma-separated KG ids")
    c.add_argument("--task", required=True)
    c.add_argument("--tasks", required=True)

    v = sub.add_parser("vocab", help="print the AAP vocabulary as Turtle")
    v.add_argument("--out", default=None)

    return parser


def _cmd_profile(args) -> int:
    schema = _load_graph(args.schema, args.format)
    data = _load_graph(args.data, args.format)
    metadata = _load_graph(args.metadata, args.format)
    reference = _load_graph(args.reference, args.format) if args.reference else None
    catalogue = load_catalogue(args.tasks)
    kg = KgDescriptor(
        id=Iri(args.kg_id),
        schema_graph=schema,
        data_graph=data,
        metadata_graph=metadata,
    )
    doc = emit_profile(kg, catalogue, reference, clock=utc_clock)
    Path(args.out).write_bytes(serialize_graph(doc.graph, "turtle"))
    report = report_json(verdicts=[], profile=dimensions_json(doc.profile))
    _print(report)
    return EXIT_OK


def _cmd_match(args) -> int:
    registry = load_registry(_registry_dir(args))
    catalogue = load_catalogue(args.tasks)
    task = catalogue.get(args.task)
    docs = sorted(registry.profiles.values(), key=lambda d: str(d.profile.kg_id))
    profiles = [d.profile for d in docs]
    verdicts = rank(profiles, task)
    by_id = {d.profile.kg_id: d for d in docs}
    rendered = []
    for v in verdicts:
        doc = by_id[v.kg_id]
        explain = explanation_json(doc, task.id) if args.explain else None
        rendered.append(verdict_json(v, doc.profile, explain))
    report = report_json(rendered, task=str(task.id), warnings=list(registry.warnings))
    _print(report)
    if not verdicts:
        return EXIT_OK
    top = verdicts[0]
    if top.feasible:
        return EXIT_OK
    return FAILURE_EXIT[top.failure_dimension]


def _cmd_diagnose(args) -> int:
    registry = load_registry(_registry_dir(args))
    catalogue = load_catalogue(args.tasks)
    task = catalogue.get(args.task)
    kg_id = Iri(args.kg)
    doc = registry.profiles.get(kg_id)
    if doc is None:
        raise KgaapError(f"no profile for {kg_id} in registry")
    verdict = feasible(doc.profile, task)
    report = report_json(
        [verdict_json(verdict, doc.profile, explanation_json(doc, task.id))],
        task=str(task.id),
        warnings=list(registry.warnings),
    )
    _print(report)
    if verdict.feasible:
        return EXIT_OK
    return FAILURE_EXIT[verdict.failure_dimension]


def _cmd_compose(args) -> int:
    registry = load_registry(_registry_dir(args))
    catalogue = load_catalogue(args.tasks)
    task = catalogue.get(args.task)
    entries = []
    for raw in args.kgs.split(","):
        kg_id = Iri(raw.strip())
        doc = registry.profiles.get(kg_id)
        if doc is None:
            raise KgaapError(f"no profile for {kg_id} in registry")
        entries.append(compose_entry_from_document(doc, task.id))
    plan = compose(entries, task, registry.mediators.values())
    report = report_json(
        [], task=str(task.id), plan=plan_json(plan), warnings=list(registry.warnings)
    )
    _print(report)
    from .matcher import CompositionVerdict

    return EXIT_OK if plan.verdict is CompositionVerdict.CLOSED else FAILURE_EXIT[FailureDimension.G]


def _cmd_vocab(args) -> int:
    payload = serialize_graph(vocabulary_graph(), "turtle")
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "profile": _cmd_profile,
        "match": _cmd_match,
        "diagnose": _cmd_diagnose,
        "compose": _cmd_compose,
        "vocab": _cmd_vocab,
    }
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KgaapError, ParseError, RelativeIriError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
