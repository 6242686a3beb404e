#!/usr/bin/env python3
"""Profile the bundled fixture KGs into a file registry.

Writes one Turtle profile document per KG plus the two mediator descriptors
and an index.json with content digests. KG1 is profiled without the shared
conference ontology (it does not deploy it); KG2 and KG3 are profiled with
it as the derivation reference.
"""

from __future__ import annotations

import argparse
import shutil
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from kgaap.model import Iri, KgDescriptor
from kgaap.parser import parse_graph
from kgaap.profile import emit_profile, utc_clock
from kgaap.registry import write_index
from kgaap.serializer import serialize_graph
from kgaap.tasks import load_catalogue

FIXTURES = REPO / "fixtures"

KGS = [
    ("KG1", False),
    ("KG2", True),
    ("KG3", True),
]


def load(path: Path):
    return parse_graph(path.read_bytes(), "turtle")


def build(out_dir: Path, clock=utc_clock) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    catalogue = load_catalogue(FIXTURES / "tasks.json")
    reference = load(FIXTURES / "reference" / "conference.ttl")
    for name, with_reference in KGS:
        low = name.lower()
        kg = KgDescriptor(
            id=Iri(f"http://example.org/kg/{name}"),
            schema_graph=load(FIXTURES / low / "schema.ttl"),
            data_graph=load(FIXTURES / low / "data.ttl"),
            metadata_graph=load(FIXTURES / low / "metadata.ttl"),
        )
        doc = emit_profile(kg, catalogue, reference if with_reference else None, clock=clock)
        (out_dir / f"{low}.ttl").write_bytes(serialize_graph(doc.graph, "turtle"))
    for mediator in sorted((FIXTURES / "mediators").glob("*.ttl")):
        shutil.copy(mediator, out_dir / mediator.name)
    write_index(out_dir)
    return out_dir


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out", default=str(FIXTURES / "registry"), help="registry directory to create"
    )
    args = parser.parse_args()
    out = build(Path(args.out))
    print(f"registry written to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
