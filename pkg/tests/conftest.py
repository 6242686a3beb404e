import json
import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "scripts"))

from kgaap.model import Iri, KgDescriptor
from kgaap.parser import parse_graph
from kgaap.tasks import load_catalogue

FIXTURES = REPO / "fixtures"

CONF = "http://example.org/conference#"
KGNS = "http://example.org/kg/"
TASKS = "http://example.org/tasks#"


def conf(local: str) -> Iri:
    return Iri(CONF + local)


def expand(curie: str) -> str:
    prefix, local = curie.split(":", 1)
    return {"conf": CONF, "kg": KGNS, "tasks": TASKS, "med": "http://example.org/mediators#"}[
        prefix
    ] + local


def load_fixture_graph(relpath: str):
    return parse_graph((FIXTURES / relpath).read_bytes(), "turtle")


@pytest.fixture(scope="session")
def manifest():
    return json.loads((FIXTURES / "manifest.json").read_text())


@pytest.fixture(scope="session")
def catalogue():
    return load_catalogue(FIXTURES / "tasks.json")


@pytest.fixture(scope="session")
def reference_graph():
    return load_fixture_graph("reference/conference.ttl")


def make_kg(name: str) -> KgDescriptor:
    low = name.lower()
    return KgDescriptor(
        id=Iri(KGNS + name),
        schema_graph=load_fixture_graph(f"{low}/schema.ttl"),
        data_graph=load_fixture_graph(f"{low}/data.ttl"),
        metadata_graph=load_fixture_graph(f"{low}/metadata.ttl"),
    )


@pytest.fixture(scope="session")
def kg1():
    return make_kg("KG1")


@pytest.fixture(scope="session")
def kg2():
    return make_kg("KG2")


@pytest.fixture(scope="session")
def kg3():
    return make_kg("KG3")


@pytest.fixture(scope="session")
def fixture_profiles(catalogue, reference_graph, kg1, kg2, kg3):
    """Profiles of the three fixture KGs keyed by short name; KG1 has no reference."""
    from kgaap.profile import build_profile

    out = {}
    for kg, ref in ((kg1, None), (kg2, reference_graph), (kg3, reference_graph)):
        out[str(kg.id).rsplit("/", 1)[-1]] = build_profile(kg, catalogue, ref)
    return out


@pytest.fixture(scope="session")
def fixture_registry(tmp_path_factory):
    """A built registry directory for CLI-level tests."""
    from build_registry import build

    out = tmp_path_factory.mktemp("registry")
    fixed_clock = lambda: "2026-01-01T00:00:00Z"
    return build(out, clock=fixed_clock)
