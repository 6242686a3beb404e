import json

import pytest

from kgaap.errors import DigestMismatch, DuplicateKgId
from kgaap.matcher import feasible
from kgaap.model import Iri
from kgaap.parser import parse_graph
from kgaap.profile import emit_profile, load_profile_document
from kgaap.registry import load_registry, write_index
from kgaap.serializer import serialize_graph

from conftest import FIXTURES, make_kg

CLOCK = lambda: "2026-01-01T00:00:00Z"


def test_empty_directory_loads_empty(tmp_path):
    loaded = load_registry(tmp_path)
    assert not loaded.profiles and not loaded.mediators and not loaded.warnings


def test_three_fixture_registry(fixture_registry):
    loaded = load_registry(fixture_registry)
    assert set(loaded.profiles) == {
        Iri("http://example.org/kg/KG1"),
        Iri("http://example.org/kg/KG2"),
        Iri("http://example.org/kg/KG3"),
    }
    assert len(loaded.mediators) == 2
    assert not loaded.warnings


def test_corrupted_file_skipped_with_warning(fixture_registry, tmp_path):
    import shutil

    target = tmp_path / "registry"
    shutil.copytree(fixture_registry, target)
    (target / "kg2.ttl").write_text("@prefix broken <oops", encoding="utf-8")
    write_index(target)  # re-record digests so corruption is a parse error, not a mismatch
    loaded = load_registry(target)
    assert len(loaded.profiles) == 2
    assert len(loaded.warnings) == 1
    assert "kg2.ttl" in loaded.warnings[0]


def test_digest_mismatch_is_fatal(fixture_registry, tmp_path):
    import shutil

    target = tmp_path / "registry"
    shutil.copytree(fixture_registry, target)
    text = (target / "kg1.ttl").read_text(encoding="utf-8")
    (target / "kg1.ttl").write_text(text + "\n# tampered\n", encoding="utf-8")
    with pytest.raises(DigestMismatch):
        load_registry(target)


def test_duplicate_kg_id_rejected(fixture_registry, tmp_path):
    import shutil

    target = tmp_path / "registry"
    shutil.copytree(fixture_registry, target)
    clone = (target / "kg1.ttl").read_bytes()
    (target / "kg1-copy.ttl").write_bytes(clone)
    write_index(target)
    with pytest.raises(DuplicateKgId):
        load_registry(target)


def test_emit_twice_byte_identical(catalogue, reference_graph):
    kg = make_kg("KG3")
    a = serialize_graph(emit_profile(kg, catalogue, reference_graph, clock=CLOCK).graph, "turtle")
    b = serialize_graph(emit_profile(kg, catalogue, reference_graph, clock=CLOCK).graph, "turtle")
    assert a == b


def test_timestamp_is_the_only_nondeterminism(catalogue, reference_graph):
    kg = make_kg("KG3")
    a = serialize_graph(
        emit_profile(kg, catalogue, reference_graph, clock=lambda: "2026-01-01T00:00:00Z").graph,
        "turtle",
    ).decode()
    b = serialize_graph(
        emit_profile(kg, catalogue, reference_graph, clock=lambda: "2027-12-31T23:59:59Z").graph,
        "turtle",
    ).decode()
    diff = [
        (la, lb) for la, lb in zip(a.splitlines(), b.splitlines()) if la != lb
    ]
    assert len(diff) == 1
    assert "generatedAt" in diff[0][0]


def test_profile_document_round_trips_isomorphically(catalogue, reference_graph):
    from kgaap.iso import isomorphic

    kg = make_kg("KG3")
    doc = emit_profile(kg, catalogue, reference_graph, clock=CLOCK)
    for fmt in ("turtle", "ntriples"):
        data = serialize_graph(doc.graph, fmt)
        assert isomorphic(doc.graph, parse_graph(data, fmt))


def test_registry_roundtrip_verdicts_identical(fixture_profiles, fixture_registry, catalogue):
    loaded = load_registry(fixture_registry)
    for task in catalogue:
        for short, (profile, _, _) in fixture_profiles.items():
            fresh = feasible(profile, task)
            stored = feasible(loaded.profiles[profile.kg_id].profile, task)
            assert fresh == stored, f"{short} diverges on {task.id}"


def test_loaded_documents_carry_closure_and_modules(fixture_registry, catalogue):
    loaded = load_registry(fixture_registry)
    kg1 = loaded.profiles[Iri("http://example.org/kg/KG1")]
    assert (Iri("http://example.org/conference#Researcher"),) is not None
    names = {n for n, _ in kg1.closure_members}
    assert Iri("http://example.org/conference#Researcher") in names
    task = catalogue.get("http://example.org/tasks#emerging-voices")
    assert Iri("http://example.org/conference#authorOf") in kg1.module_names[task.id]


def test_index_file_contents(fixture_registry):
    index = json.loads((fixture_registry / "index.json").read_text())
    assert set(index["digests"]) == {
        "kg1.ttl",
        "kg2.ttl",
        "kg3.ttl",
        "conference_alignment.ttl",
        "statute_bridge.ttl",
    }
    for digest in index["digests"].values():
        assert digest.startswith("sha256:")
