import json
from pathlib import Path

import jsonschema
import pytest

from kgaap.cli import main
from kgaap.parser import parse_graph

from conftest import FIXTURES, REPO

TASKS = str(FIXTURES / "tasks.json")
T1 = "http://example.org/tasks#emerging-voices"
SCHEMA = json.loads(
    (REPO / "src" / "kgaap" / "data" / "report.schema.json").read_text()
)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    report = json.loads(out) if out.strip() and out.lstrip().startswith("{") else None
    if report is not None:
        jsonschema.validate(report, SCHEMA)
    return code, report


def test_profile_subcommand(tmp_path, capsys):
    out = tmp_path / "kg1-profile.ttl"
    code, report = run(
        capsys,
        [
            "profile",
            "--schema", str(FIXTURES / "kg1" / "schema.ttl"),
            "--data", str(FIXTURES / "kg1" / "data.ttl"),
            "--metadata", str(FIXTURES / "kg1" / "metadata.ttl"),
            "--tasks", TASKS,
            "--kg-id", "http://example.org/kg/KG1",
            "--out", str(out),
        ],
    )
    assert code == 0
    assert report["profile"]["expressivity"]["fragment"] == "RDFS"
    assert report["profile"]["discoverability"]["band"] == "low"
    g = parse_graph(out.read_bytes(), "turtle")
    assert len(g) > 0


def test_match_selects_kg3(fixture_registry, capsys):
    code, report = run(
        capsys,
        ["match", "--registry", str(fixture_registry), "--task", T1, "--tasks", TASKS],
    )
    assert code == 0
    kgs = [v["kg"] for v in report["verdicts"]]
    assert kgs == [
        "http://example.org/kg/KG3",
        "http://example.org/kg/KG1",
        "http://example.org/kg/KG2",
    ]
    assert report["verdicts"][0]["feasible"] is True
    assert report["verdicts"][1]["remedy"] == "VocabularyMediation"
    assert report["verdicts"][2]["remedy"] == "KgReselection"


def test_match_explain_includes_provenance(fixture_registry, capsys):
    code, report = run(
        capsys,
        [
            "match",
            "--registry", str(fixture_registry),
            "--task", T1,
            "--tasks", TASKS,
            "--explain",
        ],
    )
    assert code == 0
    top = report["verdicts"][0]
    names = top["explanation"]["names"]
    assert names["http://example.org/conference#Invited_speaker"]["status"] == "resident"
    kg1 = next(v for v in report["verdicts"] if v["kg"].endswith("KG1"))
    assert kg1["explanation"]["names"]["http://example.org/conference#Conference"]["status"] == "gap"


def test_diagnose_exit_codes(fixture_registry, capsys):
    code, report = run(
        capsys,
        [
            "diagnose",
            "--registry", str(fixture_registry),
            "--kg", "http://example.org/kg/KG1",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 2
    assert report["verdicts"][0]["remedy"] == "VocabularyMediation"

    code, report = run(
        capsys,
        [
            "diagnose",
            "--registry", str(fixture_registry),
            "--kg", "http://example.org/kg/KG2",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 3
    assert report["verdicts"][0]["remedy"] == "KgReselection"

    code, report = run(
        capsys,
        [
            "diagnose",
            "--registry", str(fixture_registry),
            "--kg", "http://example.org/kg/KG3",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 0
    assert report["verdicts"][0]["feasible"] is True


def test_diagnose_expressivity_failure_exit_code(tmp_path, capsys):
    """A declared regime above the schema fragment plus a coverage-complete task."""
    from kgaap.model import Iri, KgDescriptor
    from kgaap.profile import emit_profile
    from kgaap.registry import write_index
    from kgaap.serializer import serialize_graph
    from kgaap.tasks import load_catalogue

    metadata = parse_graph(
        """
        @prefix sd: <http://www.w3.org/ns/sparql-service-description#> .
        @prefix ex: <http://e.org/> .
        ex:endpoint sd:defaultEntailmentRegime <http://www.w3.org/ns/entailment/OWL-Direct> .
        """,
        "turtle",
    )
    schema = parse_graph((FIXTURES / "kg1" / "schema.ttl").read_bytes(), "turtle")
    kg = KgDescriptor(
        id=Iri("http://e.org/kg-conflicted"), schema_graph=schema, metadata_graph=metadata
    )
    catalogue = load_catalogue(TASKS)
    doc = emit_profile(kg, catalogue, clock=lambda: "2026-01-01T00:00:00Z")
    registry = tmp_path / "registry"
    registry.mkdir()
    (registry / "kg.ttl").write_bytes(serialize_graph(doc.graph, "turtle"))
    write_index(registry)

    # the task fails on grounding and trust too, but the recorded regime
    # conflict wins the attribution precedence
    code, report = run(
        capsys,
        [
            "diagnose",
            "--registry", str(registry),
            "--kg", "http://e.org/kg-conflicted",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 4
    assert report["verdicts"][0]["failure_dimension"] == "E"
    assert report["verdicts"][0]["remedy"] == "ContentOrSchemaRepair"
    assert set(report["verdicts"][0]["detail"]["secondary"]) == {"G", "R"}


def test_compose_open_and_closed(fixture_registry, capsys):
    code, report = run(
        capsys,
        [
            "compose",
            "--registry", str(fixture_registry),
            "--kgs", "http://example.org/kg/KG1",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    # the registry carries the alignment mediator, so KG1's gap closes
    assert code == 0
    assert report["plan"]["verdict"] == "Closed"
    assert report["plan"]["candidate_mediators"] != {}

    code, report = run(
        capsys,
        [
            "compose",
            "--registry", str(fixture_registry),
            "--kgs", "http://example.org/kg/KG1,http://example.org/kg/KG2",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 0
    assert report["plan"]["verdict"] == "Closed"
    assert report["plan"]["residual_gap"] == []


def test_compose_open_gap_without_mediators(fixture_registry, tmp_path, capsys):
    import shutil

    registry = tmp_path / "registry"
    registry.mkdir()
    shutil.copy(fixture_registry / "kg1.ttl", registry / "kg1.ttl")
    from kgaap.registry import write_index

    write_index(registry)
    code, report = run(
        capsys,
        [
            "compose",
            "--registry", str(registry),
            "--kgs", "http://example.org/kg/KG1",
            "--task", T1,
            "--tasks", TASKS,
        ],
    )
    assert code == 2
    assert report["plan"]["verdict"] == "OpenGap"
    assert len(report["plan"]["residual_gap"]) == 3


def test_usage_error_exit_64(capsys):
    assert main(["match", "--task", T1, "--tasks", TASKS]) == 64
    assert main(["unknown-subcommand"]) == 64


def test_input_error_exit_65(fixture_registry, capsys):
    code = main(
        ["match", "--registry", str(fixture_registry), "--task", "http://example.org/tasks#nope", "--tasks", TASKS]
    )
    assert code == 65
    code = main(
        ["diagnose", "--registry", str(fixture_registry), "--kg", "http://e.org/ghost", "--task", T1, "--tasks", TASKS]
    )
    assert code == 65
    code = main(
        ["match", "--registry", "/nonexistent/dir", "--task", T1, "--tasks", TASKS]
    )
    assert code == 65


def test_registry_env_var(fixture_registry, capsys, monkeypatch):
    monkeypatch.setenv("KGAAP_REGISTRY", str(fixture_registry))
    code, report = run(capsys, ["match", "--task", T1, "--tasks", TASKS])
    assert code == 0
    assert len(report["verdicts"]) == 3


def test_vocab_subcommand(tmp_path, capsys):
    out = tmp_path / "vocab.ttl"
    assert main(["vocab", "--out", str(out)]) == 0
    g = parse_graph(out.read_bytes(), "turtle")
    assert len(g) > 20
    assert main(["vocab"]) == 0
    printed = capsys.readouterr().out
    assert "aap" in printed
