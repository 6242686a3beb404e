import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kgaap.errors import CycleWarning, EmptyTaskSignature
from kgaap.expressivity import DlFragment
from kgaap.grounding import (
    GroundingRoute,
    TaskSignature,
    coverage,
    grounding_route,
    resident_signature,
    signature_closure,
)
from kgaap.model import Graph, Iri
from kgaap.parser import parse_graph
from kgaap.signature import NameKind
from kgaap.axioms import schema_axioms

from conftest import conf, expand, load_fixture_graph
from oracles import naive_signature_closure, random_tbox, undirected_reachability_closure

C = NameKind.CONCEPT
R = NameKind.ROLE

WORKED_TASK = TaskSignature(
    [
        (conf("Researcher"), C),
        (conf("Paper"), C),
        (conf("authorOf"), R),
        (conf("Invited_speaker"), C),
        (conf("Conference"), C),
        (conf("givenAt"), R),
    ]
)


def test_kg1_resident_signature(kg1):
    sig = resident_signature(kg1.schema_graph)
    assert sig.concepts() == {conf("Researcher"), conf("Paper")}
    assert sig.roles() == {conf("authorOf")}


def test_empty_schema_resident_signature():
    sig = resident_signature(Graph())
    assert not sig.names


def test_conference_resident_signature_matches_manifest(kg2, manifest):
    expected = manifest["kgs"]["kg:KG2"]
    sig = resident_signature(kg2.schema_graph)
    assert sig.concepts() == {Iri(expand(c)) for c in expected["resident_concepts"]}
    assert sig.roles() == {Iri(expand(r)) for r in expected["resident_roles"]}


def test_kg1_closure_is_base_and_three_names_absent(kg1):
    closure = signature_closure(kg1.schema_graph)
    assert closure.derived == ()
    members = closure.members()
    for name in ("Invited_speaker", "Conference", "givenAt"):
        assert (conf(name), C) not in members
        assert (conf(name), R) not in members


def test_one_step_definition_via_reference():
    schema = parse_graph(
        """
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix ex: <http://e.org/> .
        ex:B a owl:Class .
        """,
        "turtle",
    )
    reference = parse_graph(
        """
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix ex: <http://e.org/> .
        ex:A owl:equivalentClass ex:B .
        """,
        "turtle",
    )
    closure = signature_closure(schema, reference)
    assert len(closure.derived) == 1
    entry = closure.derived[0]
    assert entry.name == Iri("http://e.org/A")
    assert entry.via_reference
    assert not entry.weak
    assert entry.provenance == ("(equivalent <http://e.org/A> <http://e.org/B>)",)


def test_keynote_alias_derived_for_kg2(kg2, reference_graph):
    closure = signature_closure(kg2.schema_graph, reference_graph)
    derived = {e.name: e for e in closure.derived}
    keynote = conf("KeynoteSpeaker")
    assert keynote in derived
    assert derived[keynote].via_reference


def test_chain_membership_both_directions():
    schema = parse_graph(
        """
        @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix ex: <http://e.org/> .
        ex:Mid a owl:Class .
        """,
        "turtle",
    )
    reference = parse_graph(
        """
        @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
        @prefix ex: <http://e.org/> .
        ex:Below rdfs:subClassOf ex:Mid .
        ex:Mid rdfs:subClassOf ex:Above .
        """,
        "turtle",
    )
    closure = signature_closure(schema, reference)
    entries = {e.name: e for e in closure.derived}
    below = Iri("http://e.org/Below")
    above = Iri("http://e.org/Above")
    assert below in entries and above in entries
    # Below hangs under the resident name: its only anchor is a super-name
    assert entries[below].weak
    # Above sits over the resident name: anchored by a sub-name, not weak
    assert not entries[above].weak


def test_closure_is_fixpoint(kg3, reference_graph):
    closure = signature_closure(kg3.schema_graph, reference_graph)
    again = signature_closure(kg3.schema_graph, reference_graph)
    assert closure.members() == again.members()
    assert closure.base.names.isdisjoint(
        {(e.name, e.kind) for e in closure.derived}
    )


def test_derived_provenance_nonempty(kg2, reference_graph):
    closure = signature_closure(kg2.schema_graph, reference_graph)
    for entry in closure.derived:
        assert entry.provenance


def test_provenance_replay_rederives(kg2, reference_graph):
    """Restricting derivation to the recorded axioms still derives the name."""
    closure = signature_closure(kg2.schema_graph, reference_graph)
    all_axioms = schema_axioms(kg2.schema_graph) + schema_axioms(
        reference_graph, origin="reference"
    )
    by_description = {}
    for ax in all_axioms:
        by_description.setdefault(ax.description, set()).update(ax.triples)
    for entry in closure.derived:
        kept = set()
        for step in entry.provenance:
            assert step in by_description, f"unknown provenance step {step}"
            kept |= by_description[step]
        replay = signature_closure(kg2.schema_graph, Graph(kept))
        assert (entry.name, entry.kind) in replay.members()


def test_definitional_cycle_warns_and_derives_nothing():
    schema = parse_graph(
        """
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix ex: <http://e.org/> .
        ex:Base a owl:Class .
        """,
        "turtle",
    )
    reference = parse_graph(
        """
        @prefix owl: <http://www.w3.org/2002/07/owl#> .
        @prefix ex: <http://e.org/> .
        ex:P owl:equivalentClass ex:Q .
        ex:Q owl:equivalentClass ex:P .
        """,
        "turtle",
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        closure = signature_closure(schema, reference)
    assert any(isinstance(w.message, CycleWarning) for w in caught)
    names = {n for n, _ in closure.members()}
    assert Iri("http://e.org/P") not in names
    assert Iri("http://e.org/Q") not in names


# -- coverage ----------------------------------------------------------------------


def test_worked_example_kg1_half(kg1):
    closure = signature_closure(kg1.schema_graph)
    result = coverage(WORKED_TASK, closure)
    assert result.score == Fraction(1, 2)
    assert result.gap == {conf("Invited_speaker"), conf("Conference"), conf("givenAt")}
    assert result.covered == {conf("Researcher"), conf("Paper"), conf("authorOf")}


def test_subset_of_base_scores_one(kg2, reference_graph):
    closure = signature_closure(kg2.schema_graph, reference_graph)
    task = TaskSignature([(conf("Person"), C), (conf("authorOf"), R)])
    result = coverage(task, closure)
    assert result.score == 1
    assert not result.gap


def test_disjoint_signature_scores_zero(kg1):
    closure = signature_closure(kg1.schema_graph)
    task = TaskSignature([(Iri("http://elsewhere.example/X"), C)])
    result = coverage(task, closure)
    assert result.score == 0
    assert result.gap == {Iri("http://elsewhere.example/X")}


def test_empty_task_rejected(kg1):
    with pytest.raises(EmptyTaskSignature):
        coverage(TaskSignature([]), signature_closure(kg1.schema_graph))


def test_kind_mismatch_reported_distinctly(kg1):
    closure = signature_closure(kg1.schema_graph)
    task = TaskSignature([(conf("authorOf"), C), (conf("Researcher"), C)])
    result = coverage(task, closure)
    assert result.score == Fraction(1, 2)
    assert result.kind_mismatches == {conf("authorOf")}
    assert conf("authorOf") in result.gap


def test_agent_relativity(kg1, catalogue):
    """The same KG scores 1 for one catalogue task and 0 for another."""
    closure = signature_closure(kg1.schema_graph)
    lookup = catalogue.get("http://example.org/tasks#recent-author-lookup")
    speakers = catalogue.get("http://example.org/tasks#list-invited-speakers")
    assert coverage(lookup.signature, closure).score == 1
    assert coverage(speakers.signature, closure).score == 0


def test_score_one_iff_empty_gap(kg2, reference_graph):
    closure = signature_closure(kg2.schema_graph, reference_graph)
    result = coverage(WORKED_TASK, closure)
    assert (result.score == 1) == (not result.gap)
    assert result.score == 1


# -- routes ------------------------------------------------------------------------


def test_route_examples(kg1, kg3):
    assert grounding_route(kg1.schema_graph)[0] is GroundingRoute.RDFS_REACHABILITY
    assert grounding_route(kg3.schema_graph)[0] is GroundingRoute.DEFINITION_PATTERNS


def test_unsupported_route_fixture():
    schema = load_fixture_graph("beth/schema.ttl")
    reference = load_fixture_graph("beth/reference.ttl")
    route, diagnostic = grounding_route(schema)
    assert route is GroundingRoute.UNSUPPORTED
    assert "interpolation" in diagnostic or "rewriting" in diagnostic
    closure = signature_closure(schema, reference)
    star = Iri("http://example.org/review#Star")
    result = coverage(TaskSignature([(star, C)]), closure)
    assert result.score == 0  # a sound lower bound; the docs prove Star definable


# -- oracle equivalence and monotonicity --------------------------------------------


def test_closure_matches_naive_oracle_on_fixtures(kg1, kg2, kg3, reference_graph):
    for schema, ref in (
        (kg1.schema_graph, None),
        (kg2.schema_graph, reference_graph),
        (kg3.schema_graph, reference_graph),
    ):
        assert signature_closure(schema, ref).members() == naive_signature_closure(schema, ref)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_closure_matches_naive_oracle_random(seed):
    rng = random.Random(seed)
    schema, reference = random_tbox(rng)
    assert signature_closure(schema, reference).members() == naive_signature_closure(
        schema, reference
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_rdfs_route_equals_plain_reachability(seed):
    """Chains-only schemas: the closure is the base's undirected chain component."""
    rng = random.Random(seed)
    schema, reference = random_tbox(rng)

    def strip_equivalences(g):
        from kgaap import vocab as V

        keep = [
            t
            for t in g.triples
            if t.predicate
            not in (
                V.OWL_EQUIVALENT_CLASS,
                V.OWL_EQUIVALENT_PROPERTY,
                V.OWL_ON_PROPERTY,
                V.OWL_SOME_VALUES_FROM,
            )
            and t.object != V.OWL_RESTRICTION
        ]
        return Graph(keep)

    schema = strip_equivalences(schema)
    reference = strip_equivalences(reference)
    assert signature_closure(schema, reference).members() == undirected_reachability_closure(
        schema, reference
    )


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_closure_monotone_under_axiom_addition(seed):
    rng = random.Random(seed)
    schema, reference = random_tbox(rng)
    before = signature_closure(schema, reference).members()
    extra_schema, _ = random_tbox(random.Random(seed + 1), max_axioms=5)
    grown = schema.with_triples(extra_schema.triples)
    after = signature_closure(grown, reference).members()
    assert before <= after
