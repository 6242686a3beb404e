import pytest
from hypothesis import given, settings, strategies as st

from kgaap.errors import ParseError, RelativeIriError
from kgaap.iso import isomorphic
from kgaap.model import BlankNode, Graph, Iri, Literal, Triple
from kgaap.parser import parse_graph
from kgaap.serializer import serialize_graph

from conftest import load_fixture_graph


def test_empty_input_gives_empty_graph():
    assert len(parse_graph(b"", "ntriples")) == 0
    assert len(parse_graph(b"", "turtle")) == 0
    assert len(parse_graph(b"# only a comment\n", "turtle")) == 0


def test_kg1_schema_has_exactly_three_declarations():
    g = load_fixture_graph("kg1/schema.ttl")
    assert len(g) == 3
    objs = {str(t.object) for t in g.triples}
    assert objs == {
        "http://www.w3.org/2000/01/rdf-schema#Class",
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property",
    }


def test_ntriples_basic():
    doc = (
        '<http://e.org/s> <http://e.org/p> "hi" .\n'
        "# comment\n"
        '<http://e.org/s> <http://e.org/p> "tagged"@en .\n'
        '<http://e.org/s> <http://e.org/p> "1"^^<http://www.w3.org/2001/XMLSchema#integer> .\n'
        "_:a <http://e.org/p> _:b .\n"
    )
    g = parse_graph(doc, "ntriples")
    assert len(g) == 4


def test_ntriples_escapes():
    doc = '<http://e.org/s> <http://e.org/p> "line\\nbreak \\"quoted\\" \\u00e9" .\n'
    g = parse_graph(doc, "ntriples")
    lit = next(iter(g.triples)).object
    assert lit.lexical == 'line\nbreak "quoted" é'


def test_ntriples_syntax_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_graph("<http://e.org/s> <http://e.org/p> oops .\n", "ntriples")
    assert exc.value.line == 1
    assert exc.value.column > 1


def test_turtle_predicate_object_lists():
    g = parse_graph(
        """
        @prefix ex: <http://e.org/> .
        ex:s ex:p ex:o1 , ex:o2 ; ex:q "v" .
        """,
        "turtle",
    )
    assert len(g) == 3


def test_turtle_a_keyword_and_integers_and_booleans():
    g = parse_graph(
        """
        @prefix ex: <http://e.org/> .
        ex:s a ex:Thing ; ex:count 42 ; ex:flag true ; ex:neg -7 .
        """,
        "turtle",
    )
    literals = {t.object.lexical: t.object.datatype.value for t in g.triples if isinstance(t.object, Literal)}
    assert literals["42"].endswith("integer")
    assert literals["true"].endswith("boolean")
    assert literals["-7"].endswith("integer")


def test_turtle_bracketed_blank_nodes():
    g = parse_graph(
        """
        @prefix ex: <http://e.org/> .
        ex:s ex:p [ ex:q ex:o ; ex:r "v" ] .
        [ ex:standalone ex:o ] .
        """,
        "turtle",
    )
    assert len(g) == 4
    blanks = {t.subject.label for t in g.triples if isinstance(t.subject, BlankNode)}
    assert len(blanks) == 2


def test_turtle_collections_rejected():
    with pytest.raises(ParseError) as exc:
        parse_graph(
            "@prefix ex: <http://e.org/> .\nex:s ex:p ( ex:a ex:b ) .",
            "turtle",
        )
    assert "collection" in exc.value.message


def test_turtle_undeclared_prefix_rejected():
    with pytest.raises(ParseError) as exc:
        parse_graph("ex:s ex:p ex:o .", "turtle")
    assert "prefix" in exc.value.message


def test_turtle_relative_iri_without_base_rejected():
    with pytest.raises(RelativeIriError):
        parse_graph("<s> <http://e.org/p> <http://e.org/o> .", "turtle")


def test_turtle_base_resolution():
    g = parse_graph(
        """
        @base <http://e.org/data/> .
        <item1> <http://e.org/p> <#frag> .
        """,
        "turtle",
    )
    t = next(iter(g.triples))
    assert t.subject.value == "http://e.org/data/item1"
    assert t.object.value == "http://e.org/data/#frag"


def test_turtle_language_and_datatype_literals():
    g = parse_graph(
        """
        @prefix ex: <http://e.org/> .
        @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
        ex:s ex:p "plain" , "tagged"@en-GB , "2026-01-01"^^xsd:date .
        """,
        "turtle",
    )
    assert len(g) == 3


def test_blank_labels_fresh_per_parse():
    doc = "_:x <http://e.org/p> _:y .\n"
    g1 = parse_graph(doc, "ntriples")
    g2 = parse_graph(doc, "ntriples")
    labels1 = {t.subject.label for t in g1.triples}
    labels2 = {t.subject.label for t in g2.triples}
    assert labels1.isdisjoint(labels2)
    assert isomorphic(g1, g2)


def test_unknown_directive_rejected():
    with pytest.raises(ParseError):
        parse_graph("@unknown ex: <http://e.org/> .", "turtle")


# -- randomized round trips -------------------------------------------------------

_iris = st.sampled_from([Iri(f"http://t.example/ns#n{i}") for i in range(8)])
_blanks = st.sampled_from([BlankNode(f"b{i}") for i in range(4)])
_texts = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)), min_size=0, max_size=12
)
_literals = st.one_of(
    _texts.map(Literal),
    _texts.map(lambda s: Literal(s, language="en")),
    st.integers(-1000, 1000).map(
        lambda i: Literal(str(i), datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"))
    ),
)
_subjects = st.one_of(_iris, _blanks)
_objects = st.one_of(_iris, _blanks, _literals)
_triples = st.builds(Triple, _subjects, _iris, _objects)
graphs = st.lists(_triples, min_size=0, max_size=40).map(Graph)


@given(graphs)
@settings(max_examples=120, deadline=None)
def test_roundtrip_ntriples(g):
    data = serialize_graph(g, "ntriples")
    again = parse_graph(data, "ntriples")
    assert isomorphic(g, again)
    assert isomorphic(again, parse_graph(serialize_graph(again, "ntriples"), "ntriples"))


@given(graphs)
@settings(max_examples=120, deadline=None)
def test_roundtrip_turtle(g):
    data = serialize_graph(g, "turtle")
    again = parse_graph(data, "turtle")
    assert isomorphic(g, again)


def test_fifty_triple_generated_file():
    triples = [
        Triple(
            Iri(f"http://t.example/s{i % 7}"),
            Iri(f"http://t.example/p{i % 5}"),
            Literal(f"value-{i}"),
        )
        for i in range(50)
    ]
    g = Graph(triples)
    assert len(g) == 50
    data = serialize_graph(g, "ntriples")
    again = parse_graph(data, "ntriples")
    assert len(again) == 50
    assert isomorphic(g, again)
