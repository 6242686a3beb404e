import pytest
from hypothesis import given, strategies as st

from kgaap.errors import RelativeIriError
from kgaap.model import BlankNode, Graph, Iri, Literal, Triple, RDF_LANG_STRING, XSD_STRING


def test_iri_requires_scheme():
    with pytest.raises(RelativeIriError):
        Iri("foo/bar")
    with pytest.raises(RelativeIriError):
        Iri("#fragment")


def test_iri_rejects_illegal_characters():
    with pytest.raises(RelativeIriError):
        Iri("http://example.org/a b")
    with pytest.raises(RelativeIriError):
        Iri("http://example.org/<x>")


def test_iri_scheme_and_host_lowercased():
    assert Iri("HTTP://Example.ORG/Path").value == "http://example.org/Path"
    assert Iri("URN:uuid:ABC").value == "urn:uuid:ABC"


def test_iri_percent_normalization():
    assert Iri("http://example.org/%7euser").value == "http://example.org/~user"
    assert Iri("http://example.org/%2fx").value == "http://example.org/%2Fx"
    assert Iri("http://example.org/a%20b") == Iri("http://example.org/a%20b")


def test_iri_path_case_preserved():
    assert Iri("http://example.org/CamelCase").value.endswith("CamelCase")


def test_literal_language_implies_lang_string():
    lit = Literal("hello", language="en")
    assert lit.datatype.value == RDF_LANG_STRING


def test_lang_string_without_tag_rejected():
    with pytest.raises(ValueError):
        Literal("hello", datatype=Iri(RDF_LANG_STRING))


def test_language_with_other_datatype_rejected():
    with pytest.raises(ValueError):
        Literal("1", datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"), language="en")


def test_plain_literal_defaults_to_string():
    assert Literal("x").datatype.value == XSD_STRING


def test_triple_positions_enforced():
    s = Iri("http://example.org/s")
    p = Iri("http://example.org/p")
    with pytest.raises(TypeError):
        Triple(Literal("no"), p, s)
    with pytest.raises(TypeError):
        Triple(s, BlankNode("b"), s)
    Triple(BlankNode("b"), p, Literal("fine"))


def test_graph_set_semantics():
    s = Iri("http://example.org/s")
    p = Iri("http://example.org/p")
    t = Triple(s, p, Literal("v"))
    g = Graph([t])
    assert len(g.with_triples([t])) == 1
    assert len(g.with_triples([Triple(s, p, Literal("w"))])) == 2


@given(st.lists(st.integers(min_value=0, max_value=5), min_size=0, max_size=30))
def test_graph_duplicates_never_grow(indices):
    s = Iri("http://example.org/s")
    p = Iri("http://example.org/p")
    pool = [Triple(s, p, Literal(str(i))) for i in range(6)]
    g = Graph(pool[i] for i in indices)
    assert len(g) == len({pool[i] for i in indices})


def test_graph_match_wildcards():
    s = Iri("http://example.org/s")
    p = Iri("http://example.org/p")
    q = Iri("http://example.org/q")
    g = Graph([Triple(s, p, q), Triple(q, p, s)])
    assert len(list(g.match(s, None, None))) == 1
    assert len(list(g.match(None, p, None))) == 2
    assert g.value(s, p) == q
