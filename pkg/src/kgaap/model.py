"""Immutable RDF data model: IRIs, terms, triples, graphs and KG descriptors.

Graphs are plain frozensets of triples behind a thin wrapper; everything
downstream treats them as read-only values, so sharing across threads is safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import RelativeIriError

_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*$")
_AUTHORITY_RE = re.compile(r"^([A-Za-z][A-Za-z0-9+.-]*)://([^/?#]*)(.*)$", re.DOTALL)
_BAD_IRI_CHARS = set(' <>"{}|^`\\') | {chr(c) for c in range(0x21)}
_UNRESERVED = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~")

RDF_LANG_STRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"
XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"


def _normalize_percent_encoding(value: str) -> str:
    """Uppercase percent-escape hex digits and decode escaped unreserved chars."""
    out = []
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch == "%" and i + 2 < n + 1 and i + 3 <= n:
            hexpart = value[i + 1 : i + 3]
            if len(hexpart) == 2 and all(c in "0123456789abcdefABCDEF" for c in hexpart):
                code = int(hexpart, 16)
                decoded = chr(code)
                if decoded in _UNRESERVED:
                    out.append(decoded)
                else:
                    out.append("%" + hexpart.upper())
                i += 3
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _normalize_iri(value: str) -> str:
    m = _AUTHORITY_RE.match(value)
    if m:
        scheme, authority, rest = m.groups()
        host = authority
        userinfo = ""
        if "@" in authority:
            userinfo, host = authority.rsplit("@", 1)
            userinfo += "@"
        port = ""
        if ":" in host:
            host, port = host.split(":", 1)
            port = ":" + port
        value = f"{scheme.lower()}://{userinfo}{host.lower()}{port}{rest}"
    else:
        scheme, sep, rest = value.partition(":")
        value = scheme.lower() + sep + rest
    return _normalize_percent_encoding(value)


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI, normalized for exact-string comparison.

    Normalization lowercases the scheme and host and canonicalises percent
    escapes; nothing lexical beyond that, name matching stays exact.
    """

    value: str

    def __init__(self, value: str):
        scheme, sep, _ = value.partition(":")
        if not sep or not _SCHEME_RE.match(scheme):
            raise RelativeIriError(f"not an absolute IRI: {value!r}")
        if any(c in _BAD_IRI_CHARS for c in value):
            raise RelativeIriError(f"illegal character in IRI: {value!r}")
        object.__setattr__(self, "value", _normalize_iri(value))

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __str__(self) -> str:
        return "_:" + self.label


@dataclass(frozen=True)
class Literal:
    """An RDF literal; a language tag implies the language-string datatype."""

    lexical: str
    datatype: Iri = field(default_factory=lambda: Iri(XSD_STRING))
    language: Optional[str] = None

    def __post_init__(self):
        if self.language is not None:
            if self.datatype.value not in (XSD_STRING, RDF_LANG_STRING):
                raise ValueError("language-tagged literal must use the language-string datatype")
            object.__setattr__(self, "datatype", Iri(RDF_LANG_STRING))
        elif self.datatype.value == RDF_LANG_STRING:
            raise ValueError("language-string literal requires a language tag")

    def __str__(self) -> str:
        if self.language:
            return f'"{self.lexical}"@{self.language}'
        if self.datatype.value == XSD_STRING:
            return f'"{self.lexical}"'
        return f'"{self.lexical}"^^<{self.datatype}>'


Term = Union[Iri, BlankNode, Literal]
SubjectTerm = Union[Iri, BlankNode]


@dataclass(frozen=True)
class Triple:
    subject: SubjectTerm
    predicate: Iri
    object: Term

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TypeError(f"triple subject must be an IRI or blank node, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise TypeError(f"triple predicate must be an IRI, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TypeError(f"triple object must be a term, got {type(self.object).__name__}")


def _sort_key(t: Triple):
    return (str(t.subject), str(t.predicate), str(t.object))


@dataclass(frozen=True)
class Graph:
    """A set of triples. Duplicate insertions are absorbed by set semantics."""

    triples: frozenset[Triple] = frozenset()
    label: Optional[Iri] = None

    def __init__(self, triples: Iterable[Triple] = (), label: Optional[Iri] = None):
        object.__setattr__(self, "triples", frozenset(triples))
        object.__setattr__(self, "label", label)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self.triples, key=_sort_key))

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triples

    def with_triples(self, extra: Iterable[Triple]) -> "Graph":
        return Graph(self.triples | frozenset(extra), label=self.label)

    def match(self, subject=None, predicate=None, obj=None) -> Iterator[Triple]:
        """Iterate triples matching the given pattern; None is a wildcard."""
        for t in self.triples:
            if subject is not None and t.subject != subject:
                continue
            if predicate is not None and t.predicate != predicate:
                continue
            if obj is not None and t.object != obj:
                continue
            yield t

    def objects(self, subject=None, predicate=None) -> Iterator[Term]:
        for t in self.match(subject, predicate):
            yield t.object

    def subjects(self, predicate=None, obj=None) -> Iterator[SubjectTerm]:
        for t in self.match(None, predicate, obj):
            yield t.subject

    def value(self, subject, predicate) -> Optional[Term]:
        for t in self.match(subject, predicate):
            return t.object
        return None


EMPTY_GRAPH = Graph()


@dataclass(frozen=True)
class KgDescriptor:
    """A knowledge graph as three independently loadable graphs.

    schema_graph holds the terminology, data_graph the assertions, and
    metadata_graph the published self-description. Any of the three may be
    empty.
    """

    id: Iri
    schema_graph: Graph = EMPTY_GRAPH
    data_graph: Graph = EMPTY_GRAPH
    metadata_graph: Graph = EMPTY_GRAPH
