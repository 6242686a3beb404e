"""Deterministic serializers for N-Triples and the Turtle subset.

Output is canonical: one sorted triple per line for N-Triples (UTF-8, "\\n"
terminators), and sorted prefix/subject/predicate/object groups for Turtle.
Serializing the same graph twice yields identical bytes.
"""

from __future__ import annotations

from typing import Mapping, Optional

from .model import BlankNode, Graph, Iri, Literal, Term, Triple
from .vocab import RDF_TYPE, STANDARD_PREFIXES
from .parser import _XSD_BOOLEAN, _XSD_INTEGER

_LITERAL_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def _escape_literal(value: str) -> str:
    out = []
    for ch in value:
        if ch in _LITERAL_ESCAPES:
            out.append(_LITERAL_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _nt_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{_escape_literal(term.lexical)}"'
        if term.language:
            return f"{body}@{term.language}"
        if term.datatype.value == "http://www.w3.org/2001/XMLSchema#string":
            return body
        return f"{body}^^<{term.datatype.value}>"
    raise TypeError(f"not a term: {term!r}")


def serialize_graph(g: Graph, format: str = "turtle", prefixes: Optional[Mapping[str, str]] = None) -> bytes:
    if format == "ntriples":
        return serialize_ntriples(g)
    if format == "turtle":
        return serialize_turtle(g, prefixes)
    raise ValueError(f"unsupported format: {format!r}")


def serialize_ntriples(g: Graph) -> bytes:
    lines = sorted(
        f"{_nt_term(t.subject)} {_nt_term(t.predicate)} {_nt_term(t.object)} ." for t in g.triples
    )
    return ("".join(line + "\n" for line in lines)).encode("utf-8")


def canonical_ntriples(g: Graph) -> bytes:
    """N-Triples with blank labels replaced by structural hashes.

    Two parses of the same document (and any two isomorphic graphs whose
    blanks are distinguishable by their neighbourhoods) produce identical
    bytes, so the output is suitable for content digests. Lines are kept as
    a sorted multiset; indistinguishable blanks may repeat a line.
    """
    import hashlib

    sigs: dict[str, str] = {}
    blanks = set()
    for t in g.triples:
        if isinstance(t.subject, BlankNode):
            blanks.add(t.subject.label)
        if isinstance(t.object, BlankNode):
            blanks.add(t.object.label)
    for label in blanks:
        sigs[label] = ""

    def term_sig(term: Term) -> str:
        if isinstance(term, BlankNode):
            return "_:" + sigs[term.label]
        return _nt_term(term)

    for _ in range(3):
        nxt = {}
        for label in blanks:
            parts = []
            for t in g.triples:
                if isinstance(t.subject, BlankNode) and t.subject.label == label:
                    parts.append(f"s {t.predicate.value} {term_sig(t.object)}")
                if isinstance(t.object, BlankNode) and t.object.label == label:
                    parts.append(f"o {t.predicate.value} {term_sig(t.subject)}")
            digest = hashlib.sha256("\n".join(sorted(parts)).encode("utf-8")).hexdigest()
            nxt[label] = digest[:16]
        sigs = nxt

    lines = sorted(
        f"{term_sig(t.subject)} {_nt_term(t.predicate)} {term_sig(t.object)} ." for t in g.triples
    )
    return ("".join(line + "\n" for line in lines)).encode("utf-8")


_PN_SAFE = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")


def _qname(iri: Iri, prefixes: Mapping[str, str]) -> Optional[str]:
    for prefix, ns in prefixes.items():
        if iri.value.startswith(ns):
            local = iri.value[len(ns) :]
            if local and all(c in _PN_SAFE for c in local):
                return f"{prefix}:{local}"
    return None


def _ttl_term(term: Term, prefixes: Mapping[str, str]) -> str:
    if isinstance(term, Iri):
        q = _qname(term, prefixes)
        return q if q else f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        if term.language is None and term.datatype in (_XSD_INTEGER, _XSD_BOOLEAN):
            return term.lexical
        body = f'"{_escape_literal(term.lexical)}"'
        if term.language:
            return f"{body}@{term.language}"
        if term.datatype.value == "http://www.w3.org/2001/XMLSchema#string":
            return body
        dt = _qname(term.datatype, prefixes)
        return f"{body}^^{dt}" if dt else f"{body}^^<{term.datatype.value}>"
    raise TypeError(f"not a term: {term!r}")


def serialize_turtle(g: Graph, prefixes: Optional[Mapping[str, str]] = None) -> bytes:
    """Serialize with subject grouping; only prefixes actually used are declared."""
    table = dict(STANDARD_PREFIXES)
    if prefixes:
        table.update(prefixes)

    by_subject: dict[str, dict] = {}
    for t in g.triples:
        key = _nt_term(t.subject)
        entry = by_subject.setdefault(key, {"subject": t.subject, "po": {}})
        entry["po"].setdefault(t.predicate, []).append(t.object)

    used_ns = set()

    def note_usage(rendered: str):
        if ":" in rendered and not rendered.startswith(("<", '"', "_:")):
            used_ns.add(rendered.split(":", 1)[0])
        if rendered.startswith('"') and "^^" in rendered:
            tail = rendered.rsplit("^^", 1)[1]
            if not tail.startswith("<"):
                used_ns.add(tail.split(":", 1)[0])

    body_chunks = []
    for key in sorted(by_subject):
        entry = by_subject[key]
        subj_txt = _ttl_term(entry["subject"], table)
        note_usage(subj_txt)
        po = entry["po"]

        def pred_key(p: Iri):
            return ("" if p == RDF_TYPE else str(p),)

        lines = []
        for pred in sorted(po, key=pred_key):
            pred_txt = "a" if pred == RDF_TYPE else _ttl_term(pred, table)
            note_usage(pred_txt)
            objs = []
            for obj in sorted(po[pred], key=_nt_term):
                obj_txt = _ttl_term(obj, table)
                note_usage(obj_txt)
                objs.append(obj_txt)
            lines.append(f"{pred_txt} {', '.join(objs)}")
        sep = " ;\n    ".join(lines)
        body_chunks.append(f"{subj_txt} {sep} .\n")

    header = "".join(
        f"@prefix {p}: <{table[p]}> .\n" for p in sorted(used_ns) if p in table
    )
    if header and body_chunks:
        header += "\n"
    return (header + "\n".join(body_chunks)).encode("utf-8")
