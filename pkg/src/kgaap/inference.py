"""RDFS closure helpers: subclass/subproperty reachability and type materialization."""

from __future__ import annotations

from typing import Iterable, Mapping

from .model import BlankNode, Graph, Iri, Literal, Term, Triple
from . import vocab as V


def named_pairs(graphs: Iterable[Graph], predicate: Iri) -> set[tuple[Iri, Iri]]:
    """(subject, object) pairs of the predicate where both sides are named non-builtins."""
    pairs = set()
    for g in graphs:
        for t in g.match(None, predicate):
            if (
                isinstance(t.subject, Iri)
                and isinstance(t.object, Iri)
                and not V.is_builtin(t.subject)
                and not V.is_builtin(t.object)
            ):
                pairs.add((t.subject, t.object))
    return pairs


def transitive_reflexive_closure(pairs: set[tuple[Iri, Iri]], seeds: Iterable[Iri]) -> dict[Iri, set[Iri]]:
    """Map each seed to everything reachable over the pairs, including itself."""
    succ: dict[Iri, set[Iri]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    out: dict[Iri, set[Iri]] = {}
    for seed in seeds:
        reached = {seed}
        frontier = [seed]
        while frontier:
            node = frontier.pop()
            for nxt in succ.get(node, ()):
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        out[seed] = reached
    return out


def superclasses(schema: Graph, reference: Graph | None = None) -> dict[Iri, set[Iri]]:
    graphs = [schema] if reference is None else [schema, reference]
    pairs = named_pairs(graphs, V.RDFS_SUBCLASSOF)
    nodes = {a for a, _ in pairs} | {b for _, b in pairs}
    return transitive_reflexive_closure(pairs, nodes)


def superproperties(schema: Graph, reference: Graph | None = None) -> dict[Iri, set[Iri]]:
    graphs = [schema] if reference is None else [schema, reference]
    pairs = named_pairs(graphs, V.RDFS_SUBPROPERTYOF)
    nodes = {a for a, _ in pairs} | {b for _, b in pairs}
    return transitive_reflexive_closure(pairs, nodes)


def materialized_types(schema: Graph, data: Graph) -> dict[Term, set[Iri]]:
    """Types of each data node under the standard RDFS rules.

    Applies subproperty lifting to property assertions, then domain/range
    typing, then upward subclass closure. Literals are never typed.
    """
    sub_class = named_pairs([schema], V.RDFS_SUBCLASSOF)
    sub_prop = named_pairs([schema], V.RDFS_SUBPROPERTYOF)

    domains: dict[Iri, set[Iri]] = {}
    ranges: dict[Iri, set[Iri]] = {}
    for t in schema.match(None, V.RDFS_DOMAIN):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            domains.setdefault(t.subject, set()).add(t.object)
    for t in schema.match(None, V.RDFS_RANGE):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            ranges.setdefault(t.subject, set()).add(t.object)

    types: dict[Term, set[Iri]] = {}

    def add_type(node: Term, cls: Iri):
        if isinstance(node, Literal):
            return
        types.setdefault(node, set()).add(cls)

    prop_names = {p for p, _ in sub_prop} | {p for _, p in sub_prop}
    prop_supers = transitive_reflexive_closure(sub_prop, prop_names)

    for t in data.triples:
        if t.predicate == V.RDF_TYPE:
            if isinstance(t.object, Iri):
                add_type(t.subject, t.object)
            continue
        lifted = prop_supers.get(t.predicate, {t.predicate})
        for p in lifted:
            for cls in domains.get(p, ()):
                add_type(t.subject, cls)
            for cls in ranges.get(p, ()):
                if not isinstance(t.object, Literal):
                    add_type(t.object, cls)

    class_names = {c for c, _ in sub_class} | {c for _, c in sub_class}
    class_supers = transitive_reflexive_closure(sub_class, class_names)
    for node, assigned in types.items():
        closed = set(assigned)
        for cls in assigned:
            closed |= class_supers.get(cls, {cls})
        types[node] = closed
    return types


def rdfs_expand(g: Graph) -> Graph:
    """Materialize the RDFS subclass/subproperty/domain/range rules into a new graph."""
    extra: set[Triple] = set()
    sub_prop = named_pairs([g], V.RDFS_SUBPROPERTYOF)
    prop_names = {p for p, _ in sub_prop} | {p for _, p in sub_prop}
    prop_supers = transitive_reflexive_closure(sub_prop, prop_names)
    for t in g.triples:
        for p in prop_supers.get(t.predicate, ()):
            if p != t.predicate:
                extra.add(Triple(t.subject, p, t.object))
    expanded = g.with_triples(extra)

    types = materialized_types(expanded, expanded)
    type_triples = set()
    for node, classes in types.items():
        for cls in classes:
            type_triples.add(Triple(node, V.RDF_TYPE, cls))
    return expanded.with_triples(type_triples)
