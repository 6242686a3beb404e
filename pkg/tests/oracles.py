"""Independent oracles and random generators used by the test suite.

The derivation logic here is written from scratch against the plain triple
view so it cannot share a bug with the library's closure machinery: edges
and equivalences are re-read directly from the graphs, and the fixpoint is
the obvious quadratic loop.
"""

from __future__ import annotations

import random

from kgaap.model import BlankNode, Graph, Iri, Triple
from kgaap.signature import NameKind, signature
from kgaap import vocab as V

CONF = "http://example.org/conference#"


# -- naive signature-closure oracle ---------------------------------------------


def _named_edges(graphs, predicate):
    edges = set()
    for g in graphs:
        for t in g.match(None, predicate):
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                if not V.is_builtin(t.subject) and not V.is_builtin(t.object):
                    edges.add((t.subject, t.object))
    return edges


def _equivalence_requirements(graphs):
    """(target, kind, frozenset of required (name, kind)) per named equivalence side."""
    out = []
    for g in graphs:
        for t in g.match(None, V.OWL_EQUIVALENT_CLASS):
            for target, other in ((t.subject, t.object), (t.object, t.subject)):
                if not isinstance(target, Iri) or V.is_builtin(target):
                    continue
                required = _expression_names(g, other)
                if required is None:
                    continue
                required = {
                    (n, k) for n, k in required if (n, k) != (target, NameKind.CONCEPT)
                }
                out.append((target, NameKind.CONCEPT, frozenset(required)))
        for t in g.match(None, V.OWL_EQUIVALENT_PROPERTY):
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                out.append(
                    (t.subject, NameKind.ROLE, frozenset({(t.object, NameKind.ROLE)}))
                )
                out.append(
                    (t.object, NameKind.ROLE, frozenset({(t.subject, NameKind.ROLE)}))
                )
    return out


def _expression_names(g: Graph, node, depth=0):
    """Names of a class expression, walked directly over triples."""
    if isinstance(node, Iri):
        return set() if V.is_builtin(node) else {(node, NameKind.CONCEPT)}
    if not isinstance(node, BlankNode) or depth > 32:
        return set()
    names = set()
    prop = g.value(node, V.OWL_ON_PROPERTY)
    if isinstance(prop, Iri):
        names.add((prop, NameKind.ROLE))
        for pred in (V.OWL_SOME_VALUES_FROM, V.OWL_ALL_VALUES_FROM):
            filler = g.value(node, pred)
            if filler is not None:
                names |= _expression_names(g, filler, depth + 1)
        return names
    comp = g.value(node, V.OWL_COMPLEMENT_OF)
    if comp is not None:
        return _expression_names(g, comp, depth + 1)
    for pred in (V.OWL_INTERSECTION_OF, V.OWL_UNION_OF):
        head = g.value(node, pred)
        seen = set()
        while head is not None and head != V.RDF_NIL and head not in seen:
            seen.add(head)
            member = g.value(head, V.RDF_FIRST)
            if member is not None:
                names |= _expression_names(g, member, depth + 1)
            head = g.value(head, V.RDF_REST)
        if seen:
            return names
    return names


def naive_signature_closure(schema: Graph, reference: Graph | None = None):
    """Brute-force fixpoint over the two derivation rules; returns (name, kind) set."""
    graphs = [schema] if reference is None else [schema, reference]
    closed = set()
    for n in signature(schema, "concepts"):
        closed.add((n, NameKind.CONCEPT))
    for n in signature(schema, "roles"):
        closed.add((n, NameKind.ROLE))

    class_edges = _named_edges(graphs, V.RDFS_SUBCLASSOF)
    prop_edges = _named_edges(graphs, V.RDFS_SUBPROPERTYOF)
    equivs = _equivalence_requirements(graphs)

    candidates = set()
    for a, b in class_edges:
        candidates.add((a, NameKind.CONCEPT))
        candidates.add((b, NameKind.CONCEPT))
    for a, b in prop_edges:
        candidates.add((a, NameKind.ROLE))
        candidates.add((b, NameKind.ROLE))
    for target, kind, required in equivs:
        candidates.add((target, kind))
        candidates |= required

    def chain_connected(name, kind):
        edges = class_edges if kind is NameKind.CONCEPT else prop_edges
        for direction in (edges, {(b, a) for a, b in edges}):
            reached = {name}
            frontier = [name]
            while frontier:
                node = frontier.pop()
                for a, b in direction:
                    if a == node and b not in reached:
                        if (b, kind) in closed:
                            return True
                        reached.add(b)
                        frontier.append(b)
        return False

    changed = True
    while changed:
        changed = False
        for name, kind in sorted(candidates - closed, key=lambda e: (str(e[0]), e[1].value)):
            hit = chain_connected(name, kind)
            if not hit:
                for target, tkind, required in equivs:
                    if target == name and tkind is kind and required <= closed:
                        hit = True
                        break
            if hit:
                closed.add((name, kind))
                changed = True
    return closed


def undirected_reachability_closure(schema: Graph, reference: Graph | None = None):
    """Base plus everything in the base's undirected chain component, per kind."""
    graphs = [schema] if reference is None else [schema, reference]
    closed = set()
    for n in signature(schema, "concepts"):
        closed.add((n, NameKind.CONCEPT))
    for n in signature(schema, "roles"):
        closed.add((n, NameKind.ROLE))
    for kind, predicate in ((NameKind.CONCEPT, V.RDFS_SUBCLASSOF), (NameKind.ROLE, V.RDFS_SUBPROPERTYOF)):
        edges = _named_edges(graphs, predicate)
        undirected = edges | {(b, a) for a, b in edges}
        frontier = [n for n, k in closed if k is kind]
        seen = set(frontier)
        while frontier:
            node = frontier.pop()
            for a, b in undirected:
                if a == node and b not in seen:
                    seen.add(b)
                    closed.add((b, kind))
                    frontier.append(b)
    return closed


# -- random generators (seeded, deterministic) -----------------------------------


def random_tbox(rng: random.Random, max_axioms: int = 30) -> tuple[Graph, Graph]:
    """A (schema, reference) pair over a small shared name pool.

    Always declares every class and property it mentions, so the generated
    schemas satisfy the contract module extraction relies on. Chained
    definitions are seeded into the reference so derivation has real work.
    """
    classes = [Iri(f"http://t.example/ns#C{i}") for i in range(10)]
    props = [Iri(f"http://t.example/ns#r{i}") for i in range(4)]
    extra = [Iri(f"http://t.example/ns#X{i}") for i in range(6)]

    schema_triples: set[Triple] = set()
    ref_triples: set[Triple] = set()
    used_schema: set[Iri] = set()
    used_ref: set[Iri] = set()
    blank_counter = [0]

    def fresh_blank():
        blank_counter[0] += 1
        return BlankNode(f"rb{blank_counter[0]}")

    def declare(target: set[Triple], name: Iri, is_prop: bool):
        target.add(
            Triple(name, V.RDF_TYPE, V.OWL_OBJECT_PROPERTY if is_prop else V.OWL_CLASS)
        )

    def restriction(target: set[Triple], prop: Iri, filler: Iri):
        node = fresh_blank()
        target.add(Triple(node, V.RDF_TYPE, V.OWL_RESTRICTION))
        target.add(Triple(node, V.OWL_ON_PROPERTY, prop))
        target.add(Triple(node, V.OWL_SOME_VALUES_FROM, filler))
        return node

    n_axioms = rng.randint(0, max_axioms)
    for _ in range(n_axioms):
        kind = rng.choice(
            ["subclass", "subclass", "subproperty", "domain", "range", "equiv_named", "equiv_expr", "gci"]
        )
        into_ref = rng.random() < 0.4
        target = ref_triples if into_ref else schema_triples
        used = used_ref if into_ref else used_schema
        if kind == "subclass":
            a, b = rng.sample(classes + (extra if into_ref else []), 2)
            target.add(Triple(a, V.RDFS_SUBCLASSOF, b))
            used |= {a, b}
        elif kind == "subproperty":
            p, q = rng.sample(props, 2)
            target.add(Triple(p, V.RDFS_SUBPROPERTYOF, q))
            used |= {p, q}
        elif kind in ("domain", "range"):
            p = rng.choice(props)
            c = rng.choice(classes)
            pred = V.RDFS_DOMAIN if kind == "domain" else V.RDFS_RANGE
            target.add(Triple(p, pred, c))
            used |= {p, c}
        elif kind == "equiv_named":
            a = rng.choice(extra if into_ref else classes)
            b = rng.choice(classes)
            if a != b:
                target.add(Triple(a, V.OWL_EQUIVALENT_CLASS, b))
                used |= {a, b}
        elif kind == "equiv_expr":
            a = rng.choice(extra if into_ref else classes)
            p = rng.choice(props)
            c = rng.choice(classes)
            if a != c:
                node = restriction(target, p, c)
                target.add(Triple(a, V.OWL_EQUIVALENT_CLASS, node))
                used |= {a, p, c}
        elif kind == "gci":
            a = rng.choice(classes)
            p = rng.choice(props)
            c = rng.choice(classes)
            node = restriction(target, p, c)
            target.add(Triple(a, V.RDFS_SUBCLASSOF, node))
            used |= {a, p, c}

    for name in used_schema:
        declare(schema_triples, name, name in props)
    for name in used_ref:
        declare(ref_triples, name, name in props)
    return Graph(schema_triples), Graph(ref_triples)
