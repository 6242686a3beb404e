"""Name extraction: which IRIs act as concepts, roles or individuals in a graph.

Blank nodes never contribute (they carry no name) and IRIs from the built-in
RDF/RDFS/OWL/SHACL/XSD namespaces are excluded from every partition. An IRI
used in both class and property positions is reported in both partitions and
flagged with a PunningWarning.
"""

from __future__ import annotations

import warnings
from enum import Enum
from typing import Iterator

from .errors import PunningWarning
from .model import BlankNode, Graph, Iri, Term
from . import vocab as V


class NameKind(Enum):
    CONCEPT = "concept"
    ROLE = "role"
    INDIVIDUAL = "individual"


_CLASS_DECLARATION_TYPES = {V.RDFS_CLASS, V.OWL_CLASS}
_PROPERTY_DECLARATION_TYPES = {
    V.RDF_PROPERTY,
    V.OWL_OBJECT_PROPERTY,
    V.OWL_DATATYPE_PROPERTY,
    V.OWL_ANNOTATION_PROPERTY,
    V.OWL_FUNCTIONAL_PROPERTY,
    V.OWL_INVERSE_FUNCTIONAL_PROPERTY,
    V.OWL_TRANSITIVE_PROPERTY,
    V.OWL_SYMMETRIC_PROPERTY,
    V.OWL_ASYMMETRIC_PROPERTY,
    V.OWL_REFLEXIVE_PROPERTY,
    V.OWL_IRREFLEXIVE_PROPERTY,
}
_CLASS_OPERAND_PREDICATES = {V.RDFS_SUBCLASSOF, V.OWL_EQUIVALENT_CLASS, V.OWL_DISJOINT_WITH}
_CLASS_OBJECT_PREDICATES = {
    V.RDFS_DOMAIN,
    V.RDFS_RANGE,
    V.OWL_SOME_VALUES_FROM,
    V.OWL_ALL_VALUES_FROM,
    V.OWL_COMPLEMENT_OF,
}
_PROPERTY_OPERAND_PREDICATES = {V.RDFS_SUBPROPERTYOF, V.OWL_EQUIVALENT_PROPERTY, V.OWL_INVERSE_OF}


def _named(term: Term) -> Iri | None:
    if isinstance(term, Iri) and not V.is_builtin(term):
        return term
    return None


def _list_members(g: Graph, head: Term) -> Iterator[Term]:
    seen = set()
    while isinstance(head, (Iri, BlankNode)) and head != V.RDF_NIL:
        if head in seen:
            return
        seen.add(head)
        first = g.value(head, V.RDF_FIRST)
        if first is not None:
            yield first
        head = g.value(head, V.RDF_REST)
        if head is None:
            return


def _class_and_property_names(g: Graph) -> tuple[set[Iri], set[Iri]]:
    concepts: set[Iri] = set()
    roles: set[Iri] = set()
    for t in g.triples:
        p = t.predicate
        if p == V.RDF_TYPE:
            if t.object in _CLASS_DECLARATION_TYPES:
                if (n := _named(t.subject)) is not None:
                    concepts.add(n)
            elif t.object in _PROPERTY_DECLARATION_TYPES:
                if (n := _named(t.subject)) is not None:
                    roles.add(n)
            elif (n := _named(t.object)) is not None:
                concepts.add(n)
        elif p in _CLASS_OPERAND_PREDICATES:
            for side in (t.subject, t.object):
                if (n := _named(side)) is not None:
                    concepts.add(n)
        elif p in _CLASS_OBJECT_PREDICATES:
            if (n := _named(t.object)) is not None:
                concepts.add(n)
            if p in (V.RDFS_DOMAIN, V.RDFS_RANGE):
                if (n := _named(t.subject)) is not None:
                    roles.add(n)
        elif p in _PROPERTY_OPERAND_PREDICATES:
            for side in (t.subject, t.object):
                if (n := _named(side)) is not None:
                    roles.add(n)
        elif p == V.OWL_ON_PROPERTY:
            if (n := _named(t.object)) is not None:
                roles.add(n)
        elif p in (V.OWL_INTERSECTION_OF, V.OWL_UNION_OF):
            for member in _list_members(g, t.object):
                if (n := _named(member)) is not None:
                    concepts.add(n)
        elif not V.is_builtin(p):
            roles.add(p)
    return concepts, roles


def signature(g: Graph, partition: str = "all") -> frozenset[Iri]:
    """Names of the graph under the requested partition.

    partition is one of "concepts", "roles", "individuals" or "all".
    Individuals are the remaining subject/object IRIs once class and property
    positions are accounted for.
    """
    concepts, roles = _class_and_property_names(g)
    shared = concepts & roles
    if shared:
        warnings.warn(
            PunningWarning(
                "IRIs used in both class and property positions: "
                + ", ".join(sorted(i.value for i in shared))
            )
        )
    if partition == "concepts":
        return frozenset(concepts)
    if partition == "roles":
        return frozenset(roles)

    individuals: set[Iri] = set()
    classified = concepts | roles
    for t in g.triples:
        for side in (t.subject, t.object):
            n = _named(side)
            if n is not None and n not in classified:
                individuals.add(n)
    if partition == "individuals":
        return frozenset(individuals)
    if partition == "all":
        return frozenset(concepts | roles | individuals)
    raise ValueError(f"unknown partition: {partition!r}")


def punned_names(g: Graph) -> frozenset[Iri]:
    """IRIs occurring in both class and property positions."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PunningWarning)
        concepts, roles = _class_and_property_names(g)
    return frozenset(concepts & roles)
