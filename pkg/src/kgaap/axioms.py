"""Schema-axiom recognition over the triple representation.

Each axiom keeps its originating triples (so subgraphs can be rebuilt), a
stable structural description (so derivations can be replayed without
depending on blank-node labels), and parsed class expressions. Anything not
in the recognised catalogue is kept as an "unclassified" axiom; the fragment
detector treats those conservatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .model import BlankNode, Graph, Iri, Literal, Term, Triple
from .signature import NameKind
from . import vocab as V

# -- class expressions -------------------------------------------------------


@dataclass(frozen=True)
class Named:
    iri: Iri


@dataclass(frozen=True)
class Some:
    prop: Iri
    filler: "Expr"


@dataclass(frozen=True)
class Only:
    prop: Iri
    filler: "Expr"


@dataclass(frozen=True)
class HasValue:
    prop: Iri
    value: Term


@dataclass(frozen=True)
class Card:
    variant: str  # "min" | "max" | "exact"
    count: int
    prop: Iri


@dataclass(frozen=True)
class And:
    operands: tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    operands: tuple["Expr", ...]


@dataclass(frozen=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True)
class OneOf:
    members: tuple[Term, ...]


@dataclass(frozen=True)
class Unknown:
    node: Term


Expr = Union[Named, Some, Only, HasValue, Card, And, Or, Not, OneOf, Unknown]


def expr_concept_names(expr: Expr) -> set[Iri]:
    if isinstance(expr, Named):
        return set() if V.is_builtin(expr.iri) else {expr.iri}
    if isinstance(expr, (Some, Only)):
        return expr_concept_names(expr.filler)
    if isinstance(expr, (And, Or)):
        out: set[Iri] = set()
        for op in expr.operands:
            out |= expr_concept_names(op)
        return out
    if isinstance(expr, Not):
        return expr_concept_names(expr.operand)
    return set()


def expr_role_names(expr: Expr) -> set[Iri]:
    if isinstance(expr, (Some, Only)):
        roles = {expr.prop} if not V.is_builtin(expr.prop) else set()
        return roles | expr_role_names(expr.filler)
    if isinstance(expr, (HasValue, Card)):
        return {expr.prop} if not V.is_builtin(expr.prop) else set()
    if isinstance(expr, (And, Or)):
        out: set[Iri] = set()
        for op in expr.operands:
            out |= expr_role_names(op)
        return out
    if isinstance(expr, Not):
        return expr_role_names(expr.operand)
    return set()


def expr_names(expr: Expr) -> set[tuple[Iri, NameKind]]:
    return {(n, NameKind.CONCEPT) for n in expr_concept_names(expr)} | {
        (n, NameKind.ROLE) for n in expr_role_names(expr)
    }


def describe_expr(expr: Expr) -> str:
    """Label-free structural rendering, stable across parses."""
    if isinstance(expr, Named):
        return f"<{expr.iri}>"
    if isinstance(expr, Some):
        return f"(some <{expr.prop}> {describe_expr(expr.filler)})"
    if isinstance(expr, Only):
        return f"(only <{expr.prop}> {describe_expr(expr.filler)})"
    if isinstance(expr, HasValue):
        return f"(value <{expr.prop}> {expr.value})"
    if isinstance(expr, Card):
        return f"({expr.variant} {expr.count} <{expr.prop}>)"
    if isinstance(expr, And):
        return "(and " + " ".join(sorted(describe_expr(o) for o in expr.operands)) + ")"
    if isinstance(expr, Or):
        return "(or " + " ".join(sorted(describe_expr(o) for o in expr.operands)) + ")"
    if isinstance(expr, Not):
        return f"(not {describe_expr(expr.operand)})"
    if isinstance(expr, OneOf):
        return "(oneof " + " ".join(sorted(str(m) for m in expr.members)) + ")"
    return "(unknown)"


def expr_features(expr: Expr) -> Iterator[str]:
    """Census kinds contributed by the constructors of an expression."""
    if isinstance(expr, Named):
        return
    if isinstance(expr, Some):
        yield "existential"
        yield from expr_features(expr.filler)
    elif isinstance(expr, Only):
        yield "universal"
        yield from expr_features(expr.filler)
    elif isinstance(expr, HasValue):
        yield "has_value"
    elif isinstance(expr, Card):
        yield "cardinality"
    elif isinstance(expr, And):
        yield "intersection"
        for op in expr.operands:
            yield from expr_features(op)
    elif isinstance(expr, Or):
        yield "union"
        for op in expr.operands:
            yield from expr_features(op)
    elif isinstance(expr, Not):
        yield "complement"
        yield from expr_features(expr.operand)
    elif isinstance(expr, OneOf):
        yield "one_of"
    else:
        yield "unclassified"


# -- axioms -------------------------------------------------------------------


@dataclass(frozen=True)
class Axiom:
    kind: str
    triples: tuple[Triple, ...]
    description: str
    exprs: tuple[Expr, ...] = ()
    props: tuple[Iri, ...] = ()
    subject_name: Optional[Iri] = None
    origin: str = "schema"

    def concept_names(self) -> set[Iri]:
        out: set[Iri] = set()
        for e in self.exprs:
            out |= expr_concept_names(e)
        if self.kind == "class_declaration" and self.subject_name is not None:
            out.add(self.subject_name)
        return out

    def role_names(self) -> set[Iri]:
        out: set[Iri] = set(self.props)
        for e in self.exprs:
            out |= expr_role_names(e)
        if self.kind == "property_declaration" and self.subject_name is not None:
            out.add(self.subject_name)
        return out

    def names(self) -> set[Iri]:
        return self.concept_names() | self.role_names()


_CHARACTERISTIC_KINDS = {
    V.OWL_FUNCTIONAL_PROPERTY: "functional",
    V.OWL_INVERSE_FUNCTIONAL_PROPERTY: "inverse_functional",
    V.OWL_TRANSITIVE_PROPERTY: "transitive",
    V.OWL_SYMMETRIC_PROPERTY: "symmetric",
    V.OWL_ASYMMETRIC_PROPERTY: "asymmetric",
    V.OWL_REFLEXIVE_PROPERTY: "reflexive",
    V.OWL_IRREFLEXIVE_PROPERTY: "irreflexive",
}

_ANNOTATION_PREDICATES = {
    Iri(V.RDFS + "label"),
    Iri(V.RDFS + "comment"),
    Iri(V.RDFS + "seeAlso"),
    Iri(V.RDFS + "isDefinedBy"),
    Iri(V.OWL + "versionInfo"),
    Iri(V.OWL + "imports"),
}

_EXPRESSION_PREDICATES = {
    V.OWL_ON_PROPERTY,
    V.OWL_SOME_VALUES_FROM,
    V.OWL_ALL_VALUES_FROM,
    V.OWL_HAS_VALUE,
    V.OWL_INTERSECTION_OF,
    V.OWL_UNION_OF,
    V.OWL_COMPLEMENT_OF,
    V.OWL_ONE_OF,
    V.OWL_MIN_CARDINALITY,
    V.OWL_MAX_CARDINALITY,
    V.OWL_CARDINALITY,
    V.RDF_FIRST,
    V.RDF_REST,
}


class _ExpressionReader:
    """Parses blank-node class expressions and remembers which triples each used."""

    def __init__(self, g: Graph):
        self.g = g
        self.used: dict[Term, set[Triple]] = {}

    def _note(self, node: Term, triple: Triple):
        self.used.setdefault(node, set()).add(triple)

    def triples_for(self, node: Term) -> set[Triple]:
        """All triples consumed while parsing the expression rooted at node."""
        out: set[Triple] = set()
        stack = [node]
        seen = set()
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            for t in self.used.get(n, ()):
                out.add(t)
                if isinstance(t.object, BlankNode):
                    stack.append(t.object)
                if isinstance(t.subject, BlankNode) and t.subject != n:
                    stack.append(t.subject)
        return out

    def read(self, node: Term, depth: int = 0) -> Expr:
        if isinstance(node, Iri):
            return Named(node)
        if not isinstance(node, BlankNode) or depth > 32:
            return Unknown(node)

        def grab(pred: Iri) -> Optional[Term]:
            for t in self.g.match(node, pred):
                self._note(node, t)
                return t.object
            return None

        for t in self.g.match(node, V.RDF_TYPE):
            if t.object in (V.OWL_RESTRICTION, V.OWL_CLASS):
                self._note(node, t)

        on_prop = grab(V.OWL_ON_PROPERTY)
        if on_prop is not None:
            if not isinstance(on_prop, Iri):
                return Unknown(node)
            if (filler := grab(V.OWL_SOME_VALUES_FROM)) is not None:
                return Some(on_prop, self.read(filler, depth + 1))
            if (filler := grab(V.OWL_ALL_VALUES_FROM)) is not None:
                return Only(on_prop, self.read(filler, depth + 1))
            if (value := grab(V.OWL_HAS_VALUE)) is not None:
                return HasValue(on_prop, value)
            for pred, variant in (
                (V.OWL_MIN_CARDINALITY, "min"),
                (V.OWL_MAX_CARDINALITY, "max"),
                (V.OWL_CARDINALITY, "exact"),
            ):
                if (n := grab(pred)) is not None:
                    count = int(n.lexical) if isinstance(n, Literal) and n.lexical.isdigit() else 0
                    return Card(variant, count, on_prop)
            return Unknown(node)
        if (head := grab(V.OWL_INTERSECTION_OF)) is not None:
            return And(tuple(self.read(m, depth + 1) for m in self._list_members(head)))
        if (head := grab(V.OWL_UNION_OF)) is not None:
            return Or(tuple(self.read(m, depth + 1) for m in self._list_members(head)))
        if (operand := grab(V.OWL_COMPLEMENT_OF)) is not None:
            return Not(self.read(operand, depth + 1))
        if (head := grab(V.OWL_ONE_OF)) is not None:
            return OneOf(tuple(self._list_members(head)))
        return Unknown(node)

    def _list_members(self, head: Term) -> list[Term]:
        """Members of an RDF list; spine triples are noted cell by cell."""
        members = []
        node = head
        seen = set()
        while isinstance(node, (Iri, BlankNode)) and node != V.RDF_NIL and node not in seen:
            seen.add(node)
            first_t = rest_t = None
            for t in self.g.match(node, V.RDF_FIRST):
                first_t = t
                break
            for t in self.g.match(node, V.RDF_REST):
                rest_t = t
                break
            if first_t is None:
                break
            self._note(node, first_t)
            members.append(first_t.object)
            if rest_t is None:
                break
            self._note(node, rest_t)
            node = rest_t.object
        return members


def _literal_or_iri(term: Term) -> str:
    return str(term)


def schema_axioms(g: Graph, origin: str = "schema") -> list[Axiom]:
    """Recognise the axioms of a schema graph.

    Returns one Axiom per logical statement; triples consumed by class
    expressions and RDF lists are attached to their owning axiom rather than
    reported separately.
    """
    reader = _ExpressionReader(g)
    axioms: list[Axiom] = []
    consumed: set[Triple] = set()

    def expression(node: Term) -> tuple[Expr, set[Triple]]:
        expr = reader.read(node)
        return expr, reader.triples_for(node)

    def push(kind: str, root: Triple, extra: set[Triple], description: str, **kw):
        trips = tuple(sorted({root} | extra, key=lambda t: (str(t.subject), str(t.predicate), str(t.object))))
        axioms.append(Axiom(kind=kind, triples=trips, description=description, origin=origin, **kw))
        consumed.add(root)
        consumed.update(extra)

    ordered = sorted(g.triples, key=lambda t: (str(t.subject), str(t.predicate), str(t.object)))

    for t in ordered:
        p = t.predicate
        if p.value.startswith(V.SH):
            consumed.add(t)  # shape triples are metadata, not schema axioms
            continue
        if p == V.RDFS_SUBCLASSOF:
            lhs, used_l = expression(t.subject)
            rhs, used_r = expression(t.object)
            push(
                "subclass",
                t,
                used_l | used_r,
                f"(subclass {describe_expr(lhs)} {describe_expr(rhs)})",
                exprs=(lhs, rhs),
            )
        elif p == V.OWL_EQUIVALENT_CLASS:
            lhs, used_l = expression(t.subject)
            rhs, used_r = expression(t.object)
            push(
                "equivalent_class",
                t,
                used_l | used_r,
                f"(equivalent {describe_expr(lhs)} {describe_expr(rhs)})",
                exprs=(lhs, rhs),
            )
        elif p == V.OWL_DISJOINT_WITH:
            lhs, used_l = expression(t.subject)
            rhs, used_r = expression(t.object)
            push(
                "disjoint",
                t,
                used_l | used_r,
                f"(disjoint {describe_expr(lhs)} {describe_expr(rhs)})",
                exprs=(lhs, rhs),
            )
        elif p == V.RDFS_SUBPROPERTYOF:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                push(
                    "subproperty",
                    t,
                    set(),
                    f"(subproperty <{t.subject}> <{t.object}>)",
                    props=(t.subject, t.object),
                )
            else:
                push("unclassified", t, set(), f"(unclassified {t.subject} {p})")
        elif p in (V.RDFS_DOMAIN, V.RDFS_RANGE):
            kind = "domain" if p == V.RDFS_DOMAIN else "range"
            if isinstance(t.subject, Iri):
                rng, used = expression(t.object)
                push(
                    kind,
                    t,
                    used,
                    f"({kind} <{t.subject}> {describe_expr(rng)})",
                    exprs=(rng,),
                    props=(t.subject,),
                )
            else:
                push("unclassified", t, set(), f"(unclassified {t.subject} {p})")
        elif p == V.OWL_EQUIVALENT_PROPERTY:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                push(
                    "equivalent_property",
                    t,
                    set(),
                    f"(equivalent-property <{t.subject}> <{t.object}>)",
                    props=(t.subject, t.object),
                )
            else:
                push("unclassified", t, set(), f"(unclassified {t.subject} {p})")
        elif p == V.OWL_INVERSE_OF:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                push(
                    "inverse_of",
                    t,
                    set(),
                    f"(inverse <{t.subject}> <{t.object}>)",
                    props=(t.subject, t.object),
                )
            else:
                push("unclassified", t, set(), f"(unclassified {t.subject} {p})")
        elif p == V.RDF_TYPE:
            if t in consumed:
                continue
            obj = t.object
            if obj in (V.RDFS_CLASS, V.OWL_CLASS):
                if isinstance(t.subject, Iri):
                    push(
                        "class_declaration",
                        t,
                        set(),
                        f"(declare-class <{t.subject}>)",
                        subject_name=t.subject,
                    )
                # a blank node typed as a class is expression plumbing; the
                # referencing axiom claims it, orphans fall through to the sweep
            elif obj == V.OWL_RESTRICTION:
                pass
            elif obj in (V.RDF_PROPERTY, V.OWL_OBJECT_PROPERTY, V.OWL_DATATYPE_PROPERTY, V.OWL_ANNOTATION_PROPERTY):
                if isinstance(t.subject, Iri):
                    push(
                        "property_declaration",
                        t,
                        set(),
                        f"(declare-property <{t.subject}>)",
                        subject_name=t.subject,
                    )
                else:
                    push("unclassified", t, set(), f"(unclassified blank-property-declaration)")
            elif obj in _CHARACTERISTIC_KINDS:
                if isinstance(t.subject, Iri):
                    push(
                        _CHARACTERISTIC_KINDS[obj],
                        t,
                        set(),
                        f"({_CHARACTERISTIC_KINDS[obj]} <{t.subject}>)",
                        props=(t.subject,),
                        subject_name=t.subject,
                    )
                else:
                    push("unclassified", t, set(), "(unclassified blank-characteristic)")
            elif obj in (V.OWL_NAMED_INDIVIDUAL, V.OWL_ONTOLOGY):
                push("annotation", t, set(), f"(annotation {_literal_or_iri(t.subject)} rdf:type {obj})")
            elif isinstance(t.object, Iri) and V.is_builtin(t.object):
                push("unclassified", t, set(), f"(unclassified {t.subject} rdf:type {t.object})")
            else:
                push("plain", t, set(), f"(typing {_literal_or_iri(t.subject)} {_literal_or_iri(t.object)})")
        elif p in _ANNOTATION_PREDICATES:
            push("annotation", t, set(), f"(annotation {_literal_or_iri(t.subject)} <{p}>)")
        elif p in _EXPRESSION_PREDICATES:
            pass  # claimed by the owning axiom; orphans fall through to the sweep
        elif V.is_builtin(p):
            push("unclassified", t, set(), f"(unclassified use of <{p}>)")
        else:
            push(
                "plain",
                t,
                set(),
                f"(plain {_literal_or_iri(t.subject)} <{p}> {_literal_or_iri(t.object)})",
                props=(p,),
            )

    # orphan expression plumbing that no axiom claimed
    claimed = {t for ax in axioms for t in ax.triples}
    for t in ordered:
        if t not in claimed and t not in consumed:
            axioms.append(
                Axiom(
                    kind="unclassified",
                    triples=(t,),
                    description=f"(unclassified {t.subject} {t.predicate} {t.object})",
                    origin=origin,
                )
            )
    return axioms
