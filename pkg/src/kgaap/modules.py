"""Syntactic bottom-locality module extraction.

An axiom is bottom-local for a signature when interpreting every name outside
the signature as the empty class or role makes it a tautology. The extractor
runs the usual fixpoint: keep adding non-local axioms and growing the
signature with their names until nothing changes. Bottom locality (rather
than top) is the right polarity here because modules feed relevance checks
about the seed names themselves.

Annotation and plain triples carry no semantics; they follow their subject
into the module once the final signature contains it.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable

from .axioms import And, Axiom, Card, Expr, HasValue, Named, Not, OneOf, Only, Or, Some, Unknown, schema_axioms
from .model import Graph, Iri
from . import vocab as V


class _Eval(Enum):
    BOT = "bot"
    TOP = "top"
    OTHER = "other"


def _eval(expr: Expr, sig: set[Iri]) -> _Eval:
    if isinstance(expr, Named):
        if V.is_builtin(expr.iri):
            return _Eval.OTHER
        return _Eval.OTHER if expr.iri in sig else _Eval.BOT
    if isinstance(expr, Some):
        if expr.prop not in sig or _eval(expr.filler, sig) is _Eval.BOT:
            return _Eval.BOT
        return _Eval.OTHER
    if isinstance(expr, HasValue):
        return _Eval.BOT if expr.prop not in sig else _Eval.OTHER
    if isinstance(expr, Only):
        if expr.prop not in sig or _eval(expr.filler, sig) is _Eval.TOP:
            return _Eval.TOP
        return _Eval.OTHER
    if isinstance(expr, Card):
        if expr.variant == "min" and expr.count == 0:
            return _Eval.TOP
        if expr.prop not in sig:
            # no successors over an empty role
            return _Eval.TOP if expr.variant == "max" or expr.count == 0 else _Eval.BOT
        return _Eval.OTHER
    if isinstance(expr, And):
        evals = [_eval(op, sig) for op in expr.operands]
        if any(e is _Eval.BOT for e in evals):
            return _Eval.BOT
        if evals and all(e is _Eval.TOP for e in evals):
            return _Eval.TOP
        return _Eval.OTHER
    if isinstance(expr, Or):
        evals = [_eval(op, sig) for op in expr.operands]
        if any(e is _Eval.TOP for e in evals):
            return _Eval.TOP
        if evals and all(e is _Eval.BOT for e in evals):
            return _Eval.BOT
        return _Eval.OTHER
    if isinstance(expr, Not):
        inner = _eval(expr.operand, sig)
        if inner is _Eval.BOT:
            return _Eval.TOP
        if inner is _Eval.TOP:
            return _Eval.BOT
        return _Eval.OTHER
    if isinstance(expr, OneOf):
        return _Eval.OTHER
    return _Eval.OTHER  # Unknown: never assume a constant


def _is_bottom_local(ax: Axiom, sig: set[Iri]) -> bool:
    kind = ax.kind
    if kind in ("class_declaration", "property_declaration"):
        return ax.subject_name not in sig
    if kind == "subclass":
        lhs, rhs = ax.exprs
        return _eval(lhs, sig) is _Eval.BOT or _eval(rhs, sig) is _Eval.TOP
    if kind == "equivalent_class":
        lhs, rhs = ax.exprs
        a, b = _eval(lhs, sig), _eval(rhs, sig)
        return (a is _Eval.BOT and b is _Eval.BOT) or (a is _Eval.TOP and b is _Eval.TOP)
    if kind == "disjoint":
        lhs, rhs = ax.exprs
        return _eval(lhs, sig) is _Eval.BOT or _eval(rhs, sig) is _Eval.BOT
    if kind == "subproperty":
        return ax.props[0] not in sig
    if kind in ("domain", "range"):
        if ax.props[0] not in sig:
            return True
        return _eval(ax.exprs[0], sig) is _Eval.TOP
    if kind in ("equivalent_property", "inverse_of"):
        return all(p not in sig for p in ax.props)
    if kind in (
        "functional",
        "inverse_functional",
        "transitive",
        "symmetric",
        "asymmetric",
        "reflexive",
        "irreflexive",
    ):
        return ax.props[0] not in sig
    if kind in ("annotation", "plain"):
        return True  # handled by the follow-subject pass
    # unclassified: keep whenever it touches the signature
    return not (ax.names() & sig)


def extract_module(schema: Graph, seed: Iterable[Iri]) -> Graph:
    """Bottom-locality module of the schema for the seed signature."""
    axioms = schema_axioms(schema)
    sig: set[Iri] = set(seed)
    included: list[Axiom] = []
    remaining = sorted(
        (ax for ax in axioms if ax.kind not in ("annotation", "plain")),
        key=lambda a: a.description,
    )

    changed = True
    while changed:
        changed = False
        still_out = []
        for ax in remaining:
            if _is_bottom_local(ax, sig):
                still_out.append(ax)
            else:
                included.append(ax)
                sig |= ax.names()
                changed = True
        remaining = still_out

    triples = {t for ax in included for t in ax.triples}
    for ax in axioms:
        if ax.kind in ("annotation", "plain"):
            subject = ax.triples[0].subject
            if isinstance(subject, Iri) and subject in sig:
                triples.update(ax.triples)
    return Graph(triples, label=schema.label)
