"""Dimension E: locate the schema on the fragment order and measure data conformance.

Fragment detection classifies every recognised axiom through the versioned
kind-to-fragment table in ``data/fragment_catalog.json`` and takes the join.
Conformance approximates entailed typing with RDFS materialization uniformly,
whatever the detected fragment: a sound lower bound, flagged in the analysis.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Optional

from .axioms import expr_features, schema_axioms
from .inference import materialized_types
from .model import Graph, Iri, KgDescriptor, Literal
from .signature import punned_names, signature
from . import vocab as V


class DlFragment(Enum):
    RDF = "RDF"
    RDFS = "RDFS"
    OWL_EL = "OWL-EL"
    OWL_QL = "OWL-QL"
    OWL_RL = "OWL-RL"
    OWL_DL = "OWL-DL"
    OWL_FULL = "OWL-Full"


_F = DlFragment

#: upward-closed reachability sets of the fragment order (Hasse diagram:
#: RDF < RDFS < EL, QL, RL < DL < Full; the three profiles pairwise incomparable)
_UPSETS: dict[DlFragment, frozenset[DlFragment]] = {
    _F.RDF: frozenset(_F),
    _F.RDFS: frozenset({_F.RDFS, _F.OWL_EL, _F.OWL_QL, _F.OWL_RL, _F.OWL_DL, _F.OWL_FULL}),
    _F.OWL_EL: frozenset({_F.OWL_EL, _F.OWL_DL, _F.OWL_FULL}),
    _F.OWL_QL: frozenset({_F.OWL_QL, _F.OWL_DL, _F.OWL_FULL}),
    _F.OWL_RL: frozenset({_F.OWL_RL, _F.OWL_DL, _F.OWL_FULL}),
    _F.OWL_DL: frozenset({_F.OWL_DL, _F.OWL_FULL}),
    _F.OWL_FULL: frozenset({_F.OWL_FULL}),
}


def fragment_leq(a: DlFragment, b: DlFragment) -> Optional[bool]:
    """Decide a <= b on the fragment order.

    Returns True when a <= b, False when b < a strictly, and None when the
    two are incomparable (the EL/QL/RL cross pairs).
    """
    if b in _UPSETS[a]:
        return True
    if a in _UPSETS[b]:
        return False
    return None


def fragment_join(fragments) -> DlFragment:
    """Least upper bound of a collection of fragments (RDF for an empty one)."""
    upper = frozenset(_F)
    for f in fragments:
        upper &= _UPSETS[f]
    for candidate in upper:
        if all(other in _UPSETS[candidate] for other in upper):
            return candidate
    raise AssertionError("fragment order has no join for the given set")


def _load_catalog() -> dict[str, DlFragment]:
    raw = json.loads(resources.files("kgaap.data").joinpath("fragment_catalog.json").read_text())
    return {kind: DlFragment(name) for kind, name in raw["kinds"].items()}


FRAGMENT_CATALOG: dict[str, DlFragment] = _load_catalog()


@dataclass(frozen=True)
class ExpressivityProfile:
    fragment: DlFragment
    conformance_ratio: Fraction
    axiom_census: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class SchemaAnalysis:
    fragment: DlFragment
    census: dict[str, int]
    diagnostics: tuple[str, ...]


def analyze_schema(schema: Graph) -> SchemaAnalysis:
    """Classify every axiom, count kinds, and join the per-kind fragments."""
    census: Counter[str] = Counter()
    contributions: list[DlFragment] = [DlFragment.RDF]
    diagnostics: list[str] = []

    for ax in schema_axioms(schema):
        kinds = [ax.kind]
        for expr in ax.exprs:
            kinds.extend(expr_features(expr))
        for kind in kinds:
            census[kind] += 1
            fragment = FRAGMENT_CATALOG.get(kind, DlFragment.OWL_FULL)
            contributions.append(fragment)
            if fragment is DlFragment.OWL_FULL:
                diagnostics.append(f"outside the supported catalogue: {ax.description}")

    punned = punned_names(schema)
    if punned:
        contributions.append(DlFragment.OWL_FULL)
        diagnostics.append(
            "class/property punning: " + ", ".join(sorted(i.value for i in punned))
        )

    return SchemaAnalysis(
        fragment=fragment_join(contributions),
        census=dict(sorted(census.items())),
        diagnostics=tuple(diagnostics),
    )


def detect_fragment(schema: Graph) -> DlFragment:
    return analyze_schema(schema).fragment


def conformance_ratio(kg: KgDescriptor) -> Fraction:
    """Share of data assertions whose typing the schema entails.

    A typing assertion conforms when its class is a schema concept. A property
    assertion conforms when the predicate is a schema role and every declared
    domain/range holds under the materialized types; class ranges fail on
    literal objects and datatype ranges require the exact datatype.
    """
    data = kg.data_graph
    if len(data) == 0:
        return Fraction(1)
    schema = kg.schema_graph
    concepts = signature(schema, "concepts")
    roles = signature(schema, "roles")
    types = materialized_types(schema, data)

    domains: dict[Iri, set[Iri]] = {}
    ranges: dict[Iri, set[Iri]] = {}
    for t in schema.match(None, V.RDFS_DOMAIN):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            domains.setdefault(t.subject, set()).add(t.object)
    for t in schema.match(None, V.RDFS_RANGE):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            ranges.setdefault(t.subject, set()).add(t.object)

    conformant = 0
    for t in data.triples:
        if t.predicate == V.RDF_TYPE:
            if isinstance(t.object, Iri) and t.object in concepts:
                conformant += 1
            continue
        if t.predicate not in roles:
            continue
        ok = True
        for cls in domains.get(t.predicate, ()):
            if cls.value.startswith(V.XSD):
                ok = False  # a datatype can never be a subject's class
            elif cls not in types.get(t.subject, set()):
                ok = False
        for rng in ranges.get(t.predicate, ()):
            if rng.value.startswith(V.XSD):
                if not (isinstance(t.object, Literal) and t.object.datatype == rng):
                    ok = False
            elif isinstance(t.object, Literal):
                ok = False
            elif rng not in types.get(t.object, set()):
                ok = False
        if ok:
            conformant += 1
    return Fraction(conformant, len(data))


def expressivity_profile(kg: KgDescriptor) -> ExpressivityProfile:
    analysis = analyze_schema(kg.schema_graph)
    return ExpressivityProfile(
        fragment=analysis.fragment,
        conformance_ratio=conformance_ratio(kg),
        axiom_census=analysis.census,
    )
