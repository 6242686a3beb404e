"""Dimension R: the three-part epistemic trust profile and its satisfaction order.

Everything here is read from declared metadata, never proved: regime
declarations in SPARQL service descriptions, completeness statements in the
AAP vocabulary, SHACL closed shapes, and consistency certificates. Silence
defaults to the safest reading: Simple entailment, uncertified consistency,
no closure anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Optional, Union

from .expressivity import DlFragment, ExpressivityProfile, fragment_join, fragment_leq
from .model import BlankNode, Graph, Iri, KgDescriptor, Literal, Term
from . import vocab as V


class EntailmentRegime(Enum):
    SIMPLE = "Simple"
    RDFS = "RDFS"
    OWL_EL = "OWL-EL"
    OWL_QL = "OWL-QL"
    OWL_RL = "OWL-RL"
    OWL_DL = "OWL-DL"


_REGIME_AS_FRAGMENT = {
    EntailmentRegime.SIMPLE: DlFragment.RDF,
    EntailmentRegime.RDFS: DlFragment.RDFS,
    EntailmentRegime.OWL_EL: DlFragment.OWL_EL,
    EntailmentRegime.OWL_QL: DlFragment.OWL_QL,
    EntailmentRegime.OWL_RL: DlFragment.OWL_RL,
    EntailmentRegime.OWL_DL: DlFragment.OWL_DL,
}

_FRAGMENT_AS_REGIME = {f: r for r, f in _REGIME_AS_FRAGMENT.items()}

_REGIME_BY_IRI = {iri: EntailmentRegime(name) for name, iri in V.REGIME_IRIS.items()}


def regime_as_fragment(regime: EntailmentRegime) -> DlFragment:
    return _REGIME_AS_FRAGMENT[regime]


def regime_leq(a: EntailmentRegime, b: EntailmentRegime) -> Optional[bool]:
    """Same tri-valued order as the fragment lattice, with Simple at the bottom."""
    return fragment_leq(_REGIME_AS_FRAGMENT[a], _REGIME_AS_FRAGMENT[b])


class ConsistencyLevel(IntEnum):
    UNCERTIFIED = 0
    TBOX_CONSISTENT = 1
    JOINTLY_CONSISTENT = 2


_CONSISTENCY_LABELS = {
    ConsistencyLevel.UNCERTIFIED: "Uncertified",
    ConsistencyLevel.TBOX_CONSISTENT: "TBoxConsistent",
    ConsistencyLevel.JOINTLY_CONSISTENT: "JointlyConsistent",
}
_CONSISTENCY_BY_LABEL = {label: level for level, label in _CONSISTENCY_LABELS.items()}
_CONSISTENCY_BY_IRI = {
    V.AAP_UNCERTIFIED: ConsistencyLevel.UNCERTIFIED,
    V.AAP_TBOX_CONSISTENT: ConsistencyLevel.TBOX_CONSISTENT,
    V.AAP_JOINTLY_CONSISTENT: ConsistencyLevel.JOINTLY_CONSISTENT,
}


def consistency_label(level: ConsistencyLevel) -> str:
    return _CONSISTENCY_LABELS[level]


def consistency_from_label(label: str) -> ConsistencyLevel:
    return _CONSISTENCY_BY_LABEL[label]


@dataclass(frozen=True)
class ConsistencyStatus:
    level: ConsistencyLevel = ConsistencyLevel.UNCERTIFIED
    certificate_source: Optional[Iri] = None


class ClosureSemantics(Enum):
    GLOBAL_CWA = "GlobalCwa"
    PREDICATE_LCWA = "PredicateLcwa"
    SHACL_CLOSED_SHAPE = "ShaclClosedShape"


@dataclass(frozen=True)
class ClosureDeclaration:
    predicate: Iri
    semantics: ClosureSemantics
    source: str
    target_class: Optional[Iri] = None

    def __post_init__(self):
        if self.semantics is ClosureSemantics.GLOBAL_CWA and self.predicate != V.AAP_ALL_PREDICATES:
            raise ValueError("global closed-world declarations carry the wildcard predicate")


@dataclass(frozen=True)
class RegimeExceedsExpressivity:
    declared: EntailmentRegime
    maximum: DlFragment


@dataclass(frozen=True)
class TrustScopeProfile:
    consistency: ConsistencyStatus = ConsistencyStatus()
    regime: EntailmentRegime = EntailmentRegime.SIMPLE
    closures: frozenset[ClosureDeclaration] = frozenset()
    regime_conflict: Optional[RegimeExceedsExpressivity] = None


@dataclass(frozen=True)
class EpistemicRequirement:
    min_regime: EntailmentRegime = EntailmentRegime.SIMPLE
    closed_predicates_needed: frozenset[Iri] = frozenset()
    min_consistency: ConsistencyLevel = ConsistencyLevel.UNCERTIFIED


@dataclass(frozen=True)
class RegimeShortfall:
    required: EntailmentRegime
    declared: EntailmentRegime


@dataclass(frozen=True)
class ClosureShortfall:
    missing: frozenset[Iri]


@dataclass(frozen=True)
class ConsistencyShortfall:
    required: ConsistencyLevel
    declared: ConsistencyLevel


Shortfall = Union[RegimeShortfall, ClosureShortfall, ConsistencyShortfall]


# -- SHACL closed shapes -------------------------------------------------------


def _shacl_list_members(g: Graph, head: Term) -> list[Term]:
    members = []
    seen = set()
    node = head
    while isinstance(node, (Iri, BlankNode)) and node != V.RDF_NIL and node not in seen:
        seen.add(node)
        first = g.value(node, V.RDF_FIRST)
        if first is None:
            break
        members.append(first)
        node = g.value(node, V.RDF_REST)
        if node is None:
            break
    return members


def shacl_closure_declarations(g: Graph) -> list[ClosureDeclaration]:
    """Closure declarations contributed by closed node shapes.

    Only shapes with closed=true and an explicit target class count. The
    target class itself and each named, non-ignored property path become one
    declaration each, scoped to the target class.
    """
    out: list[ClosureDeclaration] = []
    for closed_triple in g.match(None, V.SH_CLOSED):
        obj = closed_triple.object
        if not (isinstance(obj, Literal) and obj.lexical == "true"):
            continue
        shape = closed_triple.subject
        target = g.value(shape, V.SH_TARGET_CLASS)
        if not isinstance(target, Iri):
            continue
        ignored: set[Term] = set()
        ignored_head = g.value(shape, V.SH_IGNORED_PROPERTIES)
        if ignored_head is not None:
            ignored = set(_shacl_list_members(g, ignored_head))
        source = str(shape)
        out.append(
            ClosureDeclaration(
                predicate=target,
                semantics=ClosureSemantics.SHACL_CLOSED_SHAPE,
                source=source,
                target_class=target,
            )
        )
        for prop_triple in g.match(shape, V.SH_PROPERTY):
            path = g.value(prop_triple.object, V.SH_PATH)
            if isinstance(path, Iri) and path not in ignored:
                out.append(
                    ClosureDeclaration(
                        predicate=path,
                        semantics=ClosureSemantics.SHACL_CLOSED_SHAPE,
                        source=source,
                        target_class=target,
                    )
                )
    return out


# -- extraction ----------------------------------------------------------------


def declared_regimes(metadata: Graph) -> list[EntailmentRegime]:
    found = []
    for predicate in (V.SD_DEFAULT_ENTAILMENT_REGIME, V.AAP_ENTAILMENT_REGIME):
        for t in metadata.match(None, predicate):
            if isinstance(t.object, Iri) and t.object in _REGIME_BY_IRI:
                found.append(_REGIME_BY_IRI[t.object])
    return found


def extract_trust_scope(kg: KgDescriptor, expressivity: ExpressivityProfile) -> TrustScopeProfile:
    """Read the trust profile out of the metadata graph.

    A declared regime that the schema fragment cannot express is clamped to
    Simple and the conflict is recorded on the profile; nothing is raised.
    """
    metadata = kg.metadata_graph

    regimes = declared_regimes(metadata)
    conflict = None
    if not regimes:
        regime = EntailmentRegime.SIMPLE
    else:
        joined = fragment_join(_REGIME_AS_FRAGMENT[r] for r in regimes)
        declared = _FRAGMENT_AS_REGIME.get(joined, EntailmentRegime.OWL_DL)
        if fragment_leq(_REGIME_AS_FRAGMENT[declared], expressivity.fragment) is True:
            regime = declared
        else:
            conflict = RegimeExceedsExpressivity(declared=declared, maximum=expressivity.fragment)
            regime = EntailmentRegime.SIMPLE

    closures: set[ClosureDeclaration] = set(shacl_closure_declarations(metadata))
    for t in metadata.match(None, V.AAP_CLOSED_PREDICATE):
        if isinstance(t.object, Iri):
            closures.add(
                ClosureDeclaration(
                    predicate=t.object,
                    semantics=ClosureSemantics.PREDICATE_LCWA,
                    source=str(t.subject),
                )
            )
    for t in metadata.match(None, V.AAP_WORLD_ASSUMPTION, V.AAP_CLOSED_WORLD):
        closures.add(
            ClosureDeclaration(
                predicate=V.AAP_ALL_PREDICATES,
                semantics=ClosureSemantics.GLOBAL_CWA,
                source=str(t.subject),
            )
        )

    level = ConsistencyLevel.UNCERTIFIED
    source = None
    for t in metadata.match(None, V.AAP_CONSISTENCY_STATUS):
        if isinstance(t.object, Iri) and t.object in _CONSISTENCY_BY_IRI:
            declared_level = _CONSISTENCY_BY_IRI[t.object]
            if declared_level > level:
                level = declared_level
    if level > ConsistencyLevel.UNCERTIFIED:
        cert = metadata.value(None, V.AAP_CERTIFICATE_SOURCE)
        if isinstance(cert, Iri):
            source = cert

    return TrustScopeProfile(
        consistency=ConsistencyStatus(level=level, certificate_source=source),
        regime=regime,
        closures=frozenset(closures),
        regime_conflict=conflict,
    )


def closed_predicates(profile: TrustScopeProfile) -> frozenset[Iri]:
    """Predicates with declared closure; the wildcard marker means all of them."""
    out = set()
    for decl in profile.closures:
        out.add(decl.predicate)
    return frozenset(out)


def satisfies(
    profile: TrustScopeProfile, req: EpistemicRequirement
) -> tuple[bool, Optional[Shortfall]]:
    """Check profile >= requirement; shortfalls report in regime, closure, consistency order."""
    if regime_leq(req.min_regime, profile.regime) is not True:
        return False, RegimeShortfall(required=req.min_regime, declared=profile.regime)
    closed = closed_predicates(profile)
    if V.AAP_ALL_PREDICATES not in closed:
        missing = req.closed_predicates_needed - closed
        if missing:
            return False, ClosureShortfall(missing=frozenset(missing))
    if profile.consistency.level < req.min_consistency:
        return False, ConsistencyShortfall(
            required=req.min_consistency, declared=profile.consistency.level
        )
    return True, None


def profile_dominates(a: TrustScopeProfile, b: TrustScopeProfile) -> bool:
    """Componentwise order: regime, closure set inclusion, consistency level."""
    if regime_leq(b.regime, a.regime) is not True:
        return False
    closed_a = closed_predicates(a)
    closed_b = closed_predicates(b)
    if V.AAP_ALL_PREDICATES not in closed_a and not closed_b <= closed_a:
        return False
    return a.consistency.level >= b.consistency.level
