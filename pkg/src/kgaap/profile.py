"""Building, serializing and reloading affordance-profile documents.

A profile document is an RDF graph in the AAP vocabulary carrying all four
dimension results, the closure membership needed for composition, per-task
module signatures, and provenance (tool version, input digests, timestamp).
Reloading a document and matching from it gives the same verdicts as
matching from the raw inputs; emission is deterministic apart from the
timestamp, which comes from an injectable clock.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Optional

from .version import __version__
from .discoverability import Band, DiscoverabilityScore, FitnessVerdict, discoverability
from .errors import PartialProfileWarning, ProfileFormatError
from .expressivity import DlFragment, ExpressivityProfile, expressivity_profile
from .grounding import (
    ClosureEntry,
    CoverageResult,
    GroundingRoute,
    ResidentSignature,
    SignatureClosure,
    coverage,
    grounding_route,
    signature_closure,
)
from .matcher import AapProfile, ComposeEntry, MediatorDescriptor
from .model import BlankNode, Graph, Iri, KgDescriptor, Literal, Triple
from .modules import extract_module
from .serializer import canonical_ntriples
from .signature import NameKind, signature
from .tasks import TaskCatalogue
from .trust import (
    ClosureDeclaration,
    ClosureSemantics,
    ConsistencyLevel,
    ConsistencyStatus,
    EntailmentRegime,
    RegimeExceedsExpressivity,
    TrustScopeProfile,
    consistency_label,
    extract_trust_scope,
)
from . import vocab as V

Clock = Callable[[], str]


def utc_clock() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def graph_digest(g: Graph) -> str:
    return "sha256:" + hashlib.sha256(canonical_ntriples(g)).hexdigest()


@dataclass(frozen=True)
class AapProfileDocument:
    graph: Graph
    profile: AapProfile
    closure_members: frozenset
    module_names: dict[Iri, frozenset[Iri]]


_FRAGMENT_IRI = {DlFragment(k): v for k, v in V.AAP_FRAGMENT_VALUES.items()}
_FRAGMENT_BY_IRI = {v: k for k, v in _FRAGMENT_IRI.items()}
_REGIME_IRI = {EntailmentRegime(name): iri for name, iri in V.REGIME_IRIS.items()}
_REGIME_BY_IRI = {iri: r for r, iri in _REGIME_IRI.items()}
_CONSISTENCY_IRI = {
    ConsistencyLevel.UNCERTIFIED: V.AAP_UNCERTIFIED,
    ConsistencyLevel.TBOX_CONSISTENT: V.AAP_TBOX_CONSISTENT,
    ConsistencyLevel.JOINTLY_CONSISTENT: V.AAP_JOINTLY_CONSISTENT,
}
_CONSISTENCY_BY_IRI = {v: k for k, v in _CONSISTENCY_IRI.items()}
_SEMANTICS_IRI = {
    ClosureSemantics.GLOBAL_CWA: V.AAP_GLOBAL_CWA,
    ClosureSemantics.PREDICATE_LCWA: V.AAP_PREDICATE_LCWA,
    ClosureSemantics.SHACL_CLOSED_SHAPE: V.AAP_SHACL_CLOSED_SHAPE,
}
_SEMANTICS_BY_IRI = {v: k for k, v in _SEMANTICS_IRI.items()}


def _rational(f: Fraction) -> Literal:
    return Literal(str(f), datatype=V.AAP_RATIONAL)


def _bool(value: bool) -> Literal:
    return Literal("true" if value else "false", datatype=Iri(V.XSD + "boolean"))


def _int(value: int) -> Literal:
    return Literal(str(value), datatype=Iri(V.XSD + "integer"))


def build_profile(
    kg: KgDescriptor, catalogue: TaskCatalogue, reference: Optional[Graph] = None
) -> tuple[AapProfile, SignatureClosure, dict[Iri, frozenset[Iri]]]:
    """Run the full pipeline: expressivity, grounding per task, trust, discoverability."""
    expressivity = expressivity_profile(kg)
    closure = signature_closure(kg.schema_graph, reference)
    route, _diag = grounding_route(kg.schema_graph, expressivity.fragment)
    if route is GroundingRoute.UNSUPPORTED:
        warnings.warn(
            PartialProfileWarning(
                f"{kg.id}: grounding route unsupported, coverage is a sound lower bound"
            )
        )
    per_task = {}
    module_names: dict[Iri, frozenset[Iri]] = {}
    for task in catalogue:
        per_task[task.id] = coverage(task.signature, closure)
        module = extract_module(kg.schema_graph, task.signature.names())
        module_names[task.id] = signature(module, "all")
    trust = extract_trust_scope(kg, expressivity)
    disco = discoverability(kg.metadata_graph, catalogue)
    profile = AapProfile(
        kg_id=kg.id,
        expressivity=expressivity,
        trust=trust,
        per_task_coverage=per_task,
        discoverability=disco,
        grounding_route=route,
        coverage_lower_bound=route is GroundingRoute.UNSUPPORTED,
    )
    return profile, closure, module_names


def emit_profile(
    kg: KgDescriptor,
    catalogue: TaskCatalogue,
    reference: Optional[Graph] = None,
    clock: Clock = utc_clock,
) -> AapProfileDocument:
    """Compute the profile and render it as an AAP document graph."""
    profile, closure, module_names = build_profile(kg, catalogue, reference)

    node = Iri(kg.id.value + "#profile")
    triples: list[Triple] = [
        Triple(node, V.RDF_TYPE, V.AAP_PROFILE),
        Triple(node, V.AAP_DESCRIBES, kg.id),
        Triple(node, V.AAP_TOOL_VERSION, Literal(__version__)),
        Triple(node, V.AAP_GENERATED_AT, Literal(clock(), datatype=Iri(V.XSD + "dateTime"))),
        Triple(node, V.AAP_SCHEMA_DIGEST, Literal(graph_digest(kg.schema_graph))),
        Triple(node, V.AAP_DATA_DIGEST, Literal(graph_digest(kg.data_graph))),
        Triple(node, V.AAP_METADATA_DIGEST, Literal(graph_digest(kg.metadata_graph))),
    ]
    if reference is not None:
        triples.append(Triple(node, V.AAP_REFERENCE_DIGEST, Literal(graph_digest(reference))))

    # dimension E
    triples.append(Triple(node, V.AAP_FRAGMENT, _FRAGMENT_IRI[profile.expressivity.fragment]))
    triples.append(
        Triple(node, V.AAP_CONFORMANCE_RATIO, _rational(profile.expressivity.conformance_ratio))
    )
    for i, (kind, count) in enumerate(sorted(profile.expressivity.axiom_census.items())):
        b = BlankNode(f"x{i:03d}")
        triples.append(Triple(node, V.AAP_AXIOM_CENSUS_ENTRY, b))
        triples.append(Triple(b, V.AAP_AXIOM_KIND, Literal(kind)))
        triples.append(Triple(b, V.AAP_AXIOM_COUNT, _int(count)))

    # dimension R
    triples.append(Triple(node, V.AAP_ENTAILMENT_REGIME, _REGIME_IRI[profile.trust.regime]))
    triples.append(
        Triple(node, V.AAP_CONSISTENCY_STATUS, _CONSISTENCY_IRI[profile.trust.consistency.level])
    )
    if profile.trust.consistency.certificate_source is not None:
        triples.append(
            Triple(node, V.AAP_CERTIFICATE_SOURCE, profile.trust.consistency.certificate_source)
        )
    for i, decl in enumerate(
        sorted(profile.trust.closures, key=lambda d: (str(d.predicate), d.semantics.value, d.source))
    ):
        b = BlankNode(f"c{i:03d}")
        triples.append(Triple(node, V.AAP_CLOSURE_DECLARATION, b))
        triples.append(Triple(b, V.AAP_PREDICATE, decl.predicate))
        triples.append(Triple(b, V.AAP_SEMANTICS, _SEMANTICS_IRI[decl.semantics]))
        triples.append(Triple(b, V.AAP_SOURCE, Literal(decl.source)))
        if decl.target_class is not None:
            triples.append(Triple(b, V.AAP_TARGET_CLASS, decl.target_class))
    if profile.trust.regime_conflict is not None:
        b = BlankNode("rc")
        triples.append(Triple(node, V.AAP_REGIME_CONFLICT, b))
        triples.append(
            Triple(b, V.AAP_DECLARED_REGIME, _REGIME_IRI[profile.trust.regime_conflict.declared])
        )
        triples.append(
            Triple(b, V.AAP_MAXIMUM_FRAGMENT, _FRAGMENT_IRI[profile.trust.regime_conflict.maximum])
        )

    # dimension G: base signature and derived members
    for name in sorted(closure.base.concepts(), key=str):
        triples.append(Triple(node, V.AAP_RESIDENT_CONCEPT, name))
    for name in sorted(closure.base.roles(), key=str):
        triples.append(Triple(node, V.AAP_RESIDENT_ROLE, name))
    for i, entry in enumerate(closure.derived):
        b = BlankNode(f"d{i:03d}")
        triples.append(Triple(node, V.AAP_DERIVED_NAME, b))
        triples.append(Triple(b, V.AAP_NAME, entry.name))
        triples.append(
            Triple(b, V.AAP_KIND, V.AAP_CONCEPT if entry.kind is NameKind.CONCEPT else V.AAP_ROLE)
        )
        if entry.weak:
            triples.append(Triple(b, V.AAP_WEAK, _bool(True)))
        if entry.via_reference:
            triples.append(Triple(b, V.AAP_VIA_REFERENCE, _bool(True)))
        if entry.provenance:
            triples.append(Triple(b, V.AAP_PROVENANCE, Literal(" | ".join(entry.provenance))))
    triples.append(Triple(node, V.AAP_GROUNDING_ROUTE, Literal(profile.grounding_route.value)))
    if profile.coverage_lower_bound:
        triples.append(Triple(node, V.AAP_LOWER_BOUND, _bool(True)))

    # per-task coverage, module signature and metadata fitness verdict
    ordered_tasks = sorted(catalogue, key=lambda t: str(t.id))
    for i, task in enumerate(ordered_tasks):
        cov = profile.per_task_coverage[task.id]
        b = BlankNode(f"t{i:03d}")
        triples.append(Triple(node, V.AAP_TASK_COVERAGE, b))
        triples.append(Triple(b, V.AAP_TASK, task.id))
        triples.append(Triple(b, V.AAP_COVERAGE_SCORE, _rational(cov.score)))
        for name in sorted(cov.covered, key=str):
            triples.append(Triple(b, V.AAP_COVERED_NAME, name))
        for name in sorted(cov.gap, key=str):
            triples.append(Triple(b, V.AAP_GAP_NAME, name))
        for name in sorted(cov.kind_mismatches, key=str):
            triples.append(Triple(b, V.AAP_KIND_MISMATCH_NAME, name))
        for name in sorted(module_names[task.id], key=str):
            triples.append(Triple(b, V.AAP_MODULE_NAME, name))
        verdict = profile.discoverability.per_task[task.id]
        triples.append(Triple(b, V.AAP_FITNESS_VERDICT, Literal(verdict.value)))

    # dimension D
    triples.append(
        Triple(node, V.AAP_DISCOVERABILITY_SCORE, _rational(profile.discoverability.value))
    )
    triples.append(
        Triple(node, V.AAP_DISCOVERABILITY_BAND, Literal(profile.discoverability.band.value))
    )

    return AapProfileDocument(
        graph=Graph(triples),
        profile=profile,
        closure_members=closure.members(),
        module_names=module_names,
    )


# -- loading -------------------------------------------------------------------


def _require_iri(value, what: str) -> Iri:
    if not isinstance(value, Iri):
        raise ProfileFormatError(f"profile document missing {what}")
    return value


def _read_rational(g: Graph, subject, predicate, what: str) -> Fraction:
    value = g.value(subject, predicate)
    if not isinstance(value, Literal):
        raise ProfileFormatError(f"profile document missing {what}")
    try:
        return Fraction(value.lexical)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProfileFormatError(f"bad rational for {what}: {value.lexical!r}") from exc


def load_profile_document(g: Graph) -> AapProfileDocument:
    """Rebuild the in-memory profile from a parsed document graph."""
    node = None
    for s in g.subjects(V.RDF_TYPE, V.AAP_PROFILE):
        node = s
        break
    if node is None:
        raise ProfileFormatError("no aap:Profile node in document")
    kg_id = _require_iri(g.value(node, V.AAP_DESCRIBES), "described KG id")

    fragment_iri = _require_iri(g.value(node, V.AAP_FRAGMENT), "fragment")
    if fragment_iri not in _FRAGMENT_BY_IRI:
        raise ProfileFormatError(f"unknown fragment {fragment_iri}")
    fragment = _FRAGMENT_BY_IRI[fragment_iri]
    conformance = _read_rational(g, node, V.AAP_CONFORMANCE_RATIO, "conformance ratio")
    census = {}
    for t in g.match(node, V.AAP_AXIOM_CENSUS_ENTRY):
        kind = g.value(t.object, V.AAP_AXIOM_KIND)
        count = g.value(t.object, V.AAP_AXIOM_COUNT)
        if isinstance(kind, Literal) and isinstance(count, Literal):
            census[kind.lexical] = int(count.lexical)
    expressivity = ExpressivityProfile(
        fragment=fragment, conformance_ratio=conformance, axiom_census=census
    )

    regime_iri = _require_iri(g.value(node, V.AAP_ENTAILMENT_REGIME), "entailment regime")
    if regime_iri not in _REGIME_BY_IRI:
        raise ProfileFormatError(f"unknown regime {regime_iri}")
    regime = _REGIME_BY_IRI[regime_iri]
    consistency_iri = g.value(node, V.AAP_CONSISTENCY_STATUS)
    level = _CONSISTENCY_BY_IRI.get(consistency_iri, ConsistencyLevel.UNCERTIFIED)
    cert = g.value(node, V.AAP_CERTIFICATE_SOURCE)
    closures = set()
    for t in g.match(node, V.AAP_CLOSURE_DECLARATION):
        pred = g.value(t.object, V.AAP_PREDICATE)
        sem = g.value(t.object, V.AAP_SEMANTICS)
        source = g.value(t.object, V.AAP_SOURCE)
        target = g.value(t.object, V.AAP_TARGET_CLASS)
        if isinstance(pred, Iri) and sem in _SEMANTICS_BY_IRI:
            closures.add(
                ClosureDeclaration(
                    predicate=pred,
                    semantics=_SEMANTICS_BY_IRI[sem],
                    source=source.lexical if isinstance(source, Literal) else "",
                    target_class=target if isinstance(target, Iri) else None,
                )
            )
    conflict = None
    conflict_node = g.value(node, V.AAP_REGIME_CONFLICT)
    if conflict_node is not None:
        declared = g.value(conflict_node, V.AAP_DECLARED_REGIME)
        maximum = g.value(conflict_node, V.AAP_MAXIMUM_FRAGMENT)
        if declared in _REGIME_BY_IRI and maximum in _FRAGMENT_BY_IRI:
            conflict = RegimeExceedsExpressivity(
                declared=_REGIME_BY_IRI[declared], maximum=_FRAGMENT_BY_IRI[maximum]
            )
    trust = TrustScopeProfile(
        consistency=ConsistencyStatus(
            level=level, certificate_source=cert if isinstance(cert, Iri) else None
        ),
        regime=regime,
        closures=frozenset(closures),
        regime_conflict=conflict,
    )

    base_names = set()
    for t in g.match(node, V.AAP_RESIDENT_CONCEPT):
        if isinstance(t.object, Iri):
            base_names.add((t.object, NameKind.CONCEPT))
    for t in g.match(node, V.AAP_RESIDENT_ROLE):
        if isinstance(t.object, Iri):
            base_names.add((t.object, NameKind.ROLE))
    derived = []
    for t in g.match(node, V.AAP_DERIVED_NAME):
        name = g.value(t.object, V.AAP_NAME)
        kind_iri = g.value(t.object, V.AAP_KIND)
        if not isinstance(name, Iri):
            continue
        weak = g.value(t.object, V.AAP_WEAK)
        via = g.value(t.object, V.AAP_VIA_REFERENCE)
        prov = g.value(t.object, V.AAP_PROVENANCE)
        derived.append(
            ClosureEntry(
                name=name,
                kind=NameKind.ROLE if kind_iri == V.AAP_ROLE else NameKind.CONCEPT,
                provenance=tuple(prov.lexical.split(" | ")) if isinstance(prov, Literal) else (),
                weak=isinstance(weak, Literal) and weak.lexical == "true",
                via_reference=isinstance(via, Literal) and via.lexical == "true",
            )
        )
    closure = SignatureClosure(
        base=ResidentSignature(frozenset(base_names)),
        derived=tuple(sorted(derived, key=lambda e: (str(e.name), e.kind.value))),
    )

    route_lit = g.value(node, V.AAP_GROUNDING_ROUTE)
    route = (
        GroundingRoute(route_lit.lexical)
        if isinstance(route_lit, Literal)
        else GroundingRoute.RDFS_REACHABILITY
    )
    lower = g.value(node, V.AAP_LOWER_BOUND)
    lower_bound = isinstance(lower, Literal) and lower.lexical == "true"

    per_task: dict[Iri, CoverageResult] = {}
    per_task_verdicts: dict[Iri, FitnessVerdict] = {}
    module_names: dict[Iri, frozenset[Iri]] = {}
    for t in g.match(node, V.AAP_TASK_COVERAGE):
        tc = t.object
        task_id = g.value(tc, V.AAP_TASK)
        if not isinstance(task_id, Iri):
            continue
        score = _read_rational(g, tc, V.AAP_COVERAGE_SCORE, f"coverage score for {task_id}")
        covered = frozenset(o for o in g.objects(tc, V.AAP_COVERED_NAME) if isinstance(o, Iri))
        gap = frozenset(o for o in g.objects(tc, V.AAP_GAP_NAME) if isinstance(o, Iri))
        mism = frozenset(o for o in g.objects(tc, V.AAP_KIND_MISMATCH_NAME) if isinstance(o, Iri))
        per_task[task_id] = CoverageResult(
            score=score, covered=covered, gap=gap, kind_mismatches=mism
        )
        module_names[task_id] = frozenset(
            o for o in g.objects(tc, V.AAP_MODULE_NAME) if isinstance(o, Iri)
        )
        verdict_lit = g.value(tc, V.AAP_FITNESS_VERDICT)
        if isinstance(verdict_lit, Literal):
            per_task_verdicts[task_id] = FitnessVerdict(verdict_lit.lexical)

    value = _read_rational(g, node, V.AAP_DISCOVERABILITY_SCORE, "discoverability score")
    band_lit = g.value(node, V.AAP_DISCOVERABILITY_BAND)
    band = Band(band_lit.lexical) if isinstance(band_lit, Literal) else Band.LOW
    disco = DiscoverabilityScore(
        value=value,
        decidable=frozenset(
            tid
            for tid, verdict in per_task_verdicts.items()
            if verdict is not FitnessVerdict.UNDECIDABLE
        ),
        per_task=per_task_verdicts,
        band=band,
    )

    profile = AapProfile(
        kg_id=kg_id,
        expressivity=expressivity,
        trust=trust,
        per_task_coverage=per_task,
        discoverability=disco,
        grounding_route=route,
        coverage_lower_bound=lower_bound,
    )
    return AapProfileDocument(
        graph=g,
        profile=profile,
        closure_members=closure.members(),
        module_names=module_names,
    )


def compose_entry_from_document(doc: AapProfileDocument, task_id: Iri) -> ComposeEntry:
    return ComposeEntry(
        profile=doc.profile,
        closure_members=frozenset(doc.closure_members),
        module_names=doc.module_names.get(task_id, frozenset()),
    )


# -- mediators -----------------------------------------------------------------


def mediator_graph(mediator: MediatorDescriptor) -> Graph:
    triples = [Triple(mediator.id, V.RDF_TYPE, V.AAP_MEDIATOR)]
    for name in sorted(mediator.input_signature, key=str):
        triples.append(Triple(mediator.id, V.AAP_INPUT_NAME, name))
    for name in sorted(mediator.output_signature, key=str):
        triples.append(Triple(mediator.id, V.AAP_OUTPUT_NAME, name))
    if mediator.preservation_claim:
        triples.append(
            Triple(mediator.id, V.AAP_PRESERVATION_CLAIM, Literal(mediator.preservation_claim))
        )
    return Graph(triples)


def load_mediator(g: Graph) -> MediatorDescriptor:
    node = None
    for s in g.subjects(V.RDF_TYPE, V.AAP_MEDIATOR):
        node = s
        break
    if node is None or not isinstance(node, Iri):
        raise ProfileFormatError("no aap:Mediator node in document")
    inputs = frozenset(o for o in g.objects(node, V.AAP_INPUT_NAME) if isinstance(o, Iri))
    outputs = frozenset(o for o in g.objects(node, V.AAP_OUTPUT_NAME) if isinstance(o, Iri))
    claim = g.value(node, V.AAP_PRESERVATION_CLAIM)
    if not inputs or not outputs:
        raise ProfileFormatError(f"mediator {node} must declare input and output names")
    return MediatorDescriptor(
        id=node,
        input_signature=inputs,
        output_signature=outputs,
        preservation_claim=claim.lexical if isinstance(claim, Literal) else "",
    )
