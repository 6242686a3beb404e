"""Feasibility verdicts, failure diagnosis, candidate ranking and composition.

A task is feasible against a profile exactly when its signature is fully
covered and the trust profile dominates the task's requirement. Infeasible
verdicts carry a single attributed dimension, chosen by fixed precedence
(expressivity, then grounding, then trust), and the remedy that dimension
prescribes; any further failing dimensions are listed as secondary detail.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .discoverability import DiscoverabilityScore
from .errors import IncoherentClosureWarning, UnknownTask
from .expressivity import ExpressivityProfile
from .grounding import CoverageResult, GroundingRoute, SigName, SignatureClosure
from .model import Graph, Iri
from .modules import extract_module
from .signature import signature
from .tasks import TaskType
from .trust import Shortfall, TrustScopeProfile, closed_predicates, satisfies

#: conformance below this treats the KG's content as non-compliant with its schema
DEFAULT_CONFORMANCE_FLOOR = Fraction(9, 10)


class FailureDimension(Enum):
    G = "G"
    R = "R"
    E = "E"


class Remedy(Enum):
    VOCABULARY_MEDIATION = "VocabularyMediation"
    KG_RESELECTION = "KgReselection"
    CONTENT_OR_SCHEMA_REPAIR = "ContentOrSchemaRepair"
    NONE = "None"


REMEDY_FOR = {
    FailureDimension.G: Remedy.VOCABULARY_MEDIATION,
    FailureDimension.R: Remedy.KG_RESELECTION,
    FailureDimension.E: Remedy.CONTENT_OR_SCHEMA_REPAIR,
}


@dataclass(frozen=True)
class AapProfile:
    kg_id: Iri
    expressivity: ExpressivityProfile
    trust: TrustScopeProfile
    per_task_coverage: Mapping[Iri, CoverageResult]
    discoverability: DiscoverabilityScore
    grounding_route: GroundingRoute = GroundingRoute.RDFS_REACHABILITY
    coverage_lower_bound: bool = False


@dataclass(frozen=True)
class VerdictDetail:
    gap: frozenset[Iri] = frozenset()
    kind_mismatches: frozenset[Iri] = frozenset()
    shortfall: Optional[Shortfall] = None
    regime_conflict: bool = False
    conformance_ratio: Optional[Fraction] = None
    secondary: tuple[FailureDimension, ...] = ()


@dataclass(frozen=True)
class FeasibilityVerdict:
    kg_id: Iri
    task_id: Iri
    feasible: bool
    failure_dimension: Optional[FailureDimension]
    remedy: Remedy
    detail: VerdictDetail


@dataclass(frozen=True)
class MediatorDescriptor:
    id: Iri
    input_signature: frozenset[Iri]
    output_signature: frozenset[Iri]
    preservation_claim: str = ""

    def __post_init__(self):
        if not self.input_signature or not self.output_signature:
            raise ValueError("mediator signatures must be non-empty")


def feasible(
    profile: AapProfile,
    task: TaskType,
    conformance_floor: Fraction = DEFAULT_CONFORMANCE_FLOOR,
) -> FeasibilityVerdict:
    """Evaluate the feasibility predicate and attribute any failure."""
    cov = profile.per_task_coverage.get(task.id)
    if cov is None:
        raise UnknownTask(f"profile {profile.kg_id} has no coverage for task {task.id}")
    sat, shortfall = satisfies(profile.trust, task.requirement)
    is_feasible = cov.score == 1 and sat

    if is_feasible:
        return FeasibilityVerdict(
            kg_id=profile.kg_id,
            task_id=task.id,
            feasible=True,
            failure_dimension=None,
            remedy=Remedy.NONE,
            detail=VerdictDetail(conformance_ratio=profile.expressivity.conformance_ratio),
        )

    failing: list[FailureDimension] = []
    expressivity_broken = (
        profile.trust.regime_conflict is not None
        or profile.expressivity.conformance_ratio < conformance_floor
    )
    if expressivity_broken:
        failing.append(FailureDimension.E)
    if cov.score != 1:
        failing.append(FailureDimension.G)
    if not sat:
        failing.append(FailureDimension.R)

    primary = failing[0]
    return FeasibilityVerdict(
        kg_id=profile.kg_id,
        task_id=task.id,
        feasible=False,
        failure_dimension=primary,
        remedy=REMEDY_FOR[primary],
        detail=VerdictDetail(
            gap=cov.gap,
            kind_mismatches=cov.kind_mismatches,
            shortfall=shortfall,
            regime_conflict=profile.trust.regime_conflict is not None,
            conformance_ratio=profile.expressivity.conformance_ratio,
            secondary=tuple(failing[1:]),
        ),
    )


_FAILURE_ORDER = {None: 0, FailureDimension.G: 1, FailureDimension.R: 2, FailureDimension.E: 3}


def rank(
    profiles: Sequence[AapProfile],
    task: TaskType,
    conformance_floor: Fraction = DEFAULT_CONFORMANCE_FLOOR,
) -> list[FeasibilityVerdict]:
    """Total deterministic order: feasible first, then grouped by failure dimension.

    Ties break by descending discoverability, then descending conformance,
    then ascending kg id.
    """
    verdicts = [feasible(p, task, conformance_floor) for p in profiles]
    by_id = {p.kg_id: p for p in profiles}

    def key(v: FeasibilityVerdict):
        p = by_id[v.kg_id]
        return (
            0 if v.feasible else 1,
            _FAILURE_ORDER[v.failure_dimension],
            -p.discoverability.value,
            -p.expressivity.conformance_ratio,
            str(v.kg_id),
        )

    return sorted(verdicts, key=key)


# -- composition ----------------------------------------------------------------


@dataclass(frozen=True)
class ComposeEntry:
    """One KG's contribution to a composition: its profile, closure members and
    the signature of its task-scoped module."""

    profile: AapProfile
    closure_members: frozenset[SigName]
    module_names: frozenset[Iri]

    @classmethod
    def from_schema(
        cls, profile: AapProfile, closure: SignatureClosure, schema: Graph, task: TaskType
    ) -> "ComposeEntry":
        module = extract_module(schema, task.signature.names())
        return cls(
            profile=profile,
            closure_members=closure.members(),
            module_names=signature(module, "all"),
        )


class CompositionVerdict(Enum):
    CLOSED = "Closed"
    OPEN_GAP = "OpenGap"


@dataclass(frozen=True)
class CompositionPlan:
    kg_ids: tuple[Iri, ...]
    union_members: frozenset[SigName]
    residual_gap: frozenset[Iri]
    candidate_mediators: dict[Iri, tuple[Iri, ...]]
    verdict: CompositionVerdict


def mediator_module_filter(mediator: MediatorDescriptor, schema: Graph, task) -> bool:
    """Keep only mediators whose inputs touch the task-scoped module of the schema."""
    names = task.signature.names() if isinstance(task, TaskType) else frozenset(task)
    module = extract_module(schema, names)
    return bool(mediator.input_signature & signature(module, "all"))


def compose(
    entries: Sequence[ComposeEntry],
    task: TaskType,
    mediators: Iterable[MediatorDescriptor] = (),
) -> CompositionPlan:
    """Check the task signature against the union of signature closures.

    A gap name is closable by a mediator that outputs it, whose inputs all
    live inside the union closure, and whose inputs touch at least one
    composed KG's task-scoped module. Mediators are never invoked.
    """
    if not entries:
        raise ValueError("compose needs at least one profile")

    union: set[SigName] = set()
    for e in entries:
        union |= e.closure_members
    union_names = {n for n, _ in union}

    _warn_incoherent_closures(entries)

    initial_gap = {
        name for name, kind in task.signature.entries if (name, kind) not in union
    }

    candidates: dict[Iri, tuple[Iri, ...]] = {}
    residual = set()
    mediator_list = sorted(mediators, key=lambda m: str(m.id))
    for gap_name in sorted(initial_gap, key=str):
        found = []
        for m in mediator_list:
            if gap_name not in m.output_signature:
                continue
            if not m.input_signature <= union_names:
                continue
            if not any(m.input_signature & e.module_names for e in entries):
                continue
            found.append(m.id)
        if found:
            candidates[gap_name] = tuple(found)
        else:
            residual.add(gap_name)

    return CompositionPlan(
        kg_ids=tuple(e.profile.kg_id for e in entries),
        union_members=frozenset(union),
        residual_gap=frozenset(residual),
        candidate_mediators=candidates,
        verdict=CompositionVerdict.CLOSED if not residual else CompositionVerdict.OPEN_GAP,
    )


def _warn_incoherent_closures(entries: Sequence[ComposeEntry]):
    """Shared names closed in one KG but not another make negative inference
    over the composite unsound; surfaced as a warning, never a verdict change."""
    if len(entries) < 2:
        return
    for i, a in enumerate(entries):
        closed_a = closed_predicates(a.profile.trust)
        names_a = {n for n, _ in a.closure_members}
        for b in entries[i + 1 :]:
            closed_b = closed_predicates(b.profile.trust)
            names_b = {n for n, _ in b.closure_members}
            shared = names_a & names_b
            conflicted = (closed_a ^ closed_b) & shared
            if conflicted:
                warnings.warn(
                    IncoherentClosureWarning(
                        f"{a.profile.kg_id} and {b.profile.kg_id} disagree on closure of: "
                        + ", ".join(sorted(str(n) for n in conflicted))
                    )
                )
