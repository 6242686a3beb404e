"""Dimension D: what share of a task catalogue is decidable from metadata alone.

The fitness check never touches schema or data graphs; it reads the RDFS-
expanded metadata graph for grounding assertions, resident-signature
listings, per-task coverage records, entailment-regime declarations,
completeness declarations and consistency certificates. Each condition is
three-valued (holds, fails, unknown); a task is decidable when the combined
fitness verdict is, in either direction.

Metadata is trusted as accurate: contradictory assertions are out of
contract, and when they occur anyway, positive statements win.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .grounding import SigName
from .inference import rdfs_expand
from .model import Graph, Iri, Literal
from .signature import NameKind
from .tasks import TaskCatalogue, TaskType
from .trust import (
    ConsistencyLevel,
    EntailmentRegime,
    _CONSISTENCY_BY_IRI,
    declared_regimes,
    regime_leq,
    shacl_closure_declarations,
)
from .errors import EmptyCatalogue
from . import vocab as V


class FitnessVerdict(Enum):
    DECIDABLE_FIT = "DecidableFit"
    DECIDABLE_UNFIT = "DecidableUnfit"
    UNDECIDABLE = "Undecidable"


class Band(Enum):
    LOW = "low"
    MED = "med"
    HIGH = "high"


#: band thresholds are a reporting convention, not measured quantities:
#: low = [0, 1/3), med = [1/3, 2/3), high = [2/3, 1]
BAND_THRESHOLDS = (Fraction(1, 3), Fraction(2, 3))


def band_for(value: Fraction) -> Band:
    if value < BAND_THRESHOLDS[0]:
        return Band.LOW
    if value < BAND_THRESHOLDS[1]:
        return Band.MED
    return Band.HIGH


@dataclass(frozen=True)
class DiscoverabilityScore:
    value: Fraction
    decidable: frozenset[Iri]
    per_task: dict[Iri, FitnessVerdict]
    band: Band


class _Tri(Enum):
    HOLDS = 1
    FAILS = 0
    UNKNOWN = -1


def _joined_regime(regimes: tuple[EntailmentRegime, ...]) -> EntailmentRegime:
    from .expressivity import fragment_join
    from .trust import _FRAGMENT_AS_REGIME, _REGIME_AS_FRAGMENT

    joined = fragment_join(_REGIME_AS_FRAGMENT[r] for r in regimes)
    return _FRAGMENT_AS_REGIME.get(joined, EntailmentRegime.OWL_DL)


@dataclass(frozen=True)
class _MetadataView:
    grounds: frozenset[Iri]
    does_not_ground: frozenset[Iri]
    listing: frozenset[SigName]
    listing_present: bool
    task_scores: dict[Iri, Fraction]
    regimes: tuple[EntailmentRegime, ...]
    closed: frozenset[Iri]
    globally_closed: bool
    open_predicates: frozenset[Iri]
    consistency: ConsistencyLevel | None


def _rational(lit) -> Fraction | None:
    if isinstance(lit, Literal):
        try:
            return Fraction(lit.lexical)
        except (ValueError, ZeroDivisionError):
            return None
    return None


def _view(metadata: Graph) -> _MetadataView:
    g = rdfs_expand(metadata)

    grounds = frozenset(t.object for t in g.match(None, V.AAP_GROUNDS) if isinstance(t.object, Iri))
    negated = frozenset(
        t.object for t in g.match(None, V.AAP_DOES_NOT_GROUND) if isinstance(t.object, Iri)
    )

    listing: set[SigName] = set()
    for t in g.match(None, V.AAP_RESIDENT_CONCEPT):
        if isinstance(t.object, Iri):
            listing.add((t.object, NameKind.CONCEPT))
    for t in g.match(None, V.AAP_RESIDENT_ROLE):
        if isinstance(t.object, Iri):
            listing.add((t.object, NameKind.ROLE))
    for t in g.match(None, V.AAP_DERIVED_NAME):
        name = g.value(t.object, V.AAP_NAME)
        kind = g.value(t.object, V.AAP_KIND)
        if isinstance(name, Iri):
            listing.add((name, NameKind.ROLE if kind == V.AAP_ROLE else NameKind.CONCEPT))

    task_scores: dict[Iri, Fraction] = {}
    for t in g.match(None, V.AAP_TASK_COVERAGE):
        node = t.object
        task = g.value(node, V.AAP_TASK)
        score = _rational(g.value(node, V.AAP_COVERAGE_SCORE))
        if isinstance(task, Iri) and score is not None:
            task_scores[task] = score

    closed = set()
    globally_closed = False
    for decl in shacl_closure_declarations(g):
        closed.add(decl.predicate)
    for t in g.match(None, V.AAP_CLOSED_PREDICATE):
        if isinstance(t.object, Iri):
            closed.add(t.object)
    for _ in g.match(None, V.AAP_WORLD_ASSUMPTION, V.AAP_CLOSED_WORLD):
        globally_closed = True
    open_predicates = frozenset(
        t.object for t in g.match(None, V.AAP_OPEN_PREDICATE) if isinstance(t.object, Iri)
    )

    consistency: ConsistencyLevel | None = None
    for t in g.match(None, V.AAP_CONSISTENCY_STATUS):
        if isinstance(t.object, Iri) and t.object in _CONSISTENCY_BY_IRI:
            level = _CONSISTENCY_BY_IRI[t.object]
            consistency = level if consistency is None else max(consistency, level)

    return _MetadataView(
        grounds=grounds,
        does_not_ground=negated,
        listing=frozenset(listing),
        listing_present=bool(listing),
        task_scores=task_scores,
        regimes=tuple(declared_regimes(g)),
        closed=frozenset(closed),
        globally_closed=globally_closed,
        open_predicates=open_predicates,
        consistency=consistency,
    )


def _grounding_condition(view: _MetadataView, task: TaskType) -> _Tri:
    if task.id in view.task_scores:
        return _Tri.HOLDS if view.task_scores[task.id] == 1 else _Tri.FAILS

    any_unknown = False
    for name, kind in task.signature.entries:
        if name in view.grounds or (name, kind) in view.listing:
            continue
        if name in view.does_not_ground or view.listing_present:
            return _Tri.FAILS
        any_unknown = True
    return _Tri.UNKNOWN if any_unknown else _Tri.HOLDS


def _trust_condition(view: _MetadataView, task: TaskType) -> _Tri:
    req = task.requirement

    if view.regimes:
        declared = _joined_regime(view.regimes)
        if regime_leq(req.min_regime, declared) is not True:
            return _Tri.FAILS
        regime_state = _Tri.HOLDS
    else:
        regime_state = _Tri.UNKNOWN

    closure_state = _Tri.HOLDS
    for predicate in req.closed_predicates_needed:
        if view.globally_closed or predicate in view.closed:
            continue
        if predicate in view.open_predicates:
            return _Tri.FAILS
        closure_state = _Tri.UNKNOWN

    if req.min_consistency is ConsistencyLevel.UNCERTIFIED:
        consistency_state = _Tri.HOLDS
    elif view.consistency is None:
        consistency_state = _Tri.UNKNOWN
    elif view.consistency >= req.min_consistency:
        consistency_state = _Tri.HOLDS
    else:
        return _Tri.FAILS

    states = (regime_state, closure_state, consistency_state)
    return _Tri.HOLDS if all(s is _Tri.HOLDS for s in states) else _Tri.UNKNOWN


def metadata_fitness_decidable(metadata: Graph, task: TaskType) -> FitnessVerdict:
    """Decide fitness for one task from the metadata graph alone."""
    view = _view(metadata)
    return _decide(view, task)


def _decide(view: _MetadataView, task: TaskType) -> FitnessVerdict:
    g_state = _grounding_condition(view, task)
    r_state = _trust_condition(view, task)
    if g_state is _Tri.FAILS or r_state is _Tri.FAILS:
        return FitnessVerdict.DECIDABLE_UNFIT
    if g_state is _Tri.HOLDS and r_state is _Tri.HOLDS:
        return FitnessVerdict.DECIDABLE_FIT
    return FitnessVerdict.UNDECIDABLE


def discoverability(metadata: Graph, catalogue: TaskCatalogue) -> DiscoverabilityScore:
    if len(catalogue) == 0:
        raise EmptyCatalogue("discoverability needs a non-empty catalogue")
    view = _view(metadata)
    per_task: dict[Iri, FitnessVerdict] = {}
    for task in catalogue:
        per_task[task.id] = _decide(view, task)
    decidable = frozenset(
        task_id for task_id, verdict in per_task.items() if verdict is not FitnessVerdict.UNDECIDABLE
    )
    value = Fraction(len(decidable), len(catalogue))
    return DiscoverabilityScore(
        value=value,
        decidable=decidable,
        per_task=per_task,
        band=band_for(value),
    )
