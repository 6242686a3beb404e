"""kgaap: agentic affordance profiles for knowledge graphs.

Computes, for a knowledge graph described by schema, data and metadata
graphs, a four-dimensional profile: schema expressivity, metadata-level
discoverability, task-relative grounding, and epistemic trust scope. The
profile drives planning-time feasibility verdicts, failure diagnosis with
prescribed remedies, candidate ranking, and multi-KG composition checks.
"""

from .version import __version__

from .model import BlankNode, Graph, Iri, KgDescriptor, Literal, Triple
from .parser import parse_graph
from .serializer import serialize_graph
from .iso import isomorphic
from .signature import NameKind, signature
from .expressivity import (
    DlFragment,
    ExpressivityProfile,
    conformance_ratio,
    detect_fragment,
    expressivity_profile,
    fragment_join,
    fragment_leq,
)
from .grounding import (
    CoverageResult,
    GroundingRoute,
    ResidentSignature,
    SignatureClosure,
    TaskSignature,
    coverage,
    grounding_route,
    resident_signature,
    signature_closure,
)
from .trust import (
    ClosureDeclaration,
    ClosureSemantics,
    ConsistencyLevel,
    ConsistencyStatus,
    EntailmentRegime,
    EpistemicRequirement,
    TrustScopeProfile,
    closed_predicates,
    extract_trust_scope,
    regime_leq,
    satisfies,
)
from .discoverability import (
    Band,
    DiscoverabilityScore,
    FitnessVerdict,
    discoverability,
    metadata_fitness_decidable,
)
from .tasks import TaskCatalogue, TaskType, load_catalogue
from .matcher import (
    AapProfile,
    ComposeEntry,
    CompositionPlan,
    CompositionVerdict,
    FailureDimension,
    FeasibilityVerdict,
    MediatorDescriptor,
    Remedy,
    compose,
    extract_module,
    feasible,
    mediator_module_filter,
    rank,
)
from .profile import AapProfileDocument, build_profile, emit_profile, load_profile_document
from .registry import LoadedRegistry, RegistryIndex, load_registry, write_index

__all__ = [name for name in dir() if not name.startswith("_")]
