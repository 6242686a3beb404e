"""JSON rendering of profiles, verdicts and composition plans.

Field names here are frozen: they match data/report.schema.json, which ships
with the package and is validated in the test suite. Scores render as exact
rationals in "n/d" form (or a bare integer string), never as floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .discoverability import DiscoverabilityScore
from .grounding import CoverageResult, GroundingRoute
from .matcher import AapProfile, CompositionPlan, FeasibilityVerdict
from .profile import AapProfileDocument
from .trust import (
    ClosureShortfall,
    ConsistencyShortfall,
    RegimeShortfall,
    closed_predicates,
    consistency_label,
)
from .version import __version__


def rational_str(f: Fraction) -> str:
    return str(f)


def dimensions_json(
    profile: AapProfile, coverage: Optional[CoverageResult] = None
) -> dict:
    trust = profile.trust
    out = {
        "kg": str(profile.kg_id),
        "expressivity": {
            "fragment": profile.expressivity.fragment.value,
            "conformance_ratio": rational_str(profile.expressivity.conformance_ratio),
            "axiom_census": dict(sorted(profile.expressivity.axiom_census.items())),
        },
        "discoverability": {
            "value": rational_str(profile.discoverability.value),
            "band": profile.discoverability.band.value,
            "per_task": {
                str(tid): verdict.value
                for tid, verdict in sorted(
                    profile.discoverability.per_task.items(), key=lambda kv: str(kv[0])
                )
            },
        },
        "trust": {
            "regime": trust.regime.value,
            "consistency": consistency_label(trust.consistency.level),
            "certificate_source": (
                str(trust.consistency.certificate_source)
                if trust.consistency.certificate_source
                else None
            ),
            "closed_predicates": sorted(str(p) for p in closed_predicates(trust)),
            "regime_conflict": (
                {
                    "declared": trust.regime_conflict.declared.value,
                    "maximum": trust.regime_conflict.maximum.value,
                }
                if trust.regime_conflict
                else None
            ),
        },
    }
    if coverage is not None:
        out["grounding"] = {
            "score": rational_str(coverage.score),
            "covered": sorted(str(n) for n in coverage.covered),
            "gap": sorted(str(n) for n in coverage.gap),
            "kind_mismatches": sorted(str(n) for n in coverage.kind_mismatches),
            "route": profile.grounding_route.value,
            "lower_bound": profile.coverage_lower_bound,
        }
    return out


def shortfall_json(shortfall) -> Optional[dict]:
    if shortfall is None:
        return None
    if isinstance(shortfall, RegimeShortfall):
        return {
            "kind": "RegimeShortfall",
            "required": shortfall.required.value,
            "declared": shortfall.declared.value,
        }
    if isinstance(shortfall, ClosureShortfall):
        return {"kind": "ClosureShortfall", "missing": sorted(str(p) for p in shortfall.missing)}
    if isinstance(shortfall, ConsistencyShortfall):
        return {
            "kind": "ConsistencyShortfall",
            "required": consistency_label(shortfall.required),
            "declared": consistency_label(shortfall.declared),
        }
    raise TypeError(f"unknown shortfall: {shortfall!r}")


def verdict_json(
    verdict: FeasibilityVerdict,
    profile: Optional[AapProfile] = None,
    explain: Optional[dict] = None,
) -> dict:
    out = {
        "kg": str(verdict.kg_id),
        "task": str(verdict.task_id),
        "feasible": verdict.feasible,
        "failure_dimension": verdict.failure_dimension.value if verdict.failure_dimension else None,
        "remedy": verdict.remedy.value,
        "detail": {
            "gap": sorted(str(n) for n in verdict.detail.gap),
            "kind_mismatches": sorted(str(n) for n in verdict.detail.kind_mismatches),
            "shortfall": shortfall_json(verdict.detail.shortfall),
            "regime_conflict": verdict.detail.regime_conflict,
            "conformance_ratio": (
                rational_str(verdict.detail.conformance_ratio)
                if verdict.detail.conformance_ratio is not None
                else None
            ),
            "secondary": [d.value for d in verdict.detail.secondary],
        },
    }
    if profile is not None:
        out["dimensions"] = dimensions_json(
            profile, profile.per_task_coverage.get(verdict.task_id)
        )
    if explain is not None:
        out["explanation"] = explain
    return out


def explanation_json(doc: AapProfileDocument, task_id) -> dict:
    """Per-name derivation evidence for the explain flag."""
    cov = doc.profile.per_task_coverage.get(task_id)
    derived_by_name = {str(e.name): e for e in _derived_from_graph(doc)}
    names = {}
    if cov is not None:
        for name in sorted(str(n) for n in cov.covered):
            hit = derived_by_name.get(name)
            if hit is not None:
                names[name] = {
                    "status": "derived",
                    "provenance": list(hit.provenance),
                    "weak": hit.weak,
                    "via_reference": hit.via_reference,
                }
            else:
                names[name] = {"status": "resident"}
        for name in sorted(str(n) for n in cov.gap):
            names[name] = {"status": "gap"}
    return {"names": names}


def _derived_from_graph(doc: AapProfileDocument):
    from . import vocab as V
    from .grounding import ClosureEntry
    from .model import Iri, Literal
    from .signature import NameKind

    g = doc.graph
    node = next(iter(g.subjects(V.RDF_TYPE, V.AAP_PROFILE)))
    out = []
    for t in g.match(node, V.AAP_DERIVED_NAME):
        name = g.value(t.object, V.AAP_NAME)
        kind_iri = g.value(t.object, V.AAP_KIND)
        prov = g.value(t.object, V.AAP_PROVENANCE)
        weak = g.value(t.object, V.AAP_WEAK)
        via = g.value(t.object, V.AAP_VIA_REFERENCE)
        if isinstance(name, Iri):
            out.append(
                ClosureEntry(
                    name=name,
                    kind=NameKind.ROLE if kind_iri == V.AAP_ROLE else NameKind.CONCEPT,
                    provenance=tuple(prov.lexical.split(" | ")) if isinstance(prov, Literal) else (),
                    weak=isinstance(weak, Literal) and weak.lexical == "true",
                    via_reference=isinstance(via, Literal) and via.lexical == "true",
                )
            )
    return out


def plan_json(plan: CompositionPlan) -> dict:
    return {
        "kgs": [str(k) for k in plan.kg_ids],
        "verdict": plan.verdict.value,
        "residual_gap": sorted(str(n) for n in plan.residual_gap),
        "candidate_mediators": {
            str(name): [str(m) for m in meds]
            for name, meds in sorted(plan.candidate_mediators.items(), key=lambda kv: str(kv[0]))
        },
        "union_size": len(plan.union_members),
    }


def report_json(
    verdicts: list[dict],
    task: Optional[str] = None,
    plan: Optional[dict] = None,
    profile: Optional[dict] = None,
    warnings: Optional[list[str]] = None,
) -> dict:
    out: dict = {"tool_version": __version__, "task": task, "verdicts": verdicts}
    if plan is not None:
        out["plan"] = plan
    if profile is not None:
        out["profile"] = profile
    if warnings:
        out["warnings"] = list(warnings)
    return out
