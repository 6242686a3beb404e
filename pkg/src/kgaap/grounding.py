"""Dimension G: signature closure of a schema and coverage of task signatures.

Two derivation routes are implemented. The reachability route adds any name
linked to the closure by a subclass/subproperty chain between names, in
either direction; entries whose only witnesses hang below a closure name are
flagged weak, since subsumption alone does not define. The definition route
adds a name that an equivalence axiom defines from names already closed.
Anything needing heavier definability machinery (query rewriting, uniform
interpolation) is out of reach; the route report says so and coverage is then
a sound lower bound.

Derivation may draw on the axioms of an optional shared reference ontology,
but the base signature is always the schema's own.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .axioms import Axiom, Named, expr_names, schema_axioms
from .errors import CycleWarning, EmptyTaskSignature
from .expressivity import DlFragment, detect_fragment, fragment_leq
from .model import Graph, Iri
from .signature import NameKind, signature
from . import vocab as V

SigName = tuple[Iri, NameKind]


@dataclass(frozen=True)
class TaskSignature:
    entries: frozenset[SigName]

    def __init__(self, entries: Iterable[SigName]):
        object.__setattr__(self, "entries", frozenset(entries))

    def names(self) -> frozenset[Iri]:
        return frozenset(n for n, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ResidentSignature:
    names: frozenset[SigName]

    def concepts(self) -> frozenset[Iri]:
        return frozenset(n for n, k in self.names if k is NameKind.CONCEPT)

    def roles(self) -> frozenset[Iri]:
        return frozenset(n for n, k in self.names if k is NameKind.ROLE)


@dataclass(frozen=True)
class ClosureEntry:
    name: Iri
    kind: NameKind
    provenance: tuple[str, ...]
    weak: bool = False
    via_reference: bool = False


@dataclass(frozen=True)
class SignatureClosure:
    base: ResidentSignature
    derived: tuple[ClosureEntry, ...]

    def members(self) -> frozenset[SigName]:
        return self.base.names | frozenset((e.name, e.kind) for e in self.derived)

    def __contains__(self, entry: SigName) -> bool:
        return entry in self.members()


@dataclass(frozen=True)
class CoverageResult:
    score: Fraction
    covered: frozenset[Iri]
    gap: frozenset[Iri]
    kind_mismatches: frozenset[Iri] = frozenset()


class GroundingRoute(Enum):
    RDFS_REACHABILITY = "RdfsReachability"
    DEFINITION_PATTERNS = "DefinitionPatterns"
    UNSUPPORTED = "Unsupported"


def resident_signature(schema: Graph) -> ResidentSignature:
    concepts = signature(schema, "concepts")
    roles = signature(schema, "roles")
    return ResidentSignature(
        frozenset((n, NameKind.CONCEPT) for n in concepts)
        | frozenset((n, NameKind.ROLE) for n in roles)
    )


@dataclass
class _ChainEdge:
    sub: Iri
    sup: Iri
    axiom: Axiom


def _chain_edges(axioms: list[Axiom]) -> dict[NameKind, list[_ChainEdge]]:
    edges: dict[NameKind, list[_ChainEdge]] = {NameKind.CONCEPT: [], NameKind.ROLE: []}
    for ax in axioms:
        if ax.kind == "subclass" and len(ax.exprs) == 2:
            lhs, rhs = ax.exprs
            if (
                isinstance(lhs, Named)
                and isinstance(rhs, Named)
                and not V.is_builtin(lhs.iri)
                and not V.is_builtin(rhs.iri)
            ):
                edges[NameKind.CONCEPT].append(_ChainEdge(lhs.iri, rhs.iri, ax))
        elif ax.kind == "subproperty" and len(ax.props) == 2:
            if not V.is_builtin(ax.props[0]) and not V.is_builtin(ax.props[1]):
                edges[NameKind.ROLE].append(_ChainEdge(ax.props[0], ax.props[1], ax))
    return edges


@dataclass
class _Definition:
    target: Iri
    kind: NameKind
    requires: frozenset[SigName]
    axiom: Axiom


def _definitions(axioms: list[Axiom]) -> list[_Definition]:
    defs = []
    for ax in axioms:
        if ax.kind not in ("equivalent_class", "equivalent_property"):
            continue
        if ax.kind == "equivalent_property":
            p, q = ax.props
            if not V.is_builtin(p) and not V.is_builtin(q):
                defs.append(_Definition(p, NameKind.ROLE, frozenset({(q, NameKind.ROLE)}), ax))
                defs.append(_Definition(q, NameKind.ROLE, frozenset({(p, NameKind.ROLE)}), ax))
            continue
        lhs, rhs = ax.exprs
        for target, other in ((lhs, rhs), (rhs, lhs)):
            if isinstance(target, Named) and not V.is_builtin(target.iri):
                requires = expr_names(other) - {(target.iri, NameKind.CONCEPT)}
                defs.append(_Definition(target.iri, NameKind.CONCEPT, frozenset(requires), ax))
    return defs


def _chain_witness(
    name: Iri,
    kind: NameKind,
    edges: list[_ChainEdge],
    closed: dict[SigName, tuple[str, ...]],
) -> Optional[tuple[list[Axiom], bool, SigName]]:
    """Shortest directed chain from the name to any closed name.

    Searches upward (name below a closure member) and downward (name above
    one); returns the witnessing axioms, whether the only hit was upward
    (weak), and the closed endpoint reached.
    """
    up: dict[Iri, list[_ChainEdge]] = {}
    down: dict[Iri, list[_ChainEdge]] = {}
    for e in edges:
        up.setdefault(e.sub, []).append(e)
        down.setdefault(e.sup, []).append(e)

    def bfs(adjacent, endpoint_of) -> Optional[tuple[list[Axiom], SigName]]:
        frontier: list[tuple[Iri, list[Axiom]]] = [(name, [])]
        seen = {name}
        while frontier:
            node, path = frontier.pop(0)
            for edge in adjacent.get(node, ()):  # deterministic: edges kept in axiom order
                nxt = endpoint_of(edge)
                if nxt in seen:
                    continue
                seen.add(nxt)
                new_path = path + [edge.axiom]
                if (nxt, kind) in closed:
                    return new_path, (nxt, kind)
                frontier.append((nxt, new_path))
        return None

    downward = bfs(down, lambda e: e.sub)  # name is an ancestor of a closed name
    if downward is not None:
        return downward[0], False, downward[1]
    upward = bfs(up, lambda e: e.sup)  # only a super-name anchors it
    if upward is not None:
        return upward[0], True, upward[1]
    return None


def signature_closure(schema: Graph, reference: Optional[Graph] = None) -> SignatureClosure:
    """Least fixpoint of the two derivation rules over schema plus reference axioms."""
    base = resident_signature(schema)
    axioms = schema_axioms(schema, origin="schema")
    if reference is not None:
        axioms = axioms + schema_axioms(reference, origin="reference")

    edges = _chain_edges(axioms)
    defs = _definitions(axioms)

    candidates: set[SigName] = set()
    for kind, kind_edges in edges.items():
        for e in kind_edges:
            candidates.add((e.sub, kind))
            candidates.add((e.sup, kind))
    for d in defs:
        candidates.add((d.target, d.kind))
        candidates.update(d.requires)

    closed: dict[SigName, tuple[str, ...]] = {entry: () for entry in base.names}
    derived: dict[SigName, ClosureEntry] = {}

    def witness_origin(axiom_list: list[Axiom]) -> bool:
        return any(ax.origin == "reference" for ax in axiom_list)

    changed = True
    while changed:
        changed = False
        for name, kind in sorted(candidates - set(closed), key=lambda e: (str(e[0]), e[1].value)):
            entry: Optional[ClosureEntry] = None
            for d in defs:
                if d.target == name and d.kind is kind and all(r in closed for r in d.requires):
                    prereq_prov: list[str] = []
                    for r in sorted(d.requires, key=lambda e: str(e[0])):
                        for step in closed[r]:
                            if step not in prereq_prov:
                                prereq_prov.append(step)
                    via = d.axiom.origin == "reference" or any(
                        derived[r].via_reference for r in d.requires if r in derived
                    )
                    entry = ClosureEntry(
                        name=name,
                        kind=kind,
                        provenance=tuple(prereq_prov) + (d.axiom.description,),
                        weak=False,
                        via_reference=via,
                    )
                    break
            if entry is None:
                hit = _chain_witness(name, kind, edges[kind], closed)
                if hit is not None:
                    path, weak, endpoint = hit
                    prov = list(closed[endpoint])
                    for ax in path:
                        if ax.description not in prov:
                            prov.append(ax.description)
                    via = witness_origin(path) or (
                        endpoint in derived and derived[endpoint].via_reference
                    )
                    entry = ClosureEntry(
                        name=name,
                        kind=kind,
                        provenance=tuple(prov),
                        weak=weak,
                        via_reference=via,
                    )
            if entry is not None:
                closed[(name, kind)] = entry.provenance
                derived[(name, kind)] = entry
                changed = True

    _warn_definition_cycles(defs, set(closed))

    ordered = tuple(sorted(derived.values(), key=lambda e: (str(e.name), e.kind.value)))
    return SignatureClosure(base=base, derived=ordered)


def _warn_definition_cycles(defs: list[_Definition], closed: set[SigName]):
    """Definitional cycles among underived names derive nothing; report them."""
    pending = [d for d in defs if (d.target, d.kind) not in closed]
    graph: dict[SigName, set[SigName]] = {}
    for d in pending:
        unmet = {r for r in d.requires if r not in closed}
        graph.setdefault((d.target, d.kind), set()).update(unmet)

    visiting: list[SigName] = []
    visited: set[SigName] = set()
    cycles: list[tuple[str, ...]] = []

    def dfs(node: SigName):
        if node in visiting:
            cycle = visiting[visiting.index(node) :]
            cycles.append(tuple(str(n) for n, _ in cycle))
            return
        if node in visited or node not in graph:
            return
        visiting.append(node)
        for nxt in sorted(graph[node], key=lambda e: str(e[0])):
            dfs(nxt)
        visiting.pop()
        visited.add(node)

    for node in sorted(graph, key=lambda e: str(e[0])):
        dfs(node)
    for cycle in cycles:
        warnings.warn(CycleWarning("definitional cycle: " + " -> ".join(cycle)))


def coverage(task: TaskSignature, closure: SignatureClosure) -> CoverageResult:
    """Kind-respecting membership of the task signature in the closure."""
    if len(task) == 0:
        raise EmptyTaskSignature("task signature has no entries")
    members = closure.members()
    present_names = {n for n, _ in members}
    covered = set()
    gap = set()
    mismatched = set()
    for name, kind in task.entries:
        if (name, kind) in members:
            covered.add(name)
        else:
            gap.add(name)
            if name in present_names:
                mismatched.add(name)
    return CoverageResult(
        score=Fraction(len(covered), len(task)),
        covered=frozenset(covered),
        gap=frozenset(gap),
        kind_mismatches=frozenset(mismatched),
    )


def grounding_route(schema: Graph, fragment: Optional[DlFragment] = None) -> tuple[GroundingRoute, Optional[str]]:
    """Pick the derivation route the schema admits.

    Returns the route and, for the unsupported case, a diagnostic naming the
    machinery that would be needed. Coverage still runs on unsupported
    schemas; its result is then a sound lower bound.
    """
    if fragment is None:
        fragment = detect_fragment(schema)
    if fragment_leq(fragment, DlFragment.RDFS) is True:
        return GroundingRoute.RDFS_REACHABILITY, None
    has_definitions = any(
        ax.kind in ("equivalent_class", "equivalent_property") for ax in schema_axioms(schema)
    )
    if has_definitions and fragment_leq(fragment, DlFragment.OWL_DL) is True:
        return GroundingRoute.DEFINITION_PATTERNS, None
    return (
        GroundingRoute.UNSUPPORTED,
        "schema may define names beyond explicit equivalences and subclass chains; "
        "deciding that needs perfect query rewriting or uniform interpolation, which "
        "this tool does not implement, so coverage is reported as a sound lower bound",
    )
