"""Graph isomorphism under blank-node relabeling.

Ground triples must match exactly; blank-containing triples are matched by a
backtracking search over label bijections with a degree-signature pruning
step. Intended for fixture-sized graphs, not millions of triples.
"""

from __future__ import annotations

from itertools import permutations

from .model import BlankNode, Graph, Triple


def _is_ground(t: Triple) -> bool:
    return not isinstance(t.subject, BlankNode) and not isinstance(t.object, BlankNode)


_BLANK_MARK = "\x00blank"


def _blank_signature(graph_triples: list[Triple]) -> dict[str, tuple]:
    sig: dict[str, list] = {}
    for t in graph_triples:
        if isinstance(t.subject, BlankNode):
            sig.setdefault(t.subject.label, []).append(
                ("s", t.predicate.value, _BLANK_MARK if isinstance(t.object, BlankNode) else str(t.object))
            )
        if isinstance(t.object, BlankNode):
            sig.setdefault(t.object.label, []).append(
                ("o", t.predicate.value, _BLANK_MARK if isinstance(t.subject, BlankNode) else str(t.subject))
            )
    return {label: tuple(sorted(entries)) for label, entries in sig.items()}


def _rename(t: Triple, mapping: dict[str, str]) -> Triple:
    s = BlankNode(mapping[t.subject.label]) if isinstance(t.subject, BlankNode) else t.subject
    o = BlankNode(mapping[t.object.label]) if isinstance(t.object, BlankNode) else t.object
    return Triple(s, t.predicate, o)


def isomorphic(a: Graph, b: Graph) -> bool:
    """True when b equals a after some bijective blank-node relabeling."""
    if len(a) != len(b):
        return False
    ground_a = {t for t in a.triples if _is_ground(t)}
    ground_b = {t for t in b.triples if _is_ground(t)}
    if ground_a != ground_b:
        return False
    blank_a = [t for t in a.triples if not _is_ground(t)]
    blank_b = {t for t in b.triples if not _is_ground(t)}
    sig_a = _blank_signature(blank_a)
    sig_b = _blank_signature(list(blank_b))
    if len(sig_a) != len(sig_b):
        return False
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return False

    # group a-labels and b-labels by signature; bijections only map within groups
    groups: dict[tuple, tuple[list, list]] = {}
    for label, s in sig_a.items():
        groups.setdefault(s, ([], []))[0].append(label)
    for label, s in sig_b.items():
        groups.setdefault(s, ([], []))[1].append(label)

    def search(group_items: list[tuple[list, list]], mapping: dict[str, str]):
        if not group_items:
            mapped = {_rename(t, mapping) for t in blank_a}
            return mapped == blank_b
        a_labels, b_labels = group_items[0]
        if len(a_labels) != len(b_labels):
            return False
        for perm in permutations(b_labels):
            trial = dict(mapping)
            trial.update(zip(a_labels, perm))
            if search(group_items[1:], trial):
                return True
        return False

    return search(list(groups.values()), {})
