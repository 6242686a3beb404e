"""Task types and the JSON task-catalogue format.

A catalogue document looks like:

    {
      "tasks": [
        {
          "id": "http://example.org/tasks#authors",
          "description": "Find papers by author.",
          "signature": [
            {"name": "http://example.org/conference#Researcher", "kind": "concept"},
            {"name": "http://example.org/conference#authorOf", "kind": "role"}
          ],
          "requirement": {
            "min_regime": "Simple",
            "closed_predicates": [],
            "min_consistency": "Uncertified"
          }
        }
      ]
    }

Task ids must be unique; signatures must be non-empty; every predicate listed
under closed_predicates must belong to the task's own signature.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import CatalogueFormatError, EmptyCatalogue, UnknownTask
from .grounding import TaskSignature
from .model import Iri
from .signature import NameKind
from .trust import ConsistencyLevel, EntailmentRegime, EpistemicRequirement, consistency_from_label


@dataclass(frozen=True)
class TaskType:
    id: Iri
    signature: TaskSignature
    requirement: EpistemicRequirement
    description: str = ""

    def __post_init__(self):
        names = self.signature.names()
        stray = self.requirement.closed_predicates_needed - names
        if stray:
            raise CatalogueFormatError(
                f"task {self.id}: closed predicates outside the signature: "
                + ", ".join(sorted(str(s) for s in stray))
            )


@dataclass(frozen=True)
class TaskCatalogue:
    tasks: tuple[TaskType, ...]

    def __post_init__(self):
        if not self.tasks:
            raise EmptyCatalogue("a catalogue must contain at least one task")
        ids = [t.id for t in self.tasks]
        if len(set(ids)) != len(ids):
            raise CatalogueFormatError("duplicate task ids in catalogue")

    def __iter__(self):
        return iter(self.tasks)

    def __len__(self):
        return len(self.tasks)

    def get(self, task_id: Iri | str) -> TaskType:
        wanted = task_id if isinstance(task_id, Iri) else Iri(task_id)
        for t in self.tasks:
            if t.id == wanted:
                return t
        raise UnknownTask(f"no task {wanted} in catalogue")


def _parse_task(raw: dict) -> TaskType:
    try:
        task_id = Iri(raw["id"])
        entries = []
        for entry in raw["signature"]:
            kind = NameKind(entry["kind"])
            if kind is NameKind.INDIVIDUAL:
                raise CatalogueFormatError("task signatures list concepts and roles only")
            entries.append((Iri(entry["name"]), kind))
        if not entries:
            raise CatalogueFormatError(f"task {task_id}: empty signature")
        req_raw = raw.get("requirement", {})
        requirement = EpistemicRequirement(
            min_regime=EntailmentRegime(req_raw.get("min_regime", "Simple")),
            closed_predicates_needed=frozenset(
                Iri(p) for p in req_raw.get("closed_predicates", [])
            ),
            min_consistency=consistency_from_label(req_raw.get("min_consistency", "Uncertified")),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise CatalogueFormatError(f"malformed task entry: {exc}") from exc
    return TaskType(
        id=task_id,
        signature=TaskSignature(entries),
        requirement=requirement,
        description=raw.get("description", ""),
    )


def load_catalogue(source: str | Path | dict) -> TaskCatalogue:
    if isinstance(source, (str, Path)):
        try:
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise CatalogueFormatError(f"catalogue is not valid JSON: {exc}") from exc
    else:
        raw = source
    tasks = raw.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        raise EmptyCatalogue("catalogue document has no tasks")
    return TaskCatalogue(tuple(_parse_task(t) for t in tasks))


def dump_catalogue(catalogue: TaskCatalogue) -> dict:
    return {
        "tasks": [
            {
                "id": str(t.id),
                "description": t.description,
                "signature": [
                    {"name": str(n), "kind": k.value}
                    for n, k in sorted(t.signature.entries, key=lambda e: (str(e[0]), e[1].value))
                ],
                "requirement": {
                    "min_regime": t.requirement.min_regime.value,
                    "closed_predicates": sorted(
                        str(p) for p in t.requirement.closed_predicates_needed
                    ),
                    "min_consistency": {0: "Uncertified", 1: "TBoxConsistent", 2: "JointlyConsistent"}[
                        int(t.requirement.min_consistency)
                    ],
                },
            }
            for t in catalogue.tasks
        ]
    }
