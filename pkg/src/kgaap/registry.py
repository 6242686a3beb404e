"""A file-based registry: a directory of Turtle profile and mediator documents.

An optional ``index.json`` maps file names to sha256 digests; when present,
digests are verified before anything is parsed. Unparseable files are
skipped with a warning so one bad document cannot poison the registry, but a
duplicate KG id or a digest mismatch is an error.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DigestMismatch, DuplicateKgId, KgaapError, ParseError, ProfileFormatError
from .model import Iri
from .parser import parse_graph
from .profile import AapProfileDocument, load_mediator, load_profile_document
from .matcher import MediatorDescriptor
from . import vocab as V

INDEX_FILE = "index.json"


def file_digest(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass(frozen=True)
class RegistryIndex:
    entries: dict[Iri, tuple[Path, str]] = field(default_factory=dict)
    mediators: dict[Iri, Path] = field(default_factory=dict)


@dataclass(frozen=True)
class LoadedRegistry:
    index: RegistryIndex
    profiles: dict[Iri, AapProfileDocument] = field(default_factory=dict)
    mediators: dict[Iri, MediatorDescriptor] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def write_index(directory: Path) -> Path:
    """Record the digest of every Turtle document in the directory."""
    directory = Path(directory)
    digests = {
        p.name: file_digest(p) for p in sorted(directory.glob("*.ttl"))
    }
    payload = {"version": 1, "digests": digests}
    out = directory / INDEX_FILE
    out.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return out


def load_registry(directory: Path | str) -> LoadedRegistry:
    directory = Path(directory)
    if not directory.is_dir():
        raise KgaapError(f"registry directory does not exist: {directory}")

    recorded: dict[str, str] = {}
    index_path = directory / INDEX_FILE
    if index_path.exists():
        recorded = json.loads(index_path.read_text(encoding="utf-8")).get("digests", {})

    entries: dict[Iri, tuple[Path, str]] = {}
    mediator_paths: dict[Iri, Path] = {}
    profiles: dict[Iri, AapProfileDocument] = {}
    mediators: dict[Iri, MediatorDescriptor] = {}
    notes: list[str] = []

    for path in sorted(directory.glob("*.ttl")):
        digest = file_digest(path)
        if path.name in recorded and recorded[path.name] != digest:
            raise DigestMismatch(f"{path.name}: recorded {recorded[path.name]}, found {digest}")
        try:
            g = parse_graph(path.read_bytes(), "turtle")
        except (ParseError, KgaapError) as exc:
            notes.append(f"skipped {path.name}: {exc}")
            continue
        is_profile = any(True for _ in g.subjects(V.RDF_TYPE, V.AAP_PROFILE))
        is_mediator = any(True for _ in g.subjects(V.RDF_TYPE, V.AAP_MEDIATOR))
        try:
            if is_profile:
                doc = load_profile_document(g)
                kg_id = doc.profile.kg_id
                if kg_id in entries:
                    raise DuplicateKgId(f"{kg_id} declared by both {entries[kg_id][0].name} and {path.name}")
                entries[kg_id] = (path, digest)
                profiles[kg_id] = doc
            elif is_mediator:
                med = load_mediator(g)
                mediator_paths[med.id] = path
                mediators[med.id] = med
            else:
                notes.append(f"skipped {path.name}: neither a profile nor a mediator document")
        except ProfileFormatError as exc:
            notes.append(f"skipped {path.name}: {exc}")

    return LoadedRegistry(
        index=RegistryIndex(entries=entries, mediators=mediator_paths),
        profiles=profiles,
        mediators=mediators,
        warnings=tuple(notes),
    )
