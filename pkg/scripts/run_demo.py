#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled fixtures.

Builds the registry in a temporary directory, then runs match, diagnose and
compose for the emerging-voices task and prints the reports. Exit codes of
the individual commands are shown so the remedy-branching contract is
visible.
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from build_registry import build  # noqa: E402
from kgaap.cli import main as cli  # noqa: E402

TASK = "http://example.org/tasks#emerging-voices"
TASKS_FILE = str(REPO / "fixtures" / "tasks.json")


def run(argv):
    print(f"\n$ kgaap {' '.join(argv)}")
    code = cli(argv)
    print(f"[exit {code}]")
    return code


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        registry = str(build(Path(tmp) / "registry"))
        run(["match", "--registry", registry, "--task", TASK, "--tasks", TASKS_FILE])
        run(["diagnose", "--registry", registry, "--kg", "http://example.org/kg/KG1",
             "--task", TASK, "--tasks", TASKS_FILE])
        run(["diagnose", "--registry", registry, "--kg", "http://example.org/kg/KG2",
             "--task", TASK, "--tasks", TASKS_FILE])
        run(["compose", "--registry", registry, "--kgs", "http://example.org/kg/KG1",
             "--task", TASK, "--tasks", TASKS_FILE])
        run(["compose", "--registry", registry,
             "--kgs", "http://example.org/kg/KG1,http://example.org/kg/KG2",
             "--task", TASK, "--tasks", TASKS_FILE])
    return 0


if __name__ == "__main__":
    sys.exit(main())
