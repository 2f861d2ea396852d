"""Core dataset records: tasks, code samples, labeled pairs, and splits.

A corpus groups programming tasks with their code samples.  Samples are
either seeds (ingested from an external dataset) or variants evolved from a
seed along one of the four directions; evolved samples always point back at
their seed through ``lineage``.  Validated (source, variant) pairs carry the
execution verdict, the CodeBLEU score, and the resulting type label.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

from ..errors import DataError

TYPE_LABELS = ("I", "II", "III", "IV")
SEM_VERDICTS = ("equivalent", "divergent")
SPLITS = ("train", "test", "unassigned")
PROVENANCE_KINDS = ("exec", "metric", "human")


def content_id(body: str, prefix: str = "") -> str:
    """Derive a stable id from content so re-runs are idempotent."""
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()[:12]
    return f"{prefix}{digest}" if prefix else digest


@dataclass(frozen=True)
class Task:
    task_id: str
    description: str
    corpus_language: str
    test_suite_id: str | None = None

    def __post_init__(self):
        if not self.task_id:
            raise DataError("task_id must be non-empty")
        if not self.description:
            raise DataError(f"task {self.task_id!r}: description must be non-empty")
        if not self.corpus_language:
            raise DataError(f"task {self.task_id!r}: corpus_language must be non-empty")


@dataclass(frozen=True)
class CodeSample:
    sample_id: str
    task_id: str
    body: str
    origin: str = "seed"  # "seed" or "evolved:<direction>"
    lineage: str | None = None

    def __post_init__(self):
        if not self.sample_id:
            raise DataError("sample_id must be non-empty")
        if not self.body:
            raise DataError(f"sample {self.sample_id!r}: body must be non-empty")
        if self.origin != "seed" and not self.origin.startswith("evolved:"):
            raise DataError(
                f"sample {self.sample_id!r}: origin must be 'seed' or 'evolved:<direction>', "
                f"got {self.origin!r}"
            )
        if self.is_evolved and not self.lineage:
            raise DataError(f"sample {self.sample_id!r}: evolved samples require lineage")
        if not self.is_evolved and self.lineage:
            raise DataError(f"sample {self.sample_id!r}: seed samples must not carry lineage")

    @property
    def is_evolved(self) -> bool:
        return self.origin.startswith("evolved:")

    @property
    def direction(self) -> str | None:
        return self.origin.split(":", 1)[1] if self.is_evolved else None


@dataclass(frozen=True)
class PairRecord:
    """A validated (source, variant) pair with its filter evidence."""

    source_id: str
    variant_id: str
    sem_verdict: str  # equivalent | divergent
    codebleu: float
    type_label: str  # I | II | III | IV
    provenance: tuple[str, ...] = ("exec", "metric")
    split: str = "unassigned"

    def __post_init__(self):
        if self.sem_verdict not in SEM_VERDICTS:
            raise DataError(f"pair {self.key}: bad sem_verdict {self.sem_verdict!r}")
        if self.type_label not in TYPE_LABELS:
            raise DataError(f"pair {self.key}: bad type_label {self.type_label!r}")
        if not 0.0 <= self.codebleu <= 1.0:
            raise DataError(f"pair {self.key}: codebleu {self.codebleu} outside [0,1]")
        if self.split not in SPLITS:
            raise DataError(f"pair {self.key}: bad split {self.split!r}")
        unknown = set(self.provenance) - set(PROVENANCE_KINDS)
        if unknown:
            raise DataError(f"pair {self.key}: unknown provenance {sorted(unknown)}")
        # Accepted pairs are always backed by both automated filters.
        if "exec" not in self.provenance or "metric" not in self.provenance:
            raise DataError(f"pair {self.key}: provenance must include exec and metric")
        # Table-of-types consistency: positive types are exactly the
        # execution-equivalent ones.
        if (self.type_label in ("I", "II")) != (self.sem_verdict == "equivalent"):
            raise DataError(
                f"pair {self.key}: type {self.type_label} inconsistent with "
                f"sem_verdict {self.sem_verdict}"
            )

    @property
    def key(self) -> str:
        return f"{self.source_id}::{self.variant_id}"

    def with_split(self, split: str) -> "PairRecord":
        return replace(self, split=split)

    def with_provenance(self, *extra: str) -> "PairRecord":
        merged = tuple(p for p in PROVENANCE_KINDS if p in set(self.provenance) | set(extra))
        return replace(self, provenance=merged)


@dataclass
class DatasetSplit:
    """Train/test assignment for pair records, stratified per type label."""

    ratio: tuple[int, int] = (3, 1)
    seed: int = 0
    assignments: dict[str, str] = field(default_factory=dict)

    def split_of(self, record: PairRecord) -> str:
        return self.assignments.get(record.key, "unassigned")

    def counts(self) -> dict[str, int]:
        out = {"train": 0, "test": 0}
        for value in self.assignments.values():
            out[value] += 1
        return out


@dataclass
class Corpus:
    """Immutable-by-convention container; share freely across threads."""

    tasks: dict[str, Task] = field(default_factory=dict)
    samples: dict[str, CodeSample] = field(default_factory=dict)

    def add_task(self, task: Task) -> None:
        if task.task_id in self.tasks:
            raise DataError(f"duplicate task_id {task.task_id!r}")
        self.tasks[task.task_id] = task

    def add_sample(self, sample: CodeSample) -> None:
        if sample.sample_id in self.samples:
            raise DataError(f"duplicate sample_id {sample.sample_id!r}")
        if sample.task_id not in self.tasks:
            raise DataError(
                f"sample {sample.sample_id!r} references unknown task {sample.task_id!r}"
            )
        if sample.lineage is not None and sample.lineage not in self.samples:
            raise DataError(
                f"sample {sample.sample_id!r} references unknown lineage {sample.lineage!r}"
            )
        self.samples[sample.sample_id] = sample

    def seeds(self) -> list[CodeSample]:
        return [s for s in self.samples.values() if not s.is_evolved]

    def samples_of_task(self, task_id: str) -> list[CodeSample]:
        return [s for s in self.samples.values() if s.task_id == task_id]

    def __len__(self) -> int:
        return len(self.samples)
