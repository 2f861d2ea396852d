"""Evaluation reports: one JSON-serializable record per task run."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import DataError

TASKS = ("clone", "consistency", "retrieval")


@dataclass
class MetricReport:
    task: str
    scalar_metrics: dict[str, float] = field(default_factory=dict)
    curve: list[dict[str, float]] = field(default_factory=list)
    per_type: dict[str, float] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.task not in TASKS:
            raise DataError(f"unknown report task {self.task!r}")

    def as_dict(self) -> dict:
        return {
            "task": self.task,
            "scalar_metrics": dict(sorted(self.scalar_metrics.items())),
            "per_type": dict(sorted(self.per_type.items())),
            "curve": self.curve,
            "metadata": self.metadata,
        }

    def save_json(self, path: Path | str) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")

    def save_curve_csv(self, path: Path | str) -> None:
        if not self.curve:
            return
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fieldnames = list(self.curve[0].keys())
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(self.curve)
