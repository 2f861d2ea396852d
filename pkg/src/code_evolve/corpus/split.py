"""Stratified train/test splitting for labeled pair records.

The split stratifies per type label so each of the four categories lands
within one sample of the target ratio (3:1 by default).  It is a pure
function of (records, ratio, seed): records are canonically ordered before
shuffling, so input order never changes the assignment.
"""

from __future__ import annotations

import math
import random

from ..errors import DataError
from .model import DatasetSplit, PairRecord


def split_dataset(
    records: list[PairRecord], ratio: tuple[int, int] = (3, 1), seed: int = 0
) -> DatasetSplit:
    if len(ratio) != 2 or ratio[0] <= 0 or ratio[1] <= 0:
        raise DataError(f"split ratio must be two positive integers, got {ratio!r}")
    already = [r.key for r in records if r.split != "unassigned"]
    if already:
        raise DataError(f"records already assigned: {already[:3]}{'...' if len(already) > 3 else ''}")
    seen: set[str] = set()
    for record in records:
        if record.key in seen:
            raise DataError(f"duplicate pair record {record.key}")
        seen.add(record.key)

    split = DatasetSplit(ratio=tuple(ratio), seed=seed)
    train_fraction = ratio[0] / (ratio[0] + ratio[1])

    by_type: dict[str, list[PairRecord]] = {}
    for record in records:
        by_type.setdefault(record.type_label, []).append(record)

    for type_label in sorted(by_type):
        group = sorted(by_type[type_label], key=lambda r: r.key)
        rng = random.Random(f"{seed}:{type_label}")
        rng.shuffle(group)
        # floor(x + 0.5): plain half-up rounding, so the allocation is the
        # floor or ceil of the exact ratio target.
        n_train = math.floor(len(group) * train_fraction + 0.5)
        for i, record in enumerate(group):
            split.assignments[record.key] = "train" if i < n_train else "test"
    return split


def apply_split(records: list[PairRecord], split: DatasetSplit) -> list[PairRecord]:
    return [r.with_split(split.assignments.get(r.key, "unassigned")) for r in records]
