"""Human verification queue.

Out of every 100 automatically accepted pairs, a fixed fraction (20% by
default) is sampled for verification by two independent reviewers.  A pair
is confirmed only when both reviewers approve; a single reject drops it from
the dataset.  Partial trailing windows sample pro rata.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..corpus.model import PairRecord
from ..errors import DataError

WINDOW = 100
REQUIRED_APPROVALS = 2


@dataclass(frozen=True)
class ReviewItem:
    pair_key: str
    verdicts: tuple[tuple[str, str], ...] = ()  # (reviewer_id, approve|reject)

    @property
    def final(self) -> str:
        if any(v == "reject" for _, v in self.verdicts):
            return "rejected"
        approvals = sum(1 for _, v in self.verdicts if v == "approve")
        if approvals >= REQUIRED_APPROVALS:
            return "confirmed"
        return "pending"


def enqueue_review(accepted: list[PairRecord], rate: float = 0.2, seed: int = 0) -> list[ReviewItem]:
    """Sample review items per 100-record window, uniformly without replacement."""
    if not 0.0 < rate <= 1.0:
        raise DataError(f"review rate must lie in (0,1], got {rate}")
    items: list[ReviewItem] = []
    for window_index in range(0, max(len(accepted), 0), WINDOW):
        window = accepted[window_index : window_index + WINDOW]
        quota = int(len(window) * rate + 0.5)
        rng = random.Random(f"{seed}:{window_index}")
        chosen = sorted(rng.sample(range(len(window)), quota))
        items.extend(ReviewItem(pair_key=window[i].key) for i in chosen)
    return items


def review_cli_step(item: ReviewItem, reviewer_id: str, verdict: str) -> ReviewItem:
    if verdict not in ("approve", "reject"):
        raise DataError(f"verdict must be approve or reject, got {verdict!r}")
    if any(reviewer == reviewer_id for reviewer, _ in item.verdicts):
        raise DataError(f"reviewer {reviewer_id!r} already voted on {item.pair_key}")
    if item.final != "pending":
        raise DataError(f"review of {item.pair_key} is already {item.final}")
    return replace(item, verdicts=item.verdicts + ((reviewer_id, verdict),))


@dataclass
class ReviewQueue:
    """Persistent queue the interactive review command works through."""

    items: list[ReviewItem] = field(default_factory=list)

    def pending(self) -> list[ReviewItem]:
        return [item for item in self.items if item.final == "pending"]

    def update(self, updated: ReviewItem) -> None:
        for i, item in enumerate(self.items):
            if item.pair_key == updated.pair_key:
                self.items[i] = updated
                return
        raise DataError(f"no review item for pair {updated.pair_key}")

    def rejected_keys(self) -> set[str]:
        return {item.pair_key for item in self.items if item.final == "rejected"}

    def confirmed_keys(self) -> set[str]:
        return {item.pair_key for item in self.items if item.final == "confirmed"}

    def save(self, path: Path | str) -> None:
        from ..corpus.io import write_jsonl

        rows = [
            {
                "kind": "review",
                "pair_key": item.pair_key,
                "verdicts": [list(v) for v in item.verdicts],
                "final": item.final,
            }
            for item in self.items
        ]
        write_jsonl(path, rows)

    @classmethod
    def load(cls, path: Path | str) -> "ReviewQueue":
        from ..corpus.io import read_jsonl

        items = []
        for lineno, row in enumerate(read_jsonl(path), start=1):
            if row.get("kind") != "review":
                raise DataError(f"{path}:{lineno}: expected review record")
            items.append(
                ReviewItem(
                    pair_key=row["pair_key"],
                    verdicts=tuple((r, v) for r, v in row.get("verdicts", [])),
                )
            )
        return cls(items=items)
