"""Evaluation metrics over labeled pairs and embedded items.

Conventions, applied uniformly (including in threshold sweeps):

* Prediction rule is non-strict: a pair is predicted positive iff its
  similarity is >= the threshold.
* Ranking ties break by input position, so callers pass items in stable id
  order and every metric is deterministic.
* All rates are returned as fractions in [0, 1]; reports and the CLI format
  percentages for display.

MAP@R follows the retrieval-benchmark form: per query, rank all other items
by descending cosine, and average rel(i) * Precision@i over the top R ranks,
divided by R.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from .vectors import EmbeddingVector

POSITIVE_TYPES = ("I", "II")
NEGATIVE_TYPES = ("III", "IV")
DEFAULT_SWEEP_THRESHOLDS = tuple(round(0.1 * i, 10) for i in range(1, 10))


@dataclass(frozen=True)
class LabeledPair:
    similarity: float
    gold: str  # positive | negative
    type_label: str | None = None

    def __post_init__(self):
        if not np.isfinite(self.similarity):
            raise DataError(f"pair similarity must be finite, got {self.similarity}")
        if self.gold not in ("positive", "negative"):
            raise DataError(f"gold must be positive or negative, got {self.gold!r}")


def gold_for_type(type_label: str) -> str:
    if type_label in POSITIVE_TYPES:
        return "positive"
    if type_label in NEGATIVE_TYPES:
        return "negative"
    raise DataError(f"unknown type label {type_label!r}")


def clone_f1(pairs: list[LabeledPair], threshold: float) -> dict[str, float]:
    """Precision/recall/F1 of the positive class at one similarity threshold."""
    if not any(p.gold == "positive" for p in pairs):
        raise DataError("clone F1 requires at least one gold-positive pair")
    tp = fp = fn = 0
    for pair in pairs:
        predicted_positive = pair.similarity >= threshold
        if predicted_positive and pair.gold == "positive":
            tp += 1
        elif predicted_positive:
            fp += 1
        elif pair.gold == "positive":
            fn += 1
    precision = tp / (tp + fp) if (tp + fp) else 0.0
    recall = tp / (tp + fn)
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
    return {"precision": precision, "recall": recall, "f1": f1, "threshold": threshold}


def compose_f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def per_type_f1(pairs: list[LabeledPair], threshold: float) -> dict[str, float]:
    """Per-type F1 where each type's own polarity is the positive class.

    Every group is single-polarity by construction (Types I/II gold-positive,
    III/IV gold-negative), so precision within a group is 1 whenever anything
    is classified correctly and F1 reduces to 2a/(1+a) with a the fraction
    classified correctly.  The mean is unweighted over the types present.
    """
    groups: dict[str, list[LabeledPair]] = {}
    for pair in pairs:
        if pair.type_label is None:
            raise DataError("per-type F1 requires type labels on every pair")
        groups.setdefault(pair.type_label, []).append(pair)
    if not groups:
        raise DataError("per-type F1 requires at least one labeled pair")

    out: dict[str, float] = {}
    for type_label in sorted(groups):
        group = groups[type_label]
        polarity = gold_for_type(type_label)
        mismatched = [p for p in group if p.gold != polarity]
        if mismatched:
            raise DataError(
                f"type {type_label} group is not single-polarity "
                f"({len(mismatched)} pairs disagree with {polarity})"
            )
        correct = sum(
            1
            for p in group
            if (p.similarity >= threshold) == (polarity == "positive")
        )
        total = len(group)
        # Standard F1 with this polarity as the positive class: no wrong-class
        # items exist, so precision is 1 when correct > 0.
        recall = correct / total
        precision = 1.0 if correct else 0.0
        out[type_label] = compose_f1(precision, recall)
    out["mean"] = sum(out[t] for t in groups) / len(groups)
    return out


def per_type_accuracy(pairs: list[LabeledPair], threshold: float) -> dict[str, float]:
    groups: dict[str, list[LabeledPair]] = {}
    for pair in pairs:
        if pair.type_label is None:
            raise DataError("per-type accuracy requires type labels")
        groups.setdefault(pair.type_label, []).append(pair)
    if not groups:
        raise DataError("per-type accuracy requires at least one labeled pair")
    out = {}
    for type_label in sorted(groups):
        group = groups[type_label]
        correct = sum(
            1
            for p in group
            if (p.similarity >= threshold) == (p.gold == "positive")
        )
        out[type_label] = correct / len(group)
    out["mean"] = sum(out[t] for t in groups) / len(groups)
    return out


def threshold_sweep(
    pairs: list[LabeledPair], thresholds: tuple[float, ...] = DEFAULT_SWEEP_THRESHOLDS
) -> list[dict[str, float]]:
    """Mean per-type accuracy at each threshold (default grid 0.1..0.9)."""
    if not thresholds:
        raise DataError("threshold sweep requires a non-empty grid")
    curve = []
    for threshold in thresholds:
        accuracy = per_type_accuracy(pairs, threshold)
        point = {"threshold": threshold, "mean_accuracy": accuracy["mean"]}
        for key, value in accuracy.items():
            if key != "mean":
                point[f"type_{key}"] = value
        curve.append(point)
    return curve


def best_threshold_search(
    pairs: list[LabeledPair], thresholds: tuple[float, ...] = DEFAULT_SWEEP_THRESHOLDS
) -> dict[str, float]:
    """Best-F1 threshold over the grid; ties break to the smallest threshold."""
    if not thresholds:
        raise DataError("threshold search requires a non-empty grid")
    best = None
    for threshold in sorted(thresholds):
        scores = clone_f1(pairs, threshold)
        if best is None or scores["f1"] > best["f1"]:
            best = scores
    return best


def _as_matrix(items: list) -> tuple[np.ndarray, list]:
    vectors = []
    labels = []
    for vector, label in items:
        array = vector.as_array() if isinstance(vector, EmbeddingVector) else np.asarray(vector, dtype=float)
        norm = np.linalg.norm(array)
        if norm == 0.0:
            raise DataError("zero-norm embedding cannot be ranked by cosine")
        vectors.append(array / norm)
        labels.append(label)
    return np.asarray(vectors), labels


def map_at_r(items: list, r: int | None = None) -> float:
    """Mean average precision at R; R defaults to each query's class size - 1."""
    if len(items) < 2:
        raise DataError("MAP@R needs at least two items")
    matrix, labels = _as_matrix(items)
    counts: dict = {}
    for label in labels:
        counts[label] = counts.get(label, 0) + 1
    for label, count in counts.items():
        if count < 2:
            raise DataError(f"class {label!r} is a singleton; every query needs a relevant item")

    sims = matrix @ matrix.T
    ap_values = []
    n = len(labels)
    for q in range(n):
        order = sorted((i for i in range(n) if i != q), key=lambda i: (-sims[q, i], i))
        r_q = counts[labels[q]] - 1 if r is None else r
        if r_q < 1:
            raise DataError("R must be >= 1")
        hits = 0
        ap = 0.0
        for rank, i in enumerate(order[:r_q], start=1):
            if labels[i] == labels[q]:
                hits += 1
                ap += hits / rank
        ap_values.append(ap / r_q)
    return float(np.mean(ap_values))


def acc_at_k(queries: list, corpus: list, k: int = 50) -> float:
    """Fraction of queries with >= 1 same-class item in the top-k by cosine."""
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    if not corpus:
        raise DataError("Acc@k requires a non-empty corpus")
    if not queries:
        raise DataError("Acc@k requires at least one query")
    corpus_matrix, corpus_labels = _as_matrix(corpus)
    query_matrix, query_labels = _as_matrix(queries)
    sims = query_matrix @ corpus_matrix.T
    hits = 0
    n_corpus = len(corpus_labels)
    for q in range(len(query_labels)):
        order = sorted(range(n_corpus), key=lambda i: (-sims[q, i], i))
        top = order[: min(k, n_corpus)]
        if any(corpus_labels[i] == query_labels[q] for i in top):
            hits += 1
    return hits / len(query_labels)
