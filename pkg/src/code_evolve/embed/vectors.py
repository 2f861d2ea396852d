"""Embedding vectors, pooling, and cosine similarity.

Pooling reduces a (tokens x dim) matrix of last-layer hidden states to one
vector: ``cls`` takes the first position, ``mean`` and ``max`` reduce
element-wise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DataError

POOL_MODES = ("cls", "mean", "max")


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    model_tag: str = ""

    def __post_init__(self):
        if not self.values:
            raise DataError("embedding vector must be non-empty")
        array = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(array)):
            raise DataError("embedding vector has non-finite entries")

    @property
    def dimensionality(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def pool(hidden_states, mode: str) -> EmbeddingVector:
    """Reduce per-token vectors to one embedding."""
    matrix = np.asarray(hidden_states, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 1:
        raise DataError(f"pooling expects a non-empty 2-D matrix, got shape {matrix.shape}")
    if mode == "cls":
        reduced = matrix[0]
    elif mode == "mean":
        reduced = matrix.mean(axis=0)
    elif mode == "max":
        reduced = matrix.max(axis=0)
    else:
        raise DataError(f"unknown pooling mode {mode!r} (expected one of {POOL_MODES})")
    return EmbeddingVector(values=tuple(float(x) for x in reduced))


def cosine_similarity(u, v) -> float:
    a = u.as_array() if isinstance(u, EmbeddingVector) else np.asarray(u, dtype=float)
    b = v.as_array() if isinstance(v, EmbeddingVector) else np.asarray(v, dtype=float)
    if a.shape != b.shape:
        raise DataError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise DataError("cosine similarity undefined for zero-norm vectors")
    value = float(np.dot(a, b) / (norm_a * norm_b))
    return max(-1.0, min(1.0, value))
