"""Embedding acquisition, pooling, and every downstream evaluation metric."""

from .vectors import EmbeddingVector, cosine_similarity, pool
from .providers import (
    EmbeddingCache,
    EmbeddingProvider,
    HttpEmbeddingProvider,
    StubEmbeddingProvider,
    embed,
    load_embedding_provider_config,
    load_pooled_vectors_jsonl,
    load_token_states_npz,
)
from .metrics import (
    LabeledPair,
    acc_at_k,
    best_threshold_search,
    clone_f1,
    per_type_f1,
    threshold_sweep,
    map_at_r,
)
from .report import MetricReport

__all__ = [
    "EmbeddingVector",
    "cosine_similarity",
    "pool",
    "EmbeddingCache",
    "EmbeddingProvider",
    "HttpEmbeddingProvider",
    "StubEmbeddingProvider",
    "embed",
    "load_embedding_provider_config",
    "load_pooled_vectors_jsonl",
    "load_token_states_npz",
    "LabeledPair",
    "acc_at_k",
    "best_threshold_search",
    "clone_f1",
    "per_type_f1",
    "threshold_sweep",
    "map_at_r",
    "MetricReport",
]
