"""Embedding providers with a content-addressed disk cache.

Cache keys hash the model tag together with the *full* text sent to the
provider (instruction prefix included), so instruction-aligned and bare
embeddings never collide and paid-API runs are resumable and replayable.
Local models can skip the network entirely: pooled vectors load from JSONL,
and raw per-token hidden states load from ``.npz`` with a pooling mode.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import requests

from ..errors import ConfigError, DataError, ProviderError
from .vectors import EmbeddingVector, pool

DEFAULT_API_KEY_ENV = "CODE_EVOLVE_EMBED_API_KEY"


def cache_key(model_tag: str, full_text: str) -> str:
    payload = model_tag.encode("utf-8") + b"\x00" + full_text.encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


class EmbeddingCache:
    """Single-writer JSON-per-vector cache directory."""

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> EmbeddingVector | None:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            row = json.loads(path.read_text(encoding="utf-8"))
            return EmbeddingVector(values=tuple(row["values"]), model_tag=row.get("model_tag", ""))
        except (json.JSONDecodeError, KeyError) as exc:
            raise DataError(f"corrupt cache entry {path}: {exc}") from exc

    def put(self, key: str, vector: EmbeddingVector) -> None:
        payload = json.dumps(
            {"model_tag": vector.model_tag, "values": list(vector.values)}
        )
        with self._lock:
            tmp = self._path(key).with_suffix(".tmp")
            tmp.write_text(payload, encoding="utf-8")
            tmp.replace(self._path(key))


class EmbeddingProvider:
    """Interface: fetch one embedding for prepared text."""

    name = "embedding-provider"
    model_tag = ""
    expected_dim: int | None = None

    # How an instruction is prepended; providers may override.
    instruction_template = "{instruction}\n{text}"

    def fetch(self, text: str) -> list[float]:
        raise NotImplementedError

    def prepare(self, text: str, instruction: str | None) -> str:
        if instruction:
            return self.instruction_template.format(instruction=instruction, text=text)
        return text


class HttpEmbeddingProvider(EmbeddingProvider):
    def __init__(
        self,
        name: str,
        endpoint: str,
        model_tag: str,
        api_key_env: str = DEFAULT_API_KEY_ENV,
        expected_dim: int | None = None,
        timeout_seconds: float = 60.0,
    ):
        self.name = name
        self.endpoint = endpoint
        self.model_tag = model_tag
        self.api_key_env = api_key_env
        self.expected_dim = expected_dim
        self.timeout_seconds = timeout_seconds

    def fetch(self, text: str) -> list[float]:
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise ConfigError(
                f"provider {self.name!r}: credential env var {self.api_key_env} is not set"
            )
        try:
            response = requests.post(
                self.endpoint,
                headers={"Authorization": f"Bearer {key}", "Content-Type": "application/json"},
                json={"model": self.model_tag, "input": text},
                timeout=self.timeout_seconds,
            )
        except requests.Timeout as exc:
            raise ProviderError(f"{self.name}: request timed out", retryable=True) from exc
        except requests.RequestException as exc:
            raise ProviderError(f"{self.name}: transport error: {exc}", retryable=True) from exc
        if response.status_code in (401, 403):
            raise ProviderError(f"{self.name}: authentication failed ({response.status_code})")
        if response.status_code != 200:
            raise ProviderError(f"{self.name}: unexpected HTTP {response.status_code}")
        try:
            return response.json()["data"][0]["embedding"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"{self.name}: malformed provider response: {exc}") from exc


class StubEmbeddingProvider(EmbeddingProvider):
    """Deterministic vectors derived from the input hash; for tests."""

    def __init__(self, dim: int = 8, model_tag: str = "stub", table: dict | None = None):
        self.name = "stub"
        self.model_tag = model_tag
        self.expected_dim = dim
        self.dim = dim
        self.table = table or {}
        self.fetches = 0

    def fetch(self, text: str) -> list[float]:
        self.fetches += 1
        if text in self.table:
            return list(self.table[text])
        digest = hashlib.sha256(text.encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        return [float(x) for x in rng.normal(size=self.dim)]


def embed(
    text: str,
    provider: EmbeddingProvider,
    instruction: str | None = None,
    cache: EmbeddingCache | None = None,
) -> EmbeddingVector:
    """Embed ``text`` (optionally instruction-prefixed), via cache when warm."""
    full_text = provider.prepare(text, instruction)
    key = cache_key(provider.model_tag, full_text)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    values = provider.fetch(full_text)
    if provider.expected_dim is not None and len(values) != provider.expected_dim:
        raise ProviderError(
            f"{provider.name}: dimension mismatch for model {provider.model_tag!r}: "
            f"expected {provider.expected_dim}, got {len(values)}"
        )
    vector = EmbeddingVector(values=tuple(float(v) for v in values), model_tag=provider.model_tag)
    if cache is not None:
        cache.put(key, vector)
    return vector


def load_embedding_provider_config(path: Path | str) -> HttpEmbeddingProvider:
    path = Path(path)
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read embedding provider config {path}: {exc}") from exc
    for key in ("endpoint", "model_tag"):
        if key not in config:
            raise ConfigError(f"{path}: embedding provider config missing {key!r}")
    return HttpEmbeddingProvider(
        name=config.get("name", "embedding"),
        endpoint=config["endpoint"],
        model_tag=config["model_tag"],
        api_key_env=config.get("api_key_env", DEFAULT_API_KEY_ENV),
        expected_dim=config.get("expected_dim"),
        timeout_seconds=float(config.get("timeout_seconds", 60.0)),
    )


def load_pooled_vectors_jsonl(path: Path | str) -> dict[str, EmbeddingVector]:
    """Read precomputed vectors: one ``{"id", "vector"}`` object per line."""
    from ..corpus.io import read_jsonl

    vectors = {}
    for lineno, row in enumerate(read_jsonl(path), start=1):
        if "id" not in row or "vector" not in row:
            raise DataError(f"{path}:{lineno}: vector record needs id and vector")
        vectors[row["id"]] = EmbeddingVector(
            values=tuple(float(v) for v in row["vector"]), model_tag=row.get("model_tag", "file")
        )
    return vectors


def load_token_states_npz(path: Path | str, mode: str) -> dict[str, EmbeddingVector]:
    """Read per-token hidden states (one 2-D array per id) and pool them."""
    try:
        archive = np.load(Path(path))
    except (OSError, ValueError) as exc:
        raise DataError(f"cannot read hidden-state archive {path}: {exc}") from exc
    return {name: pool(archive[name], mode) for name in archive.files}
