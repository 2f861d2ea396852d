"""Chat-completion providers and the retrying ``complete`` call.

Any endpoint speaking the common chat-completions JSON shape works; the
provider config file supplies the endpoint, model name, and the environment
variable holding the credential.  Transient failures (429, 5xx, timeouts)
retry with capped exponential backoff; auth failures do not.  Several
providers can be pooled with per-request weighted selection to diversify
generations.
"""

from __future__ import annotations

import json
import os
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import requests

from ..errors import ConfigError, ProviderError

DEFAULT_API_KEY_ENV = "CODE_EVOLVE_LLM_API_KEY"
MAX_ATTEMPTS = 4
BACKOFF_BASE_SECONDS = 0.5
BACKOFF_CAP_SECONDS = 8.0


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = 1.0
    top_p: float = 0.95
    max_tokens: int = 2048
    model_name: str = ""

    def __post_init__(self):
        if self.temperature < 0:
            raise ConfigError(f"temperature must be >= 0, got {self.temperature}")
        if not 0 < self.top_p <= 1:
            raise ConfigError(f"top_p must lie in (0,1], got {self.top_p}")
        if self.max_tokens <= 0:
            raise ConfigError(f"max_tokens must be positive, got {self.max_tokens}")


@dataclass(frozen=True)
class LlmExchange:
    prompt: str
    response: str
    extracted_code: str
    extraction_failed: bool
    latency_seconds: float
    provider_name: str
    model_name: str
    attempts: int


class LlmProvider:
    """Interface: subclasses implement ``request`` returning the response text.

    ``request`` raising ProviderError(retryable=True) triggers backoff.
    """

    name = "provider"
    max_in_flight = 4

    def __init__(self):
        self._slots = threading.Semaphore(self.max_in_flight)

    def request(self, prompt: str, params: GenerationParams) -> str:
        raise NotImplementedError

    def call(self, prompt: str, params: GenerationParams) -> str:
        with self._slots:
            return self.request(prompt, params)


class HttpChatProvider(LlmProvider):
    def __init__(
        self,
        name: str,
        endpoint: str,
        model: str,
        api_key_env: str = DEFAULT_API_KEY_ENV,
        timeout_seconds: float = 120.0,
        max_in_flight: int = 4,
        weight: float = 1.0,
    ):
        self.name = name
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout_seconds = timeout_seconds
        self.max_in_flight = max_in_flight
        self.weight = weight
        super().__init__()

    def _headers(self) -> dict:
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise ConfigError(
                f"provider {self.name!r}: credential env var {self.api_key_env} is not set"
            )
        return {"Authorization": f"Bearer {key}", "Content-Type": "application/json"}

    def request(self, prompt: str, params: GenerationParams) -> str:
        payload = {
            "model": params.model_name or self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": params.temperature,
            "top_p": params.top_p,
            "max_tokens": params.max_tokens,
        }
        try:
            response = requests.post(
                self.endpoint, headers=self._headers(), json=payload, timeout=self.timeout_seconds
            )
        except requests.Timeout as exc:
            raise ProviderError(f"{self.name}: request timed out", retryable=True) from exc
        except requests.RequestException as exc:
            raise ProviderError(f"{self.name}: transport error: {exc}", retryable=True) from exc
        if response.status_code in (401, 403):
            raise ProviderError(f"{self.name}: authentication failed ({response.status_code})")
        if response.status_code == 429 or response.status_code >= 500:
            raise ProviderError(
                f"{self.name}: transient HTTP {response.status_code}", retryable=True
            )
        if response.status_code != 200:
            raise ProviderError(f"{self.name}: unexpected HTTP {response.status_code}")
        try:
            body = response.json()
            return body["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise ProviderError(f"{self.name}: malformed provider response: {exc}") from exc


class StubProvider(LlmProvider):
    """Scripted provider for tests and dry runs.

    ``script`` maps a prompt predicate to responses; the default responder is
    a callable or canned text.  Entries may be exceptions to inject faults.
    """

    def __init__(self, responder, name: str = "stub", max_in_flight: int = 16):
        self.name = name
        self.max_in_flight = max_in_flight
        self._responder = responder
        self.calls = 0
        self._lock = threading.Lock()
        super().__init__()

    def request(self, prompt: str, params: GenerationParams) -> str:
        with self._lock:
            self.calls += 1
        result = self._responder(prompt) if callable(self._responder) else self._responder
        if isinstance(result, Exception):
            raise result
        return result


class ScriptedProvider(LlmProvider):
    """Replay provider driven by a script file; fully deterministic.

    Script shape: ``{"entries": [{"when_contains": str | [str, ...],
    "response": str}, ...], "default_response": str?}``.  The first entry
    whose substrings all occur in the prompt wins.
    """

    def __init__(self, entries: list[dict], default_response: str | None = None, name: str = "scripted"):
        self.name = name
        self.max_in_flight = 16
        self.entries = entries
        self.default_response = default_response
        super().__init__()

    @classmethod
    def from_file(cls, path: Path | str, name: str = "scripted") -> "ScriptedProvider":
        path = Path(path)
        try:
            script = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read provider script {path}: {exc}") from exc
        return cls(
            entries=script.get("entries", []),
            default_response=script.get("default_response"),
            name=name,
        )

    def request(self, prompt: str, params: GenerationParams) -> str:
        for entry in self.entries:
            needles = entry.get("when_contains", [])
            if isinstance(needles, str):
                needles = [needles]
            if all(needle in prompt for needle in needles):
                return entry["response"]
        if self.default_response is not None:
            return self.default_response
        raise ProviderError(f"{self.name}: no scripted response matches the prompt")


@dataclass
class ProviderPool:
    """Weighted pool; a single provider is just a pool of one."""

    providers: list[LlmProvider]
    weights: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.providers:
            raise ConfigError("provider pool is empty")
        if not self.weights:
            self.weights = [getattr(p, "weight", 1.0) for p in self.providers]
        if len(self.weights) != len(self.providers) or any(w <= 0 for w in self.weights):
            raise ConfigError("provider weights must be positive and match providers")

    def pick(self, rng: random.Random) -> LlmProvider:
        if len(self.providers) == 1:
            return self.providers[0]
        return rng.choices(self.providers, weights=self.weights, k=1)[0]


def complete(
    prompt: str,
    params: GenerationParams,
    provider: LlmProvider,
    max_attempts: int = MAX_ATTEMPTS,
    sleep=time.sleep,
) -> LlmExchange:
    """Run one completion with capped exponential backoff on transient errors."""
    from .extract import extract_code_block

    start = time.monotonic()
    attempts = 0
    while True:
        attempts += 1
        try:
            text = provider.call(prompt, params)
            break
        except ProviderError as exc:
            if not exc.retryable or attempts >= max_attempts:
                exc.attempts = attempts
                raise
            delay = min(BACKOFF_CAP_SECONDS, BACKOFF_BASE_SECONDS * (2 ** (attempts - 1)))
            sleep(delay)
    try:
        extracted_code = extract_code_block(text).text
    except Exception:
        extracted_code = ""
    return LlmExchange(
        prompt=prompt,
        response=text,
        extracted_code=extracted_code,
        extraction_failed=extracted_code == "",
        latency_seconds=time.monotonic() - start,
        provider_name=provider.name,
        model_name=params.model_name or getattr(provider, "model", ""),
        attempts=attempts,
    )


def load_provider_config(path: Path | str) -> ProviderPool:
    """Build a provider pool from a JSON config file.

    Shape: ``{"providers": [{"name", "endpoint", "model", "api_key_env",
    "weight", "timeout_seconds", "max_in_flight"}, ...]}``.
    """
    path = Path(path)
    try:
        config = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read provider config {path}: {exc}") from exc
    entries = config.get("providers")
    if not entries:
        raise ConfigError(f"{path}: provider config lists no providers")
    providers = []
    for i, entry in enumerate(entries):
        if entry.get("type") == "scripted":
            if "script_path" not in entry:
                raise ConfigError(f"{path}: scripted provider #{i} missing script_path")
            script_path = Path(entry["script_path"])
            if not script_path.is_absolute():
                script_path = path.parent / script_path
            provider = ScriptedProvider.from_file(script_path, name=entry.get("name", "scripted"))
            provider.weight = float(entry.get("weight", 1.0))
            providers.append(provider)
            continue
        for key in ("endpoint", "model"):
            if key not in entry:
                raise ConfigError(f"{path}: provider #{i} missing {key!r}")
        providers.append(
            HttpChatProvider(
                name=entry.get("name", f"provider-{i}"),
                endpoint=entry["endpoint"],
                model=entry["model"],
                api_key_env=entry.get("api_key_env", DEFAULT_API_KEY_ENV),
                timeout_seconds=float(entry.get("timeout_seconds", 120.0)),
                max_in_flight=int(entry.get("max_in_flight", 4)),
                weight=float(entry.get("weight", 1.0)),
            )
        )
    return ProviderPool(providers=providers)
