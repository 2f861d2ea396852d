from __future__ import annotations

import json
import random

import pytest

from code_evolve.errors import ConfigError, DataError, ProviderError
from code_evolve.llm.client import (
    GenerationParams,
    ProviderPool,
    ScriptedProvider,
    StubProvider,
    complete,
    load_provider_config,
)
from code_evolve.llm.extract import extract_code_block

PARAMS = GenerationParams(model_name="test-model")


def test_generation_params_defaults_and_validation():
    params = GenerationParams()
    assert params.temperature == 1.0
    assert params.top_p == 0.95
    assert params.max_tokens == 2048
    with pytest.raises(ConfigError):
        GenerationParams(temperature=-0.1)
    with pytest.raises(ConfigError):
        GenerationParams(top_p=0.0)
    with pytest.raises(ConfigError):
        GenerationParams(max_tokens=0)


def test_stub_round_trip_single_attempt():
    provider = StubProvider("```c\nint main() {}\n```")
    exchange = complete("prompt text", PARAMS, provider)
    assert exchange.attempts == 1
    assert exchange.response.startswith("```")
    assert exchange.extracted_code == "int main() {}"
    assert exchange.prompt == "prompt text"
    assert not exchange.extraction_failed


def test_transient_failures_retry_then_succeed():
    state = {"calls": 0}

    def responder(prompt):
        state["calls"] += 1
        if state["calls"] <= 2:
            return ProviderError("rate limited", retryable=True)
        return "```py\nx = 1\n```"

    slept = []
    provider = StubProvider(responder)
    exchange = complete("p", PARAMS, provider, sleep=slept.append)
    assert exchange.attempts == 3
    assert exchange.extracted_code == "x = 1"
    assert slept == [0.5, 1.0]  # capped exponential backoff


def test_auth_failure_is_not_retried():
    provider = StubProvider(ProviderError("401 unauthorized", retryable=False))
    with pytest.raises(ProviderError) as excinfo:
        complete("p", PARAMS, provider, sleep=lambda _: None)
    assert excinfo.value.attempts == 1


def test_retry_cap_is_enforced():
    provider = StubProvider(ProviderError("always down", retryable=True))
    with pytest.raises(ProviderError) as excinfo:
        complete("p", PARAMS, provider, max_attempts=3, sleep=lambda _: None)
    assert excinfo.value.attempts == 3


def test_extract_single_fenced_block():
    result = extract_code_block("here is code:\n```python\nprint(1)\n```\nthanks")
    assert result.text == "print(1)"
    assert not result.low_confidence


def test_extract_takes_first_of_two_blocks():
    response = "```c\nfirst block\n```\nand\n```c\nsecond block\n```"
    assert extract_code_block(response).text == "first block"


def test_extract_prose_only_is_low_confidence():
    result = extract_code_block("I cannot produce code for this request.")
    assert result.low_confidence
    assert result.text.startswith("I cannot")


def test_extract_empty_response_errors():
    with pytest.raises(DataError, match="empty"):
        extract_code_block("   \n")


def test_scripted_provider_matches_substrings(tmp_path):
    script = {
        "entries": [
            {"when_contains": ["alpha", "beta"], "response": "both"},
            {"when_contains": "alpha", "response": "just alpha"},
        ],
        "default_response": "fallback",
    }
    path = tmp_path / "script.json"
    path.write_text(json.dumps(script))
    provider = ScriptedProvider.from_file(path)
    assert provider.request("alpha and beta here", PARAMS) == "both"
    assert provider.request("alpha only", PARAMS) == "just alpha"
    assert provider.request("nothing relevant", PARAMS) == "fallback"


def test_provider_pool_single_is_deterministic():
    provider = StubProvider("x")
    pool = ProviderPool(providers=[provider])
    assert pool.pick(random.Random(0)) is provider


def test_provider_pool_weighted_selection_follows_weights():
    heavy = StubProvider("heavy", name="heavy")
    light = StubProvider("light", name="light")
    pool = ProviderPool(providers=[heavy, light], weights=[9.0, 1.0])
    rng = random.Random(42)
    picks = [pool.pick(rng).name for _ in range(2000)]
    heavy_share = picks.count("heavy") / len(picks)
    assert 0.85 < heavy_share < 0.95


def test_load_provider_config_http_and_scripted(tmp_path):
    script_path = tmp_path / "script.json"
    script_path.write_text(json.dumps({"default_response": "ok"}))
    config = {
        "providers": [
            {"name": "main", "endpoint": "https://example.test/v1/chat", "model": "m-1"},
            {"type": "scripted", "script_path": "script.json", "name": "replay"},
        ]
    }
    config_path = tmp_path / "providers.json"
    config_path.write_text(json.dumps(config))
    pool = load_provider_config(config_path)
    assert [p.name for p in pool.providers] == ["main", "replay"]


def test_load_provider_config_requires_entries(tmp_path):
    path = tmp_path / "providers.json"
    path.write_text(json.dumps({"providers": []}))
    with pytest.raises(ConfigError, match="no providers"):
        load_provider_config(path)


def test_complete_does_not_mutate_prompt():
    prompt = "immutable prompt"
    provider = StubProvider("```\ncode\n```")
    exchange = complete(prompt, PARAMS, provider)
    assert exchange.prompt == prompt == "immutable prompt"
