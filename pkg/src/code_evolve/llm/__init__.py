"""LLM gateway: prompt templates, chat-completion providers, response post-processing."""

from .templates import (
    DIRECTIONS,
    PromptTemplate,
    TemplateSet,
    load_templates,
    render_prompt,
    sample_type3_instruction,
)
from .client import (
    GenerationParams,
    LlmExchange,
    LlmProvider,
    HttpChatProvider,
    ProviderPool,
    ScriptedProvider,
    StubProvider,
    complete,
    load_provider_config,
)
from .extract import ExtractedCode, extract_code_block

__all__ = [
    "DIRECTIONS",
    "PromptTemplate",
    "TemplateSet",
    "load_templates",
    "render_prompt",
    "sample_type3_instruction",
    "GenerationParams",
    "LlmExchange",
    "LlmProvider",
    "HttpChatProvider",
    "ProviderPool",
    "ScriptedProvider",
    "StubProvider",
    "complete",
    "load_provider_config",
    "ExtractedCode",
    "extract_code_block",
]
