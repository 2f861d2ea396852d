"""Pull runnable code out of an LLM response.

The prompts ask for code-only answers, so the common case is one fenced
block.  Rule: take the first fenced block (language tag ignored); if the
response has no fence, return the whole response trimmed and flag it
low-confidence so downstream validation treats it with suspicion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import DataError

_FENCE_RE = re.compile(r"```[ \t]*[\w+-]*[ \t]*\r?\n(.*?)```", re.DOTALL)


@dataclass(frozen=True)
class ExtractedCode:
    text: str
    low_confidence: bool


def extract_code_block(response: str) -> ExtractedCode:
    if not response or not response.strip():
        raise DataError("empty LLM response")
    match = _FENCE_RE.search(response)
    if match:
        return ExtractedCode(text=match.group(1).strip("\r\n"), low_confidence=False)
    return ExtractedCode(text=response.strip(), low_confidence=True)
