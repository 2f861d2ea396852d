"""Evolution prompt templates.

Templates live in versioned text files rather than source constants so
deployments can extend or replace directions without rebuilding; the shipped
set is pinned byte-for-byte by golden tests.  A template is plain text with
``{slot}`` placeholders; the recognized slots are ``source_code``,
``task_description``, and ``evolving_instruction``.

Direction III additionally draws one of five evolving sub-instructions; the
sampler is the fixed scheme ``seed mod 5``, which is deterministic per seed
and exactly uniform over any run of consecutive seeds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..corpus.model import CodeSample, Task
from ..errors import ConfigError, DataError

DIRECTIONS = ("I", "II", "III", "IV")
ALL_TEMPLATE_NAMES = DIRECTIONS + ("test_gen",)
KNOWN_SLOTS = ("source_code", "task_description", "evolving_instruction")
TYPE3_SUB_COUNT = 5
ALIGNMENT_TASKS = ("clone", "consistency", "retrieval")

_SLOT_RE = re.compile(r"\{(" + "|".join(KNOWN_SLOTS) + r")\}")


@dataclass(frozen=True)
class PromptTemplate:
    direction: str
    system_text: str

    @property
    def slots(self) -> tuple[str, ...]:
        seen = []
        for match in _SLOT_RE.finditer(self.system_text):
            if match.group(1) not in seen:
                seen.append(match.group(1))
        return tuple(seen)

    def render(self, **values: str) -> str:
        missing = [slot for slot in self.slots if slot not in values or values[slot] is None]
        if missing:
            raise DataError(f"template {self.direction}: missing slot values {missing}")

        def substitute(match: re.Match) -> str:
            return values[match.group(1)]

        return _SLOT_RE.sub(substitute, self.system_text)


@dataclass(frozen=True)
class TemplateSet:
    templates: dict[str, PromptTemplate]
    type3_instructions: tuple[str, ...]
    alignment_instructions: dict[str, str]

    def __post_init__(self):
        if len(self.type3_instructions) != TYPE3_SUB_COUNT:
            raise ConfigError(
                f"direction III requires exactly {TYPE3_SUB_COUNT} evolving "
                f"sub-instructions, found {len(self.type3_instructions)}"
            )

    def get(self, direction: str) -> PromptTemplate:
        try:
            return self.templates[direction]
        except KeyError:
            raise ConfigError(f"no template for direction {direction!r}") from None


def _packaged_dir() -> Path:
    return Path(resources.files("code_evolve.llm") / "templates")


def _read_exact(path: Path) -> str:
    """Read preserving CRLF markers exactly; template bytes are the contract."""
    return path.read_bytes().decode("utf-8")


def load_templates(template_dir: Path | str | None = None) -> TemplateSet:
    """Load a template directory (``<direction>.txt`` + ``type3_sub/<n>.txt``).

    Defaults to the packaged set transcribed from the framework's published
    instruction texts.
    """
    root = Path(template_dir) if template_dir is not None else _packaged_dir()
    if not root.is_dir():
        raise ConfigError(f"template directory not found: {root}")
    templates = {}
    for name in ALL_TEMPLATE_NAMES:
        path = root / f"{name}.txt"
        if not path.exists():
            raise ConfigError(f"missing template file: {path}")
        templates[name] = PromptTemplate(direction=name, system_text=_read_exact(path))

    sub_dir = root / "type3_sub"
    subs = []
    if sub_dir.is_dir():
        for i in range(1, TYPE3_SUB_COUNT + 1):
            path = sub_dir / f"{i}.txt"
            if path.exists():
                subs.append(_read_exact(path))

    alignment = {}
    align_dir = root / "task_alignment"
    if align_dir.is_dir():
        for name in ALIGNMENT_TASKS:
            path = align_dir / f"{name}.txt"
            if path.exists():
                alignment[name] = _read_exact(path)

    return TemplateSet(
        templates=templates,
        type3_instructions=tuple(subs),
        alignment_instructions=alignment,
    )


def sample_type3_instruction(seed: int, templates: TemplateSet | None = None) -> str:
    """Pick one of the five evolving sub-instructions, deterministically per seed."""
    if templates is None:
        templates = load_templates()
    return templates.type3_instructions[seed % TYPE3_SUB_COUNT]


def render_prompt(
    direction: str,
    source: CodeSample,
    task: Task,
    extra: str | None = None,
    templates: TemplateSet | None = None,
) -> str:
    """Render the evolution prompt for one direction.

    Directions I, III, and IV embed the source body verbatim; direction II
    embeds the task description instead (the model re-implements from
    intent).  Direction III requires ``extra``, one of the five evolving
    sub-instructions.
    """
    if templates is None:
        templates = load_templates()
    template = templates.get(direction)
    if direction == "III":
        if not extra:
            raise DataError("direction III requires an evolving sub-instruction")
        if extra not in templates.type3_instructions:
            raise DataError("evolving instruction is not one of the five shipped sub-instructions")
    return template.render(
        source_code=source.body,
        task_description=task.description,
        evolving_instruction=extra or "",
    )
