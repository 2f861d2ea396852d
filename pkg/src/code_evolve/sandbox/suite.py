"""Unified per-task test suites.

One suite serves every variant of a task.  The gateway proposes candidate
stdin payloads, but reference outputs are never taken from the model: they
come from executing the task's exemplar program.  Inputs the exemplar cannot
handle are dropped; a task whose exemplar is nondeterministic (two runs with
different output) or fails every proposed input is rejected outright.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..corpus.model import CodeSample, Task
from ..errors import DataError
from ..llm.client import GenerationParams, LlmProvider, complete
from ..llm.extract import extract_code_block
from ..llm.templates import TemplateSet, load_templates
from .runner import ExecutionLimits, Toolchain, run_program

DEFAULT_PROPOSED_INPUTS = 8


class SuiteGenerationError(DataError):
    """The task cannot get a usable unified suite."""


@dataclass(frozen=True)
class TestCase:
    __test__ = False

    stdin: str
    reference_stdout: str


@dataclass(frozen=True)
class TestSuite:
    __test__ = False  # keep pytest from collecting this as a test class

    suite_id: str
    task_id: str
    cases: tuple[TestCase, ...]
    limits: ExecutionLimits = field(default_factory=ExecutionLimits)

    def __post_init__(self):
        if not self.cases:
            raise DataError(f"suite {self.suite_id!r}: at least one case required")


def _parse_proposed_inputs(response: str) -> list[str]:
    extracted = extract_code_block(response)
    try:
        proposals = json.loads(extracted.text)
    except json.JSONDecodeError as exc:
        raise SuiteGenerationError(f"test-input proposal is not valid JSON: {exc}") from exc
    if not isinstance(proposals, list) or not all(isinstance(p, str) for p in proposals):
        raise SuiteGenerationError("test-input proposal must be a JSON array of strings")
    deduped = []
    for proposal in proposals:
        if proposal not in deduped:
            deduped.append(proposal)
    return deduped


def generate_test_suite(
    task: Task,
    exemplar: CodeSample,
    gateway: LlmProvider,
    params: GenerationParams | None = None,
    templates: TemplateSet | None = None,
    limits: ExecutionLimits | None = None,
    toolchains: dict[str, Toolchain] | None = None,
) -> TestSuite:
    """Build the task's unified suite from one exemplar program."""
    templates = templates or load_templates()
    params = params or GenerationParams()
    limits = limits or ExecutionLimits()

    prompt = templates.get("test_gen").render(
        source_code=exemplar.body, task_description=task.description, evolving_instruction=""
    )
    exchange = complete(prompt, params, gateway)
    proposals = _parse_proposed_inputs(exchange.response)
    if not proposals:
        raise SuiteGenerationError(f"task {task.task_id!r}: no test inputs proposed")

    cases = []
    for stdin in proposals:
        first = run_program(exemplar.body, task.corpus_language, stdin, limits, toolchains)
        if not first.ok:
            continue
        second = run_program(exemplar.body, task.corpus_language, stdin, limits, toolchains)
        if not second.ok or second.stdout != first.stdout:
            raise SuiteGenerationError(
                f"task {task.task_id!r}: exemplar is nondeterministic on input {stdin!r}"
            )
        cases.append(TestCase(stdin=stdin, reference_stdout=first.stdout))

    if not cases:
        raise SuiteGenerationError(
            f"task {task.task_id!r}: exemplar failed on every proposed input"
        )
    return TestSuite(
        suite_id=f"suite-{task.task_id}", task_id=task.task_id, cases=tuple(cases), limits=limits
    )


def save_suites(suites: list[TestSuite], path: Path | str) -> None:
    from ..corpus.io import write_jsonl

    rows = []
    for suite in sorted(suites, key=lambda s: s.suite_id):
        rows.append(
            {
                "kind": "suite",
                "suite_id": suite.suite_id,
                "task_id": suite.task_id,
                "cases": [
                    {"stdin": c.stdin, "reference_stdout": c.reference_stdout}
                    for c in suite.cases
                ],
                "limits": {
                    "timeout_seconds": suite.limits.timeout_seconds,
                    "memory_bytes": suite.limits.memory_bytes,
                    "output_cap_bytes": suite.limits.output_cap_bytes,
                },
            }
        )
    write_jsonl(path, rows)


def load_suites(path: Path | str) -> dict[str, TestSuite]:
    from ..corpus.io import read_jsonl

    suites = {}
    for lineno, row in enumerate(read_jsonl(path), start=1):
        if row.get("kind") != "suite":
            raise DataError(f"{path}:{lineno}: expected suite record")
        limits_row = row.get("limits", {})
        suite = TestSuite(
            suite_id=row["suite_id"],
            task_id=row["task_id"],
            cases=tuple(
                TestCase(stdin=c["stdin"], reference_stdout=c["reference_stdout"])
                for c in row["cases"]
            ),
            limits=ExecutionLimits(
                timeout_seconds=limits_row.get("timeout_seconds", 5.0),
                memory_bytes=limits_row.get("memory_bytes", 256 * 1024 * 1024),
                output_cap_bytes=limits_row.get("output_cap_bytes", 1024 * 1024),
            ),
        )
        suites[suite.task_id] = suite
    return suites
