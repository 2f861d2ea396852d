"""The execution-based semantic filter.

A variant is *equivalent* to its source when every suite case runs cleanly
and reproduces the reference output, *divergent* when every case runs
cleanly but at least one output differs, and *invalid* otherwise (compile
error, crash, timeout, or output overflow on any case).  Invalid variants
never enter a dataset.

Outputs are normalized before comparison — trailing whitespace per line and
the final trailing newline are stripped — because newline conventions vary
across toolchains and runtimes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..corpus.model import CodeSample
from ..errors import DataError
from .runner import Toolchain, run_program
from .suite import TestSuite


def normalize_output(text: str) -> str:
    lines = [line.rstrip() for line in text.split("\n")]
    while lines and lines[-1] == "":
        lines.pop()
    return "\n".join(lines)


@dataclass(frozen=True)
class CaseResult:
    status: str
    matched: bool
    duration_ms: float


@dataclass(frozen=True)
class SemVerdict:
    value: str  # equivalent | divergent | invalid
    cases: tuple[CaseResult, ...]

    @property
    def is_equivalent(self) -> bool:
        return self.value == "equivalent"


def f_exec(
    source: CodeSample,
    variant: CodeSample,
    suite: TestSuite,
    corpus_language: str,
    toolchains: dict[str, Toolchain] | None = None,
    max_workers: int = 1,
) -> SemVerdict:
    """Judge a variant against the task's unified suite."""
    if suite.task_id != source.task_id:
        raise DataError(
            f"suite {suite.suite_id!r} belongs to task {suite.task_id!r}, "
            f"not the pair's task {source.task_id!r}"
        )

    def run_case(case) -> CaseResult:
        outcome = run_program(
            variant.body, corpus_language, case.stdin, suite.limits, toolchains
        )
        matched = outcome.ok and normalize_output(outcome.stdout) == normalize_output(
            case.reference_stdout
        )
        return CaseResult(status=outcome.status, matched=matched, duration_ms=outcome.duration_ms)

    if max_workers > 1 and len(suite.cases) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = tuple(pool.map(run_case, suite.cases))
    else:
        results = tuple(run_case(case) for case in suite.cases)

    if any(r.status != "ok" for r in results):
        return SemVerdict("invalid", results)
    if all(r.matched for r in results):
        return SemVerdict("equivalent", results)
    return SemVerdict("divergent", results)
