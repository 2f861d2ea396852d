"""End-to-end evolution: generate candidates, filter, classify, assemble.

For every seed sample the pipeline attempts all four directions.  Each
attempt asks the gateway for one candidate, runs the execution filter
against the task's unified suite, scores CodeBLEU against the source, and
classifies the realized type.  A candidate that fails either filter is
discarded; under strict mode (default) it is also discarded when the
realized type differs from the direction's target, so each direction's
output is exactly its intended pair population.  The first accepted
candidate wins and the direction moves on, bounding cost at
``candidates_per_direction`` gateway calls per (seed, direction).

Seeds are processed by a bounded worker pool; directions within a seed run
sequentially against the shared suite.  All randomness derives from the run
seed, so a rerun with the same corpus, config, and gateway script produces
byte-identical artifacts.
"""

from __future__ import annotations

import random
import threading
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..corpus.model import CodeSample, Corpus, PairRecord, Task, content_id
from ..corpus.split import apply_split, split_dataset
from ..corpus.model import DatasetSplit
from ..errors import DataError, ProviderError
from ..llm.client import GenerationParams, LlmProvider, ProviderPool, complete
from ..llm.templates import TemplateSet, load_templates, render_prompt, sample_type3_instruction
from ..sandbox.runner import Toolchain
from ..sandbox.suite import SuiteGenerationError, TestSuite, generate_test_suite
from ..sandbox.verdict import SemVerdict, f_exec
from ..synmetrics.codebleu import CodeBleuScore, codebleu
from .directions import DIRECTIONS, EvolutionDirection, classify_type
from .review import ReviewItem, enqueue_review

DISCARD_REASONS = (
    "llm_failure",
    "empty_extraction",
    "invalid_execution",
    "type_mismatch",
)


@dataclass(frozen=True)
class PipelineConfig:
    theta: float = 0.4
    candidates_per_direction: int = 4
    review_rate: float = 0.2
    generation: GenerationParams = field(default_factory=GenerationParams)
    split_ratio: tuple[int, int] = (3, 1)
    split_seed: int = 0
    seed: int = 0
    strict: bool = True
    max_workers: int = 4

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise DataError(f"theta must lie in (0,1), got {self.theta}")
        if not 0.0 < self.review_rate <= 1.0:
            raise DataError(f"review_rate must lie in (0,1], got {self.review_rate}")
        if self.candidates_per_direction < 1:
            raise DataError("candidates_per_direction must be >= 1")


@dataclass(frozen=True)
class CandidateVariant:
    code: str
    direction_id: str
    source_id: str
    prompt: str
    attempts: int
    sem_verdict: SemVerdict | None = None
    score: CodeBleuScore | None = None
    outcome: str = "pending"  # accepted | discarded | pending
    type_label: str | None = None
    discard_reason: str | None = None


@dataclass
class RunReport:
    per_direction: dict[str, dict[str, int]] = field(default_factory=dict)
    discard_reasons: dict[str, int] = field(default_factory=dict)
    llm_calls: int = 0
    tasks_skipped: list[str] = field(default_factory=list)
    accepted_total: int = 0
    review_items: int = 0

    def __post_init__(self):
        self._lock = threading.Lock()

    def record_attempt(self, direction_id: str) -> None:
        with self._lock:
            entry = self.per_direction.setdefault(direction_id, {"attempts": 0, "accepted": 0})
            entry["attempts"] += 1

    def record_accept(self, direction_id: str) -> None:
        with self._lock:
            self.per_direction.setdefault(direction_id, {"attempts": 0, "accepted": 0})
            self.per_direction[direction_id]["accepted"] += 1
            self.accepted_total += 1

    def record_discard(self, reason: str) -> None:
        with self._lock:
            self.discard_reasons[reason] = self.discard_reasons.get(reason, 0) + 1

    def record_llm_call(self) -> None:
        with self._lock:
            self.llm_calls += 1

    def as_dict(self) -> dict:
        out = {
            "per_direction": {
                direction: dict(stats) for direction, stats in sorted(self.per_direction.items())
            },
            "discard_reasons": dict(sorted(self.discard_reasons.items())),
            "llm_calls": self.llm_calls,
            "tasks_skipped": sorted(self.tasks_skipped),
            "accepted_total": self.accepted_total,
            "review_items": self.review_items,
        }
        for direction, stats in out["per_direction"].items():
            attempts = stats.get("attempts", 0)
            stats["acceptance_rate"] = round(stats["accepted"] / attempts, 6) if attempts else 0.0
        return out


@dataclass
class PipelineResult:
    corpus: Corpus
    records: list[PairRecord]
    split: DatasetSplit
    review_queue: list[ReviewItem]
    report: RunReport


def derive_seed(*parts) -> int:
    """Stable integer seed from structured parts (crc32, platform-independent)."""
    text = ":".join(str(p) for p in parts)
    return zlib.crc32(text.encode("utf-8"))


def _resolve_provider(gateway, *seed_parts) -> LlmProvider:
    """Per-request weighted pool selection, deterministic in the seed parts."""
    if isinstance(gateway, ProviderPool):
        return gateway.pick(random.Random(derive_seed(*seed_parts)))
    return gateway


def evolve_candidate(
    source: CodeSample,
    direction: EvolutionDirection,
    gateway: LlmProvider,
    config: PipelineConfig,
    task: Task,
    templates: TemplateSet,
    attempt: int = 0,
) -> CandidateVariant:
    """Generate one pre-filter candidate for (source, direction)."""
    extra = None
    if direction.id == "III":
        extra = sample_type3_instruction(
            derive_seed(config.seed, source.sample_id, attempt), templates
        )
    prompt = render_prompt(direction.id, source, task, extra=extra, templates=templates)
    exchange = complete(prompt, config.generation, gateway)
    if exchange.extraction_failed:
        raise DataError(f"empty extraction for {source.sample_id} direction {direction.id}")
    return CandidateVariant(
        code=exchange.extracted_code,
        direction_id=direction.id,
        source_id=source.sample_id,
        prompt=prompt,
        attempts=exchange.attempts,
    )


def validate_candidate(
    source: CodeSample,
    candidate: CandidateVariant,
    suite: TestSuite,
    direction: EvolutionDirection,
    theta: float,
    corpus_language: str,
    strict: bool = True,
    toolchains: dict[str, Toolchain] | None = None,
) -> CandidateVariant:
    """Apply both filters and classify; returns the candidate with its outcome."""
    variant_sample = CodeSample(
        sample_id="candidate",
        task_id=source.task_id,
        body=candidate.code,
        origin=f"evolved:{direction.id}",
        lineage=source.sample_id,
    )
    verdict = f_exec(source, variant_sample, suite, corpus_language, toolchains)
    score = codebleu(source.body, candidate.code, corpus_language)

    base = {
        "code": candidate.code,
        "direction_id": candidate.direction_id,
        "source_id": candidate.source_id,
        "prompt": candidate.prompt,
        "attempts": candidate.attempts,
        "sem_verdict": verdict,
        "score": score,
    }
    if verdict.value == "invalid":
        return CandidateVariant(
            **base, outcome="discarded", discard_reason="invalid_execution"
        )
    sem = "equal" if verdict.value == "equivalent" else "different"
    syn = "similar" if score.combined > theta else "dissimilar"
    realized = classify_type(sem, syn)
    if strict and realized != direction.target_type:
        return CandidateVariant(**base, outcome="discarded", discard_reason="type_mismatch")
    return CandidateVariant(**base, outcome="accepted", type_label=realized)


def _evolve_seed_sample(
    source: CodeSample,
    task: Task,
    suite: TestSuite,
    gateway: LlmProvider,
    config: PipelineConfig,
    templates: TemplateSet,
    toolchains: dict[str, Toolchain] | None,
    report: RunReport,
) -> list[tuple[CodeSample, PairRecord]]:
    accepted: list[tuple[CodeSample, PairRecord]] = []
    for direction in DIRECTIONS:
        for attempt in range(config.candidates_per_direction):
            report.record_attempt(direction.id)
            provider = _resolve_provider(
                gateway, config.seed, source.sample_id, direction.id, attempt
            )
            try:
                candidate = evolve_candidate(
                    source, direction, provider, config, task, templates, attempt
                )
            except ProviderError:
                report.record_llm_call()
                report.record_discard("llm_failure")
                continue
            except DataError:
                report.record_llm_call()
                report.record_discard("empty_extraction")
                continue
            report.record_llm_call()
            candidate = validate_candidate(
                candidate=candidate,
                source=source,
                suite=suite,
                direction=direction,
                theta=config.theta,
                corpus_language=task.corpus_language,
                strict=config.strict,
                toolchains=toolchains,
            )
            if candidate.outcome == "discarded":
                report.record_discard(candidate.discard_reason)
                continue
            variant_id = f"{source.sample_id}/{direction.id}-{content_id(candidate.code)}"
            variant = CodeSample(
                sample_id=variant_id,
                task_id=source.task_id,
                body=candidate.code,
                origin=f"evolved:{direction.id}",
                lineage=source.sample_id,
            )
            record = PairRecord(
                source_id=source.sample_id,
                variant_id=variant_id,
                sem_verdict=candidate.sem_verdict.value,
                codebleu=candidate.score.combined,
                type_label=candidate.type_label,
                provenance=("exec", "metric"),
            )
            report.record_accept(direction.id)
            accepted.append((variant, record))
            break  # first accept wins for this direction
    return accepted


def run_pipeline(
    corpus: Corpus,
    config: PipelineConfig,
    gateway: LlmProvider | ProviderPool,
    suites: dict[str, TestSuite] | None = None,
    templates: TemplateSet | None = None,
    toolchains: dict[str, Toolchain] | None = None,
) -> PipelineResult:
    """Evolve every seed sample along all four directions and assemble the dataset."""
    templates = templates or load_templates()
    report = RunReport()
    suites = dict(suites) if suites else {}

    seeds = sorted(corpus.seeds(), key=lambda s: s.sample_id)
    usable: list[tuple[CodeSample, Task, TestSuite]] = []
    for source in seeds:
        task = corpus.tasks[source.task_id]
        if task.task_id not in suites:
            try:
                report.record_llm_call()
                provider = _resolve_provider(gateway, config.seed, task.task_id, "suite")
                suites[task.task_id] = generate_test_suite(
                    task, source, provider, config.generation, templates, toolchains=toolchains
                )
            except (SuiteGenerationError, ProviderError, DataError):
                if task.task_id not in report.tasks_skipped:
                    report.tasks_skipped.append(task.task_id)
                continue
        usable.append((source, task, suites[task.task_id]))

    def work(item):
        source, task, suite = item
        return _evolve_seed_sample(
            source, task, suite, gateway, config, templates, toolchains, report
        )

    if config.max_workers > 1 and len(usable) > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as pool:
            batches = list(pool.map(work, usable))
    else:
        batches = [work(item) for item in usable]

    evolved = Corpus()
    for task_id in sorted(corpus.tasks):
        evolved.add_task(corpus.tasks[task_id])
    for source in seeds:
        evolved.add_sample(source)

    records: list[PairRecord] = []
    flattened = [pair for batch in batches for pair in batch]
    # Merge deterministically by (seed id, direction) regardless of pool order.
    flattened.sort(key=lambda item: (item[1].source_id, item[1].type_label, item[1].variant_id))
    for variant, record in flattened:
        evolved.add_sample(variant)
        records.append(record)

    split = split_dataset(records, ratio=config.split_ratio, seed=config.split_seed)
    records = apply_split(records, split)
    review_queue = enqueue_review(records, rate=config.review_rate, seed=config.seed)
    report.review_items = len(review_queue)
    return PipelineResult(
        corpus=evolved, records=records, split=split, review_queue=review_queue, report=report
    )
