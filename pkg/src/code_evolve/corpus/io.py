"""Corpus and dataset persistence.

JSONL is the canonical on-disk format: one record per line, a ``kind``
discriminator per record, and stable field ordering so exports diff cleanly.
A ``schema_version`` header line guards format evolution.  Directory-tree
ingestion covers datasets laid out as one folder per task (the POJ-104
layout); every file in a task folder becomes one seed sample.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from ..errors import DataError
from .model import CodeSample, Corpus, DatasetSplit, PairRecord, Task

SCHEMA_VERSION = 1

# Field order is fixed for diff-ability.
_TASK_FIELDS = ("task_id", "description", "corpus_language", "test_suite_id")
_SAMPLE_FIELDS = ("sample_id", "task_id", "body", "origin", "lineage")
_PAIR_FIELDS = (
    "source_id",
    "variant_id",
    "sem_verdict",
    "codebleu",
    "type_label",
    "provenance",
    "split",
)


def write_jsonl(path: Path | str, rows: list[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_jsonl(path: Path | str) -> list[dict]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: malformed JSON record: {exc}") from exc
    return rows


def task_to_row(task: Task) -> dict:
    row = {"kind": "task"}
    for name in _TASK_FIELDS:
        row[name] = getattr(task, name)
    return row


def sample_to_row(sample: CodeSample) -> dict:
    row = {"kind": "sample"}
    for name in _SAMPLE_FIELDS:
        row[name] = getattr(sample, name)
    return row


def pair_to_row(pair: PairRecord) -> dict:
    row = {"kind": "pair"}
    for name in _PAIR_FIELDS:
        value = getattr(pair, name)
        if name == "provenance":
            value = list(value)
        row[name] = value
    return row


def _require(row: dict, keys: tuple[str, ...], where: str) -> None:
    missing = [k for k in keys if k not in row]
    if missing:
        raise DataError(f"{where}: missing fields {missing}")


def row_to_task(row: dict, where: str = "task record") -> Task:
    _require(row, ("task_id", "description", "corpus_language"), where)
    return Task(
        task_id=row["task_id"],
        description=row["description"],
        corpus_language=row["corpus_language"],
        test_suite_id=row.get("test_suite_id"),
    )


def row_to_sample(row: dict, where: str = "sample record") -> CodeSample:
    _require(row, ("sample_id", "task_id", "body"), where)
    return CodeSample(
        sample_id=row["sample_id"],
        task_id=row["task_id"],
        body=row["body"],
        origin=row.get("origin", "seed"),
        lineage=row.get("lineage"),
    )


def row_to_pair(row: dict, where: str = "pair record") -> PairRecord:
    _require(row, ("source_id", "variant_id", "sem_verdict", "codebleu", "type_label"), where)
    return PairRecord(
        source_id=row["source_id"],
        variant_id=row["variant_id"],
        sem_verdict=row["sem_verdict"],
        codebleu=float(row["codebleu"]),
        type_label=row["type_label"],
        provenance=tuple(row.get("provenance", ("exec", "metric"))),
        split=row.get("split", "unassigned"),
    )


def ingest_corpus(path: Path | str, format: str = "jsonl", corpus_language: str = "c_family") -> Corpus:
    """Load a corpus from ``path``.

    ``jsonl``: mixed task/sample records, one per line.  ``directory-tree``:
    one folder per task, one source file per seed sample; an optional
    ``task.json`` per folder overrides the description and language.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"corpus path does not exist: {path}")
    if format == "jsonl":
        return _ingest_jsonl(path)
    if format == "directory-tree":
        return _ingest_tree(path, corpus_language)
    raise DataError(f"unknown corpus format {format!r}")


def _ingest_jsonl(path: Path) -> Corpus:
    corpus = Corpus()
    pending_samples: list[tuple[int, CodeSample]] = []
    for lineno, row in enumerate(read_jsonl(path), start=1):
        where = f"{path}:{lineno}"
        kind = row.get("kind")
        if kind == "task":
            try:
                corpus.add_task(row_to_task(row, where))
            except DataError as exc:
                raise DataError(f"{where}: {exc}") from exc
        elif kind == "sample":
            pending_samples.append((lineno, row_to_sample(row, where)))
        elif kind == "pair":
            raise DataError(f"{where}: pair records belong in a dataset file, not a corpus")
        else:
            raise DataError(f"{where}: unknown record kind {kind!r}")
    # Samples are added after all tasks so record order in the file does not
    # matter; seeds are added before evolved samples for the same reason.
    pending_samples.sort(key=lambda item: (item[1].is_evolved, item[0]))
    for lineno, sample in pending_samples:
        try:
            corpus.add_sample(sample)
        except DataError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
    return corpus


def _ingest_tree(root: Path, corpus_language: str) -> Corpus:
    corpus = Corpus()
    task_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    for task_dir in task_dirs:
        task_id = task_dir.name
        meta = {}
        meta_path = task_dir / "task.json"
        if meta_path.exists():
            try:
                meta = json.loads(meta_path.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise DataError(f"{meta_path}: malformed task.json: {exc}") from exc
        corpus.add_task(
            Task(
                task_id=task_id,
                description=meta.get("description", f"Task {task_id}"),
                corpus_language=meta.get("corpus_language", corpus_language),
            )
        )
        for file in sorted(task_dir.iterdir()):
            if not file.is_file() or file.name == "task.json":
                continue
            body = file.read_text(encoding="utf-8", errors="replace")
            if not body.strip():
                continue
            corpus.add_sample(
                CodeSample(sample_id=f"{task_id}/{file.name}", task_id=task_id, body=body)
            )
    return corpus


def save_corpus(corpus: Corpus, path: Path | str) -> None:
    rows: list[dict] = [{"kind": "meta", "schema_version": SCHEMA_VERSION}]
    for task_id in sorted(corpus.tasks):
        rows.append(task_to_row(corpus.tasks[task_id]))
    sample_ids = sorted(corpus.samples, key=lambda s: (corpus.samples[s].is_evolved, s))
    for sample_id in sample_ids:
        rows.append(sample_to_row(corpus.samples[sample_id]))
    write_jsonl(path, rows)


def load_corpus(path: Path | str) -> Corpus:
    rows = read_jsonl(path)
    if rows and rows[0].get("kind") == "meta":
        _check_schema(rows[0], path)
    tmp = Path(path)
    corpus = Corpus()
    samples = []
    for lineno, row in enumerate(rows, start=1):
        kind = row.get("kind")
        if kind == "meta":
            continue
        if kind == "task":
            corpus.add_task(row_to_task(row, f"{tmp}:{lineno}"))
        elif kind == "sample":
            samples.append((lineno, row_to_sample(row, f"{tmp}:{lineno}")))
        else:
            raise DataError(f"{tmp}:{lineno}: unknown record kind {kind!r}")
    samples.sort(key=lambda item: (item[1].is_evolved, item[0]))
    for lineno, sample in samples:
        corpus.add_sample(sample)
    return corpus


def _check_schema(meta: dict, path) -> None:
    version = meta.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DataError(
            f"{path}: schema_version {version!r} is not supported "
            f"(this build reads version {SCHEMA_VERSION})"
        )


def export_dataset(records: list[PairRecord], split: DatasetSplit, out_dir: Path | str) -> list[Path]:
    """Write a dataset as a file set: ``meta.json`` + ``pairs.jsonl``.

    Pair rows carry their split inline; meta records the split parameters so
    the round trip is lossless.
    """
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"cannot create dataset directory {out_dir}: {exc}") from exc
    if not os.access(out_dir, os.W_OK):
        raise DataError(f"dataset directory is not writable: {out_dir}")

    meta = {
        "schema_version": SCHEMA_VERSION,
        "ratio": list(split.ratio),
        "seed": split.seed,
        "record_count": len(records),
    }
    meta_path = out_dir / "meta.json"
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    rows = []
    for record in sorted(records, key=lambda r: r.key):
        assigned = split.assignments.get(record.key, record.split)
        rows.append(pair_to_row(record.with_split(assigned)))
    pairs_path = out_dir / "pairs.jsonl"
    write_jsonl(pairs_path, rows)
    return [meta_path, pairs_path]


def load_dataset(in_dir: Path | str) -> tuple[list[PairRecord], DatasetSplit]:
    in_dir = Path(in_dir)
    meta_path = in_dir / "meta.json"
    pairs_path = in_dir / "pairs.jsonl"
    if not meta_path.exists() or not pairs_path.exists():
        raise DataError(f"{in_dir}: not a dataset directory (meta.json + pairs.jsonl expected)")
    meta = json.loads(meta_path.read_text(encoding="utf-8"))
    _check_schema(meta, meta_path)

    records = []
    for lineno, row in enumerate(read_jsonl(pairs_path), start=1):
        if row.get("kind") != "pair":
            raise DataError(f"{pairs_path}:{lineno}: expected pair record")
        records.append(row_to_pair(row, f"{pairs_path}:{lineno}"))

    split = DatasetSplit(ratio=tuple(meta["ratio"]), seed=meta["seed"])
    for record in records:
        if record.split != "unassigned":
            split.assignments[record.key] = record.split
    return records, split
