"""Seed corpora and evolved datasets: data model, ingestion, splits, persistence."""

from .model import (
    Corpus,
    CodeSample,
    DatasetSplit,
    PairRecord,
    Task,
    content_id,
)
from .io import export_dataset, ingest_corpus, load_dataset, read_jsonl, write_jsonl
from .split import split_dataset

__all__ = [
    "Corpus",
    "CodeSample",
    "DatasetSplit",
    "PairRecord",
    "Task",
    "content_id",
    "export_dataset",
    "ingest_corpus",
    "load_dataset",
    "read_jsonl",
    "write_jsonl",
    "split_dataset",
]
