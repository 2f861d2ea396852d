"""The four-direction evolution pipeline: generation, dual filters, review, assembly."""

from .directions import DIRECTIONS, EvolutionDirection, classify_type, direction_for
from .review import ReviewItem, ReviewQueue, enqueue_review, review_cli_step
from .pipeline import (
    CandidateVariant,
    PipelineConfig,
    RunReport,
    evolve_candidate,
    run_pipeline,
    validate_candidate,
)

__all__ = [
    "DIRECTIONS",
    "EvolutionDirection",
    "classify_type",
    "direction_for",
    "ReviewItem",
    "ReviewQueue",
    "enqueue_review",
    "review_cli_step",
    "CandidateVariant",
    "PipelineConfig",
    "RunReport",
    "evolve_candidate",
    "run_pipeline",
    "validate_candidate",
]
