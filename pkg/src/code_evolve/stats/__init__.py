"""Paired run-to-run comparison statistics."""

from .paired import (
    PairedSamples,
    StatReport,
    bootstrap_ci,
    cohens_d_paired,
    compare,
    paired_t_test,
    post_hoc_power,
)

__all__ = [
    "PairedSamples",
    "StatReport",
    "bootstrap_ci",
    "cohens_d_paired",
    "compare",
    "paired_t_test",
    "post_hoc_power",
]
