"""Functionality-oriented code variant synthesis and embedding benchmark toolkit.

The package covers the full workflow: ingest a seed corpus, synthesize four
kinds of code variants through an LLM gateway, validate them with an
execution-based semantic filter and a CodeBLEU-based syntactic filter, route
a sample of accepted pairs to human review, and benchmark embedding providers
on clone detection, functional-consistency identification, and retrieval,
with paired statistical comparisons between runs.
"""

__version__ = "0.1.0"
