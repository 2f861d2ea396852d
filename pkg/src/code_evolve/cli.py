"""Single command-line entry point binding every module into the workflow:

    ingest -> suites -> evolve run -> evolve review -> calibrate
           -> embed -> eval {clone,consistency,retrieval} -> sweep -> stats

Runs are reproducible: a JSON config file plus flag overrides (flags win)
feed every subcommand, every stochastic component derives from one seed, and
all artifacts are stamped with the seed and a hash of the effective config.

Exit codes: 0 ok, 1 usage, 2 configuration, 3 provider failure, 4 data error.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path

import click

from .corpus.io import (
    SCHEMA_VERSION,
    export_dataset,
    ingest_corpus,
    load_corpus,
    load_dataset,
    read_jsonl,
    save_corpus,
    write_jsonl,
)
from .corpus.model import PairRecord
from .embed.metrics import (
    DEFAULT_SWEEP_THRESHOLDS,
    LabeledPair,
    acc_at_k,
    best_threshold_search,
    clone_f1,
    gold_for_type,
    map_at_r,
    per_type_f1,
    threshold_sweep,
)
from .embed.providers import (
    EmbeddingCache,
    embed as embed_text,
    load_embedding_provider_config,
    load_pooled_vectors_jsonl,
    load_token_states_npz,
)
from .embed.report import MetricReport
from .embed.vectors import EmbeddingVector, cosine_similarity
from .errors import ConfigError, DataError, ProviderError
from .evolve.pipeline import PipelineConfig, run_pipeline
from .evolve.review import ReviewQueue, review_cli_step
from .llm.client import GenerationParams, load_provider_config
from .llm.templates import load_templates
from .sandbox.runner import ExecutionLimits, load_toolchain_config
from .sandbox.suite import SuiteGenerationError, generate_test_suite, load_suites, save_suites
from .stats.paired import PairedSamples, compare, load_run_values
from .synmetrics.calibrate import calibrate_theta, default_grid
from .synmetrics.codebleu import codebleu
from .synmetrics.grammar import load_grammar_descriptor

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_PROVIDER = 3
EXIT_DATA = 4


def config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _merge(config: dict, **overrides):
    merged = dict(config)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    return merged


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


class _Lock:
    def __init__(self, directory: Path):
        self.path = directory / ".lock"

    def __enter__(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        try:
            fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise ConfigError(
                f"workspace is locked by another run ({self.path}); remove the "
                f"lockfile if that run is dead"
            ) from None
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        return self

    def __exit__(self, *exc_info):
        try:
            self.path.unlink()
        except OSError:
            pass


@click.group(name="code-evolve")
def cli():
    """Evolve code corpora along four directions and benchmark embeddings."""


# -- corpus -------------------------------------------------------------------


@cli.command("ingest")
@click.option("--in", "in_path", required=True, help="Corpus file or directory tree.")
@click.option("--format", "fmt", default="jsonl", type=click.Choice(["jsonl", "directory-tree"]))
@click.option("--language", default="c_family", help="Default corpus language for tree ingestion.")
@click.option("--out", "out_dir", required=True, help="Workspace directory.")
def cmd_ingest(in_path, fmt, language, out_dir):
    """Validate a seed corpus and write the canonical workspace copy."""
    corpus = ingest_corpus(in_path, format=fmt, corpus_language=language)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_corpus(corpus, out / "corpus.jsonl")
    click.echo(f"ingested {len(corpus.tasks)} tasks, {len(corpus.samples)} samples -> {out/'corpus.jsonl'}")


@cli.command("suites")
@click.option("--corpus", "corpus_path", required=True)
@click.option("--provider", "provider_path", required=True, help="LLM provider config JSON.")
@click.option("--out", "out_path", required=True)
@click.option("--toolchains", "toolchains_path", default=None)
@click.option("--timeout", type=float, default=None, help="Per-case wall clock seconds.")
@click.option("--seed", type=int, default=0)
def cmd_suites(corpus_path, provider_path, out_path, toolchains_path, timeout, seed):
    """Generate one unified test suite per task from each task's exemplar."""
    import random

    corpus = load_corpus(corpus_path)
    pool = load_provider_config(provider_path)
    toolchains = load_toolchain_config(toolchains_path) if toolchains_path else None
    limits = ExecutionLimits(timeout_seconds=timeout) if timeout else ExecutionLimits()
    templates = load_templates()
    rng = random.Random(seed)

    suites = []
    skipped = []
    for task_id in sorted(corpus.tasks):
        task = corpus.tasks[task_id]
        seeds = sorted(
            (s for s in corpus.samples_of_task(task_id) if not s.is_evolved),
            key=lambda s: s.sample_id,
        )
        if not seeds:
            skipped.append(task_id)
            continue
        exemplar = seeds[0]
        try:
            suites.append(
                generate_test_suite(
                    task, exemplar, pool.pick(rng), templates=templates, limits=limits,
                    toolchains=toolchains,
                )
            )
        except (SuiteGenerationError, DataError):
            skipped.append(task_id)
    save_suites(suites, out_path)
    click.echo(f"wrote {len(suites)} suites -> {out_path}" + (f" (skipped: {skipped})" if skipped else ""))


# -- evolution ----------------------------------------------------------------


@cli.group("evolve")
def evolve_group():
    """Run the four-direction evolution pipeline and review its output."""


@evolve_group.command("run")
@click.option("--config", "config_path", required=True, help="Run config JSON.")
@click.option("--out", "out_dir", default=None, help="Override output workspace.")
@click.option("--theta", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--candidates-per-direction", type=int, default=None)
@click.option("--review-rate", type=float, default=None)
@click.option("--lenient", is_flag=True, default=False, help="Relabel mismatched types instead of discarding.")
def cmd_evolve_run(config_path, out_dir, theta, seed, candidates_per_direction, review_rate, lenient):
    """Evolve every seed sample along all four directions."""
    raw = _load_config_file(config_path)
    raw = _merge(
        raw,
        out=out_dir,
        theta=theta,
        seed=seed,
        candidates_per_direction=candidates_per_direction,
        review_rate=review_rate,
    )
    if lenient:
        raw["strict"] = False
    for key in ("corpus", "provider", "out"):
        if key not in raw:
            raise ConfigError(f"run config needs {key!r} (file or flag)")

    corpus = load_corpus(raw["corpus"])
    pool = load_provider_config(raw["provider"])
    toolchains = load_toolchain_config(raw["toolchains"]) if raw.get("toolchains") else None
    templates = load_templates(raw.get("templates"))
    suites = load_suites(raw["suites"]) if raw.get("suites") else None
    generation = GenerationParams(
        temperature=raw.get("temperature", 1.0),
        top_p=raw.get("top_p", 0.95),
        max_tokens=raw.get("max_tokens", 2048),
        model_name=raw.get("model", ""),
    )
    config = PipelineConfig(
        theta=raw.get("theta", 0.4),
        candidates_per_direction=raw.get("candidates_per_direction", 4),
        review_rate=raw.get("review_rate", 0.2),
        generation=generation,
        split_ratio=tuple(raw.get("split_ratio", (3, 1))),
        split_seed=raw.get("split_seed", raw.get("seed", 0)),
        seed=raw.get("seed", 0),
        strict=raw.get("strict", True),
        max_workers=raw.get("max_workers", 4),
    )
    out = Path(raw["out"])
    stamp = {"config_hash": config_hash(raw), "seed": config.seed, "schema_version": SCHEMA_VERSION}
    with _Lock(out):
        result = run_pipeline(
            corpus, config, pool,
            suites=suites, templates=templates, toolchains=toolchains,
        )
        save_corpus(result.corpus, out / "corpus.jsonl")
        export_dataset(result.records, result.split, out / "dataset")
        queue = ReviewQueue(items=result.review_queue)
        queue.save(out / "review_queue.jsonl")
        report = dict(stamp)
        report.update(result.report.as_dict())
        _write_json(out / "report.json", report)
        meta_path = out / "dataset" / "meta.json"
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        meta.update(stamp)
        _write_json(meta_path, meta)
    click.echo(
        f"accepted {result.report.accepted_total} pairs "
        f"({result.report.review_items} queued for review) -> {out}"
    )


@evolve_group.command("review")
@click.option("--workspace", required=True, help="Directory written by 'evolve run'.")
@click.option("--reviewer", required=True, help="Reviewer id recording these verdicts.")
def cmd_evolve_review(workspace, reviewer):
    """Interactive accept/reject loop over pending review items."""
    ws = Path(workspace)
    queue_path = ws / "review_queue.jsonl"
    if not queue_path.exists():
        raise DataError(f"no review queue at {queue_path}")
    queue = ReviewQueue.load(queue_path)
    corpus = load_corpus(ws / "corpus.jsonl")
    records, split = load_dataset(ws / "dataset")
    by_key = {record.key: record for record in records}

    pending = [
        item
        for item in queue.pending()
        if not any(r == reviewer for r, _ in item.verdicts)
    ]
    if not pending:
        click.echo("nothing pending for this reviewer")
        return
    for item in pending:
        record = by_key.get(item.pair_key)
        if record is None:
            continue
        source = corpus.samples.get(record.source_id)
        variant = corpus.samples.get(record.variant_id)
        click.echo("=" * 72)
        click.echo(f"pair {item.pair_key}")
        click.echo(
            f"type {record.type_label} | sem {record.sem_verdict} | codebleu {record.codebleu:.4f}"
        )
        click.echo("-- source " + "-" * 50)
        click.echo(source.body if source else "<missing>")
        click.echo("-- variant " + "-" * 49)
        click.echo(variant.body if variant else "<missing>")
        choice = click.prompt("[a]pprove / [r]eject / [s]kip / [q]uit", type=str).strip().lower()
        if choice == "q":
            break
        if choice == "s":
            continue
        if choice in ("a", "r"):
            verdict = "approve" if choice == "a" else "reject"
            queue.update(review_cli_step(item, reviewer, verdict))

    queue.save(queue_path)
    rejected = queue.rejected_keys()
    confirmed = queue.confirmed_keys()
    updated: list[PairRecord] = []
    for record in records:
        if record.key in rejected:
            continue
        if record.key in confirmed:
            record = record.with_provenance("human")
        updated.append(record)
    for record in updated:
        split.assignments.setdefault(record.key, record.split)
    for key in rejected:
        split.assignments.pop(key, None)
    export_dataset(updated, split, ws / "dataset")
    click.echo(
        f"queue saved: {len(queue.pending())} pending, "
        f"{len(confirmed)} confirmed, {len(rejected)} rejected (pairs dropped)"
    )


@evolve_group.command("report")
@click.option("--workspace", required=True)
def cmd_evolve_report(workspace):
    """Print the run report for a workspace."""
    path = Path(workspace) / "report.json"
    if not path.exists():
        raise DataError(f"no report at {path}")
    report = json.loads(path.read_text(encoding="utf-8"))
    click.echo(json.dumps(report, indent=2, sort_keys=True))


# -- syntactic metric ----------------------------------------------------------


@cli.command("score")
@click.option("--ref", "ref_path", required=True, type=click.Path(exists=True))
@click.option("--cand", "cand_path", required=True, type=click.Path(exists=True))
@click.option("--language", default="c_family")
@click.option("--grammar-descriptor", default=None, help="Register a grammar plugin first.")
def cmd_score(ref_path, cand_path, language, grammar_descriptor):
    """Pairwise CodeBLEU; emits one JSON object with all four components."""
    if grammar_descriptor:
        load_grammar_descriptor(grammar_descriptor)
    reference = Path(ref_path).read_text(encoding="utf-8")
    candidate = Path(cand_path).read_text(encoding="utf-8")
    score = codebleu(reference, candidate, language)
    click.echo(json.dumps(score.as_dict(), indent=2))


@cli.command("calibrate")
@click.option("--labels", "labels_path", required=True, help="JSONL of scored, human-labeled pairs.")
@click.option("--language", default="c_family")
@click.option("--grid-start", type=float, default=0.2)
@click.option("--grid-stop", type=float, default=0.6)
@click.option("--grid-step", type=float, default=0.05)
@click.option("--out", "out_path", default=None)
def cmd_calibrate(labels_path, language, grid_start, grid_stop, grid_step, out_path):
    """Sweep thresholds against human similar/dissimilar labels, maximize F1.

    Label records: {"label": "similar"|"dissimilar"} plus either a
    precomputed "score" or "source"/"variant" bodies to score now.
    """
    labeled = []
    for lineno, row in enumerate(read_jsonl(labels_path), start=1):
        if "label" not in row:
            raise DataError(f"{labels_path}:{lineno}: missing label")
        if "score" in row:
            score = float(row["score"])
        elif "source" in row and "variant" in row:
            score = codebleu(row["source"], row["variant"], language).combined
        else:
            raise DataError(f"{labels_path}:{lineno}: needs score or source+variant")
        labeled.append((score, row["label"]))
    grid = default_grid(grid_start, grid_stop, grid_step)
    theta, f1 = calibrate_theta(labeled, grid)
    payload = {"theta": theta, "f1": f1, "grid": grid, "n_labels": len(labeled)}
    click.echo(json.dumps(payload, indent=2))
    if out_path:
        _write_json(Path(out_path), payload)


# -- embeddings and evaluation ---------------------------------------------------


def _load_vectors(vectors_path, hidden_states_path, pooling) -> dict[str, EmbeddingVector]:
    if vectors_path and hidden_states_path:
        raise ConfigError("pass either --vectors or --hidden-states, not both")
    if vectors_path:
        return load_pooled_vectors_jsonl(vectors_path)
    if hidden_states_path:
        return load_token_states_npz(hidden_states_path, pooling)
    raise ConfigError("embeddings required: --vectors or --hidden-states")


@cli.command("embed")
@click.option("--in", "in_path", required=True, help="JSONL with id+text or corpus samples.")
@click.option("--provider", "provider_path", required=True)
@click.option("--cache", "cache_dir", default=None)
@click.option("--instruction-task", type=click.Choice(["clone", "consistency", "retrieval"]), default=None)
@click.option("--out", "out_path", required=True)
def cmd_embed(in_path, provider_path, cache_dir, instruction_task, out_path):
    """Embed texts through a provider (cached, resumable) into a vectors JSONL."""
    provider = load_embedding_provider_config(provider_path)
    cache = EmbeddingCache(cache_dir) if cache_dir else None
    instruction = None
    if instruction_task:
        instruction = load_templates().alignment_instructions[instruction_task]

    rows = []
    for lineno, row in enumerate(read_jsonl(in_path), start=1):
        if row.get("kind") in ("task", "meta", "pair"):
            continue
        if row.get("kind") == "sample":
            item_id, text = row["sample_id"], row["body"]
        elif "id" in row and "text" in row:
            item_id, text = row["id"], row["text"]
        else:
            raise DataError(f"{in_path}:{lineno}: expected sample records or id+text records")
        vector = embed_text(text, provider, instruction=instruction, cache=cache)
        rows.append({"id": item_id, "model_tag": vector.model_tag, "vector": list(vector.values)})
    write_jsonl(out_path, rows)
    click.echo(f"embedded {len(rows)} texts -> {out_path}")


def _pairs_from_similarities(path) -> list[LabeledPair]:
    pairs = []
    for lineno, row in enumerate(read_jsonl(path), start=1):
        if "similarity" not in row:
            raise DataError(f"{path}:{lineno}: missing similarity")
        gold = row.get("gold")
        if gold is None and row.get("type_label"):
            gold = gold_for_type(row["type_label"])
        if gold is None:
            raise DataError(f"{path}:{lineno}: needs gold or type_label")
        pairs.append(
            LabeledPair(
                similarity=float(row["similarity"]), gold=gold, type_label=row.get("type_label")
            )
        )
    return pairs


def _pairs_from_dataset(dataset_dir, vectors) -> list[LabeledPair]:
    records, _ = load_dataset(dataset_dir)
    pairs = []
    for record in records:
        for sample_id in (record.source_id, record.variant_id):
            if sample_id not in vectors:
                raise DataError(f"no embedding for sample {sample_id!r}")
        similarity = cosine_similarity(vectors[record.source_id], vectors[record.variant_id])
        pairs.append(
            LabeledPair(
                similarity=similarity,
                gold=gold_for_type(record.type_label),
                type_label=record.type_label,
            )
        )
    return pairs


def _gather_pairs(similarities, dataset, vectors_path, hidden_states, pooling) -> list[LabeledPair]:
    if similarities:
        return _pairs_from_similarities(similarities)
    if dataset:
        vectors = _load_vectors(vectors_path, hidden_states, pooling)
        return _pairs_from_dataset(dataset, vectors)
    raise ConfigError("pass --similarities, or --dataset with embeddings")


def _emit_report(report: MetricReport, out_json, out_csv):
    click.echo(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    if out_json:
        report.save_json(Path(out_json))
    if out_csv:
        report.save_curve_csv(Path(out_csv))


_EVAL_INPUT_OPTIONS = [
    click.option("--similarities", default=None, help="JSONL of precomputed pair similarities."),
    click.option("--dataset", default=None, help="Dataset directory from 'evolve run'."),
    click.option("--vectors", "vectors_path", default=None, help="Pooled vectors JSONL."),
    click.option("--hidden-states", default=None, help="Per-token hidden states .npz."),
    click.option("--pooling", type=click.Choice(["cls", "mean", "max"]), default="mean"),
    click.option("--out-json", default=None),
    click.option("--out-csv", default=None),
    click.option("--seed", type=int, default=0),
]


def _eval_options(fn):
    for option in reversed(_EVAL_INPUT_OPTIONS):
        fn = option(fn)
    return fn


@cli.group("eval")
def eval_group():
    """Evaluate embeddings on the three downstream tasks."""


@eval_group.command("clone")
@_eval_options
@click.option("--threshold", type=float, default=0.5, help="Base detection threshold.")
def cmd_eval_clone(similarities, dataset, vectors_path, hidden_states, pooling, out_json, out_csv, seed, threshold):
    """Clone detection: P/R/F1 at the base threshold plus a best-threshold search."""
    pairs = _gather_pairs(similarities, dataset, vectors_path, hidden_states, pooling)
    base = clone_f1(pairs, threshold)
    best = best_threshold_search(pairs)
    report = MetricReport(
        task="clone",
        scalar_metrics={
            "precision": base["precision"],
            "recall": base["recall"],
            "f1": base["f1"],
            "base_threshold": threshold,
            "best_precision": best["precision"],
            "best_recall": best["recall"],
            "best_f1": best["f1"],
            "best_threshold": best["threshold"],
        },
        metadata={"seed": seed, "n_pairs": len(pairs)},
    )
    _emit_report(report, out_json, out_csv)


@eval_group.command("consistency")
@_eval_options
@click.option("--threshold", type=float, default=0.5)
def cmd_eval_consistency(similarities, dataset, vectors_path, hidden_states, pooling, out_json, out_csv, seed, threshold):
    """Functional consistency: per-type F1 and the unweighted mean."""
    pairs = _gather_pairs(similarities, dataset, vectors_path, hidden_states, pooling)
    scores = per_type_f1(pairs, threshold)
    report = MetricReport(
        task="consistency",
        scalar_metrics={"mean_f1": scores["mean"], "threshold": threshold},
        per_type={k: v for k, v in scores.items() if k != "mean"},
        metadata={"seed": seed, "n_pairs": len(pairs)},
    )
    _emit_report(report, out_json, out_csv)


@eval_group.command("retrieval")
@click.option("--items", "items_path", default=None, help="JSONL: id,label,vector per line (MAP@R pool).")
@click.option("--queries", "queries_path", default=None, help="JSONL query items for Acc@k.")
@click.option("--corpus", "corpus_path", default=None, help="JSONL corpus items for Acc@k.")
@click.option("--r", "r_value", type=int, default=None, help="MAP@R cutoff; default class size - 1.")
@click.option("--k", type=int, default=50)
@click.option("--out-json", default=None)
@click.option("--out-csv", default=None)
@click.option("--seed", type=int, default=0)
def cmd_eval_retrieval(items_path, queries_path, corpus_path, r_value, k, out_json, out_csv, seed):
    """Retrieval: MAP@R over one labeled pool and/or Acc@k for query/corpus sets."""

    def load_items(path):
        items = []
        for lineno, row in enumerate(read_jsonl(path), start=1):
            if "label" not in row or "vector" not in row:
                raise DataError(f"{path}:{lineno}: retrieval items need label and vector")
            items.append((EmbeddingVector(values=tuple(map(float, row["vector"]))), row["label"]))
        return items

    scalar = {}
    n_items = 0
    if items_path:
        items = load_items(items_path)
        n_items = len(items)
        scalar["map_at_r"] = map_at_r(items, r_value)
        scalar["map_at_r_pct"] = 100.0 * scalar["map_at_r"]
    if queries_path or corpus_path:
        if not (queries_path and corpus_path):
            raise ConfigError("Acc@k needs both --queries and --corpus")
        queries = load_items(queries_path)
        corpus_items = load_items(corpus_path)
        scalar["acc_at_k"] = acc_at_k(queries, corpus_items, k)
        scalar["acc_at_k_pct"] = 100.0 * scalar["acc_at_k"]
        scalar["k"] = k
    if not scalar:
        raise ConfigError("pass --items for MAP@R and/or --queries/--corpus for Acc@k")
    report = MetricReport(
        task="retrieval", scalar_metrics=scalar, metadata={"seed": seed, "n_items": n_items}
    )
    _emit_report(report, out_json, out_csv)


@cli.command("sweep")
@_eval_options
def cmd_sweep(similarities, dataset, vectors_path, hidden_states, pooling, out_json, out_csv, seed):
    """Mean per-type accuracy across thresholds 0.1..0.9 (step 0.1)."""
    pairs = _gather_pairs(similarities, dataset, vectors_path, hidden_states, pooling)
    curve = threshold_sweep(pairs, DEFAULT_SWEEP_THRESHOLDS)
    report = MetricReport(
        task="consistency",
        scalar_metrics={"n_thresholds": float(len(curve))},
        curve=curve,
        metadata={"seed": seed, "n_pairs": len(pairs)},
    )
    _emit_report(report, out_json, out_csv)


# -- statistics -----------------------------------------------------------------


@cli.group("stats")
def stats_group():
    """Statistical comparison of two runs."""


@stats_group.command("compare")
@click.option("--a", "a_path", required=True, help="JSON list of per-seed metric values (run A).")
@click.option("--b", "b_path", required=True, help="JSON list of per-seed metric values (run B).")
@click.option("--alpha", type=float, default=0.05)
@click.option("--resamples", type=int, default=10_000)
@click.option("--seed", type=int, default=0)
@click.option("--out", "out_path", default=None)
def cmd_stats_compare(a_path, b_path, alpha, resamples, seed, out_path):
    """Paired t-test, Cohen's d, bootstrap CI, and post-hoc power for A - B."""
    samples = PairedSamples(a=load_run_values(a_path), b=load_run_values(b_path))
    report = compare(samples, alpha=alpha, resamples=resamples, seed=seed)
    payload = report.as_dict()
    payload["seed"] = seed
    click.echo(json.dumps(payload, indent=2, sort_keys=True))
    if out_path:
        _write_json(Path(out_path), payload)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        return EXIT_CONFIG
    except ProviderError as exc:
        click.echo(f"provider error: {exc}", err=True)
        return EXIT_PROVIDER
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
