"""CodeBLEU: n-gram, keyword-weighted n-gram, AST match, and dataflow match.

The combined score is the weighted sum of four components, each in [0, 1],
with equal default weights.  Component definitions (pinned here; the test
suite holds independent brute-force implementations of each):

* **n-gram match** — BLEU-style modified n-gram precision over the comment-
  free lexeme stream, orders 1..N with N = min(4, len(ref), len(cand)).
  Order 1 is unsmoothed; higher orders use add-one smoothing so identical
  inputs score exactly 1.0.  The usual brevity penalty applies.  A candidate
  sharing no unigrams with the reference scores 0.
* **weighted n-gram match** — same computation, except every n-gram carries
  weight 5 when its first token is a grammar keyword and weight 1 otherwise.
* **AST match** — fraction of the reference's subtree occurrences (subtrees
  rooted at internal nodes, plus the root) whose kind-only s-expression
  appears anywhere in the candidate tree.
* **dataflow match** — fraction of the reference's def-use edges present in
  the candidate under order-of-first-occurrence variable renaming (multiset
  intersection).  A reference with no edges scores 1.0 vacuously.

If either side fails to lex, the two n-gram components contribute 0; if
either side fails to parse, the AST and dataflow components contribute 0.
The combined score is always defined, so near-code LLM output degrades
instead of crashing the pipeline.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from ..errors import DataError
from .dataflow import DataflowGraph, extract_dataflow
from .grammar import Grammar, get_grammar
from .syntax import ParseError, SyntaxNode, parse_tokens
from .tokens import LexError, TokenSequence, tokenize

DEFAULT_WEIGHTS = (0.25, 0.25, 0.25, 0.25)
KEYWORD_WEIGHT = 5.0
MAX_NGRAM_ORDER = 4


@dataclass(frozen=True)
class CodeBleuScore:
    ngram: float
    weighted_ngram: float
    ast_match: float
    dataflow_match: float
    weights: tuple[float, float, float, float] = DEFAULT_WEIGHTS

    def __post_init__(self):
        for name in ("ngram", "weighted_ngram", "ast_match", "dataflow_match"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DataError(f"component {name} = {value} outside [0,1]")
        if any(w < 0 for w in self.weights):
            raise DataError(f"weights must be nonnegative: {self.weights}")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise DataError(f"weights must sum to 1: {self.weights}")

    @property
    def combined(self) -> float:
        components = (self.ngram, self.weighted_ngram, self.ast_match, self.dataflow_match)
        return sum(w * c for w, c in zip(self.weights, components))

    def as_dict(self) -> dict:
        return {
            "ngram": self.ngram,
            "weighted_ngram": self.weighted_ngram,
            "ast_match": self.ast_match,
            "dataflow_match": self.dataflow_match,
            "weights": list(self.weights),
            "combined": self.combined,
        }


def _ngrams(lexemes: list[str], n: int) -> Counter:
    return Counter(tuple(lexemes[i : i + n]) for i in range(len(lexemes) - n + 1))


def _precisions(
    ref: list[str], cand: list[str], weight_of=None
) -> tuple[list[float], int, int]:
    """Modified n-gram precisions p_1..p_N (order 1 unsmoothed, add-one above)."""
    n_max = min(MAX_NGRAM_ORDER, len(ref), len(cand))
    precisions = []
    for n in range(1, n_max + 1):
        ref_counts = _ngrams(ref, n)
        cand_counts = _ngrams(cand, n)
        if weight_of is None:
            matched = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
            total = sum(cand_counts.values())
        else:
            matched = sum(weight_of(g) * min(c, ref_counts[g]) for g, c in cand_counts.items())
            total = sum(weight_of(g) * c for g, c in cand_counts.items())
        if n == 1:
            precisions.append(matched / total if total else 0.0)
        else:
            precisions.append((matched + 1.0) / (total + 1.0))
    return precisions, len(ref), len(cand)


def _bleu(precisions: list[float], ref_len: int, cand_len: int) -> float:
    if ref_len == 0 and cand_len == 0:
        return 1.0
    if ref_len == 0 or cand_len == 0 or not precisions:
        return 0.0
    if precisions[0] == 0.0:
        return 0.0
    log_mean = sum(math.log(p) for p in precisions) / len(precisions)
    brevity = 1.0 if cand_len >= ref_len else math.exp(1.0 - ref_len / cand_len)
    return brevity * math.exp(log_mean)


def ngram_match(ref_tokens: TokenSequence, cand_tokens: TokenSequence) -> float:
    precisions, r, c = _precisions(ref_tokens.lexemes(), cand_tokens.lexemes())
    return _bleu(precisions, r, c)


def weighted_ngram_match(
    ref_tokens: TokenSequence, cand_tokens: TokenSequence, grammar: Grammar
) -> float:
    def weight_of(gram: tuple[str, ...]) -> float:
        return KEYWORD_WEIGHT if grammar.is_keyword(gram[0]) else 1.0

    precisions, r, c = _precisions(
        ref_tokens.lexemes(), cand_tokens.lexemes(), weight_of=weight_of
    )
    return _bleu(precisions, r, c)


def _subtree_sexps(tree: SyntaxNode) -> list[str]:
    """S-expressions of every internal node, plus the root itself."""
    out = []
    sexps: dict[int, str] = {}

    def build(n: SyntaxNode) -> str:
        if n.is_leaf:
            return f"({n.kind})"
        parts = [build(c) for c in n.children]
        s = "(" + n.kind + " " + " ".join(parts) + ")"
        sexps[id(n)] = s
        return s

    root_sexp = build(tree)
    for n in tree.walk():
        if not n.is_leaf:
            out.append(sexps[id(n)])
    if tree.is_leaf:
        out.append(root_sexp)
    return out


def ast_match(ref: SyntaxNode, cand: SyntaxNode) -> float:
    ref_subtrees = _subtree_sexps(ref)
    cand_subtrees = set(_subtree_sexps(cand))
    if not ref_subtrees:
        return 1.0
    hits = sum(1 for s in ref_subtrees if s in cand_subtrees)
    return hits / len(ref_subtrees)


def dataflow_match(ref: DataflowGraph, cand: DataflowGraph) -> float:
    ref_edges = Counter(e.key() for e in ref.edges)
    if not ref_edges:
        return 1.0
    cand_edges = Counter(e.key() for e in cand.edges)
    matched = sum(min(count, cand_edges[key]) for key, count in ref_edges.items())
    return matched / sum(ref_edges.values())


def codebleu(
    reference: str,
    candidate: str,
    corpus_language: str = "c_family",
    weights: tuple[float, float, float, float] = DEFAULT_WEIGHTS,
) -> CodeBleuScore:
    """Score ``candidate`` against ``reference`` under the named grammar."""
    grammar = get_grammar(corpus_language)

    ref_tokens = cand_tokens = None
    try:
        ref_tokens = tokenize(reference, grammar)
        cand_tokens = tokenize(candidate, grammar)
    except LexError:
        pass

    if ref_tokens is not None and cand_tokens is not None:
        ngram = ngram_match(ref_tokens, cand_tokens)
        weighted = weighted_ngram_match(ref_tokens, cand_tokens, grammar)
    else:
        ngram = weighted = 0.0

    ast_score = df_score = 0.0
    if ref_tokens is not None and cand_tokens is not None:
        try:
            ref_tree = parse_tokens(ref_tokens, grammar)
            cand_tree = parse_tokens(cand_tokens, grammar)
        except ParseError:
            pass
        else:
            ast_score = ast_match(ref_tree, cand_tree)
            df_score = dataflow_match(extract_dataflow(ref_tree), extract_dataflow(cand_tree))

    return CodeBleuScore(
        ngram=ngram,
        weighted_ngram=weighted,
        ast_match=ast_score,
        dataflow_match=df_score,
        weights=tuple(weights),
    )


def f_syn(source: str, variant: str, theta: float, corpus_language: str = "c_family") -> str:
    """Syntactic filter: "similar" iff combined CodeBLEU strictly exceeds θ.

    The boundary score equal to θ classifies as dissimilar.  Monotone in θ:
    similar at θ₁ implies similar at every θ₂ < θ₁.
    """
    if not 0.0 < theta < 1.0:
        raise DataError(f"theta must lie in (0,1), got {theta}")
    score = codebleu(source, variant, corpus_language)
    return "similar" if score.combined > theta else "dissimilar"


def classify_similarity(combined: float, theta: float) -> str:
    if not 0.0 < theta < 1.0:
        raise DataError(f"theta must lie in (0,1), got {theta}")
    return "similar" if combined > theta else "dissimilar"
