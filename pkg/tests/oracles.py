"""Independent brute-force reference implementations used as test oracles.

These deliberately avoid the optimized code paths: no Counter-based
clipping, no precomputed serializations, no numpy ranking.  Each function
computes the pinned definition the slow, obvious way so agreement with the
package implementation pins both against the same contract.
"""

from __future__ import annotations

import math


# -- n-gram components --------------------------------------------------------


def _grams(lexemes, n):
    return [tuple(lexemes[i : i + n]) for i in range(len(lexemes) - n + 1)]


def oracle_ngram_match(ref, cand, keyword_set=None, keyword_weight=5.0):
    """BLEU-style n-gram match; ``keyword_set`` switches on keyword weighting."""
    n_max = min(4, len(ref), len(cand))
    if len(ref) == 0 and len(cand) == 0:
        return 1.0
    if len(ref) == 0 or len(cand) == 0:
        return 0.0

    def weight(gram):
        if keyword_set is None:
            return 1.0
        return keyword_weight if gram[0] in keyword_set else 1.0

    precisions = []
    for n in range(1, n_max + 1):
        cand_grams = _grams(cand, n)
        ref_grams = _grams(ref, n)
        matched = 0.0
        total = 0.0
        for gram in cand_grams:
            total += weight(gram)
        seen = []
        for gram in cand_grams:
            if gram in seen:
                continue
            seen.append(gram)
            clipped = min(cand_grams.count(gram), ref_grams.count(gram))
            matched += weight(gram) * clipped
        if n == 1:
            precisions.append(matched / total if total else 0.0)
        else:
            precisions.append((matched + 1.0) / (total + 1.0))

    if precisions[0] == 0.0:
        return 0.0
    log_sum = 0.0
    for p in precisions:
        log_sum += math.log(p)
    geometric_mean = math.exp(log_sum / len(precisions))
    if len(cand) >= len(ref):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(ref) / len(cand))
    return brevity * geometric_mean


# -- AST match ----------------------------------------------------------------


def oracle_sexp(node):
    if node.is_leaf:
        return "(" + node.kind + ")"
    parts = []
    for child in node.children:
        parts.append(oracle_sexp(child))
    return "(" + node.kind + " " + " ".join(parts) + ")"


def oracle_subtrees(node, is_root=True):
    """All internal-node subtrees, plus the root even when it is a leaf."""
    out = []
    if not node.is_leaf or is_root:
        out.append(oracle_sexp(node))
    for child in node.children:
        out.extend(oracle_subtrees(child, is_root=False))
    return out


def oracle_ast_match(ref_tree, cand_tree):
    ref_subtrees = oracle_subtrees(ref_tree)
    cand_subtrees = oracle_subtrees(cand_tree)
    if not ref_subtrees:
        return 1.0
    hits = 0
    for sexp in ref_subtrees:
        found = False
        for other in cand_subtrees:
            if sexp == other:
                found = True
                break
        if found:
            hits += 1
    return hits / len(ref_subtrees)


# -- dataflow match -------------------------------------------------------------


def oracle_dataflow_match(ref_graph, cand_graph):
    ref_edges = [e.key() for e in ref_graph.edges]
    if not ref_edges:
        return 1.0
    remaining = [e.key() for e in cand_graph.edges]
    matched = 0
    for edge in ref_edges:
        for i, other in enumerate(remaining):
            if edge == other:
                matched += 1
                del remaining[i]
                break
    return matched / len(ref_edges)


# -- ranking metrics -------------------------------------------------------------


def _cos(u, v):
    dot = norm_u = norm_v = 0.0
    for a, b in zip(u, v):
        dot += a * b
        norm_u += a * a
        norm_v += b * b
    return dot / math.sqrt(norm_u * norm_v)


def oracle_map_at_r(items, r=None):
    """items: list of (vector tuple, label). Fraction in [0, 1]."""
    n = len(items)
    counts = {}
    for _, label in items:
        counts[label] = counts.get(label, 0) + 1
    ap_values = []
    for q in range(n):
        sims = []
        for i in range(n):
            if i == q:
                continue
            sims.append((-_cos(items[q][0], items[i][0]), i))
        sims.sort()
        r_q = counts[items[q][1]] - 1 if r is None else r
        hits = 0
        ap = 0.0
        for rank in range(1, min(r_q, len(sims)) + 1):
            index = sims[rank - 1][1]
            if items[index][1] == items[q][1]:
                hits += 1
                ap += hits / rank
        ap_values.append(ap / r_q)
    return sum(ap_values) / len(ap_values)


def oracle_acc_at_k(queries, corpus, k):
    hits = 0
    for q_vec, q_label in queries:
        sims = []
        for i, (c_vec, _) in enumerate(corpus):
            sims.append((-_cos(q_vec, c_vec), i))
        sims.sort()
        top = sims[: min(k, len(corpus))]
        if any(corpus[i][1] == q_label for _, i in top):
            hits += 1
    return hits / len(queries)
