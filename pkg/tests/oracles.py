"""Independent brute-force oracles for the selection and metric logic.

Everything here is deliberately written with a different mechanism from
the library (linear scans, explicit union enumeration, repeated
selection) so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math


def oracle_recall(p_items, e_items):
    p = list(p_items)
    if not p:
        return None
    hits = 0
    for item in p:
        for other in e_items:
            if item == other:
                hits += 1
                break
    return hits / len(p)


def oracle_coverage(p_items, e_items):
    e = list(e_items)
    if not e:
        return None
    hits = 0
    for item in e:
        for other in p_items:
            if item == other:
                hits += 1
                break
    return hits / len(e)


def oracle_cosine(p_map, e_map):
    union = list(p_map.keys())
    for key in e_map:
        if key not in p_map:
            union.append(key)
    p_vec = [p_map.get(key, 0) for key in union]
    e_vec = [e_map.get(key, 0) for key in union]
    dot = 0.0
    p_sq = 0.0
    e_sq = 0.0
    for a, b in zip(p_vec, e_vec):
        dot += a * b
        p_sq += a * a
        e_sq += b * b
    if p_sq == 0.0 or e_sq == 0.0:
        return None
    return dot / (math.sqrt(p_sq) * math.sqrt(e_sq))


def _better(a, b):
    """True when candidate a ranks strictly ahead of b."""
    (a_item, a_count, a_first) = a
    (b_item, b_count, b_first) = b
    if a_count != b_count:
        return a_count > b_count
    if a_first != b_first:
        return a_first < b_first
    return a_item < b_item


def oracle_top_k(stats, k, min_count):
    """Repeated linear-scan selection instead of a sort."""
    pool = [
        (item, count, first)
        for item, (count, first) in stats.items()
        if count >= min_count
    ]
    ranked = []
    while pool and len(ranked) < k:
        best = pool[0]
        for cand in pool[1:]:
            if _better(cand, best):
                best = cand
        ranked.append(best)
        pool.remove(best)
    return ranked


def oracle_ngram_stats(utterance_tokens, n, policy):
    """Enumerate n-grams by explicit nested loops.

    ``utterance_tokens`` is a sequence of utterances, each a sequence of
    (surface, lemma, is_marker) triples. Returns the same shape as
    count_ngrams: gram -> (count, first ordinal, lemma gram).
    """
    stats = {}
    ordinal = 0
    for utt in utterance_tokens:
        if policy == "DROP_TOKEN":
            toks = [t for t in utt if not t[2]]
        else:
            toks = list(utt)
        if len(toks) < n:
            continue
        for i in range(0, len(toks) - n + 1):
            piece = toks[i:i + n]
            this_ordinal = ordinal
            ordinal += 1
            if policy == "EXCLUDE_NGRAM":
                if any(t[2] for t in piece):
                    continue
            gram = tuple(
                t[0] if t[2] else t[0].casefold() for t in piece)
            lemmas = tuple(
                t[1] if t[2] else t[1].casefold() for t in piece)
            if gram in stats:
                count, first, lem = stats[gram]
                stats[gram] = (count + 1, first, lem)
            else:
                stats[gram] = (1, this_ordinal, lemmas)
    return stats


def oracle_vocab_stats(tokens, category_of):
    """Per-category counts by linear scan.

    ``tokens`` is a flat list of (surface, lemma, upos, is_marker);
    ``category_of`` maps a UPOS tag to a category name or None. Returns
    {category: {surface: (count, first index, lemma)}}.
    """
    out = {}
    for index, (surface, lemma, upos, is_marker) in enumerate(tokens):
        if is_marker:
            continue
        cat = category_of(upos)
        if cat is None:
            continue
        folded = surface.casefold()
        table = out.setdefault(cat, {})
        if folded in table:
            count, first, lem = table[folded]
            table[folded] = (count + 1, first, lem)
        else:
            table[folded] = (1, index, lemma.casefold())
    return out
