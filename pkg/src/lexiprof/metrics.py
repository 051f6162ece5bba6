"""Repetition metrics between a lexical profile and a later window.

Three metrics, each per POS category and per n-gram order:

* recall: the share of profile items recurring in the window,
  |P∩E| / |P|;
* coverage: the share of window items the profile captured,
  |P∩E| / |E|;
* cosine similarity between the token-frequency vectors indexed over the
  union of profile and window items (vocabulary only, never n-grams).

A zero denominator makes a metric undefined, which is reported as a
first-class missing value rather than 0 or 1. Matching is either EXACT
(case-folded surfaces) or LEMMATISED (case-folded lemmas; items sharing
a lemma merge, n-grams project positionwise). An AGGREGATE record holds
the unweighted mean of the defined per-scope values plus a tally of the
scopes that were undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence, TypeVar

from .annotate import CATEGORY_ORDER, ProfileCategory
from .errors import MissingLemmas, SpanOverlap
from .ingest import TokenWindow
from .profile import (
    LexicalProfile,
    MarkerPolicy,
    count_ngrams,
    count_vocabulary,
)


class MatchMode(Enum):
    EXACT = "EXACT"
    LEMMATISED = "LEMMATISED"


AGGREGATE_SCOPE = "AGGREGATE"


def ngram_scope(n: int) -> str:
    return f"ngram-{n}"


@dataclass(frozen=True)
class EvaluationWindow:
    """Frequency tables for one speaker's tokens in a later time span.

    ``items``/``ngrams`` are exact (case-folded surface) counts;
    ``item_lemmas``/``ngram_lemmas`` carry the lemma of each key's first
    occurrence so counts can be re-keyed for LEMMATISED matching.
    ``empty`` marks a window that contained no speech at all.
    """

    speaker_id: str
    span: tuple[float, float]
    index: int
    items: dict[ProfileCategory, dict[str, int]]
    item_lemmas: dict[ProfileCategory, dict[str, str]]
    ngrams: dict[int, dict[tuple[str, ...], int]]
    ngram_lemmas: dict[int, dict[tuple[str, ...], tuple[str, ...]]]
    empty: bool = False
    tagged: bool = True


def make_evaluation_window(
    w: TokenWindow,
    index: int,
    n_values: Sequence[int] = (2, 3, 4, 5),
    marker_policy: MarkerPolicy = MarkerPolicy.RETAIN,
    include_aux: bool = False,
    include_propn: bool = False,
) -> EvaluationWindow:
    """Build the evaluation-side tables from a token window."""
    counts = count_vocabulary(w, include_aux, include_propn)
    items = {c: {s: st[0] for s, st in counts[c].items()} for c in counts}
    lemmas = {c: {s: st[2] for s, st in counts[c].items()} for c in counts}
    ngrams: dict[int, dict[tuple[str, ...], int]] = {}
    ngram_lemmas: dict[int, dict[tuple[str, ...], tuple[str, ...]]] = {}
    for n in n_values:
        stats = count_ngrams(w, n, marker_policy)
        ngrams[n] = {g: st[0] for g, st in stats.items()}
        ngram_lemmas[n] = {g: st[2] for g, st in stats.items()}
    has_words = any(
        not tok.is_marker for utt in w.utterance_tokens for tok in utt)
    return EvaluationWindow(
        speaker_id=w.speaker_id,
        span=(w.start_s, w.end_s),
        index=index,
        items=items,
        item_lemmas=lemmas,
        ngrams=ngrams,
        ngram_lemmas=ngram_lemmas,
        empty=not w.tokens,
        tagged=w.is_tagged() or not has_words,
    )


# -- metric primitives -----------------------------------------------------

K = TypeVar("K")


def recall(p_items: frozenset | set, e_items: frozenset | set) -> float | None:
    """|P∩E| / |P|, undefined for an empty profile side."""
    if not p_items:
        return None
    return len(p_items & e_items) / len(p_items)


def coverage(p_items: frozenset | set, e_items: frozenset | set) -> float | None:
    """|P∩E| / |E|, undefined for an empty window side."""
    if not e_items:
        return None
    return len(p_items & e_items) / len(e_items)


def cosine(
    p_vec: Mapping[K, float], e_vec: Mapping[K, float]
) -> float | None:
    """Cosine of token-frequency vectors indexed over the key union.

    Keys absent from one side contribute a zero coordinate there, so only
    the intersection feeds the dot product. Undefined when either vector
    has zero norm.
    """
    p_norm = math.sqrt(sum(v * v for v in p_vec.values()))
    e_norm = math.sqrt(sum(v * v for v in e_vec.values()))
    if p_norm == 0 or e_norm == 0:
        return None
    dot = sum(v * e_vec[k] for k, v in p_vec.items() if k in e_vec)
    return min(1.0, max(0.0, dot / (p_norm * e_norm)))


def project_counts(
    counts: Mapping[K, int], lemma_of: Mapping[K, K], mode: MatchMode
) -> dict[K, int]:
    """Re-key a frequency table for the match mode.

    EXACT is the identity. LEMMATISED maps every key through its lemma
    and merges counts of keys that collide; a key without a recorded
    lemma would mean the caller skipped tagging, which is an error.
    """
    if mode is MatchMode.EXACT:
        return dict(counts)
    out: dict[K, int] = {}
    for key, count in counts.items():
        lemma = lemma_of.get(key)
        if lemma is None:
            raise MissingLemmas(f"no lemma recorded for {key!r}")
        out[lemma] = out.get(lemma, 0) + count
    return out


# -- per-scope evaluation ----------------------------------------------------

@dataclass(frozen=True)
class MetricRecord:
    scope: str
    mode: MatchMode
    window_index: int
    recall: float | None
    coverage: float | None
    cosine: float | None
    missing: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for value in (self.recall, self.coverage, self.cosine):
            if value is not None and not (0.0 <= value <= 1.0):
                raise ValueError(f"metric value {value} outside [0, 1]")


def _profile_vocab_counts(
    p: LexicalProfile, cat: ProfileCategory, mode: MatchMode
) -> dict[str, int]:
    entries = p.vocab.get(cat, ())
    counts = {e.surface: e.count for e in entries}
    lemmas = {e.surface: e.lemma for e in entries}
    return project_counts(counts, lemmas, mode)


def _profile_ngram_set(
    p: LexicalProfile, n: int, mode: MatchMode
) -> frozenset[tuple[str, ...]]:
    entries = p.ngrams.get(n, ())
    if mode is MatchMode.EXACT:
        return frozenset(e.tokens for e in entries)
    return frozenset(e.lemmas for e in entries)


def metric_items(rec: MetricRecord) -> tuple[tuple[str, float | None], ...]:
    """The (metric name, value) pairs a record contributes to reports.

    N-gram scopes never carry a cosine, so no cosine pair is emitted for
    them; everywhere else an undefined value comes through as None.
    """
    items = [("recall", rec.recall), ("coverage", rec.coverage)]
    if not rec.scope.startswith("ngram-"):
        items.append(("cosine", rec.cosine))
    return tuple(items)


def scope_sort_key(scope: str) -> int:
    """Fixed report order: six categories, n-gram orders, AGGREGATE."""
    for i, cat in enumerate(CATEGORY_ORDER):
        if scope == cat.value:
            return i
    if scope.startswith("ngram-"):
        return len(CATEGORY_ORDER) + int(scope.split("-", 1)[1])
    return 1000


def evaluate_profile(
    p: LexicalProfile,
    w: EvaluationWindow,
    mode: MatchMode,
    weighting: str = "uniform",
) -> list[MetricRecord]:
    """All metric records for one profile/window pair in one mode.

    Records come out in a fixed order: the six categories, then n-gram
    orders ascending, then AGGREGATE. ``weighting`` selects how the
    aggregate means are formed: "uniform" (default) or "size", which
    weights each scope by its denominator set size (|P| for recall and
    cosine, |E| for coverage).
    """
    if weighting not in ("uniform", "size"):
        raise ValueError(f"unknown weighting {weighting!r}")
    if w.span[0] < p.construction_span[1]:
        raise SpanOverlap(
            f"evaluation window starting at {w.span[0]:.0f}s overlaps the "
            f"construction span ending at {p.construction_span[1]:.0f}s")
    if mode is MatchMode.LEMMATISED and not w.tagged:
        raise MissingLemmas("evaluation window has no lemma annotations")

    records: list[MetricRecord] = []
    # (value, weight) pairs per metric for the aggregate.
    agg: dict[str, list[tuple[float, float]]] = {
        "recall": [], "coverage": [], "cosine": []}
    n_missing = {"recall": 0, "coverage": 0, "cosine": 0}

    def collect(metric: str, value: float | None, weight: float):
        if value is None:
            n_missing[metric] += 1
        else:
            agg[metric].append((value, weight))

    for cat in CATEGORY_ORDER:
        p_vec = _profile_vocab_counts(p, cat, mode)
        e_vec = project_counts(
            w.items.get(cat, {}), w.item_lemmas.get(cat, {}), mode)
        p_set, e_set = frozenset(p_vec), frozenset(e_vec)
        r, c, s = recall(p_set, e_set), coverage(p_set, e_set), cosine(p_vec, e_vec)
        records.append(MetricRecord(cat.value, mode, w.index, r, c, s))
        collect("recall", r, float(len(p_set)) or 1.0)
        collect("coverage", c, float(len(e_set)) or 1.0)
        collect("cosine", s, float(len(p_set)) or 1.0)

    for n in sorted(p.ngrams):
        p_set = _profile_ngram_set(p, n, mode)
        e_counts = project_counts(
            w.ngrams.get(n, {}), w.ngram_lemmas.get(n, {}), mode)
        e_set = frozenset(e_counts)
        r, c = recall(p_set, e_set), coverage(p_set, e_set)
        records.append(MetricRecord(ngram_scope(n), mode, w.index, r, c, None))
        collect("recall", r, float(len(p_set)) or 1.0)
        collect("coverage", c, float(len(e_set)) or 1.0)

    def mean(pairs: list[tuple[float, float]]) -> float | None:
        if not pairs:
            return None
        if weighting == "uniform":
            return sum(v for v, _ in pairs) / len(pairs)
        total = sum(wt for _, wt in pairs)
        return sum(v * wt for v, wt in pairs) / total

    records.append(MetricRecord(
        AGGREGATE_SCOPE, mode, w.index,
        mean(agg["recall"]), mean(agg["coverage"]), mean(agg["cosine"]),
        missing=dict(n_missing),
    ))
    return records
