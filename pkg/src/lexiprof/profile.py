"""Personal lexical profiles: top-k vocabulary per POS category plus
frequent word n-grams, built from the opening minutes of an interview.

A profile holds, per category, the k most frequent case-folded surface
forms whose count reaches ``vocab_min_count``, and per n-gram order the
``ngrams_per_n`` most frequent n-grams reaching ``ngram_min_count``.
Ranking is deterministic: count descending, then first occurrence in the
window, then lexicographic. Surfaces are the identity (lemmas ride along
for lemma-based matching later); n-grams never cross utterance
boundaries. PAUSE/BREAK markers keep their verbatim uppercase surfaces so
they stay distinguishable after case folding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, TypeVar

from .annotate import CATEGORY_ORDER, ProfileCategory, map_pos
from .errors import (
    EmptyConstructionWindow,
    InvalidConfig,
    ParseError,
    UntaggedInput,
)
from .ingest import SpeakerRole, Token, TokenWindow, Transcript, slice_transcript


class MarkerPolicy(Enum):
    """How PAUSE/BREAK markers participate in n-gram extraction."""

    RETAIN = "RETAIN"
    DROP_TOKEN = "DROP_TOKEN"
    EXCLUDE_NGRAM = "EXCLUDE_NGRAM"


def _default_items() -> dict[ProfileCategory, int]:
    return {c: 5 for c in CATEGORY_ORDER}


@dataclass(frozen=True)
class ProfileConfig:
    items_per_category: dict[ProfileCategory, int] = field(
        default_factory=_default_items)
    vocab_min_count: int = 5
    ngram_n_range: tuple[int, int] = (2, 5)
    ngrams_per_n: int = 3
    ngram_min_count: int = 3
    marker_policy: MarkerPolicy = MarkerPolicy.RETAIN
    construction_minutes: int = 10
    include_aux: bool = False
    include_propn: bool = False

    def __post_init__(self):
        if set(self.items_per_category) != set(CATEGORY_ORDER):
            raise InvalidConfig(
                "items_per_category must cover exactly the six categories")
        if any(k < 1 for k in self.items_per_category.values()):
            raise InvalidConfig("per-category item caps must be >= 1")
        if self.vocab_min_count < 1 or self.ngram_min_count < 1:
            raise InvalidConfig("count thresholds must be >= 1")
        if self.ngrams_per_n < 1:
            raise InvalidConfig("ngrams_per_n must be >= 1")
        low, high = self.ngram_n_range
        if low < 2 or high < low:
            raise InvalidConfig("ngram_n_range must satisfy 2 <= low <= high")
        if self.construction_minutes < 1:
            raise InvalidConfig("construction_minutes must be >= 1")

    @property
    def n_values(self) -> range:
        return range(self.ngram_n_range[0], self.ngram_n_range[1] + 1)


@dataclass(frozen=True)
class VocabEntry:
    surface: str
    lemma: str
    category: ProfileCategory
    count: int
    first_occurrence_index: int


@dataclass(frozen=True)
class NgramEntry:
    tokens: tuple[str, ...]
    lemmas: tuple[str, ...]
    n: int
    count: int
    first_occurrence_index: int

    def __post_init__(self):
        if len(self.tokens) != self.n or len(self.lemmas) != self.n:
            raise ValueError("n-gram token/lemma length must equal n")


@dataclass(frozen=True)
class LexicalProfile:
    speaker_id: str
    construction_span: tuple[float, float]
    config: ProfileConfig
    vocab: dict[ProfileCategory, tuple[VocabEntry, ...]]
    ngrams: dict[int, tuple[NgramEntry, ...]]

    def __post_init__(self):
        for cat, entries in self.vocab.items():
            if len(entries) > self.config.items_per_category[cat]:
                raise ValueError(f"too many vocab entries for {cat.value}")
            _check_ranked(e.count for e in entries)
            if any(e.count < self.config.vocab_min_count for e in entries):
                raise ValueError("vocab entry below the count threshold")
        for n, entries in self.ngrams.items():
            if len(entries) > self.config.ngrams_per_n:
                raise ValueError(f"too many {n}-gram entries")
            _check_ranked(e.count for e in entries)
            if any(e.count < self.config.ngram_min_count for e in entries):
                raise ValueError("n-gram entry below the count threshold")


def _check_ranked(counts: Iterable[int]):
    prev = None
    for c in counts:
        if prev is not None and c > prev:
            raise ValueError("entry counts must be non-increasing")
        prev = c


# -- counting and selection ----------------------------------------------

def fold_surface(tok: Token) -> str:
    """Case-fold a surface; markers keep their verbatim uppercase form."""
    return tok.surface if tok.is_marker else tok.surface.casefold()


# item -> (count, first_occurrence_index, lemma)
VocabStats = dict[str, tuple[int, int, str]]


def count_vocabulary(
    w: TokenWindow, include_aux: bool = False, include_propn: bool = False
) -> dict[ProfileCategory, VocabStats]:
    """Per-category occurrence counts over case-folded surfaces.

    Marker tokens and tokens outside the six categories are skipped; the
    recorded lemma is the case-folded lemma of the item's first
    occurrence. Raises UntaggedInput when the window has words but no POS
    information at all.
    """
    has_word = False
    has_tag = False
    out: dict[ProfileCategory, VocabStats] = {c: {} for c in CATEGORY_ORDER}
    for index, tok in enumerate(w.tokens):
        if tok.is_marker:
            continue
        has_word = True
        if tok.pos != "X":
            has_tag = True
        cat = map_pos(tok.pos, include_aux, include_propn)
        if cat is None:
            continue
        surface = tok.surface.casefold()
        stats = out[cat]
        prev = stats.get(surface)
        if prev is None:
            stats[surface] = (1, index, tok.lemma.casefold())
        else:
            stats[surface] = (prev[0] + 1, prev[1], prev[2])
    if has_word and not has_tag:
        raise UntaggedInput("window contains words but no POS tags")
    return out


K = TypeVar("K")


def select_top_k(
    stats: Mapping[K, tuple[int, int]], k: int, min_count: int
) -> list[tuple[K, int, int]]:
    """Rank items by (count desc, first occurrence asc, item asc).

    Items below ``min_count`` are dropped before ranking; the result is
    truncated to ``k``. Because the sort order is total, the top-k list
    is always a prefix of the top-(k+1) list.
    """
    if k < 1 or min_count < 1:
        raise InvalidConfig("k and min_count must be >= 1")
    kept = [
        (item, count, first)
        for item, (count, first) in stats.items()
        if count >= min_count
    ]
    kept.sort(key=lambda e: (-e[1], e[2], e[0]))
    return kept[:k]


# ngram -> (count, first_occurrence_index, positionwise lemmas)
NgramStats = dict[tuple[str, ...], tuple[int, int, tuple[str, ...]]]


def count_ngrams(
    w: TokenWindow, n: int, policy: MarkerPolicy = MarkerPolicy.RETAIN
) -> NgramStats:
    """Count surface n-grams within utterances (never across them).

    The first-occurrence index is the n-gram's ordinal among all windows
    scanned, which preserves scanning order for the tie-break. Under
    DROP_TOKEN markers are removed before windowing; under EXCLUDE_NGRAM
    windows are scanned in place but any containing a marker is discarded
    (its ordinal still advances).
    """
    if n < 1:
        raise InvalidConfig("n must be >= 1")
    stats: NgramStats = {}
    ordinal = 0
    for utt_tokens in w.utterance_tokens:
        if policy is MarkerPolicy.DROP_TOKEN:
            toks = [t for t in utt_tokens if not t.is_marker]
        else:
            toks = list(utt_tokens)
        for i in range(len(toks) - n + 1):
            window = toks[i:i + n]
            idx = ordinal
            ordinal += 1
            if policy is MarkerPolicy.EXCLUDE_NGRAM and any(
                t.is_marker for t in window
            ):
                continue
            gram = tuple(fold_surface(t) for t in window)
            prev = stats.get(gram)
            if prev is None:
                lemmas = tuple(
                    t.lemma if t.is_marker else t.lemma.casefold()
                    for t in window
                )
                stats[gram] = (1, idx, lemmas)
            else:
                stats[gram] = (prev[0] + 1, prev[1], prev[2])
    return stats


def extract_ngrams(
    w: TokenWindow, config: ProfileConfig
) -> dict[int, tuple[NgramEntry, ...]]:
    """Top n-grams per order in the configured range."""
    out: dict[int, tuple[NgramEntry, ...]] = {}
    for n in config.n_values:
        stats = count_ngrams(w, n, config.marker_policy)
        ranked = select_top_k(
            {g: (c, f) for g, (c, f, _) in stats.items()},
            config.ngrams_per_n,
            config.ngram_min_count,
        )
        out[n] = tuple(
            NgramEntry(gram, stats[gram][2], n, count, first)
            for gram, count, first in ranked
        )
    return out


def build_profile(t: Transcript, config: ProfileConfig) -> LexicalProfile:
    """Build the interviewee's profile from the opening construction span."""
    span = (0.0, config.construction_minutes * 60.0)
    if t.duration < span[1]:
        raise EmptyConstructionWindow(
            f"transcript covers {t.duration:.0f}s, "
            f"construction needs {span[1]:.0f}s")
    w = slice_transcript(t, span[0], span[1], SpeakerRole.INTERVIEWEE)
    if not any(w.utterance_tokens):
        raise EmptyConstructionWindow(
            "no interviewee speech inside the construction span")
    counts = count_vocabulary(w, config.include_aux, config.include_propn)
    vocab: dict[ProfileCategory, tuple[VocabEntry, ...]] = {}
    for cat in CATEGORY_ORDER:
        ranked = select_top_k(
            {s: (c, f) for s, (c, f, _) in counts[cat].items()},
            config.items_per_category[cat],
            config.vocab_min_count,
        )
        vocab[cat] = tuple(
            VocabEntry(surface, counts[cat][surface][2], cat, count, first)
            for surface, count, first in ranked
        )
    return LexicalProfile(
        speaker_id=t.speaker_id,
        construction_span=span,
        config=config,
        vocab=vocab,
        ngrams=extract_ngrams(w, config),
    )


# -- serialization ---------------------------------------------------------

def config_to_dict(config: ProfileConfig) -> dict:
    return {
        "items_per_category": {
            c.value: config.items_per_category[c] for c in CATEGORY_ORDER
        },
        "vocab_min_count": config.vocab_min_count,
        "ngram_n_range": list(config.ngram_n_range),
        "ngrams_per_n": config.ngrams_per_n,
        "ngram_min_count": config.ngram_min_count,
        "marker_policy": config.marker_policy.value,
        "construction_minutes": config.construction_minutes,
        "include_aux": config.include_aux,
        "include_propn": config.include_propn,
    }


def config_from_dict(data: dict) -> ProfileConfig:
    try:
        return ProfileConfig(
            items_per_category={
                ProfileCategory(k): v
                for k, v in data["items_per_category"].items()
            },
            vocab_min_count=data["vocab_min_count"],
            ngram_n_range=tuple(data["ngram_n_range"]),
            ngrams_per_n=data["ngrams_per_n"],
            ngram_min_count=data["ngram_min_count"],
            marker_policy=MarkerPolicy(data["marker_policy"]),
            construction_minutes=data["construction_minutes"],
            include_aux=data.get("include_aux", False),
            include_propn=data.get("include_propn", False),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidConfig(f"bad profile config: {exc}") from None


def profile_to_json(p: LexicalProfile) -> str:
    doc = {
        "speaker_id": p.speaker_id,
        "construction_span": {
            "start_s": p.construction_span[0],
            "end_s": p.construction_span[1],
        },
        "config": config_to_dict(p.config),
        "vocab": {
            cat.value: [
                {
                    "surface": e.surface,
                    "lemma": e.lemma,
                    "category": e.category.value,
                    "count": e.count,
                    "first_occurrence_index": e.first_occurrence_index,
                }
                for e in p.vocab.get(cat, ())
            ]
            for cat in CATEGORY_ORDER
        },
        "ngrams": {
            str(n): [
                {
                    "tokens": list(e.tokens),
                    "lemmas": list(e.lemmas),
                    "n": e.n,
                    "count": e.count,
                    "first_occurrence_index": e.first_occurrence_index,
                }
                for e in p.ngrams.get(n, ())
            ]
            for n in sorted(p.ngrams)
        },
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def profile_from_json(text: str) -> LexicalProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"profile is not valid JSON: {exc}") from None
    try:
        config = config_from_dict(doc["config"])
        vocab = {
            ProfileCategory(cat): tuple(
                VocabEntry(
                    surface=e["surface"],
                    lemma=e["lemma"],
                    category=ProfileCategory(e["category"]),
                    count=e["count"],
                    first_occurrence_index=e["first_occurrence_index"],
                )
                for e in entries
            )
            for cat, entries in doc["vocab"].items()
        }
        ngrams = {
            int(n): tuple(
                NgramEntry(
                    tokens=tuple(e["tokens"]),
                    lemmas=tuple(e["lemmas"]),
                    n=e["n"],
                    count=e["count"],
                    first_occurrence_index=e["first_occurrence_index"],
                )
                for e in entries
            )
            for n, entries in doc["ngrams"].items()
        }
        span = (
            float(doc["construction_span"]["start_s"]),
            float(doc["construction_span"]["end_s"]),
        )
        return LexicalProfile(doc["speaker_id"], span, config, vocab, ngrams)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed profile document: {exc}") from None
