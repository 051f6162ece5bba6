"""Synthetic tagged interviews with controllable lexical dynamics.

Interview corpora of the kind profiles are meant for cannot be shipped,
so stability claims are exercised on generated data instead. A
SpeakerModel holds per-category vocabularies whose entries are assigned
global Zipf ranks by round-robin interleaving (function words first, so
the head of the distribution looks like speech); unigrams are drawn from
the truncated Zipf law, utterance lengths from a Poisson, and PAUSE/BREAK
markers are injected at configurable rates. The optional TOPIC_SHIFT
drift swaps a fraction of the noun and adjective probability mass (most
frequent entries first) to previously unseen items at a given minute,
which is the controlled analogue of a conversation changing subject.

Everything is driven by one numpy Generator seeded from the model, so a
model and a duration fully determine the output transcript.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidModel
from .ingest import (
    SpeakerRole,
    Token,
    Transcript,
    UPOS_TAGS,
    Utterance,
    break_token,
    pause_token,
)

_CATEGORY_KEYS = (
    "NOUN", "PRONOUN", "ADJECTIVE", "CONJUNCTION", "VERB", "ADVERB", "OTHER",
)
# Interleave order for global frequency ranks. Function words lead (the
# head of real speech distributions), nouns and adjectives come early so
# drift has visible mass to act on.
_RANK_ORDER = (
    "OTHER", "NOUN", "VERB", "PRONOUN", "ADJECTIVE", "ADVERB", "CONJUNCTION",
)
_DRIFT_CATEGORIES = ("NOUN", "ADJECTIVE")


@dataclass(frozen=True)
class LexEntry:
    surface: str
    lemma: str
    upos: str

    def __post_init__(self):
        if not self.surface or not self.lemma:
            raise InvalidModel("lexicon entry needs surface and lemma")
        if self.upos not in UPOS_TAGS:
            raise InvalidModel(f"unknown UPOS {self.upos!r} in lexicon entry")


@dataclass(frozen=True)
class TopicShift:
    at_minute: float
    replacement_fraction: float

    def __post_init__(self):
        if self.at_minute < 0:
            raise InvalidModel("shift minute must be non-negative")
        if not 0.0 <= self.replacement_fraction <= 1.0:
            raise InvalidModel("replacement fraction must lie in [0, 1]")


@dataclass(frozen=True)
class SpeakerModel:
    speaker_id: str
    vocabulary: dict[str, tuple[LexEntry, ...]]
    zipf_exponent: float = 1.1
    mean_utterance_tokens: float = 12.0
    tokens_per_minute: float = 100.0
    drift: TopicShift | None = None
    pause_rate: float = 0.02
    break_rate: float = 0.005
    interviewer_rate: float = 0.15
    seed: int = 0

    def __post_init__(self):
        unknown = set(self.vocabulary) - set(_CATEGORY_KEYS)
        if unknown:
            raise InvalidModel(f"unknown vocabulary keys {sorted(unknown)}")
        if not any(self.vocabulary.get(k) for k in _CATEGORY_KEYS):
            raise InvalidModel("vocabulary is empty")
        if self.zipf_exponent <= 0:
            raise InvalidModel("zipf exponent must be positive")
        if self.mean_utterance_tokens <= 0 or self.tokens_per_minute <= 0:
            raise InvalidModel("rates must be positive")
        for rate in (self.pause_rate, self.break_rate, self.interviewer_rate):
            if not 0.0 <= rate < 1.0:
                raise InvalidModel("injection rates must lie in [0, 1)")


# Canned interviewer turns, already tagged; the generator only needs the
# interviewer present so role filtering has something to filter.
_PROMPTS: tuple[tuple[Token, ...], ...] = (
    (Token("en", "en", "CCONJ"), Token("toen", "toen", "ADV")),
    (Token("vertel", "vertellen", "VERB"), Token("eens", "eens", "ADV"),
     Token("verder", "ver", "ADV")),
    (Token("hoe", "hoe", "ADV"), Token("ging", "gaan", "VERB"),
     Token("dat", "dat", "PRON")),
    (Token("wat", "wat", "PRON"), Token("gebeurde", "gebeuren", "VERB"),
     Token("er", "er", "ADV")),
    (Token("oké", "oké", "INTJ"),),
)


def _ranked_entries(
    m: SpeakerModel, rng: np.random.Generator
) -> list[LexEntry]:
    """Assign global frequency ranks by round-robin over the categories.

    Each category's entries are shuffled once (per-seed variety in which
    word sits at which rank) and the shuffled lists are interleaved in
    _RANK_ORDER; exhausted categories drop out of the cycle.
    """
    pools: dict[str, list[LexEntry]] = {}
    for key in _RANK_ORDER:
        entries = list(m.vocabulary.get(key, ()))
        if entries:
            order = rng.permutation(len(entries))
            pools[key] = [entries[i] for i in order]
    ranked: list[LexEntry] = []
    depth = 0
    while pools:
        for key in _RANK_ORDER:
            pool = pools.get(key)
            if pool is None:
                continue
            if depth < len(pool):
                ranked.append(pool[depth])
            else:
                del pools[key]
        depth += 1
    return ranked


def _replacement_map(
    entries: list[LexEntry], weights: np.ndarray, shift: TopicShift
) -> dict[int, LexEntry]:
    """Entries to swap once the shift hits, keyed by global rank index.

    Within each drifting category, entries are replaced in descending
    mass order until the replaced share of the category's probability
    mass reaches the configured fraction; a fraction of 1.0 therefore
    replaces the whole category.
    """
    out: dict[int, LexEntry] = {}
    for cat in _DRIFT_CATEGORIES:
        indexed = [
            (i, float(weights[i]))
            for i, e in enumerate(entries)
            if _category_key(e.upos) == cat
        ]
        total = sum(wt for _, wt in indexed)
        if total == 0:
            continue
        cum = 0.0
        for i, wt in indexed:
            if cum / total < shift.replacement_fraction - 1e-9:
                e = entries[i]
                out[i] = LexEntry(e.surface + "2", e.lemma + "2", e.upos)
            cum += wt
    return out


def _category_key(upos: str) -> str | None:
    if upos == "NOUN":
        return "NOUN"
    if upos == "ADJ":
        return "ADJECTIVE"
    return None


def generate_transcript(m: SpeakerModel, duration_min: float) -> Transcript:
    """Sample a fully tagged interview of the given length."""
    if duration_min < 1:
        raise InvalidModel("duration must be at least one minute")
    rng = np.random.default_rng(m.seed)
    entries = _ranked_entries(m, rng)
    ranks = np.arange(1, len(entries) + 1, dtype=float)
    weights = ranks ** -m.zipf_exponent
    weights /= weights.sum()
    cum = np.cumsum(weights)
    replacements = (
        _replacement_map(entries, weights, m.drift) if m.drift else {})
    shift_s = m.drift.at_minute * 60.0 if m.drift else None

    duration_s = duration_min * 60.0
    seconds_per_token = 60.0 / m.tokens_per_minute
    utterances: list[Utterance] = []
    t = 0.0
    while t < duration_s:
        length = max(1, int(rng.poisson(m.mean_utterance_tokens)))
        draws = rng.random(length)
        idxs = np.minimum(
            np.searchsorted(cum, draws, side="right"), len(entries) - 1)
        pauses = rng.random(length) < m.pause_rate
        breaks = rng.random(length) < m.break_rate
        shifted = shift_s is not None and t >= shift_s
        tokens: list[Token] = []
        for j in range(length):
            i = int(idxs[j])
            e = replacements.get(i) if shifted else None
            if e is None:
                e = entries[i]
            if pauses[j]:
                tokens.append(pause_token())
            tokens.append(Token(e.surface, e.lemma, e.upos))
            if breaks[j]:
                tokens.append(break_token())
        utterances.append(
            Utterance(SpeakerRole.INTERVIEWEE, t, tuple(tokens)))
        t += len(tokens) * seconds_per_token
        if t < duration_s and rng.random() < m.interviewer_rate:
            prompt = _PROMPTS[int(rng.integers(len(_PROMPTS)))]
            utterances.append(Utterance(SpeakerRole.INTERVIEWER, t, prompt))
            t += len(prompt) * seconds_per_token
    return Transcript(m.speaker_id, tuple(utterances), duration_s)


# -- model serialization -----------------------------------------------------

def speaker_model_to_json(m: SpeakerModel) -> str:
    doc = {
        "speaker_id": m.speaker_id,
        "vocabulary": {
            key: [[e.surface, e.lemma, e.upos] for e in m.vocabulary[key]]
            for key in _CATEGORY_KEYS if key in m.vocabulary
        },
        "zipf_exponent": m.zipf_exponent,
        "mean_utterance_tokens": m.mean_utterance_tokens,
        "tokens_per_minute": m.tokens_per_minute,
        "drift": None if m.drift is None else {
            "at_minute": m.drift.at_minute,
            "replacement_fraction": m.drift.replacement_fraction,
        },
        "pause_rate": m.pause_rate,
        "break_rate": m.break_rate,
        "interviewer_rate": m.interviewer_rate,
        "seed": m.seed,
    }
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def speaker_model_from_json(text: str) -> SpeakerModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidModel(f"model is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidModel("model document must be a JSON object")
    try:
        drift = None
        if doc.get("drift") is not None:
            drift = TopicShift(
                at_minute=float(doc["drift"]["at_minute"]),
                replacement_fraction=float(
                    doc["drift"]["replacement_fraction"]),
            )
        vocabulary = {
            key: tuple(LexEntry(*entry) for entry in entries)
            for key, entries in doc["vocabulary"].items()
        }
        return SpeakerModel(
            speaker_id=doc["speaker_id"],
            vocabulary=vocabulary,
            zipf_exponent=float(doc.get("zipf_exponent", 1.1)),
            mean_utterance_tokens=float(
                doc.get("mean_utterance_tokens", 12.0)),
            tokens_per_minute=float(doc.get("tokens_per_minute", 100.0)),
            drift=drift,
            pause_rate=float(doc.get("pause_rate", 0.02)),
            break_rate=float(doc.get("break_rate", 0.005)),
            interviewer_rate=float(doc.get("interviewer_rate", 0.15)),
            seed=int(doc.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidModel(f"malformed model document: {exc}") from None


# -- a batteries-included model -----------------------------------------------

def _entries(upos: str, *pairs: tuple[str, str]) -> tuple[LexEntry, ...]:
    return tuple(LexEntry(surface, lemma, upos) for surface, lemma in pairs)


_NOUNS = _entries(
    "NOUN",
    ("huis", "huis"), ("huizen", "huis"), ("man", "man"), ("mannen", "man"),
    ("vrouw", "vrouw"), ("kind", "kind"), ("kinderen", "kind"),
    ("boom", "boom"), ("straat", "straat"), ("stad", "stad"),
    ("water", "water"), ("jaar", "jaar"), ("jaren", "jaar"), ("dag", "dag"),
    ("dagen", "dag"), ("hand", "hand"), ("oog", "oog"), ("ogen", "oog"),
    ("weg", "weg"), ("deur", "deur"), ("tafel", "tafel"), ("stoel", "stoel"),
    ("boek", "boek"), ("boeken", "boek"), ("woord", "woord"),
    ("verhaal", "verhaal"), ("school", "school"), ("tuin", "tuin"),
    ("kamer", "kamer"), ("vriend", "vriend"),
)

_VERBS = _entries(
    "VERB",
    ("loop", "lopen"), ("loopt", "lopen"), ("lopen", "lopen"),
    ("liep", "lopen"), ("ben", "zijn"), ("is", "zijn"), ("was", "zijn"),
    ("waren", "zijn"), ("heb", "hebben"), ("heeft", "hebben"),
    ("had", "hebben"), ("ga", "gaan"), ("gaat", "gaan"), ("ging", "gaan"),
    ("kom", "komen"), ("komt", "komen"), ("kwam", "komen"),
    ("zie", "zien"), ("ziet", "zien"), ("zag", "zien"),
    ("maak", "maken"), ("maakt", "maken"), ("denk", "denken"),
    ("denkt", "denken"), ("dacht", "denken"),
)

_PRONOUNS = _entries(
    "PRON",
    ("ik", "ik"), ("je", "je"), ("jij", "jij"), ("hij", "hij"),
    ("zij", "zij"), ("ze", "ze"), ("we", "we"), ("wij", "wij"),
    ("het", "het"), ("hem", "hem"), ("haar", "haar"), ("jullie", "jullie"),
)

_ADJECTIVES = _entries(
    "ADJ",
    ("groot", "groot"), ("grote", "groot"), ("klein", "klein"),
    ("kleine", "klein"), ("mooi", "mooi"), ("mooie", "mooi"),
    ("oud", "oud"), ("oude", "oud"), ("nieuw", "nieuw"),
    ("nieuwe", "nieuw"), ("goed", "goed"), ("goede", "goed"),
    ("lang", "lang"), ("lange", "lang"), ("kort", "kort"),
    ("warm", "warm"), ("koud", "koud"), ("jong", "jong"),
    ("duur", "duur"), ("leuk", "leuk"),
)

_ADVERBS = _entries(
    "ADV",
    ("niet", "niet"), ("ook", "ook"), ("nog", "nog"), ("al", "al"),
    ("heel", "heel"), ("erg", "erg"), ("vaak", "vaak"),
    ("altijd", "altijd"), ("nooit", "nooit"), ("misschien", "misschien"),
    ("daar", "daar"), ("hier", "hier"), ("nu", "nu"), ("weer", "weer"),
    ("samen", "samen"),
)

_CONJUNCTIONS = tuple(
    LexEntry(s, s, upos)
    for s, upos in (
        ("en", "CCONJ"), ("maar", "CCONJ"), ("of", "CCONJ"),
        ("want", "CCONJ"), ("dus", "CCONJ"), ("dat", "SCONJ"),
        ("omdat", "SCONJ"), ("als", "SCONJ"), ("terwijl", "SCONJ"),
        ("hoewel", "SCONJ"),
    )
)

_OTHER = tuple(
    LexEntry(s, s, upos)
    for s, upos in (
        ("de", "DET"), ("het", "DET"), ("een", "DET"), ("die", "DET"),
        ("deze", "DET"), ("in", "ADP"), ("op", "ADP"), ("van", "ADP"),
        ("met", "ADP"), ("voor", "ADP"), ("aan", "ADP"), ("bij", "ADP"),
        ("naar", "ADP"), ("uit", "ADP"), ("over", "ADP"), ("onder", "ADP"),
        ("door", "ADP"), ("tegen", "ADP"), ("tussen", "ADP"),
        ("ja", "INTJ"), ("nee", "INTJ"), ("nou", "INTJ"), ("zo", "INTJ"),
        ("twee", "NUM"), ("drie", "NUM"), ("vier", "NUM"), ("tien", "NUM"),
        ("te", "PART"),
    )
)


def default_speaker_model(
    seed: int,
    speaker_id: str | None = None,
    drift: TopicShift | None = None,
) -> SpeakerModel:
    """A ready-to-use Dutch-flavoured model.

    The verb and noun lists contain inflection families sharing a lemma,
    so lemma-based matching genuinely merges items on generated data.
    """
    return SpeakerModel(
        speaker_id=speaker_id or f"synth-{seed:03d}",
        vocabulary={
            "NOUN": _NOUNS,
            "PRONOUN": _PRONOUNS,
            "ADJECTIVE": _ADJECTIVES,
            "CONJUNCTION": _CONJUNCTIONS,
            "VERB": _VERBS,
            "ADVERB": _ADVERBS,
            "OTHER": _OTHER,
        },
        drift=drift,
        seed=seed,
    )


def with_drift(m: SpeakerModel, drift: TopicShift | None) -> SpeakerModel:
    return replace(m, drift=drift)
