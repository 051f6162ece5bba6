"""POS tagging plumbing and the UPOS to profile-category mapping.

Profiles track six part-of-speech categories. ``map_pos`` projects the
17-tag UPOS set onto them (or ``None`` for everything else); taggers are
abstracted behind ``TaggerSpec`` so the library never imports a concrete
NLP pipeline. The builtin lexicon tagger exists to keep the test suite
hermetic: it does exact and case-folded table lookups with a handful of
deterministic Dutch suffix fallbacks, and tags X when it has no opinion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from .errors import LexiconLoadError, PassthroughOnUntagged
from .ingest import Token, Transcript, UPOS_TAGS, Utterance


class ProfileCategory(Enum):
    NOUN = "NOUN"
    PRONOUN = "PRONOUN"
    ADJECTIVE = "ADJECTIVE"
    CONJUNCTION = "CONJUNCTION"
    VERB = "VERB"
    ADVERB = "ADVERB"


CATEGORY_ORDER = tuple(ProfileCategory)


def map_pos(
    upos: str, include_aux: bool = False, include_propn: bool = False
) -> ProfileCategory | None:
    """Project a UPOS tag onto a profile category, or None.

    AUX counts as VERB only when include_aux is set; PROPN counts as NOUN
    only when include_propn is set (names are rarely stable vocabulary,
    so both default off). Total over the UPOS enum.
    """
    if upos == "NOUN":
        return ProfileCategory.NOUN
    if upos == "PROPN":
        return ProfileCategory.NOUN if include_propn else None
    if upos == "PRON":
        return ProfileCategory.PRONOUN
    if upos == "ADJ":
        return ProfileCategory.ADJECTIVE
    if upos in ("CCONJ", "SCONJ"):
        return ProfileCategory.CONJUNCTION
    if upos == "VERB":
        return ProfileCategory.VERB
    if upos == "AUX":
        return ProfileCategory.VERB if include_aux else None
    if upos == "ADV":
        return ProfileCategory.ADVERB
    return None


class TaggerKind(Enum):
    PRETAGGED_PASSTHROUGH = "pretagged"
    BUILTIN_LEXICON = "lexicon"
    EXTERNAL_CONLLU = "external"


@dataclass(frozen=True)
class TaggerSpec:
    kind: TaggerKind
    lexicon_path: Path | None = None

    def __post_init__(self):
        if (self.kind is TaggerKind.BUILTIN_LEXICON) != (
            self.lexicon_path is not None
        ):
            raise ValueError(
                "lexicon_path is required for BUILTIN_LEXICON and "
                "forbidden otherwise"
            )


Lexicon = dict[str, tuple[str, str]]


def load_lexicon(path: Path | str) -> Lexicon:
    """Read a tab-separated surface/UPOS/lemma table.

    Later duplicate surfaces win, so site-specific overrides can be
    appended to a base list.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconLoadError(f"cannot read lexicon {path}: {exc}") from exc
    table: Lexicon = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise LexiconLoadError(
                f"{path}:{lineno}: expected surface<TAB>UPOS<TAB>lemma")
        surface, upos, lemma = (c.strip() for c in cols)
        if not surface or not lemma:
            raise LexiconLoadError(f"{path}:{lineno}: empty surface or lemma")
        if upos not in UPOS_TAGS:
            raise LexiconLoadError(f"{path}:{lineno}: unknown UPOS {upos!r}")
        table[surface] = (upos, lemma)
    # Case-folded aliases let "HUIS" find a "huis" entry (and "huizen" a
    # "Huizen" one); explicit entries always win over an alias.
    for surface, value in list(table.items()):
        table.setdefault(surface.casefold(), value)
    return table


# Last-resort suffix heuristics for out-of-lexicon Dutch words. Ordered,
# longest suffix first; deliberately tiny so behaviour stays predictable.
_SUFFIX_RULES: tuple[tuple[str, str], ...] = (
    ("achtig", "ADJ"),
    ("schap", "NOUN"),
    ("heid", "NOUN"),
    ("isch", "ADJ"),
    ("baar", "ADJ"),
    ("ing", "NOUN"),
    ("tie", "NOUN"),
    ("lijk", "ADJ"),
)


def _lookup(word: str, lexicon: Lexicon) -> tuple[str, str]:
    hit = lexicon.get(word) or lexicon.get(word.casefold())
    if hit:
        return hit
    folded = word.casefold()
    for suffix, upos in _SUFFIX_RULES:
        if folded.endswith(suffix) and len(folded) > len(suffix) + 1:
            return upos, folded
    return "X", word


def _tag_with_lexicon(tok: Token, lexicon: Lexicon) -> Token:
    if tok.is_marker:
        return tok
    upos, lemma = _lookup(tok.surface, lexicon)
    return replace(tok, pos=upos, lemma=lemma)


def tag_transcript(t: Transcript, spec: TaggerSpec) -> Transcript:
    """Return a tagged copy of ``t`` (surfaces, boundaries, timing intact).

    PRETAGGED_PASSTHROUGH asserts the transcript is already fully tagged
    and fails loudly otherwise; EXTERNAL_CONLLU passes anything through on
    the grounds that real taggers legitimately emit X; BUILTIN_LEXICON
    looks surfaces up in the supplied table.
    """
    if spec.kind is TaggerKind.PRETAGGED_PASSTHROUGH:
        for utt in t.utterances:
            for tok in utt.tokens:
                if not tok.is_marker and tok.pos == "X":
                    raise PassthroughOnUntagged(
                        f"untagged token {tok.surface!r} under passthrough")
        return t
    if spec.kind is TaggerKind.EXTERNAL_CONLLU:
        return t
    lexicon = load_lexicon(spec.lexicon_path)
    utterances = tuple(
        Utterance(
            utt.speaker_role,
            utt.start_time,
            tuple(_tag_with_lexicon(tok, lexicon) for tok in utt.tokens),
        )
        for utt in t.utterances
    )
    return Transcript(t.speaker_id, utterances, t.duration)
