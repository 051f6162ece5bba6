"""Transcript ingestion: the raw interview format and CoNLL-U interchange.

Raw format (line-oriented UTF-8)::

    #speaker-id: vet-042
    [00:00:00]
    INT: en toen?
    SPK: ik was ... daar

The header line is optional and must precede everything else. Time-marker
lines are exactly ``[HH:MM:SS]``; content lines carry an ``INT:`` or
``SPK:`` prefix and inherit the time of the nearest preceding marker
(0 seconds before the first marker). Blank lines are ignored.

Preprocessing while tokenising content lines:

* every ellipsis (a run of three or more ASCII dots, or U+2026) becomes a
  PAUSE marker token;
* a standalone ``-`` becomes a BREAK marker token, and a word-final ``-``
  is stripped from the word and followed by a BREAK token (mid-word
  hyphens are left intact);
* a small set of sentence punctuation is stripped from token edges and
  tokens that become empty are dropped.

CoNLL-U interchange: standard 10-column token lines, one sentence per
utterance, with required sentence comments ``# speaker = INT|SPK`` and
``# start_time = <seconds>``. Marker tokens carry ``Marker=Pause`` or
``Marker=Break`` in MISC. The serializer additionally writes
``# speaker_id`` and ``# duration`` document comments so that a Transcript
round-trips exactly; unknown comments are ignored on input. Multiword
token ranges and empty nodes are outside the interchange subset and are
rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Sequence

from .errors import (
    InvalidSpan,
    InvalidUPOS,
    MalformedTimeMarker,
    MissingMetadata,
    MissingSpeakerPrefix,
    NonMonotonicTime,
    ParseError,
)

# The 17 Universal POS tags (X included).
UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

PAUSE_SURFACE = "PAUSE"
BREAK_SURFACE = "BREAK"


class Marker(Enum):
    NONE = "none"
    PAUSE = "pause"
    BREAK = "break"


class SpeakerRole(Enum):
    INTERVIEWEE = "SPK"
    INTERVIEWER = "INT"
    OTHER = "OTHER"


_ROLE_BY_PREFIX = {r.value: r for r in SpeakerRole}


@dataclass(frozen=True)
class Token:
    """One transcribed word, or a PAUSE/BREAK marker."""

    surface: str
    lemma: str
    pos: str = "X"
    marker: Marker = Marker.NONE

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if self.pos not in UPOS_TAGS:
            raise ValueError(f"invalid UPOS tag {self.pos!r}")
        is_marker_shape = (
            self.surface in (PAUSE_SURFACE, BREAK_SURFACE) and self.pos == "X"
        )
        if (self.marker is not Marker.NONE) != is_marker_shape:
            raise ValueError(
                "marker flag must match a PAUSE/BREAK surface with pos X"
            )
        if self.marker is Marker.PAUSE and self.surface != PAUSE_SURFACE:
            raise ValueError("PAUSE marker must have surface 'PAUSE'")
        if self.marker is Marker.BREAK and self.surface != BREAK_SURFACE:
            raise ValueError("BREAK marker must have surface 'BREAK'")

    @property
    def is_marker(self) -> bool:
        return self.marker is not Marker.NONE


def pause_token() -> Token:
    return Token(PAUSE_SURFACE, PAUSE_SURFACE, "X", Marker.PAUSE)


def break_token() -> Token:
    return Token(BREAK_SURFACE, BREAK_SURFACE, "X", Marker.BREAK)


@dataclass(frozen=True)
class Utterance:
    speaker_role: SpeakerRole
    start_time: float
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("utterance must contain at least one token")
        if not (self.start_time >= 0 and self.start_time == self.start_time
                and self.start_time != float("inf")):
            raise ValueError("start_time must be finite and non-negative")


@dataclass(frozen=True)
class Transcript:
    speaker_id: str
    utterances: tuple[Utterance, ...]
    duration: float

    def __post_init__(self):
        prev = 0.0
        for utt in self.utterances:
            if utt.start_time < prev:
                raise ValueError("utterance start times must be non-decreasing")
            prev = utt.start_time
        if self.utterances and self.duration < prev:
            raise ValueError("duration must cover the last utterance")

    def is_tagged(self) -> bool:
        """True when at least one non-marker token carries a real UPOS tag.

        A fully untagged transcript (raw ingest) has pos X on every
        non-marker token; a single tagged token is enough to call the
        transcript tagged, since taggers may legitimately emit X.
        """
        return any(
            tok.pos != "X"
            for utt in self.utterances
            for tok in utt.tokens
            if not tok.is_marker
        )


@dataclass(frozen=True)
class TokenWindow:
    """Tokens of one speaker role inside a half-open time span.

    Utterance boundaries are preserved so that n-gram extraction never
    crosses them; ``tokens`` is the flat concatenation.
    """

    speaker_id: str
    start_s: float
    end_s: float
    utterance_tokens: tuple[tuple[Token, ...], ...] = field(default_factory=tuple)

    @property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(tok for utt in self.utterance_tokens for tok in utt)

    def is_tagged(self) -> bool:
        return any(
            tok.pos != "X"
            for utt in self.utterance_tokens
            for tok in utt
            if not tok.is_marker
        )


# -- raw transcript format ---------------------------------------------------

_HEADER_PREFIX = "#speaker-id:"
_TIME_RE = re.compile(r"^\[(\d{2}):(\d{2}):(\d{2})\]$")
_ELLIPSIS_RE = re.compile(r"(\.{3,}|…)")
_EDGE_PUNCT = ".,!?;:()\"'«»„“”‘’"


def _word_tokens(word: str) -> Iterator[Token]:
    word = word.strip(_EDGE_PUNCT)
    if not word:
        return
    if set(word) == {"-"}:
        yield break_token()
        return
    if word.endswith("-"):
        stem = word.rstrip("-")
        if stem:
            yield Token(stem, stem)
        yield break_token()
        return
    yield Token(word, word)


def _content_tokens(text: str) -> Iterator[Token]:
    for part in _ELLIPSIS_RE.split(text):
        if not part:
            continue
        if _ELLIPSIS_RE.fullmatch(part):
            yield pause_token()
            continue
        for word in part.split():
            yield from _word_tokens(word)


def parse_raw_transcript(text: str) -> Transcript:
    """Parse the raw interview format into an untagged Transcript.

    Every token has lemma equal to its surface and pos X; run the result
    through a tagger before building profiles.
    """
    speaker_id = "unknown"
    utterances: list[Utterance] = []
    current_time = 0.0
    last_marker: float | None = None
    duration = 0.0
    seen_content = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith(_HEADER_PREFIX):
                if seen_content or last_marker is not None:
                    raise MissingSpeakerPrefix(
                        "header line allowed only before content", lineno)
                speaker_id = line[len(_HEADER_PREFIX):].strip() or "unknown"
                continue
            raise MissingSpeakerPrefix(
                f"unrecognised comment line {line!r}", lineno)
        if line.startswith("["):
            m = _TIME_RE.match(line)
            if not m:
                raise MalformedTimeMarker(
                    f"time marker must be [HH:MM:SS], got {line!r}", lineno)
            h, mnt, sec = (int(g) for g in m.groups())
            if mnt > 59 or sec > 59:
                raise MalformedTimeMarker(
                    f"minutes/seconds out of range in {line!r}", lineno)
            t = float(h * 3600 + mnt * 60 + sec)
            if last_marker is not None and t < last_marker:
                raise NonMonotonicTime(
                    f"time marker {line!r} precedes an earlier marker", lineno)
            last_marker = t
            current_time = t
            duration = max(duration, t)
            continue
        prefix, _, rest = line.partition(":")
        role = _ROLE_BY_PREFIX.get(prefix)
        if role is None or role is SpeakerRole.OTHER or not _:
            raise MissingSpeakerPrefix(
                f"expected 'INT:' or 'SPK:' prefix, got {line!r}", lineno)
        seen_content = True
        tokens = tuple(_content_tokens(rest.strip()))
        if tokens:
            utterances.append(Utterance(role, current_time, tokens))

    return Transcript(speaker_id, tuple(utterances), duration)


# -- CoNLL-U interchange -----------------------------------------------------

_MARKER_BY_MISC = {"Pause": Marker.PAUSE, "Break": Marker.BREAK}
_MISC_BY_MARKER = {v: k for k, v in _MARKER_BY_MISC.items()}


def _parse_float(value: str, what: str, lineno: int) -> float:
    try:
        out = float(value)
    except ValueError:
        raise ParseError(f"{what} is not a number: {value!r}", lineno) from None
    if out != out or out in (float("inf"), float("-inf")):
        raise ParseError(f"{what} must be finite: {value!r}", lineno)
    return out


def _parse_token_line(line: str, lineno: int, expected_id: int) -> Token:
    cols = line.split("\t")
    if len(cols) != 10:
        raise ParseError(
            f"expected 10 tab-separated columns, got {len(cols)}", lineno)
    tok_id, form, lemma, upos, _, _, _, _, _, misc = cols
    if "-" in tok_id or "." in tok_id:
        raise ParseError(
            "multiword token ranges and empty nodes are not supported", lineno)
    try:
        idx = int(tok_id)
    except ValueError:
        raise ParseError(f"bad token id {tok_id!r}", lineno) from None
    if idx != expected_id:
        raise ParseError(
            f"token id {idx} out of sequence (expected {expected_id})", lineno)
    if not form or form == "_":
        raise ParseError("token form must be non-empty", lineno)
    if lemma == "_" or not lemma:
        lemma = form
    if upos not in UPOS_TAGS:
        raise InvalidUPOS(f"unknown UPOS tag {upos!r}", lineno)

    marker = Marker.NONE
    if misc != "_":
        for item in misc.split("|"):
            key, _, value = item.partition("=")
            if key == "Marker":
                if value not in _MARKER_BY_MISC:
                    raise ParseError(f"unknown Marker value {value!r}", lineno)
                marker = _MARKER_BY_MISC[value]
    if marker is Marker.NONE and upos == "X" and form in (PAUSE_SURFACE, BREAK_SURFACE):
        # Tolerate files that spell markers without MISC annotations.
        marker = Marker.PAUSE if form == PAUSE_SURFACE else Marker.BREAK
    try:
        return Token(form, lemma, upos, marker)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_conllu(text: str) -> Transcript:
    """Parse a CoNLL-U interchange document into a Transcript."""
    utterances: list[Utterance] = []
    speaker_id: str | None = None
    duration: float | None = None
    prev_time = 0.0

    comments: dict[str, str] = {}
    tokens: list[Token] = []
    sentence_start_line = 0

    def flush(lineno: int):
        nonlocal prev_time, speaker_id, duration
        if "speaker_id" in comments and speaker_id is None:
            speaker_id = comments["speaker_id"]
        if "duration" in comments and duration is None:
            duration = _parse_float(comments["duration"], "duration", lineno)
        if not tokens:
            return
        if "speaker" not in comments:
            raise MissingMetadata(
                "sentence lacks '# speaker =' comment", sentence_start_line)
        if "start_time" not in comments:
            raise MissingMetadata(
                "sentence lacks '# start_time =' comment", sentence_start_line)
        role_value = comments["speaker"]
        try:
            role = SpeakerRole(role_value)
        except ValueError:
            raise ParseError(
                f"unknown speaker value {role_value!r}", sentence_start_line
            ) from None
        start = _parse_float(comments["start_time"], "start_time",
                             sentence_start_line)
        if start < 0:
            raise ParseError("start_time must be non-negative",
                             sentence_start_line)
        if start < prev_time:
            raise NonMonotonicTime(
                f"start_time {start} precedes previous sentence ({prev_time})",
                sentence_start_line)
        prev_time = start
        utterances.append(Utterance(role, start, tuple(tokens)))

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if comments or tokens:
                flush(lineno)
                comments, tokens = {}, []
            continue
        if not comments and not tokens:
            sentence_start_line = lineno
        if line.startswith("#"):
            if tokens:
                raise ParseError("comment inside a token block", lineno)
            key, eq, value = line[1:].partition("=")
            if eq:
                comments.setdefault(key.strip(), value.strip())
            continue
        tokens.append(_parse_token_line(line, lineno, len(tokens) + 1))
    if comments or tokens:
        flush(len(text.splitlines()))

    max_start = max((u.start_time for u in utterances), default=0.0)
    if duration is None:
        duration = max_start
    elif duration < max_start:
        raise ParseError(
            f"declared duration {duration} precedes last start_time {max_start}")
    return Transcript(speaker_id or "unknown", tuple(utterances), duration)


def _token_line(idx: int, tok: Token) -> str:
    misc = "_"
    if tok.is_marker:
        misc = f"Marker={_MISC_BY_MARKER[tok.marker]}"
    return "\t".join(
        [str(idx), tok.surface, tok.lemma, tok.pos, "_", "_", "_", "_", "_", misc]
    )


def to_conllu(t: Transcript, extra_comments: Sequence[str] = ()) -> str:
    """Serialize a Transcript to the CoNLL-U interchange, byte-stable."""
    lines = [
        f"# speaker_id = {t.speaker_id}",
        f"# duration = {t.duration!r}",
    ]
    lines.extend(f"# {c}" for c in extra_comments)
    if not t.utterances:
        lines.append("")
        return "\n".join(lines)
    for utt in t.utterances:
        lines.append(f"# speaker = {utt.speaker_role.value}")
        lines.append(f"# start_time = {utt.start_time!r}")
        lines.extend(_token_line(i, tok) for i, tok in enumerate(utt.tokens, 1))
        lines.append("")
    return "\n".join(lines)


# -- slicing -----------------------------------------------------------------

def slice_transcript(
    t: Transcript, start_s: float, end_s: float, role: SpeakerRole
) -> TokenWindow:
    """Tokens of utterances with the given role and start_time in [start, end)."""
    if not (0 <= start_s < end_s):
        raise InvalidSpan(f"invalid span [{start_s}, {end_s})")
    parts = tuple(
        utt.tokens
        for utt in t.utterances
        if utt.speaker_role is role and start_s <= utt.start_time < end_s
    )
    return TokenWindow(t.speaker_id, start_s, end_s, parts)
