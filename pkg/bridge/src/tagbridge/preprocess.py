"""Raw interview transcript reader.

The raw format: an optional ``#speaker-id: <id>`` header, ``[HH:MM:SS]``
time markers, and utterance lines prefixed ``INT:`` (interviewer) or
``SPK:`` (interviewee). Ellipses (three or more dots, or the single
ellipsis character) become PAUSE marker tokens; a standalone run of
hyphens or a word's trailing hyphen becomes a BREAK marker after the
word stem. Sentence punctuation at token edges is stripped and tokens
that become empty are dropped. Utterances inherit the most recent time
marker; the document duration is the largest marker seen.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

PAUSE = "PAUSE"
BREAK = "BREAK"

_HEADER_PREFIX = "#speaker-id:"
_TIME_RE = re.compile(r"^\[(\d{2}):(\d{2}):(\d{2})\]$")
_ELLIPSIS_RE = re.compile(r"(\.{3,}|…)")
_EDGE_PUNCT = ".,!?;:()\"'«»„“”‘’"
_ROLES = ("SPK", "INT")


@dataclass(frozen=True)
class RawToken:
    surface: str
    # "Pause" / "Break" for marker tokens, None for words
    marker: str | None = None


@dataclass(frozen=True)
class RawUtterance:
    role: str
    start_time: float
    tokens: tuple[RawToken, ...]


@dataclass(frozen=True)
class RawDocument:
    speaker_id: str
    utterances: tuple[RawUtterance, ...] = ()
    duration: float = 0.0

    def word_count(self) -> int:
        return sum(
            1 for u in self.utterances for t in u.tokens if t.marker is None)


def _word_tokens(word):
    word = word.strip(_EDGE_PUNCT)
    if not word:
        return
    if set(word) == {"-"}:
        yield RawToken(BREAK, "Break")
        return
    if word.endswith("-"):
        stem = word.rstrip("-")
        if stem:
            yield RawToken(stem)
        yield RawToken(BREAK, "Break")
        return
    yield RawToken(word)


def _line_tokens(text):
    for part in _ELLIPSIS_RE.split(text):
        if not part:
            continue
        if _ELLIPSIS_RE.fullmatch(part):
            yield RawToken(PAUSE, "Pause")
            continue
        for word in part.split():
            yield from _word_tokens(word)


def parse_raw(text: str) -> RawDocument:
    speaker_id = "unknown"
    utterances = []
    current = 0.0
    last_marker = None
    duration = 0.0
    seen_content = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            if not line.startswith(_HEADER_PREFIX):
                raise ParseError(f"unrecognised comment line {line!r}", lineno)
            if seen_content or last_marker is not None:
                raise ParseError("header line allowed only before content",
                                 lineno)
            speaker_id = line[len(_HEADER_PREFIX):].strip() or "unknown"
            continue
        if line.startswith("["):
            m = _TIME_RE.match(line)
            if not m:
                raise ParseError(
                    f"time marker must be [HH:MM:SS], got {line!r}", lineno)
            h, minute, second = (int(g) for g in m.groups())
            if minute > 59 or second > 59:
                raise ParseError(
                    f"minutes/seconds out of range in {line!r}", lineno)
            t = float(h * 3600 + minute * 60 + second)
            if last_marker is not None and t < last_marker:
                raise ParseError(
                    f"time marker {line!r} precedes an earlier marker", lineno)
            last_marker = t
            current = t
            duration = max(duration, t)
            continue
        prefix, sep, rest = line.partition(":")
        if prefix not in _ROLES or not sep:
            raise ParseError(
                f"expected 'INT:' or 'SPK:' prefix, got {line!r}", lineno)
        seen_content = True
        tokens = tuple(_line_tokens(rest.strip()))
        if tokens:
            utterances.append(RawUtterance(prefix, current, tokens))

    return RawDocument(speaker_id, tuple(utterances), duration)
