"""CoNLL-U emission matching the interchange contract.

Document comments ``# speaker_id`` / ``# duration`` / ``# tagger`` come
first; each utterance is one sentence with ``# speaker`` and
``# start_time`` comments, 1-based sequential token ids, and a blank
line terminator. Marker tokens carry ``Marker=Pause`` or ``Marker=Break``
in MISC and keep pos X. Output is byte-stable for a given input.
"""

from __future__ import annotations

from .preprocess import RawDocument


def _token_line(idx, surface, lemma, upos, misc):
    return "\t".join(
        [str(idx), surface, lemma, upos, "_", "_", "_", "_", "_", misc])


def render(doc: RawDocument, tagged, tagger_label: str) -> str:
    """Serialize; ``tagged`` holds one (lemma, upos) list per utterance,
    covering word tokens only, in order."""
    lines = [
        f"# speaker_id = {doc.speaker_id}",
        f"# duration = {doc.duration!r}",
        f"# tagger = {tagger_label}",
    ]
    if not doc.utterances:
        lines.append("")
        return "\n".join(lines)
    for utt, annotations in zip(doc.utterances, tagged):
        lines.append(f"# speaker = {utt.role}")
        lines.append(f"# start_time = {utt.start_time!r}")
        words = iter(annotations)
        for idx, tok in enumerate(utt.tokens, start=1):
            if tok.marker is not None:
                lines.append(_token_line(
                    idx, tok.surface, tok.surface, "X",
                    f"Marker={tok.marker}"))
            else:
                lemma, upos = next(words)
                lines.append(_token_line(idx, tok.surface, lemma, upos, "_"))
        lines.append("")
    return "\n".join(lines)
