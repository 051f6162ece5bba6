"""Tagging backends.

A backend annotates pre-tokenised utterances: it receives lists of word
surfaces (markers are shielded upstream and never reach it) and returns
one (lemma, upos) pair per word. Two implementations:

- ``lexicon:<path>`` looks words up in a TSV table (surface, UPOS,
  lemma per line). Fully offline and deterministic; the file's SHA-256
  digest is the pinned version.
- any other identifier is treated as a spaCy pipeline name and loaded
  lazily; the installed model's version string is the pin. Tokens are
  passed through a premade Doc so the pipeline never re-tokenises.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import ModelLoadError

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})


class LexiconBackend:
    def __init__(self, path: str | Path):
        path = Path(path)
        try:
            text = path.read_bytes()
        except OSError as exc:
            raise ModelLoadError(f"cannot read lexicon {path}: {exc}") from None
        self.id = f"lexicon:{path.name}"
        self.version = "sha256:" + hashlib.sha256(text).hexdigest()[:12]
        self._table = {}
        for lineno, line in enumerate(
                text.decode("utf-8").splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise ModelLoadError(
                    f"lexicon line {lineno}: expected 3 tab-separated "
                    f"fields, got {len(fields)}")
            surface, upos, lemma = (f.strip() for f in fields)
            if upos not in UPOS_TAGS:
                raise ModelLoadError(
                    f"lexicon line {lineno}: unknown UPOS {upos!r}")
            if not surface or not lemma:
                raise ModelLoadError(
                    f"lexicon line {lineno}: empty surface or lemma")
            self._table[surface] = (lemma, upos)
        for surface, value in list(self._table.items()):
            self._table.setdefault(surface.casefold(), value)

    def tag(self, utterances):
        out = []
        for words in utterances:
            tagged = []
            for word in words:
                hit = self._table.get(word) or self._table.get(word.casefold())
                tagged.append(hit if hit else (word, "X"))
            out.append(tagged)
        return out


class SpacyBackend:
    def __init__(self, model: str, batch_size: int = 32):
        try:
            import spacy
        except ImportError:
            raise ModelLoadError(
                f"model {model!r} needs spacy, which is not installed; "
                "use a lexicon:<path> model for offline tagging") from None
        try:
            self._nlp = spacy.load(model)
        except OSError as exc:
            raise ModelLoadError(f"cannot load model {model!r}: {exc}") \
                from None
        self.id = model
        self.version = self._nlp.meta.get("version", "unversioned")
        self._batch_size = batch_size
        self._vocab = self._nlp.vocab

    def tag(self, utterances):
        from spacy.tokens import Doc

        docs = self._nlp.pipe(
            (Doc(self._vocab, words=list(words)) for words in utterances),
            batch_size=self._batch_size)
        return [
            [(tok.lemma_ or tok.text, tok.pos_ or "X") for tok in doc]
            for doc in docs
        ]


def resolve_backend(model: str, batch_size: int = 32):
    if model.startswith("lexicon:"):
        return LexiconBackend(model[len("lexicon:"):])
    return SpacyBackend(model, batch_size)
