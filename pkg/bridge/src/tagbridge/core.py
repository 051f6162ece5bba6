"""Configuration and the single tagging operation."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .backends import resolve_backend
from .conllu_out import render
from .errors import ConfigError
from .preprocess import parse_raw

DEFAULT_MODEL = "nl_core_news_lg"


@dataclass(frozen=True)
class BridgeConfig:
    input_path: Path
    output_path: Path
    model: str = DEFAULT_MODEL
    batch_size: int = 32

    def __post_init__(self):
        object.__setattr__(self, "input_path", Path(self.input_path))
        object.__setattr__(self, "output_path", Path(self.output_path))
        if self.input_path.resolve() == self.output_path.resolve():
            raise ConfigError("input and output paths must differ")
        if self.batch_size < 1:
            raise ConfigError("batch size must be >= 1")
        if not self.model:
            raise ConfigError("model identifier must be non-empty")


def tag_file(cfg: BridgeConfig) -> str:
    """Tag one raw transcript into CoNLL-U and write it to the output path.

    Markers never reach the tagging model: each utterance's word tokens
    are annotated as a batch and the results are re-inserted around the
    marker positions. Returns the rendered document.
    """
    text = cfg.input_path.read_text(encoding="utf-8")
    doc = parse_raw(text)
    backend = resolve_backend(cfg.model, cfg.batch_size)
    word_batches = [
        [tok.surface for tok in utt.tokens if tok.marker is None]
        for utt in doc.utterances
    ]
    tagged = backend.tag(word_batches)
    out = render(doc, tagged, f"{backend.id}@{backend.version}")
    cfg.output_path.write_text(out, encoding="utf-8")
    return out
