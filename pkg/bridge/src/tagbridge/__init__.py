"""Raw interview transcripts -> tagged CoNLL-U, via a POS pipeline."""

from .backends import LexiconBackend, SpacyBackend, resolve_backend
from .core import BridgeConfig, DEFAULT_MODEL, tag_file
from .errors import BridgeError, ConfigError, ModelLoadError, ParseError
from .preprocess import RawDocument, RawToken, RawUtterance, parse_raw

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
