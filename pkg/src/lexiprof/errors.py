"""Exception hierarchy shared across the package.

Every error carries a stable ``code`` used by the CLI for its
machine-parsable diagnostics (``error[<code>]: message``).
"""


class LexiprofError(Exception):
    """Base class for all package errors."""

    code = "Error"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# ingest

class ParseError(LexiprofError):
    code = "ParseError"


class MalformedTimeMarker(ParseError):
    code = "MalformedTimeMarker"


class MissingSpeakerPrefix(ParseError):
    code = "MissingSpeakerPrefix"


class NonMonotonicTime(ParseError):
    code = "NonMonotonicTime"


class MissingMetadata(ParseError):
    code = "MissingMetadata"


class InvalidUPOS(ParseError):
    code = "InvalidUPOS"


class InvalidSpan(LexiprofError):
    code = "InvalidSpan"


# annotate

class LexiconLoadError(LexiprofError):
    code = "LexiconLoadError"


class PassthroughOnUntagged(LexiprofError):
    code = "PassthroughOnUntagged"


# profile

class UntaggedInput(LexiprofError):
    code = "UntaggedInput"


class InvalidConfig(LexiprofError):
    code = "InvalidConfig"


class EmptyConstructionWindow(LexiprofError):
    code = "EmptyConstructionWindow"


# metrics

class MissingLemmas(LexiprofError):
    code = "MissingLemmas"


class SpanOverlap(LexiprofError):
    code = "SpanOverlap"


# synth

class InvalidModel(LexiprofError):
    code = "InvalidModel"
