class BridgeError(Exception):
    """Base for bridge failures; ``code`` feeds the error[<Code>] line."""

    code = "Bridge"

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class ParseError(BridgeError):
    code = "Parse"


class ConfigError(BridgeError):
    code = "Config"


class ModelLoadError(BridgeError):
    code = "ModelLoad"
