"""Exception types shared across the package."""


class EmbeddingError(ValueError):
    """A rotation system or edge list does not describe a valid embedding."""


class PreconditionError(ValueError):
    """An operation was called on an input outside its domain."""


class NotFound(LookupError):
    """An exhaustive search finished without a witness."""


class ResourceExhausted(RuntimeError):
    """A search or solver hit its configured size or node budget."""


class FormatError(ValueError):
    """Malformed ``.emb`` or ``.dec`` text; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
