"""Exception hierarchy shared across the package."""


class NDPMError(Exception):
    """Base class for every error raised by this package."""


class AlphabetError(NDPMError, ValueError):
    pass


class EmptyGraphError(NDPMError, ValueError):
    pass


class EmptyWordError(NDPMError, ValueError):
    pass


class EncodingError(NDPMError, ValueError):
    pass


class CapacityError(NDPMError, RuntimeError):
    pass


class ParseError(NDPMError, ValueError):
    """Malformed machine, graph or pseudo-configuration text.

    Carries the offending file, line number and token so the CLI can point at
    the problem.
    """

    def __init__(self, message: str, *, source: str = "<string>", line: int | None = None,
                 token: str | None = None):
        self.source = source
        self.line = line
        self.token = token
        where = source if line is None else f"{source}:{line}"
        detail = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{where}: {message}{detail}")
