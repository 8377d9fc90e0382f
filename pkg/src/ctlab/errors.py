"""Exception hierarchy shared by all modules."""


class CtlabError(Exception):
    """Base class for errors raised by ctlab."""


class InputError(CtlabError, ValueError):
    """Malformed or out-of-contract input."""


class ResourceError(CtlabError):
    """A configured cap (degree, order, prime search) was exceeded."""


class ConsistencyError(CtlabError, AssertionError):
    """An internal invariant failed; indicates a bug, not bad input."""


class SpecSyntaxError(InputError):
    """Group spec failed to parse."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
