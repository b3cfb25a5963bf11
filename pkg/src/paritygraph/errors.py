"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (unknown ids, bad files, ...)."""


class CapabilityError(RuntimeError):
    """Input exceeds a documented size bound of an exhaustive algorithm."""


class ResourceLimitError(RuntimeError):
    """An explicit enumeration budget was exhausted."""

    def __init__(self, message: str, limit: int):
        super().__init__(message)
        self.limit = limit


class ContractError(RuntimeError):
    """A caller violated an operation's stated precondition."""


class FixtureError(RuntimeError):
    """A catalog fixture failed one of its transcription self-checks."""
