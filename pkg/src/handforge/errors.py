"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for engine failures."""


class InvariantViolation(EngineError, ValueError):
    """A structural invariant failed; the message names the invariant."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DimensionMismatch(EngineError, ValueError):
    """An array had the wrong shape; message reports expected vs found."""

    def __init__(self, what: str, expected, found):
        self.what = what
        self.expected = expected
        self.found = found
        super().__init__(f"{what}: expected {expected}, found {found}")


class AssetError(EngineError, ValueError):
    """A catalog entry is missing or malformed; message names the asset."""
