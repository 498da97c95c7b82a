"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed external text; carries the 1-based position of the offense."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LimitError(ValueError):
    """Requested size exceeds the configured exhaustive-enumeration limit."""


class MembershipError(ValueError):
    """Input object is not a member of the family an operation requires."""
