"""Shared exception types; the CLI maps these onto its exit-code contract."""


class ParseError(ValueError):
    """Malformed textual input (CLI exit code 1)."""


class DomainError(ValueError):
    """Domain precondition violated (CLI exit code 2)."""


class RationalInputError(DomainError):
    """A rational/parabolic input where an irrational one is required."""


class PrecisionExhausted(DomainError):
    """An interval input ran out of precision; carries the largest safe count."""

    def __init__(self, message: str, safe_terms: int):
        super().__init__(message)
        self.safe_terms = safe_terms


class NotLoxodromicError(DomainError):
    """Isometry is parabolic or elliptic where a loxodromic one is required."""


class NotInGroupError(DomainError):
    """Matrix fails the group membership conditions (determinant/congruence)."""
