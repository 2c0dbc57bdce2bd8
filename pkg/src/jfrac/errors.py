"""Exception types shared across the package."""


class JfracError(Exception):
    """Base class for package-specific failures."""


class NonConvergent(JfracError):
    """A series did not meet its stopping rule within the term budget."""

    def __init__(self, message, terms_used=None, last_partial=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.last_partial = last_partial


class PoleInDenominator(JfracError):
    """A lower parameter of a hypergeometric-type series makes a term undefined."""


class GammaPole(JfracError):
    """Gamma was requested at a nonpositive integer."""


class DomainError(JfracError):
    """An argument lies outside the region where the definition applies."""


class DegreeMismatch(JfracError):
    """Two truncated series with different truncation orders were combined."""


class NonRegular(JfracError):
    """A Hankel determinant vanished, so the J-fraction recursion breaks down."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InvalidParams(JfracError):
    """Family parameters violate a stated admissibility condition."""


class UnknownTheorem(JfracError):
    """A verification id that is not in the registry."""


class UnsupportedTilde(JfracError):
    """The requested family has no twisted companion series."""

class Unsupported(JfracError):
    """The requested closed form is not available for this family."""
