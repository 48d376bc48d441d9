"""Exception hierarchy shared by all expann modules."""


class ExpannError(Exception):
    """Base class for all library-specific failures."""


class OutOfWindowError(ExpannError):
    """A grid lookup referenced an index outside the sample window."""


class EmptyWindowError(ExpannError):
    """A difference operator shrank the sample window to nothing."""


class DenominatorZeroError(ExpannError):
    """A quotient-based estimate hit a (near-)zero denominator."""


class InvalidCoshError(ExpannError):
    """A cosh estimate cannot be inverted to an admissible frequency."""


class InvalidParameterError(ExpannError):
    """A level parameter left the domain where refinement is defined."""


class SingularRuleError(ExpannError):
    """The insertion-rule system is singular for the given parameter."""


class TooShortError(ExpannError):
    """Input sequence is too short for the requested stencil."""


class FileFormatError(ExpannError):
    """An input file does not match the documented schema."""
