"""
Exception hierarchy for the Weyl superalgebra toolkit

Every error carries the CLI exit code it maps to:
1 usage, 2 expression parse, 3 signature validation, 4 mathematical domain.
"""


class WeylError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 4
    kind = 'error'


class UsageError(WeylError):
    """Bad command line or missing input file"""

    exit_code = 1
    kind = 'usage'


class ExpressionError(WeylError, ValueError):
    """An algebra expression could not be turned into an Element"""

    exit_code = 2
    kind = 'parse'


class ExpressionSyntaxError(ExpressionError):
    """Text does not match the expression grammar"""

    def __init__(self, message, position=None, line=None, column=None):
        self.position = position
        self.line = line
        self.column = column
        if column is not None:
            message = f"{message} (at char {position}, col {column})"
        super().__init__(message)


class ExpressionIndexError(ExpressionError):
    """A factor index or exponent lies outside the signature's ranges"""


class SignatureError(WeylError, ValueError):
    """Signature data failed validation"""

    exit_code = 3
    kind = 'signature'


class DomainError(WeylError, ValueError):
    """A mathematical precondition does not hold"""

    exit_code = 4
    kind = 'domain'


class ShapeError(DomainError):
    """Signature shape or argument support is wrong for the requested operation"""


class SignatureMismatchError(DomainError):
    """Element coordinates do not have the signature's length"""


class TruncationTooLargeError(DomainError):
    """A truncation probe exceeds the configured cap on unknowns"""


class MissingTauError(DomainError):
    """A normalization step needs tau but the session has none"""


class InternalConsistencyError(WeylError):
    """A runtime invariant failed; this signals a bug, not bad input"""

    exit_code = 4
    kind = 'internal'
