# -*- coding: utf-8 -*-
"""
    captl.exceptions
    ~~~~~~~~~~~~~~~~

    Errors and warnings raised by the toolkit. Every error carries the
    exit code the command line uses when it reaches the top level.

    :license: BSD, see LICENSE for more details.
"""


class CaptlError(Exception):
    """Base class for all errors raised by captl."""
    exit_code = 2


class ValidationError(CaptlError):
    """An input document or object violates an invariant."""
    exit_code = 1


class ParseError(ValidationError):
    """A document could not be parsed. `line` and `column` are 1-based
    and may be None when the position is unknown (e.g. unexpected end
    of input).
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = 'line %s, column %s: %s' % (line, column, message)
        super(ParseError, self).__init__(message)
        self.line = line
        self.column = column


class UnknownPropositionError(ValidationError):
    pass


class StateError(ValidationError):
    """A state index outside the model, or outside a vector's domain."""


class RequirementError(ValidationError):
    """A CAPTL requirement is malformed. `violations` lists every
    problem found, one string each.
    """

    def __init__(self, message, violations=()):
        super(RequirementError, self).__init__(message)
        self.violations = list(violations)


class SynthesisError(CaptlError):
    pass


class ConvergenceError(SynthesisError):
    """Value iteration hit its iteration cap."""


class ProductError(SynthesisError):
    """The system-requirement product is not a DTMC, or could not be
    built because a strategy is missing."""


class IncompatibleProtocol(SynthesisError):
    pass


class OracleError(CaptlError):
    pass


class DeadlockWarning(UserWarning):
    pass


class BoundaryWarning(UserWarning):
    pass


class NondeterminismWarning(UserWarning):
    pass
