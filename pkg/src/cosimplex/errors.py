"""Exception types shared by every module.

The command-line front end maps these onto exit codes, so each failure
category gets its own class.
"""


class CosimplexError(Exception):
    """Base class for all package errors."""


class ValidationError(CosimplexError, ValueError):
    """A structure failed one of its defining laws.

    ``law`` names the first failing identity, e.g. ``"d^1 d^0 = d^0 d^0 on X^0"``.
    """

    def __init__(self, message, law=None):
        super().__init__(message)
        self.law = law


class DegreeError(CosimplexError, ValueError):
    """A degree lies outside the range a truncated object can answer for."""


class CapExceeded(CosimplexError, RuntimeError):
    """An enumeration or closure did not finish within its budget."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class HypothesisFailed(CosimplexError, ValueError):
    """Input does not satisfy the hypotheses an operation requires."""


class NotATorsor(HypothesisFailed):
    pass


class InfiniteGroup(CosimplexError, ValueError):
    """Brute-force enumeration was asked to list an infinite group."""
