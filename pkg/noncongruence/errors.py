"""
Exceptions raised by the noncongruence package.

All of them derive from builtin exception types, so callers that only care
about the broad category can keep catching ``ValueError`` and friends.
"""

__all__ = ['PermutationError', 'InvariantViolation', 'LabelError',
           'RecordSchemaError', 'PrecisionError', 'LatticeError']


class PermutationError(ValueError):
    """ Invalid permutation data (images, degrees or cycle notation). """


class InvariantViolation(RuntimeError):
    """ An internal invariant does not hold; this indicates a bug. """


class LabelError(ValueError):
    """
    Malformed database label.

    Parameters
    ----------
    msg : str
        Description of the problem.
    position : int
        Zero-based character offset at which parsing failed.
    """

    def __init__(self, msg, position):
        super().__init__("{} (at position {})".format(msg, position))
        self.position = position


class RecordSchemaError(ValueError):
    """
    A serialised record does not satisfy the record schema.

    Parameters
    ----------
    msg : str
        Description of the problem.
    index : int, optional
        Index of the offending record in the file.
    """

    def __init__(self, msg, index=None):
        if index is not None:
            msg = "record {}: {}".format(index, msg)
        super().__init__(msg)
        self.index = index


class PrecisionError(ArithmeticError):
    """ The working precision does not support the requested computation. """


class LatticeError(ArithmeticError):
    """ A set of periods does not determine a lattice. """
