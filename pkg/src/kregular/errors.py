"""Exception hierarchy.

Every error raised by the package derives from :class:`KRegularError` so
callers (and the command line front end) can tell library failures apart
from programming errors.
"""


class KRegularError(Exception):
    """Base class for all package errors."""


class InvalidMatrix(KRegularError, ValueError):
    """Raised for empty, non-2D or non-finite matrix input."""


class NotHermitian(KRegularError, ValueError):
    pass


class NotPSD(KRegularError, ValueError):
    pass


class DimensionMismatch(KRegularError, ValueError):
    pass


class NotContraction(KRegularError, ValueError):
    """Raised when an operator norm exceeds ``1 + contraction_tol``.

    ``index`` identifies the offending factor (1-based, as in A_1..A_k) and
    ``t`` the boundary angle when the factor came from a polynomial.
    """

    def __init__(self, msg, index=None, norm=None, t=None):
        super().__init__(msg)
        self.index = index
        self.norm = norm
        self.t = t


class NotUnitary(KRegularError, ValueError):
    pass


class NotCommuting(KRegularError, ValueError):
    def __init__(self, msg, i=None, j=None, norm=None):
        super().__init__(msg)
        self.i = i
        self.j = j
        self.norm = norm


class InvalidPartition(KRegularError, ValueError):
    pass


class InvalidPermutation(KRegularError, ValueError):
    pass


class PermutationExplosion(KRegularError, ValueError):
    pass


class OutsideClosedDisk(KRegularError, ValueError):
    pass


class SingularResolvent(KRegularError, ArithmeticError):
    pass


class NotProperContraction(KRegularError, ValueError):
    pass


class NumericalBreakdown(KRegularError, ArithmeticError):
    """Raised when a quantity that is exact in theory drifts past tolerance."""
