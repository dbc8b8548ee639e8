"""Exception hierarchy shared by every module."""


class QuatLinAlgError(Exception):
    """Base class for all errors raised by quatjordan."""


class ParseError(QuatLinAlgError, ValueError):
    """Input document does not match the matrix/spec JSON schema."""


class ShapeError(QuatLinAlgError, ValueError):
    """Array or matrix has the wrong dimensions."""


class NotJCommuting(QuatLinAlgError):
    """Complex matrix does not commute with the quaternionic structure J."""


class Singular(QuatLinAlgError):
    """Matrix is not invertible at the configured rank tolerance."""


class DuplicateModulus(QuatLinAlgError):
    """Two congruences share the same modulus root."""


class NoConvergence(QuatLinAlgError):
    """Iterative root finder did not reach its residual tolerance."""


class NonRealCoefficients(QuatLinAlgError):
    """Characteristic polynomial came out with non-negligible imaginary parts."""


class StructureViolation(QuatLinAlgError):
    """Computed spectrum breaks conjugate pairing or even real multiplicity."""


class NotAnEigenvalue(QuatLinAlgError):
    """Requested value is not in the spectrum."""


class NotNilpotent(QuatLinAlgError):
    """Operator expected to be nilpotent is not."""


class VerificationFailed(QuatLinAlgError):
    """A built-in residual check exceeded its tolerance."""


class GenerationFailed(QuatLinAlgError):
    """Test-instance generator exhausted its retries."""
