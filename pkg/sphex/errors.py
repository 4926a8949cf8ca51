"""Exception hierarchy for sphex.

Errors fall in two families that the command line maps to exit codes:
`UsageError` (bad input, caps, scope; exit 1) and `VerificationError`
(bundled or computed data failed a check; exit 2).
"""


class SphexError(Exception):
    """Base class for every error raised by sphex."""


class UsageError(SphexError):
    """The request itself cannot be served."""


class VerificationError(SphexError):
    """Data failed an exact consistency check."""


class CapExceeded(UsageError):
    """A group or lattice grew past its configured cap."""


class DegreeMismatch(UsageError):
    """Permutations of different degrees were combined."""


class NotNormal(UsageError):
    """A quotient was requested by a subgroup that is not normal."""


class SizeLimit(UsageError):
    """Backtracking isomorphism was asked for too large a group."""


class NotCoprime(UsageError):
    """A Galois exponent shares a factor with the conductor."""


class ParseError(UsageError):
    """A group, number or table file could not be parsed."""


class ScopeViolation(UsageError):
    """A fixture-specific rule was invoked for a group it does not cover."""


class UnknownName(UsageError):
    """A module, class or subgroup label does not exist."""


class OrthogonalityFailure(VerificationError):
    """Character rows are not orthonormal or degrees do not sum to |G|."""


class ClassMismatch(VerificationError):
    """Table classes do not match the computed conjugacy classes."""


class NotAnIndicator(VerificationError):
    """A Frobenius-Schur sum was not -1, 0 or +1."""


class NotIntegral(VerificationError):
    """A value that must be an integer is not."""


class WitnessFailure(VerificationError):
    """An Oliver witness chain did not re-verify."""


class TraceFailure(VerificationError):
    """A rule application did not re-verify."""


class CacheCorrupt(VerificationError):
    """A cached lattice failed verification on load."""
