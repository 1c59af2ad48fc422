"""Exception types shared across the package.

``SchemaError`` marks malformed input data; ``PreconditionError`` and its
subclasses mark mathematically invalid requests (the operation is fine, the
arguments are not).  ``ReductionError`` signals that the certificate search
exhausted every admissible choice, which indicates a bug or a genuinely
pathological input rather than bad arguments.
"""


class SchemaError(ValueError):
    """Input data does not match the expected JSON/text schema."""


class PreconditionError(ValueError):
    """A mathematical precondition of the requested operation is violated."""


class SectorMismatchError(PreconditionError):
    """Untwisted and twisted objects were mixed in one operation."""


class BosonIndexError(PreconditionError):
    """Boson index outside 1..rank."""


class ModeRangeError(PreconditionError):
    """Mode index outside the sector's index set (parity or sign)."""


class IsotropicTopError(PreconditionError):
    """Top entry of a lambda sequence is nonzero but pairs to zero with itself.

    The resulting candidate type would have a vanishing last eigenvalue,
    which the Whittaker-type definition forbids; callers must handle this
    case explicitly instead of silently accepting it.
    """


class HighestWeightError(PreconditionError):
    """Every positive-index entry of the lambda sequence vanishes.

    The module is then an ordinary highest-weight module and the quadratic
    reduction does not apply.
    """


class NonSquareError(PreconditionError):
    """An exact square root was required but does not exist in Q(i)."""


class ReductionError(RuntimeError):
    """All admissible reduction choices produced zero; should not happen."""


class NumericFailure(RuntimeError):
    """A numeric solve or an exact cross-check missed its target."""
