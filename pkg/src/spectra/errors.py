"""Exception types for structure validation and resource limits."""


class SpectraError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SpectraError):
    """A candidate structure violates one of its defining axioms."""


class NotClosedError(ValidationError):
    """A Cayley table entry is out of range (or the table is malformed)."""


class NoIdentityError(ValidationError):
    """The declared identity index does not act as a two-sided identity."""


class NotLatinError(ValidationError):
    """A row or column of the Cayley table is not a permutation."""


class NotAssociativeError(ValidationError):
    """Associativity fails; `witness` holds the offending triple (i, j, k)."""

    def __init__(self, message: str, witness: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.witness = witness


class InvalidInvariantsError(ValidationError):
    """Additive invariants are empty or contain an entry below 2."""


class MalformedVectorError(ValidationError):
    """A structure-constant vector has the wrong shape or out-of-range entries."""


class IncompatibleOrderError(ValidationError):
    """The additive order of sc[i][j] does not divide gcd(d_i, d_j)."""

    def __init__(self, message: str, position: tuple[int, int], order: int, divisor: int):
        super().__init__(message)
        self.position = position
        self.order = order
        self.divisor = divisor


class NotNormalError(ValidationError):
    """Quotient requested by a non-normal subgroup; message names a witness."""


class NotAbelianError(ValidationError):
    """An operation requiring an abelian group received a non-abelian one."""


class NotClass2Error(ValidationError):
    """The group is not nilpotent of class <= 2."""


class NotNilpotentError(ValidationError):
    """The ring is not nilpotent (its power chain stabilizes above zero)."""


class OrderOverflowError(SpectraError):
    """A construction would exceed the configured order cap."""


class UnknownNameError(SpectraError):
    """Catalog name not recognized."""


class ParamOutOfRangeError(SpectraError):
    """Catalog or family parameters outside the supported desk-scale bounds."""


class CapExceededError(SpectraError):
    """An enumeration family exceeds the configured order cap."""


class BudgetExceededError(SpectraError):
    """A sweep's candidate count exceeds the budget; `candidates` has the count."""

    def __init__(self, message: str, candidates: int):
        super().__init__(message)
        self.candidates = candidates


class EmptyFamilyError(SpectraError):
    """A spectrum was requested over an empty stream of structures."""
