"""Exception types shared across the package."""


class CrystalCountError(Exception):
    """Base class for all package-specific errors."""


class NotPrime(CrystalCountError):
    """Characteristic is not a prime number."""


class EvenCharacteristic(CrystalCountError):
    """Characteristic 2 is rejected everywhere (halving of B^2 and the
    quadratic-form normal forms both require p odd)."""


class AmbientMismatch(CrystalCountError):
    """Operands live in different ambient spaces or field extensions."""


class SingularOperator(CrystalCountError):
    """Operator matrix is not invertible."""


class NotCharacteristic(CrystalCountError):
    """Subspace fails the characteristic-subspace conditions."""


class NotStrict(CrystalCountError):
    """Subspace is characteristic but its Frobenius iterates do not span,
    or the canonical line is not one-dimensional."""


class RootUnavailable(CrystalCountError):
    """The normalization equation has no solution in the working field."""


class RootFieldTooSmall(CrystalCountError):
    """The working field does not contain the required roots of unity."""


class DescentFailed(CrystalCountError):
    """No field extension within the configured cap makes the fixed-point
    space of the semilinear operator full-dimensional."""


class ModelInconsistent(CrystalCountError):
    """Structure constants produced a model violating a consistency check
    (non-isotropic image vector, degenerate or neutral recovered form)."""


class BudgetExceeded(CrystalCountError):
    """An exhaustive enumeration would exceed the configured budget."""


class InvalidM(CrystalCountError):
    """p^m + 1 does not divide p^sigma0 + 1, so (sigma0, m) is not a valid
    invariant pair."""


class InvalidBField(CrystalCountError):
    """Vector fails the B-field membership condition."""


class DistinguishedVectorInside(CrystalCountError):
    """The distinguished isotropic vector lies in the subspace, so the
    datum is outside the range of the extension bijection."""


class ZeroLambda(CrystalCountError):
    """The scaling unit of a power twist must be nonzero."""
