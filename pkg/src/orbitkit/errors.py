"""Exception hierarchy.

Input problems derive from ``ValueError`` as well, so callers that only care
about "bad input" can catch that.  The ``*Mismatch``/``*Violation`` errors
signal an internal bug: the statements they guard are theorems.
"""


class OrbitKitError(Exception):
    pass


class DimensionMismatch(OrbitKitError, ValueError):
    pass


class NotTwoDivisible(OrbitKitError, ValueError):
    pass


class NotTwoRootable(OrbitKitError, ValueError):
    pass


class InfiniteGroup(OrbitKitError, ValueError):
    pass


class IncompatibleModuli(OrbitKitError, ValueError):
    pass


class InvalidCocycle(OrbitKitError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class InvalidSkewBihom(OrbitKitError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class AsymmetricPhi(OrbitKitError, ValueError):
    pass


class CenterMismatch(OrbitKitError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class EvenPrime(OrbitKitError, ValueError):
    pass


class NotAHomomorphism(OrbitKitError, ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ClassTooLarge(OrbitKitError, ValueError):
    pass


class BudgetExceeded(OrbitKitError, ValueError):
    pass


class InvalidSpec(OrbitKitError, ValueError):
    """Group-spec ingestion failure; ``path`` locates the offending field."""

    def __init__(self, path, msg):
        super().__init__(f"{path}: {msg}" if path else msg)
        self.path = path


class IdentityViolation(OrbitKitError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class InternalPresentationError(OrbitKitError):
    pass


class NotPerfectSquare(OrbitKitError):
    pass


class CountMismatch(OrbitKitError):
    pass


class FormulaMismatch(OrbitKitError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class IdealViolation(OrbitKitError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class TraceMismatch(OrbitKitError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class DegenerateSpectrum(OrbitKitError):
    pass


class NoBijection(OrbitKitError):
    pass
