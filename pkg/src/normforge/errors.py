"""Exception hierarchy."""


class NormForgeError(Exception):
    pass


# groups
class SpecError(NormForgeError, ValueError):
    pass


class NotAPGroup(NormForgeError, ValueError):
    pass


class NotNormal(NormForgeError, ValueError):
    pass


class NoSuchElement(NormForgeError, ValueError):
    pass


class BoundExceeded(NormForgeError, ValueError):
    pass


# ring arithmetic
class MixedContext(NormForgeError, ValueError):
    pass


class ContextMismatch(NormForgeError, ValueError):
    pass


class UnknownVariable(NormForgeError, KeyError):
    pass


class NonConstantPhiPart(NormForgeError, ValueError):
    pass


class DimensionMismatch(NormForgeError, ValueError):
    pass


# verification
class VerificationFailure(NormForgeError, AssertionError):
    pass


class NormObstruction(VerificationFailure):
    pass


class CompatibilityFailure(VerificationFailure):
    pass


class CocycleLawFailure(VerificationFailure):
    pass


class InvarianceFailure(VerificationFailure):
    pass


class NormFailure(VerificationFailure):
    pass


class NonzeroCocycleOnTrivialGroup(VerificationFailure):
    pass


# method / library
class BadQuotient(NormForgeError, ValueError):
    pass


class NoSolution(NormForgeError):
    pass


class QuotientElementaryAbelian(NormForgeError, ValueError):
    pass


class UnsupportedBaseGroup(NormForgeError):
    pass
