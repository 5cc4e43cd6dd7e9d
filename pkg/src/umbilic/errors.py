"""Exception hierarchy.

Two base classes drive the CLI/service error mapping: ``InputError`` for
malformed or out-of-domain input (CLI exit code 2, HTTP 400) and
``PreconditionError`` for violated mathematical hypotheses on otherwise
well-formed input (CLI exit code 3, HTTP 409).
"""


class UmbilicError(Exception):
    """Base class for all errors raised by this package."""


class InputError(UmbilicError):
    """Malformed input or domain error (exit code 2)."""


class PreconditionError(UmbilicError):
    """Mathematical precondition violated (exit code 3)."""


class DimensionMismatch(InputError):
    pass


class NonSymmetric(InputError):
    pass


class NotSpacelike(PreconditionError):
    pass


class GramMismatch(PreconditionError):
    pass


class HypothesisViolation(PreconditionError):
    pass


class OnAxis(InputError):
    pass


class PointAtInfinity(InputError):
    pass


class NotUnitSpacelike(InputError):
    pass


class NotBlockIsometry(PreconditionError):
    pass


class AtCenter(InputError):
    pass


class DependentGenerators(InputError):
    pass


class NotSubstantial(PreconditionError):
    pass


class DimMismatch(InputError):
    pass


class NotCongruent(PreconditionError):
    pass


class NonPositiveInvariant(InputError):
    pass


class InfeasibleInvariant(InputError):
    pass


class MalformedSpec(InputError):
    pass


class WrongContext(InputError):
    pass
