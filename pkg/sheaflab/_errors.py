"""Exception hierarchy for `sheaflab`.

Every validation failure is a `SheafLabError` (a `ValueError`) carrying the
offending values in `witness`. Failures that can only arise from a bug in the
library itself derive from `InvariantViolation` instead.
"""

from typing import Any, Tuple

__all__ = (
    "SheafLabError",
    "InvariantViolation",
    "WellDefinednessFailure",
    "MissingEmptyOrTotal",
    "NotClosedUnderUnion",
    "NotClosedUnderIntersection",
    "UnknownPoint",
    "NotAnOpen",
    "NotACover",
    "NotANeighborhood",
    "NotAssociative",
    "NoIdentity",
    "NoInverse",
    "NotCommutative",
    "NotReflexive",
    "NotTransitive",
    "NotHomomorphism",
    "NotMonotone",
    "IdentityNotPreserved",
    "MixedTags",
    "SourceMismatch",
    "MediatingPreconditionFailed",
    "UnknownElement",
    "NotASubobject",
    "MissingSection",
    "MissingRestriction",
    "IdentityLawViolated",
    "CompositionLawViolated",
    "NaturalityViolated",
    "NotAlgebraic",
    "AlreadySet",
    "UnsupportedTag",
    "SizeCap",
    "TargetNotASheaf",
    "PNotInvertible",
    "IncompatibleTarget",
    "TargetNotInSubcategory",
    "NoFactorization",
    "ParseError",
)


class SheafLabError(ValueError):
    """Base class for input and validation errors.

    Args:
        msg: Human readable message.
        *witness: Values that demonstrate the failure (offending elements,
            opens, covers, ...). Stored as a tuple in the `witness`
            attribute.

    Examples:
        >>> from sheaflab import NoInverse, SheafLabError
        >>> err = NoInverse("element `a` has no inverse", "a")
        >>> isinstance(err, SheafLabError), err.witness
        (True, ('a',))
        >>> str(err)
        'element `a` has no inverse'

    """

    witness: Tuple[Any, ...]

    def __init__(self, msg: str, *witness: Any):
        super().__init__(msg)
        self.witness = witness


class InvariantViolation(RuntimeError):
    """An internal self-check failed. Indicates a bug, never bad input."""


class WellDefinednessFailure(InvariantViolation):
    pass


# Spaces.
class MissingEmptyOrTotal(SheafLabError):
    pass


class NotClosedUnderUnion(SheafLabError):
    pass


class NotClosedUnderIntersection(SheafLabError):
    pass


class UnknownPoint(SheafLabError):
    pass


class NotAnOpen(SheafLabError):
    pass


class NotACover(SheafLabError):
    pass


class NotANeighborhood(SheafLabError):
    pass


# Objects and morphisms.
class NotAssociative(SheafLabError):
    pass


class NoIdentity(SheafLabError):
    pass


class NoInverse(SheafLabError):
    pass


class NotCommutative(SheafLabError):
    pass


class NotReflexive(SheafLabError):
    pass


class NotTransitive(SheafLabError):
    pass


class NotHomomorphism(SheafLabError):
    pass


class NotMonotone(SheafLabError):
    pass


class IdentityNotPreserved(SheafLabError):
    pass


class MixedTags(SheafLabError):
    pass


class SourceMismatch(SheafLabError):
    pass


class MediatingPreconditionFailed(SheafLabError):
    pass


class UnknownElement(SheafLabError):
    pass


class NotASubobject(SheafLabError):
    pass


# Presheaves.
class MissingSection(SheafLabError):
    pass


class MissingRestriction(SheafLabError):
    pass


class IdentityLawViolated(SheafLabError):
    pass


class CompositionLawViolated(SheafLabError):
    pass


class NaturalityViolated(SheafLabError):
    pass


class NotAlgebraic(SheafLabError):
    pass


class AlreadySet(SheafLabError):
    pass


# Sheafification.
class SizeCap(SheafLabError):
    pass


class TargetNotASheaf(SheafLabError):
    pass


class PNotInvertible(SheafLabError):
    pass


# Reflections.
class IncompatibleTarget(SheafLabError):
    pass


class TargetNotInSubcategory(SheafLabError):
    pass


class NoFactorization(SheafLabError):
    pass


# Input.
class ParseError(SheafLabError):
    pass


class UnsupportedTag(ParseError):
    pass
