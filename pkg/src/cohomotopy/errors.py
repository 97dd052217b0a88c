"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (bad text, unknown
variables, unsupported rings) and :class:`VerificationError` (an exact
mathematical check failed). The CLI maps them to exit codes 2 and 1.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class InputError(AlgebraError, ValueError):
    pass


class VerificationError(AlgebraError):
    """An exact identity that a witness or construction promised does not hold."""


class PolySyntaxError(InputError):
    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset
        self.text = text


class UnknownVariable(InputError):
    pass


class NotMonic(InputError):
    pass


class RingMismatch(InputError):
    pass


class UnsupportedRing(InputError):
    pass


class UnknownSquare(InputError):
    pass


class NotSurjective(InputError):
    pass


class NotAUnit(InputError):
    pass


class NotSL(VerificationError):
    pass


class GlueMismatch(VerificationError):
    def __init__(self, message: str, right_image=None, left_image=None):
        super().__init__(message)
        self.right_image = right_image
        self.left_image = left_image


class NotALoop(VerificationError):
    def __init__(self, message: str, endpoint=None):
        super().__init__(message)
        self.endpoint = endpoint


class BoundaryMismatch(VerificationError):
    def __init__(self, condition: str, detail: str = ""):
        msg = f"boundary condition failed: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.condition = condition


class NotUnimodular(VerificationError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class NotACompletion(VerificationError):
    pass


class ShapeError(VerificationError):
    pass


class SplitInvalid(VerificationError):
    pass


class NotStablyElementary(VerificationError):
    pass


class AssumptionUnmet(VerificationError):
    pass


class NonConvergent(VerificationError):
    pass
