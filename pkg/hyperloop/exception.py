from typing import Optional
import logging

from .status import ExitCode

logger = logging.getLogger(__name__)


class HyperloopError(Exception):
    pass


class UsageError(HyperloopError):
    pass


class PreconditionError(HyperloopError):
    pass


class InvalidType(UsageError):
    pass


class NotAnAutomorphism(UsageError):
    pass


class DegreeOutOfRange(UsageError):
    pass


class ZeroEvaluationPoint(UsageError):
    pass


class NotSl2(UsageError):
    pass


class NotHighestLWeight(UsageError):
    pass


class ParseError(UsageError):
    pass


class CharEqualsOrder(PreconditionError):
    pass


class CharTwoA2n(PreconditionError):
    pass


class NoPrimitiveRoot(PreconditionError):
    pass


class RingLacksRoots(PreconditionError):
    pass


class DenominatorNotInvertible(PreconditionError):
    pass


class NotSplit(PreconditionError):
    def __init__(self, message: str, *, suggested_degree: Optional[int] = None) -> None:
        super().__init__(message)
        self.suggested_degree = suggested_degree


class LatticeDenominator(HyperloopError):
    """A divided power left the integral lattice; the structure constants are inconsistent."""


def exit_code_for(error: BaseException) -> ExitCode:
    if isinstance(error, PreconditionError):
        return ExitCode.Precondition

    if isinstance(error, UsageError):
        return ExitCode.UsageError

    return ExitCode.AssertionFailure
