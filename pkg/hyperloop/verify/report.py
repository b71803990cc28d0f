from typing import Any, Dict, List, Optional, Union
import enum
import logging

import attr

from ..coeffring import Scalar
from ..linalg import Vector
from ..status import AssertionStatus, PassingStatuses

logger = logging.getLogger(__name__)


@enum.unique
class GarlandPart(enum.Enum):
    Basic = "basicrel"
    A = "a"
    B = "b"
    CI = "c-i"
    CII = "c-ii"
    CIII = "c-iii"
    CIV = "c-iv"


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True)
class AssertionRecord:
    name: str
    status: AssertionStatus
    witness: Optional[Dict[str, Any]] = None
    reason: Optional[str] = None

    def ok(self) -> bool:
        return self.status in PassingStatuses

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class CaseReport:
    case: Dict[str, Any]
    assertions: List[AssertionRecord] = attr.ib(factory=list)
    elapsed_ms: float = 0.0

    def record(self, name: str, passed: bool, witness: Optional[Dict[str, Any]] = None) -> bool:
        status = AssertionStatus.Pass if passed else AssertionStatus.Fail
        self.assertions.append(AssertionRecord(name=name, status=status, witness=None if passed else witness))
        if not passed:
            logger.info('%s failed on %s', name, self.case)
        return passed

    def skip(self, name: str, reason: str) -> None:
        self.assertions.append(AssertionRecord(name=name, status=AssertionStatus.Skipped, reason=reason))

    def ok(self) -> bool:
        return all(a.ok() for a in self.assertions)

    def to_dict(self, *, timing: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "case": self.case,
            "assertions": [a.to_dict() for a in self.assertions],
        }
        if timing:
            out["timing"] = {"elapsed_ms": round(self.elapsed_ms, 3)}
        return out


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class VerificationReport:
    suite: str
    cases: List[CaseReport] = attr.ib(factory=list)

    def ok(self) -> bool:
        return all(c.ok() for c in self.cases)

    def counts(self) -> Dict[str, int]:
        out = {status.value: 0 for status in AssertionStatus}
        for case in self.cases:
            for a in case.assertions:
                out[a.status.value] += 1
        return out

    def extend(self, other: 'VerificationReport') -> None:
        self.cases.extend(other.cases)

    def to_dict(self, *, timing: bool = False) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "ok": self.ok(),
            "counts": self.counts(),
            "cases": [c.to_dict(timing=timing) for c in self.cases],
        }


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class ProgressMsg:
    suite: str
    done: int
    total: int


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class CaseMsg:
    suite: str
    report: CaseReport


@attr.s(slots=True, kw_only=True, auto_attribs=True)
class ReportMsg:
    report: VerificationReport


Message = Union[
    CaseMsg,
    ProgressMsg,
    ReportMsg,
]


def witness_vector(v: Vector) -> Dict[str, str]:
    """A vector as {basis index: canonical coefficient}, for JSON."""
    return {str(idx): c.canonical() if isinstance(c, Scalar) else str(c) for idx, c in sorted(v.items())}
