import logging

from hyperloop.coeffring import finite_field, from_int
from hyperloop.status import AssertionStatus
from hyperloop.verify.report import CaseReport, VerificationReport, witness_vector


def test_case_report__record_and_skip(caplog):
    caplog.set_level(logging.DEBUG)
    case = CaseReport(case={"n": 1})
    assert case.record('holds', True, {"unused": 1})
    case.skip('later', 'not applicable')
    assert case.ok()

    assert not case.record('breaks', False, {"lhs": "1"})
    assert not case.ok()
    assert 'breaks failed' in caplog.text

    assert case.to_dict() == {
        "case": {"n": 1},
        "assertions": [
            {"name": "holds", "status": "pass"},
            {"name": "later", "status": "skipped", "reason": "not applicable"},
            {"name": "breaks", "status": "fail", "witness": {"lhs": "1"}},
        ],
    }


def test_case_report__timing_only_when_asked():
    case = CaseReport(case={}, elapsed_ms=1.23456)
    assert "timing" not in case.to_dict()
    assert case.to_dict(timing=True)["timing"] == {"elapsed_ms": 1.235}


def test_verification_report__counts_and_extend():
    first = VerificationReport(suite='a')
    case = CaseReport(case={})
    case.record('x', True)
    case.skip('y', 'not applicable')
    first.cases.append(case)

    second = VerificationReport(suite='b')
    failing = CaseReport(case={})
    failing.record('z', False)
    second.cases.append(failing)

    assert first.ok()
    first.extend(second)
    assert not first.ok()
    assert first.counts() == {"pass": 1, "fail": 1, "skipped": 1}
    assert first.to_dict()["ok"] is False
    assert first.cases[1].assertions[0].status is AssertionStatus.Fail


def test_witness_vector__sorted_canonical_coefficients():
    field = finite_field(7)
    assert witness_vector({3: from_int(field, 9), 1: from_int(field, -1)}) == {"1": "6", "3": "2"}
