from hyperloop.exception import (
    CharEqualsOrder, DegreeOutOfRange, HyperloopError, LatticeDenominator, NotSplit, ParseError, exit_code_for,
)
from hyperloop.status import AssertionStatus, ExitCode, PassingStatuses


def test_exit_codes():
    assert exit_code_for(ParseError('x')) == ExitCode.UsageError == 2
    assert exit_code_for(DegreeOutOfRange('x')) == ExitCode.UsageError
    assert exit_code_for(CharEqualsOrder('x')) == ExitCode.Precondition == 3
    assert exit_code_for(NotSplit('x', suggested_degree=2)) == ExitCode.Precondition
    assert exit_code_for(LatticeDenominator('x')) == ExitCode.AssertionFailure == 1


def test_hierarchy():
    assert isinstance(NotSplit('x'), HyperloopError)
    assert NotSplit('x').suggested_degree is None


def test_skipped_counts_as_passing():
    assert AssertionStatus.Skipped in PassingStatuses
    assert AssertionStatus.Fail not in PassingStatuses
