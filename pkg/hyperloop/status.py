import enum


@enum.unique
class AssertionStatus(enum.Enum):
    Pass = "pass"
    Fail = "fail"
    Skipped = "skipped"


PassingStatuses = frozenset({AssertionStatus.Pass, AssertionStatus.Skipped})
PassingStatusValues = tuple(v.value for v in PassingStatuses)


@enum.unique
class ExitCode(enum.IntEnum):
    Ok = 0
    AssertionFailure = 1
    UsageError = 2
    Precondition = 3
