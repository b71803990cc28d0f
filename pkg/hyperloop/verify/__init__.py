from .report import VerificationReport, CaseReport, GarlandPart, Message, CaseMsg, ProgressMsg, ReportMsg
from .suite import SUITES, SuiteOptions, load_cases, run_suite

__all__ = [
    "VerificationReport", "CaseReport", "GarlandPart",
    "Message", "CaseMsg", "ProgressMsg", "ReportMsg",
    "SUITES", "SuiteOptions", "load_cases", "run_suite",
]
