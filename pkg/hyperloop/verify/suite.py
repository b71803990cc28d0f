from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union, cast
import logging
import os
import pathlib

import attr
import yaml

from ..parse import parse_field, parse_lweight
from ..rootfold import folding, root_system
from .casegrid import module_spec
from .garland import check_garland_on_hw
from .heisenberg import check_heisenberg_identity
from .hw_relations import check_hw_relations
from .identities import check_identities
from .report import CaseMsg, Message, ProgressMsg, ReportMsg, VerificationReport
from .restriction import check_restriction_theorem

logger = logging.getLogger(__name__)

SUITES = ('heisenberg', 'identities', 'garland', 'restriction', 'hw')
DEFAULT_CASES = pathlib.Path(__file__).parent / 'cases.yaml'

Job = Tuple[str, Dict[str, Any]]


@attr.s(slots=True, kw_only=True, frozen=True, auto_attribs=True)
class SuiteOptions:
    n_max: Optional[int] = None
    k_max: int = 3
    rank_max: Optional[int] = None
    workers: int = 1


def load_cases(path: Union[None, str, pathlib.Path] = None) -> Dict[str, Any]:
    """The case grid: `path`, else $HYPERLOOP_CASES, else the packaged grid."""
    if path is None:
        path = os.environ.get('HYPERLOOP_CASES') or DEFAULT_CASES

    logger.debug('loading cases from %s', path)
    with open(path, "r", encoding="utf-8") as infile:
        return cast(Dict[str, Any], yaml.load(stream=infile, Loader=yaml.SafeLoader))


def _rank_of(entry: Dict[str, Any]) -> int:
    return root_system(str(entry['type'])).rank


def jobs_for(name: str, cases: Dict[str, Any], options: SuiteOptions) -> List[Job]:
    if name not in SUITES:
        raise ValueError(f'unknown suite {name!r}; expected one of {", ".join(SUITES)}')

    grid = cases.get(name) or {}
    if name == 'heisenberg':
        return [(name, {"n_max": options.n_max or grid.get('n_max', 6)})]
    if name == 'identities':
        return [(name, {"n_max": options.n_max or grid.get('n_max', 6), "fields": list(grid.get('fields', ['Q']))})]

    entries = list(grid)
    if options.rank_max is not None:
        entries = [e for e in entries if _rank_of(e) <= options.rank_max]
    return [(name, {**entry, "k_max": options.k_max}) for entry in entries]


def run_job(job: Job) -> VerificationReport:
    name, entry = job

    if name == 'heisenberg':
        return check_heisenberg_identity(int(entry['n_max']))

    if name == 'identities':
        return check_identities(int(entry['n_max']), [parse_field(f) for f in entry['fields']])

    if name == 'garland':
        return check_garland_on_hw(module_spec(entry), k_max=int(entry['k_max']))

    if name == 'hw':
        return check_hw_relations(module_spec(entry))

    if name == 'restriction':
        fd = folding(str(entry['type']), str(entry['auto']))
        field = parse_field(str(entry['field']))
        pi = parse_lweight(str(entry.get('pi', '')), fd, field)
        return check_restriction_theorem(pi, field, fd)

    raise ValueError(f'unknown suite {name!r}')


def _results(jobs: List[Job], workers: int) -> Iterator[Tuple[int, VerificationReport]]:
    if workers <= 1:
        for index, job in enumerate(jobs):
            yield index, run_job(job)
        return

    with ProcessPoolExecutor(max_workers=workers) as pool:
        future_to_index = {pool.submit(run_job, job): index for index, job in enumerate(jobs)}
        for future in as_completed(future_to_index):
            yield future_to_index[future], future.result()


def run_suite(name: str, cases: Dict[str, Any], options: Optional[SuiteOptions] = None) -> Iterator[Message]:
    """
    Runs one suite, or every suite for `all`, yielding a progress message and
    the case reports as each job finishes, then the combined report in the
    configured order.
    """
    options = options or SuiteOptions()
    names = SUITES if name == 'all' else (name,)
    jobs = [job for suite in names for job in jobs_for(suite, cases, options)]

    finished: Dict[int, VerificationReport] = {}
    for done, (index, report) in enumerate(_results(jobs, options.workers), start=1):
        finished[index] = report
        for case in report.cases:
            yield CaseMsg(suite=report.suite, report=case)
        yield ProgressMsg(suite=name, done=done, total=len(jobs))

    combined = VerificationReport(suite=name)
    for index in range(len(jobs)):
        report = finished[index]
        if name == 'all':
            for case in report.cases:
                case.case = {"suite": report.suite, **case.case}
        combined.extend(report)

    logger.info('%s: %s', name, combined.counts())
    yield ReportMsg(report=combined)
