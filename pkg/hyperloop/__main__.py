from typing import Any, Dict, List, Optional
import argparse
import logging
import json
import sys

import tqdm  # type: ignore

from .dotenv import load as load_dotenv
from .chevalley import basis_relation_violations, grading_violations, twisted_jacobi_violations
from .character import weyl_dimension
from .exception import HyperloopError, NotSplit, exit_code_for
from .hypermod import build_weyl_module, character, simple_quotient
from .loopaction import adapted_twisted_basis
from .lweights import evaluation_factors, omega_from_pi, standard_decomposition
from .parse import parse_field, parse_lweight, parse_weight
from .rootfold import folding, root_system
from .status import ExitCode
from .verify import CaseMsg, ProgressMsg, ReportMsg, SUITES, SuiteOptions, load_cases, run_suite

logger = logging.getLogger(__name__)


def main(sys_args: Optional[List[str]] = None) -> int:  # noqa: C901
    if not sys_args:
        sys_args = sys.argv[1:]

    parser = argparse.ArgumentParser(prog='hyperloop')
    parser.add_argument("--loglevel", dest="loglevel", choices=("warn", "debug", "info", "critical"), default="warn")
    parser.add_argument("--out", dest="out", metavar="FILE", help="write the JSON document to FILE instead of stdout")
    subparsers = parser.add_subparsers(dest="command", required=True)

    fold_parser = subparsers.add_parser("fold", help="fold a root system along a diagram automorphism")
    fold_parser.add_argument("--type", required=True, help="the Dynkin type, like A3 or D4")
    fold_parser.add_argument("--auto", required=True, choices=("id", "flip", "rot3"))
    fold_parser.add_argument("--check", action='store_true', help="also sweep the twisted basis for Jacobi, grading and basis relations")
    fold_parser.set_defaults(func=cmd_fold)

    module_parser = subparsers.add_parser("module", help="build a Weyl module and its simple quotient")
    module_parser.add_argument("--type", required=True)
    module_parser.add_argument("--hw", required=True, help="the highest weight by its Dynkin labels, like 1,0")
    module_parser.add_argument("--field", required=True, help="Q, Fp, Fp^k or Fq")
    module_parser.add_argument("--simple", action='store_true', help="report the simple quotient")
    module_parser.add_argument("--folded", action='store_true', help="build the module of the folded algebra")
    module_parser.add_argument("--auto", choices=("id", "flip", "rot3"), help="the automorphism for --folded")
    module_parser.set_defaults(func=cmd_module)

    drinfeld_parser = subparsers.add_parser("drinfeld", help="the standard decomposition of a twisted l-weight")
    drinfeld_parser.add_argument("--type", required=True)
    drinfeld_parser.add_argument("--auto", required=True, choices=("id", "flip", "rot3"))
    drinfeld_parser.add_argument("--field", required=True)
    drinfeld_parser.add_argument("--pi", required=True, help="the l-weight, like w1@2 or 1:(1-2u)")
    drinfeld_parser.set_defaults(func=cmd_drinfeld)

    verify_parser = subparsers.add_parser("verify", help="run a verification suite")
    verify_parser.add_argument("suite", choices=SUITES + ('all',))
    verify_parser.add_argument("--nmax", type=int, metavar="N", help="the largest divided power of the identity suites")
    verify_parser.add_argument("--all", action='store_true', help="run the whole case grid even when a single case is given")
    verify_parser.add_argument("--rank-max", type=int, metavar="N", help="skip grid cases of larger rank")
    verify_parser.add_argument("--cases", metavar="FILE", help="an alternative case grid")
    verify_parser.add_argument("--type", help="the Dynkin type of a single case")
    verify_parser.add_argument("--auto", choices=("id", "flip", "rot3"))
    verify_parser.add_argument("--field", default="Q")
    verify_parser.add_argument("--pi", default="", help="the l-weight of a single restriction case")
    verify_parser.add_argument("--hw", help="the weight of a single garland or hw case")
    verify_parser.add_argument("--point", type=int, default=2, help="the evaluation point of a single garland or hw case")
    verify_parser.add_argument("--workers", type=int, default=1, metavar="N", help="run cases in N processes")
    verify_parser.add_argument("--timing", action='store_true', help="include per-case timings")
    verify_parser.add_argument("--quiet", "-q", action='store_true', help="no progress bar")
    verify_parser.set_defaults(func=cmd_verify)

    cli_args = parser.parse_args(sys_args)

    loglevel = getattr(logging, cli_args.loglevel.upper())
    logformat = "%(asctime)s %(name)s %(levelname)s %(message)s"
    logging.basicConfig(level=loglevel, format=logformat)

    try:
        return int(cli_args.func(cli_args))
    except NotSplit as e:
        print(f"error: {e}", file=sys.stderr)
        if e.suggested_degree is not None:
            print(f"suggested extension degree: {e.suggested_degree}", file=sys.stderr)
        return int(exit_code_for(e))
    except HyperloopError as e:
        print(f"error: {e}", file=sys.stderr)
        return int(exit_code_for(e))


def emit(document: Dict[str, Any], out: Optional[str]) -> None:
    text = json.dumps(document, sort_keys=True)
    if out is None:
        print(text)
        return

    with open(out, "w", encoding="utf-8") as outfile:
        outfile.write(text)
        outfile.write("\n")


def cmd_fold(args: argparse.Namespace) -> int:
    fd = folding(args.type, args.auto)
    document = fd.to_dict()
    if not args.check:
        emit(document, args.out)
        return ExitCode.Ok

    tb = adapted_twisted_basis(fd)
    violations = {
        "jacobi": len(twisted_jacobi_violations(tb)),
        "grading": len(grading_violations(tb)),
        "basis_relations": len(basis_relation_violations(tb)),
    }
    document["violations"] = violations
    emit(document, args.out)
    return ExitCode.Ok if not any(violations.values()) else ExitCode.AssertionFailure


def cmd_module(args: argparse.Namespace) -> int:
    if args.folded:
        if args.auto is None:
            print("error: --folded needs --auto", file=sys.stderr)
            return ExitCode.UsageError
        rs = folding(args.type, args.auto).folded
    else:
        rs = root_system(args.type)

    field = parse_field(args.field)
    weight = parse_weight(args.hw)
    weyl = build_weyl_module(rs, weight, field)
    simple = simple_quotient(weyl)
    chosen = simple if args.simple else weyl

    emit({
        "type": rs.name,
        "field": field.canonical(),
        "highest_weight": list(weight),
        "dimension": chosen.dimension,
        "weyl_dimension": weyl_dimension(rs, weight),
        "simple_dimension": simple.dimension,
        "character": character(chosen).to_dict(),
    }, args.out)
    return ExitCode.Ok


def cmd_drinfeld(args: argparse.Namespace) -> int:
    fd = folding(args.type, args.auto)
    field = parse_field(args.field)
    pi = parse_lweight(args.pi, fd, field)
    sd = standard_decomposition(pi, fd)

    emit({
        "pi": pi.to_dict(),
        "decomposition": sd.to_dict(),
        "factors": [{"weight": list(mu), "point": a.canonical()} for mu, a in evaluation_factors(sd, fd)],
        "omega": omega_from_pi(sd, fd).to_dict(),
    }, args.out)
    return ExitCode.Ok


def single_case(args: argparse.Namespace) -> Optional[Dict[str, Any]]:
    """A one-case grid built from the flags, or None when the flags name no case."""
    if args.all or args.type is None:
        return None

    if args.suite == 'restriction':
        return {"restriction": [{"type": args.type, "auto": args.auto, "field": args.field, "pi": args.pi}]}

    if args.suite in ('garland', 'hw') and args.hw is not None:
        entry = {
            "type": args.type,
            "auto": args.auto,
            "field": args.field,
            "factors": [{"weight": list(parse_weight(args.hw)), "point": args.point}],
        }
        return {args.suite: [entry]}

    return None


def cmd_verify(args: argparse.Namespace) -> int:
    cases = single_case(args) or load_cases(args.cases)
    options = SuiteOptions(n_max=args.nmax, rank_max=args.rank_max, workers=args.workers)

    pbar = None
    exit_code = ExitCode.AssertionFailure
    for msg in run_suite(args.suite, cases, options):
        if isinstance(msg, ProgressMsg):
            if pbar is None:
                pbar = tqdm.tqdm(total=msg.total, disable=True if args.quiet else None)
            pbar.update(1)

        elif isinstance(msg, CaseMsg):
            if not msg.report.ok():
                logger.warning('%s: failing case %s', msg.suite, msg.report.case)

        elif isinstance(msg, ReportMsg):
            emit(msg.report.to_dict(timing=args.timing), args.out)
            exit_code = ExitCode.Ok if msg.report.ok() else ExitCode.AssertionFailure

        else:
            logger.critical('unknown message %s', msg)
            return ExitCode.AssertionFailure

    if pbar is not None:
        pbar.close()

    return exit_code


if __name__ == "__main__":
    load_dotenv()

    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass
