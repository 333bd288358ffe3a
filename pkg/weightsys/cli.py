"""Command line front end.

Exit codes: 0 success, 1 a check found violations, 2 usage, parse or input
error, 3 a size bound refused the request.
"""
import argparse
import sys
from typing import Sequence

import orjson
import pandas as pd
from loguru import logger

from weightsys.core.config import AVERAGE_BOUND
from weightsys.core.config import DEFAULT_BOUND
from weightsys.core.config import DEFAULT_THREADS
from weightsys.core.config import LOG_LEVEL
from weightsys.core.config import ROTATIONAL_BOUND
from weightsys.core.config import WEIGHTSYS_CACHE
from weightsys.core.config import get_version
from weightsys.core.exceptions import BoundExceeded
from weightsys.core.exceptions import PermutationError
from weightsys.core.exceptions import PolyParseError
from weightsys.core.exceptions import WeightSystemError
from weightsys.core.logger import init_logging
from weightsys.diagrams.cache import PersistentCache
from weightsys.diagrams.hopf import hopf_table
from weightsys.diagrams.oracle import operator_oracle_gl
from weightsys.diagrams.oracle import operator_oracle_so
from weightsys.diagrams.perm import all_permutations
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.poly import parse_poly
from weightsys.diagrams.relations import check_functional
from weightsys.diagrams.relations import face_count_functional
from weightsys.diagrams.rotational import rotational_table
from weightsys.diagrams.schema import CheckReport
from weightsys.diagrams.schema import EvalResult
from weightsys.diagrams.schema import PermutationModel
from weightsys.diagrams.schur import average_wgl
from weightsys.diagrams.schur import averaging_closed_form_fit
from weightsys.diagrams.schur import to_casimir_basis
from weightsys.diagrams.schur import to_schur_basis
from weightsys.diagrams.wgl import GL_MEMO
from weightsys.diagrams.wgl import eval_wgl
from weightsys.diagrams.wgl import standard_substitution
from weightsys.diagrams.wso import SO_MEMO
from weightsys.diagrams.wso import eval_wso
from weightsys.diagrams.wso import so_standard_substitution

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

BASES = {
    'gl': ('C', 'S', 'standard'),
    'so': ('C', 'so-standard'),
}


class UsageError(WeightSystemError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='weightsys', description=__doc__.splitlines()[0])
    parser.add_argument('--output', choices=('text', 'json', 'csv'), default='text')
    parser.add_argument(
        '--bound', type=int, help='largest m for exhaustive runs, per command default'
    )
    parser.add_argument('--threads', type=int, default=DEFAULT_THREADS)
    parser.add_argument('--cache', default=WEIGHTSYS_CACHE, help='JSON-lines memo file')
    parser.add_argument('--no-cache', action='store_true')
    parser.add_argument('--log-level', default=LOG_LEVEL)
    sub = parser.add_subparsers(dest='command', required=True)

    evaluate = sub.add_parser('eval', help='evaluate a weight system on a permutation')
    evaluate.add_argument('permutation')
    evaluate.add_argument('--engine', choices=tuple(BASES), default='gl')
    evaluate.add_argument('--basis', default='C')

    relations = sub.add_parser(
        'check-relations', help='evaluate on every relation element of m legs'
    )
    relations.add_argument('m', type=int)
    relations.add_argument('--engine', choices=('gl', 'so', 'faces'), default='gl')

    dims = sub.add_parser('dims', help='dimension tables')
    dims.add_argument('--table', type=int, choices=(1, 2, 3, 4), default=1)
    dims.add_argument('--max-m', type=int, default=6, help='largest degree for table 1')

    average = sub.add_parser('average', help='average of w_gl over S_m in the Schur basis')
    average.add_argument('m', type=int)

    fit = sub.add_parser('fit-average', help='closed form of the averaging coefficients')
    fit.add_argument('--max-m', type=int, default=6)

    oracle = sub.add_parser('oracle', help='compare with dense matrices on tensor powers')
    oracle.add_argument('m', type=int)
    oracle.add_argument('--engine', choices=tuple(BASES), default='gl')
    oracle.add_argument('--n', type=int, default=3)
    oracle.add_argument('--t', type=int, default=1)

    convert = sub.add_parser('convert', help='rewrite a polynomial between the C and S generators')
    convert.add_argument('polynomial')
    convert.add_argument('--to', choices=('S', 'C'), default='S')

    sub.add_parser('version')
    return parser


def bound_for(args, default: int) -> int:
    return default if args.bound is None else args.bound


def emit(data, output: str):
    if isinstance(data, pd.DataFrame):
        if output == 'csv':
            print(data.to_csv(index=False), end='')
        elif output == 'json':
            print(data.to_json(orient='records'))
        else:
            print(data.to_string(index=False))
        return
    if output == 'text':
        print(data)
    else:
        print(orjson.dumps(data, option=orjson.OPT_INDENT_2).decode())


def emit_report(report: CheckReport, output: str) -> int:
    if output == 'text':
        status = 'ok' if report.passed else 'FAILED'
        violations = len(report.violations)
        print(f'{report.name}: {report.checked} checked, {violations} violations, {status}')
        for violation in report.violations:
            print(f'  {violation}')
    else:
        emit(report.model_dump(), 'json')
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_eval(args) -> int:
    if args.basis not in BASES[args.engine]:
        raise UsageError(
            f'Basis {args.basis} is not available for {args.engine}, '
            f'expected one of {BASES[args.engine]}'
        )
    alpha = PermutationModel.from_text(args.permutation).to_permutation()
    if args.engine == 'gl':
        value = eval_wgl(alpha)
        if args.basis == 'S':
            value = to_schur_basis(value)
        elif args.basis == 'standard':
            value = standard_substitution(value)
    else:
        value = eval_wso(alpha)
        if args.basis == 'so-standard':
            value = so_standard_substitution(value)
    if args.output == 'text':
        emit(str(value), 'text')
    else:
        result = EvalResult(
            permutation=format_cycles(alpha),
            engine=args.engine,
            basis=args.basis,
            value=str(value),
            terms=value.to_json(),
        )
        emit(result.model_dump(), 'json')
    return EXIT_OK


def cmd_check_relations(args) -> int:
    functional = {'gl': eval_wgl, 'so': eval_wso, 'faces': face_count_functional}[args.engine]
    bound = bound_for(args, DEFAULT_BOUND)
    report = check_functional(functional, args.m, args.threads, name=args.engine, bound=bound)
    return emit_report(report, args.output)


def cmd_dims(args) -> int:
    if args.table == 1:
        bound = bound_for(args, DEFAULT_BOUND)
        rows = [row for m in range(1, args.max_m + 1) for row in hopf_table(m, bound)]
    else:
        rows = rotational_table(args.table, bound_for(args, ROTATIONAL_BOUND))
    frame = pd.DataFrame([row.model_dump(exclude_none=True) for row in rows])
    emit(frame, args.output)
    return EXIT_OK


def cmd_average(args) -> int:
    value = to_schur_basis(average_wgl(args.m, args.threads, bound_for(args, AVERAGE_BOUND)))
    if args.output == 'text':
        emit(str(value), 'text')
    else:
        emit({'m': args.m, 'value': str(value), 'terms': value.to_json()}, 'json')
    return EXIT_OK


def cmd_fit_average(args) -> int:
    report = averaging_closed_form_fit(args.max_m, args.threads)
    if args.output == 'text':
        sign = 'alternating' if report.alternating else 'plain'
        print(f'matched: {report.matched}; exponent {report.exponent}, {report.convention}, {sign}')
        for name, value in report.coefficients.items():
            print(f'  {name} = {value}')
        for name, note in report.reference_deviations.items():
            print(f'  {name}: {note}')
    else:
        emit(report.model_dump(), 'json')
    return EXIT_OK if report.matched else EXIT_CHECK_FAILED


def cmd_oracle(args) -> int:
    oracle = operator_oracle_gl if args.engine == 'gl' else operator_oracle_so
    report = CheckReport(name=f'{args.engine} oracle m={args.m} N={args.n} t={args.t}')
    for alpha in all_permutations(args.m):
        report.checked += 1
        if not oracle(alpha, args.n, args.t):
            report.violations.append(format_cycles(alpha))
    return emit_report(report, args.output)


def cmd_convert(args) -> int:
    value = parse_poly(args.polynomial)
    converted = to_schur_basis(value) if args.to == 'S' else to_casimir_basis(value)
    if args.output == 'text':
        emit(str(converted), 'text')
    else:
        emit({
            'input': str(value),
            'basis': args.to,
            'value': str(converted),
            'terms': converted.to_json(),
        }, 'json')
    return EXIT_OK


def cmd_version(args) -> int:
    emit(get_version() if args.output == 'text' else {'version': get_version()}, args.output)
    return EXIT_OK


COMMANDS = {
    'eval': cmd_eval,
    'check-relations': cmd_check_relations,
    'dims': cmd_dims,
    'average': cmd_average,
    'fit-average': cmd_fit_average,
    'oracle': cmd_oracle,
    'convert': cmd_convert,
    'version': cmd_version,
}


def attach_cache(path: str | None):
    if not path:
        return
    cache = PersistentCache(path)
    cache.attach(GL_MEMO, 'gl')
    cache.attach(SO_MEMO, 'so')
    logger.info('Using memo cache {}', path)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    init_logging(args.log_level.upper())
    try:
        if args.command not in ('version', 'convert') and not args.no_cache:
            attach_cache(args.cache)
        return COMMANDS[args.command](args)
    except BoundExceeded as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, PermutationError, PolyParseError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except WeightSystemError as e:
        # a failed check is reported through its CheckReport, never raised
        logger.exception(e)
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
