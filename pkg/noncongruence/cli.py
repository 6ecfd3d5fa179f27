"""
Command line interface, ``python -m noncongruence``.

Exit codes: 0 success, 1 usage errors and failed numerics, 2 invariant
violations, 3 I/O errors.
"""

import argparse
import json
import logging
import sys

import mpmath

from .analysis import Cusp, analyze_pair, cusp_normalizers, group_into_passports
from .database import (assign_labels, export_records, import_records,
                       load_orbit_letters, normalize_sigma_T, record_to_dict,
                       relabel_record)
from .errors import InvariantViolation
from .lattice import recognize_algebraic
from .pairs import PermutationPair, enumerate_classes, multiplicity_audit
from .perm import parse_cycles
from .periods import (DEFAULT_DIGITS, j_invariant, lattice_from_periods,
                      load_expansions, load_generators, periods_of)

__all__ = ['main', 'build_parser']

logger = logging.getLogger(__name__)

EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_IO = 3


def _dump(payload, path=None):
    text = json.dumps(payload, indent=1)
    if path is None:
        print(text)
    else:
        with open(path, 'w') as fp:
            fp.write(text + "\n")


def _write_records(records, path):
    if path is None:
        _dump([record_to_dict(r) for r in records])
    else:
        export_records(records, path)


def _pair_from_args(args):
    sigma_S = parse_cycles(args.sigma_s)
    sigma_R = parse_cycles(args.sigma_r)
    n = max(sigma_S.degree, sigma_R.degree)
    return PermutationPair(parse_cycles(args.sigma_s, n),
                           parse_cycles(args.sigma_r, n))


# # # subcommands # # #

def cmd_enumerate(args):
    enumeration = enumerate_classes(args.index, jobs=args.jobs, check=args.check)
    records = []
    for pair in enumeration:
        record = analyze_pair(pair)
        if args.noncongruence_only and record.is_congruence:
            continue
        if args.genus is not None and record.signature.genus != args.genus:
            continue
        records.append(record)
    logger.info("index %d: %d classes, %d records kept", args.index,
                enumeration.stats.classes_emitted, len(records))

    if args.passports:
        passports = group_into_passports(records)
        records = assign_labels([r for p in passports for r in p.records])
    records = [normalize_sigma_T(r) for r in records]
    _write_records(records, args.out)
    if args.stats:
        print(json.dumps(enumeration.stats.as_dict(), indent=1), file=sys.stderr)


def cmd_analyze(args):
    record = analyze_pair(_pair_from_args(args))
    if args.relabel is not None:
        record = relabel_record(record, parse_cycles(args.relabel,
                                                     record.signature.mu))
    if args.normalize:
        record = normalize_sigma_T(record)
    _dump(record_to_dict(record))


def cmd_passports(args):
    records = import_records(args.input)
    letters = load_orbit_letters(args.orbits) if args.orbits else None
    passports = group_into_passports(records,
                                     by_cusp_widths=args.by_cusp_widths)
    labelled = assign_labels([r for p in passports for r in p.records], letters)
    _write_records([normalize_sigma_T(r) for r in labelled], args.out)


def cmd_audit(args):
    report = multiplicity_audit(args.index)
    summary = {'index': args.index, 'classes': len(report.entries),
               'multiplicity_bound': report.passed}
    if args.index <= 9:
        from .testing import brute_force_classes

        found = {str(p.canonical_key()) for p in enumerate_classes(args.index)}
        expected = {str(k) for k in brute_force_classes(args.index)}
        summary['oracle'] = found == expected
    print(json.dumps(summary, indent=1))
    if not report.passed or not summary.get('oracle', True):
        raise InvariantViolation("audit failed at index {}".format(args.index))


def cmd_periods(args):
    digits = args.prec
    expansions, normalizers = load_expansions(args.expansions)
    generators = load_generators(args.generators)
    if args.sigma_s is not None and args.sigma_r is not None:
        cusps = cusp_normalizers(_pair_from_args(args))
    elif len(normalizers) == len(expansions):
        cusps = [Cusp(i, (), expansions[i].width, normalizers[i])
                 for i in sorted(expansions)]
    else:
        raise ValueError("cusp normalizers missing: give --sigma-s and "
                         "--sigma-r or a 'normalizer' for every cusp")

    values = periods_of(generators, expansions, cusps, digits)
    payload = {'periods': [{'value': mpmath.nstr(v.value, 30),
                            'error': mpmath.nstr(v.error, 5),
                            'warning': v.warning, 'cusp': v.cusp}
                           for v in values]}
    if args.emit_lattice or args.emit_j or args.recognize_degree:
        lattice = lattice_from_periods(values, digits)
        payload['lattice'] = {'w1': mpmath.nstr(lattice.w1, 30),
                              'w2': mpmath.nstr(lattice.w2, 30),
                              'tau': mpmath.nstr(lattice.tau, 30),
                              'denominator': lattice.denominator}
        if args.emit_j or args.recognize_degree:
            j = j_invariant(lattice.tau, digits)
            payload['j'] = mpmath.nstr(j, 30)
            if args.recognize_degree:
                relation = recognize_algebraic(
                    j, max_degree=args.recognize_degree,
                    max_coeff_bits=args.max_coeff_bits, digits=digits // 2)
                payload['j_relation'] = {'polynomial': str(relation),
                                         'coefficients': list(relation.coefficients),
                                         'margin': relation.margin}
    _dump(payload)


# # # parser # # #

def build_parser():
    parser = argparse.ArgumentParser(
        prog='noncongruence',
        description="Enumerate and analyse finite index subgroups of the "
                    "modular group.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true',
                           help="log debug messages")
    verbosity.add_argument('-q', '--quiet', action='store_true',
                           help="log warnings and errors only")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('enumerate', help="enumerate conjugacy classes")
    p.add_argument('--index', type=int, required=True)
    p.add_argument('--noncongruence-only', action='store_true')
    p.add_argument('--genus', type=int)
    p.add_argument('--out')
    p.add_argument('--jobs', type=int, default=1)
    p.add_argument('--stats', action='store_true',
                   help="print enumeration statistics to stderr")
    p.add_argument('--passports', action='store_true',
                   help="group into passports and label the records")
    p.add_argument('--check', action='store_true',
                   help="verify every emitted pair")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser('analyze', help="analyse a single pair")
    p.add_argument('--sigma-s', required=True)
    p.add_argument('--sigma-r', required=True)
    p.add_argument('--normalize', action='store_true',
                   help="relabel into database normal form")
    p.add_argument('--relabel', help="explicit relabelling in cycle notation")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser('passports', help="group records into passports")
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--out')
    p.add_argument('--orbits', help="JSON file with orbit letters")
    p.add_argument('--ignore-cusp-widths', dest='by_cusp_widths',
                   action='store_false',
                   help="group by signature and monodromy group only")
    p.set_defaults(func=cmd_passports)

    p = sub.add_parser('audit', help="multiplicity and oracle checks")
    p.add_argument('--index', type=int, required=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser('periods', help="period lattice and j-invariant")
    p.add_argument('--expansions', required=True)
    p.add_argument('--generators', required=True)
    p.add_argument('--prec', type=int, default=DEFAULT_DIGITS)
    p.add_argument('--emit-lattice', action='store_true')
    p.add_argument('--emit-j', action='store_true')
    p.add_argument('--recognize-degree', type=int, default=0)
    p.add_argument('--max-coeff-bits', type=int, default=64,
                   help="height bound for the recognised relation")
    p.add_argument('--sigma-s')
    p.add_argument('--sigma-r')
    p.set_defaults(func=cmd_periods)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT_USAGE

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    try:
        args.func(args)
    except InvariantViolation as err:
        logger.error("invariant violation: %s", err)
        return EXIT_INVARIANT
    except OSError as err:
        logger.error("%s", err)
        return EXIT_IO
    except (ValueError, ArithmeticError) as err:
        logger.error("%s", err)
        return EXIT_USAGE
    return 0
