#!/usr/bin/env python
'''Contains functions allowing every part of <multcorr> to be run from the
command line. The program <multcorr> takes a subcommand:

    multcorr factor --range lo:hi
    multcorr rho --u <u> | --table step,umax [--out <path>]
    multcorr integral I --alpha <a> --m <m> | T --alpha <a> | rect --rect a,b,c,d
    multcorr correlate --g1 <spec> --g2 <spec> --h <h> --x <x> --omega <expr>
    multcorr charsum corr --Q <Q> --h <h> --x <x> --omega <expr> | qnr --Q <Q> --x <x>
    multcorr experiment run <name> --x <x> --params k=v,... | sweep <name> --param a=0.1:0.9:0.1
    multcorr uniformity --g <spec> --x <x> --Q <Q> [--strong | --gap y,a,q]

and <multcorr-experiment> runs an experiment from a control file. The exit
status is 0 on success, 2 for usage errors, 3 for domain errors and 4 when a
numerical method fails.
'''
from __future__ import absolute_import

import argparse
import difflib
import logging
import sys
import time

from multcorr import __version__
from multcorr.arith.charsum import burgess_report, qnr_pair_densities
from multcorr.arith.correlate import CorrelationRequest, discrepancy_trend, theorem13_check
from multcorr.arith.multfunc import parse_spec
from multcorr.arith.uniformity import DEFAULT_PROBES, stability_gap, \
                                    strong_uniformity_deficiency, uniformity_deficiency
from multcorr.dickmann.integrals import DEFAULT_NODES, DEFAULT_SAMPLES, DEFAULT_SEED, \
                    METHODS, IntegralRequest, IntegralResult, integral_I_result, \
                    integral_T_result, rect_density
from multcorr.dickmann.rho import DEFAULT_STEP, DEFAULT_UMAX, build_rho, default_table, rho_at
from multcorr.experiments._experiment_control import ExperimentSim, load_config, render, \
                                                                    render_sweep
from multcorr.experiments.experiments import PARAMETER_TYPES, get_experiment, run_experiment, \
                                                                            sweep
from multcorr.sieve.factor_sieve import DEFAULT_SEGMENT, SieveRequest, format_factor_line, \
                                                                    sieve_range
from multcorr.utilities.control_functions import parse_params, parse_sweep, to_int
from multcorr.utilities.errors import CapacityError, MultcorrError, UsageError
from multcorr.utilities.output import RunManifest, dumps_csv, dumps_human, dumps_json, \
                                                                emit, format_float, to_jsonable

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('factor', 'rho', 'integral', 'correlate', 'charsum', 'experiment',
               'uniformity')

# largest range <factor> will print
FACTOR_LIMIT = 10**7


def _int_arg(in_str):
    try:
        return to_int(in_str)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _floats(in_str, count, name):
    '''Parses a comma separated list of <count> numbers.
    '''

    try:
        values = [float(v) for v in in_str.split(',')]
    except ValueError:
        raise UsageError('{} "{}" must be a comma separated list of numbers'.format(name,
                                                                            in_str))
    if len(values) != count:
        raise UsageError('{} needs {} values, got "{}"'.format(name, count, in_str))
    return values


def _segment_size(args):
    return args.segment_size if args.segment_size is not None else DEFAULT_SEGMENT


def _scan_options(args):
    return {'segment_size': _segment_size(args), 'nprocesses': args.threads}


def _record(obj, fmt):
    '''Writes a single record in the requested format.
    '''

    if fmt == 'json':
        return dumps_json(obj)
    elif fmt == 'csv':
        plain = to_jsonable(obj)
        header = sorted(k for k, v in plain.items() if not isinstance(v, (dict, list)))
        return dumps_csv(header, [tuple(plain[h] for h in header)])
    return dumps_human(obj)


# subcommands

def do_factor(args, fmt):
    '''One line n<TAB>p1^e1 p2^e2 ... per integer of [lo, hi).
    '''

    try:
        lo, hi = (to_int(v) for v in args.range.split(':'))
    except ValueError:
        raise UsageError('range "{}" is not of the form lo:hi'.format(args.range))
    if hi - lo > FACTOR_LIMIT:
        raise CapacityError("refusing to print more than {} factorizations".format(FACTOR_LIMIT))

    rows = []
    for seg in sieve_range(SieveRequest(lo, hi, _segment_size(args))):
        for n in range(seg.lo, seg.hi):
            rows.append((n, seg.factors(n)))

    if fmt == 'json':
        return dumps_json([{'n': n, 'factors': f} for n, f in rows])
    elif fmt == 'csv':
        return dumps_csv(('n', 'factors'), [(n, format_factor_line(n, f).split('\t')[1])
                                                                    for n, f in rows])
    return '\n'.join(format_factor_line(n, f) for n, f in rows)


def do_rho(args, fmt):
    if (args.u is None) == (args.table is None):
        raise UsageError("give exactly one of --u and --table")

    if args.u is not None:
        table = default_table(args.step, args.umax)
        value, truncated = rho_at(table, args.u, with_flag=True)
        if truncated:
            logger.warning("u = %g exceeds the table range %g; rho set to 0", args.u,
                                                                        table.u_max)
        if fmt == 'human':
            return format_float(value, alternate=True)
        elif fmt == 'csv':
            return dumps_csv(('u', 'rho'), [(args.u, value)])
        return dumps_json({'u': args.u, 'rho': value, 'truncated': truncated,
                           'step': table.step, 'u_max': table.u_max})

    step, u_max = _floats(args.table, 2, '--table')
    table = build_rho(step, u_max)
    text = dumps_csv(('u', 'rho'), zip(table.grid, table.values))
    if not args.out:
        return text

    with open(args.out, 'w') as outstream:
        outstream.write(text + '\n')

    summary = {'out': args.out, 'step': table.step, 'u_max': table.u_max,
               'points': len(table.values), 'max_residual': table.max_residual}
    return _record(summary, fmt)


def do_integral(args, fmt):
    if args.which in ('I', 'T') and args.alpha is None:
        raise UsageError("integral {} needs --alpha".format(args.which))
    if args.which == 'I' and args.m is None:
        raise UsageError("integral I needs --m")
    if args.which == 'rect' and args.rect is None:
        raise UsageError("integral rect needs --rect a,b,c,d")

    table = default_table(args.step, args.umax)

    if args.which == 'I':
        req = IntegralRequest(args.alpha, args.m, method=args.method, nodes=args.nodes,
                              samples=args.samples, seed=args.seed)
        result = integral_I_result(table, req)
    elif args.which == 'T':
        result = integral_T_result(table, args.alpha, nodes=args.nodes)
    else:
        a, b, c, d = _floats(args.rect, 4, '--rect')
        result = IntegralResult('rect', None, None, 'closed_form',
                                rect_density(table, a, b, c, d), 2*table.tol)

    return _record(result, fmt)


def do_correlate(args, fmt):
    g1, g2 = parse_spec(args.g1), parse_spec(args.g2)

    if args.trend:
        x_list = [to_int(v) for v in args.trend.split(',')]
        trend = discrepancy_trend(g1, g2, args.h, args.omega, x_list, **_scan_options(args))
        if fmt == 'json':
            return dumps_json([{'x': x, 'discrepancy': d} for x, d in trend])
        return dumps_csv(('x', 'discrepancy'), trend)

    if args.x is None:
        raise UsageError("correlate needs --x")
    req = CorrelationRequest(g1, g2, args.h, args.x, args.omega)
    return _record(theorem13_check(req, **_scan_options(args)), fmt)


def do_charsum(args, fmt):
    if args.which == 'corr':
        report = burgess_report(args.Q, args.h, args.x, args.omega or 'logx',
                                kernel=args.kernel, **_scan_options(args))
    else:
        report = qnr_pair_densities(args.Q, args.x, omega=args.omega, **_scan_options(args))
    return _record(report, fmt)


def _experiment_overrides(args):
    params = parse_params(args.params)
    for name in params:
        if name not in PARAMETER_TYPES:
            close = difflib.get_close_matches(name, PARAMETER_TYPES, n=1)
            hint = " (did you mean {}?)".format(close[0]) if close else ""
            raise UsageError("{} is not an experiment parameter{}".format(name, hint))

    overrides = dict(params)
    for card in ('x', 'omega', 'window', 'weighting', 'seed', 'nodes', 'segment_size',
                                                                        'threads'):
        overrides[card] = getattr(args, card)
    return overrides


def do_experiment(args, fmt):
    cfg = load_config(args.config, _experiment_overrides(args))

    get_experiment(args.name)
    if args.which == 'run':
        result = run_experiment(args.name, cfg)
        return render(result, fmt, args.name)

    if not args.param:
        raise UsageError("experiment sweep needs --param name=start:stop:step")
    param, values = parse_sweep(args.param)
    rows = sweep(args.name, cfg, param, values)
    # sweeps are tables; JSON only on request
    return render_sweep(args.name, param, rows, 'json' if args.fmt == 'json' else 'csv')


def do_uniformity(args, fmt):
    spec = parse_spec(args.g)

    if args.gap:
        y, a, q = _floats(args.gap, 3, '--gap')
        gap = stability_gap(spec, args.x, y, int(a), int(q), **_scan_options(args))
        return _record({'spec': str(spec), 'x': args.x, 'y': y, 'a': int(a), 'q': int(q),
                        'gap': gap}, fmt)
    elif args.strong:
        report = strong_uniformity_deficiency(spec, args.x, args.Q, omega=args.omega,
                                              probes=args.probes, **_scan_options(args))
    else:
        report = uniformity_deficiency(spec, args.x, args.Q, **_scan_options(args))
    return _record(report, fmt)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    formats = common.add_mutually_exclusive_group()
    formats.add_argument('--json', dest='fmt', action='store_const', const='json',
                         help='write JSON')
    formats.add_argument('--csv', dest='fmt', action='store_const', const='csv',
                         help='write CSV')
    formats.add_argument('--human', dest='fmt', action='store_const', const='human',
                         help='write key: value lines')
    common.add_argument('--threads', type=_int_arg, default=None,
                        help='number of worker processes (default $MULTCORR_THREADS or all CPUs)')
    common.add_argument('--segment-size', dest='segment_size', type=_int_arg, default=None)
    common.add_argument('-v', '--noisy', action='count', default=0)
    common.add_argument('--manifest', default=None,
                        help='write the run manifest to this file instead of stderr')

    parser = argparse.ArgumentParser(prog='multcorr')
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command', metavar='subcommand')
    sub.required = True

    p = sub.add_parser('factor', parents=[common], help='factor every integer of a range')
    p.add_argument('--range', required=True, help='lo:hi, the half-open range [lo, hi)')
    p.set_defaults(handler=do_factor, default_fmt='human')

    p = sub.add_parser('rho', parents=[common], help='the Dickman function')
    p.add_argument('--u', type=float, default=None)
    p.add_argument('--table', default=None, help='step,umax')
    p.add_argument('--out', default=None)
    p.add_argument('--step', type=float, default=DEFAULT_STEP)
    p.add_argument('--umax', type=float, default=DEFAULT_UMAX)
    p.set_defaults(handler=do_rho, default_fmt='human')

    p = sub.add_parser('integral', parents=[common], help='integrals of the Dickman function')
    p.add_argument('which', choices=('I', 'T', 'rect'))
    p.add_argument('--alpha', type=float, default=None)
    p.add_argument('--m', type=_int_arg, default=None)
    p.add_argument('--rect', default=None, help='a,b,c,d')
    p.add_argument('--method', choices=METHODS, default='auto')
    p.add_argument('--nodes', type=_int_arg, default=DEFAULT_NODES)
    p.add_argument('--samples', type=_int_arg, default=DEFAULT_SAMPLES)
    p.add_argument('--seed', type=_int_arg, default=DEFAULT_SEED)
    p.add_argument('--step', type=float, default=DEFAULT_STEP)
    p.add_argument('--umax', type=float, default=DEFAULT_UMAX)
    p.set_defaults(handler=do_integral, default_fmt='human')

    p = sub.add_parser('correlate', parents=[common],
                       help='logarithmic correlation of two multiplicative functions')
    p.add_argument('--g1', required=True)
    p.add_argument('--g2', required=True)
    p.add_argument('--h', type=_int_arg, required=True)
    p.add_argument('--x', type=_int_arg, default=None)
    p.add_argument('--omega', default='logx')
    p.add_argument('--trend', default=None, help='comma separated ascending x values')
    p.set_defaults(handler=do_correlate, default_fmt='json')

    p = sub.add_parser('charsum', parents=[common], help='real character sums')
    p.add_argument('which', choices=('corr', 'qnr'))
    p.add_argument('--Q', type=_int_arg, required=True)
    p.add_argument('--h', type=_int_arg, default=1)
    p.add_argument('--x', type=_int_arg, required=True)
    p.add_argument('--omega', default=None,
                   help='window function (corr: default logx; qnr: also report the tail window)')
    p.add_argument('--kernel', choices=('auto', 'table', 'binary'), default='auto')
    p.set_defaults(handler=do_charsum, default_fmt='json')

    p = sub.add_parser('experiment', parents=[common], help='density experiments')
    p.add_argument('which', choices=('run', 'sweep'))
    p.add_argument('name')
    p.add_argument('--config', default=None, help='key=value control file')
    p.add_argument('--x', type=_int_arg, default=None)
    p.add_argument('--params', default='', help='k=v,...')
    p.add_argument('--param', default=None, help='name=start:stop:step')
    p.add_argument('--omega', default=None)
    p.add_argument('--window', choices=('full', 'tail'), default=None)
    p.add_argument('--weighting', choices=('logarithmic', 'natural'), default=None)
    p.add_argument('--seed', type=_int_arg, default=None)
    p.add_argument('--nodes', type=_int_arg, default=None)
    p.set_defaults(handler=do_experiment, default_fmt='json')

    p = sub.add_parser('uniformity', parents=[common],
                       help='equidistribution in residue classes')
    p.add_argument('--g', required=True)
    p.add_argument('--x', type=_int_arg, required=True)
    p.add_argument('--Q', type=_int_arg, default=1)
    p.add_argument('--strong', action='store_true')
    p.add_argument('--omega', default='logx')
    p.add_argument('--probes', type=_int_arg, default=DEFAULT_PROBES)
    p.add_argument('--gap', default=None, help='y,a,q')
    p.set_defaults(handler=do_uniformity, default_fmt='human')

    return parser


def _configure_logging(noisy):
    level = logging.WARNING if noisy == 0 else logging.INFO if noisy == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def _manifest(args, digest, wall_time):
    flags = dict((k, v) for k, v in vars(args).items()
                 if k not in ('handler', 'default_fmt') and not callable(v))
    subcommand = args.command
    if getattr(args, 'which', None):
        subcommand = '{} {}'.format(subcommand, args.which)
    return RunManifest(subcommand=subcommand, flags=flags, version=__version__,
                       seed=getattr(args, 'seed', None), wall_time=wall_time,
                       checksum=digest)


def main(argv=None):
    '''Parses <argv>, runs the subcommand and returns the exit status.
    '''

    if argv is None:
        argv = sys.argv[1:]

    if argv and not argv[0].startswith('-') and argv[0] not in SUBCOMMANDS:
        close = difflib.get_close_matches(argv[0], SUBCOMMANDS, n=1)
        hint = "; did you mean {}?".format(close[0]) if close else ""
        sys.stderr.write("multcorr: error: unknown subcommand {}{}\n".format(argv[0], hint))
        return UsageError.exit_code

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    _configure_logging(args.noisy)
    start = time.time()
    try:
        text = args.handler(args, args.fmt or args.default_fmt)
    except MultcorrError as e:
        sys.stderr.write("multcorr: error: {}\n".format(e))
        return e.exit_code

    digest = emit(text)
    manifest = _manifest(args, digest, time.time() - start)
    if args.manifest:
        with open(args.manifest, 'w') as outstream:
            outstream.write(manifest.to_json() + '\n')
    else:
        sys.stderr.write(manifest.to_json() + '\n')

    return 0


def main_experiment():
    '''Runs an experiment described by a control file.
    '''

    parser = argparse.ArgumentParser()
    parser.add_argument('-i', type=str, nargs='?', dest='filename', default='0')
    parser.add_argument('-v', '--noisy', action='count', default=0)

    args = parser.parse_args()
    _configure_logging(args.noisy)

    if args.filename != '0':
        filename = args.filename
    else:
        # read in filename from the command line
        filename = input('Enter name of input file: ')

    try:
        sim = ExperimentSim(filename)
    except MultcorrError as e:
        sys.stderr.write("multcorr-experiment: error: {}\n".format(e))
        sys.exit(e.exit_code)

    if not sim.control('output'):
        emit(sim.text)


if __name__ == '__main__':
    sys.exit(main())
