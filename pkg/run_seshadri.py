#!/usr/bin/env python3

"""User command for certified Seshadri constant bounds"""

import argparse
import logging
import logging.handlers
import os
import os.path
import sys
from multiprocessing import Pool

import yaml

# Local imports.
import seshadri.audit
import seshadri.bounds
import seshadri.certificates
import seshadri.enumeration
import seshadri.report
import seshadri.surface
from seshadri.exactnum import parse_rational

RC_FILE = '~/.seshadrirc'

CERT_PATH_ENV = 'SESHADRI_CERT_PATH'

LOG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'logs')

# Largest number of entries in an --n-range style argument.
MAX_RANGE = 10 ** 6

RC_KEYS = ('certs', 'format', 'workers', 'cap', 'surface', 'debug')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_INVARIANT = 3


def setup_logging(debug):
    """Configure global logging state"""

    if not debug:
        return
    root = logging.getLogger()
    root.setLevel(logging.DEBUG)

    # Log info to stderr natively.
    channel = logging.StreamHandler()
    oformat = logging.Formatter()
    channel.setLevel(logging.INFO)
    channel.setFormatter(oformat)
    root.addHandler(channel)

    # Log debug to file, and add prefix.
    if not os.path.exists(LOG_DIR):
        os.mkdir(LOG_DIR)
    log_file = os.path.join(LOG_DIR, 'seshadri.log')
    channel = logging.handlers.TimedRotatingFileHandler(log_file, encoding='utf-8')
    my_pid = os.getpid()
    mformat = '%(asctime)s - {} - %(name)s - %(levelname)s - %(message)s'.format(my_pid)
    oformat = logging.Formatter(mformat)
    channel.setLevel(logging.DEBUG)
    channel.setFormatter(oformat)
    root.addHandler(channel)


# Get logging handle for this file.
log = logging.getLogger('run_seshadri')


def load_config(path=None):
    """Load the rc file and return dict, empty if there is none"""
    path = os.path.expanduser(path or RC_FILE)
    if not os.path.exists(path):
        return {}
    try:
        with open(path, 'r') as ofh:
            conf = yaml.safe_load(ofh)
    except yaml.YAMLError as e:
        raise seshadri.audit.ConfigError('Bad rc file {}: {}'.format(path, e))
    if conf is None:
        return {}
    if not isinstance(conf, dict):
        raise seshadri.audit.ConfigError('rc file {} must be a mapping'.format(path))
    unknown = set(conf) - set(RC_KEYS)
    if unknown:
        raise seshadri.audit.ConfigError('Unknown rc keys {}'.format(sorted(unknown)))
    return conf


def parse_range(text):
    """Parse 'a..b' into an inclusive range"""
    try:
        (low, high) = [int(x) for x in text.split('..')]
    except ValueError:
        raise seshadri.audit.ConfigError('Bad range {!r}, expected a..b'.format(text))
    if low > high:
        raise seshadri.audit.ConfigError('Empty range {!r}'.format(text))
    if high - low + 1 > MAX_RANGE:
        raise seshadri.audit.ConfigError('Range {!r} has more than {} entries'.format(
            text, MAX_RANGE))
    return range(low, high + 1)


def _values(single, ranged, name):
    if single is not None and ranged is not None:
        raise seshadri.audit.ConfigError('Use only one of --{0} and --{0}-range'.format(name))
    if single is not None:
        return [single]
    if ranged is not None:
        return list(parse_range(ranged))
    return None


class RunConfig:
    """Settings for one command, from the rc file and the command line"""

    def __init__(self, args, rc=None):
        rc = rc or {}
        self.command = args.command
        self.debug = args.debug or bool(rc.get('debug', False))
        self.format = args.format or rc.get('format', 'json')
        if self.format not in seshadri.report.FORMATS:
            raise seshadri.audit.ConfigError('Unknown format {!r}'.format(self.format))
        self.workers = args.workers if args.workers is not None else rc.get('workers', 1)
        self.cap = args.cap if args.cap is not None else rc.get('cap')
        self.surface = self._surface(args, rc)
        self.ns = _values(args.n, args.n_range, 'n')
        self.mu = parse_rational(args.mu) if getattr(args, 'mu', None) else None
        self.delta = parse_rational(args.delta) if getattr(args, 'delta', None) else None
        self.weights = None
        if getattr(args, 'weights', None):
            self.weights = seshadri.surface.WeightVector.parse(args.weights)
        self.cert_paths = self._cert_paths(args, rc)
        self.cli_certs = bool(args.certs)
        self.certs = []
        for path in seshadri.certificates.certificate_files(self.cert_paths):
            self.certs.extend(seshadri.certificates.load_certificates(path))
        self.theorem = getattr(args, 'theorem', None)
        self.mu_prime = getattr(args, 'mu_prime', False)
        self.ts = _values(getattr(args, 't', None), getattr(args, 't_range', None), 't')
        self.ms = _values(getattr(args, 'm', None), getattr(args, 'm_range', None), 'm')
        self.list = getattr(args, 'list', False)
        self.check = getattr(args, 'check', None)

    @staticmethod
    def _surface(args, rc):
        if args.surface:
            return seshadri.surface.load_surface(args.surface)
        if args.p2 or 'surface' not in rc:
            return seshadri.surface.SurfaceData.p2()
        return seshadri.surface.SurfaceData.from_config(rc['surface'])

    @staticmethod
    def _cert_paths(args, rc):
        paths = [p for p in os.environ.get(CERT_PATH_ENV, '').split(os.pathsep) if p]
        paths.extend(rc.get('certs') or [])
        paths.extend(args.certs or [])
        return paths


def _fan_out(func, jobs, workers):
    # Results come back in input order either way.
    if workers > 1 and len(jobs) > 1:
        with Pool(workers) as pool:
            return pool.map(func, jobs)
    return [func(job) for job in jobs]


def _bound_for(job):
    (n, config) = job
    if config.mu is None:
        if config.surface.mode != 'P2':
            raise seshadri.audit.ConfigError('Without --mu only the P2 bound is available')
        return seshadri.bounds.cor13_bound(n)
    store = seshadri.certificates.builtin_store(config.surface, n, config.certs)
    if config.theorem == 'a':
        return seshadri.bounds.bound_thm_a(config.surface, n, config.mu, store,
                                           use_mu_prime=config.mu_prime)
    return seshadri.bounds.bound_thm_b(config.surface, n, config.mu, store)


def cmd_bound(config):
    if config.ns is None:
        raise seshadri.audit.ConfigError('bound needs --n or --n-range')
    if config.mu is None and config.cli_certs:
        raise seshadri.audit.ConfigError('--certs needs --mu')
    if config.mu_prime and config.theorem != 'a':
        raise seshadri.audit.ConfigError('--mu-prime needs --theorem a')
    outcomes = _fan_out(_bound_or_failure, [(n, config) for n in config.ns], config.workers)
    results = [res for (res, _) in outcomes if res is not None]
    failures = [e for (_, e) in outcomes if e is not None]
    if results:
        print(seshadri.report.render_bounds(results, config.format))
    if failures:
        for e in failures:
            _report_failure(e)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _bound_or_failure(job):
    # One failing n must not lose the rows for the others.
    try:
        return (_bound_for(job), None)
    except seshadri.audit.HypothesisFailure as e:
        return (None, e)


def _report_failure(e):
    print(str(e), file=sys.stderr)
    if e.report is not None:
        print(seshadri.report.dumps(e.report.as_dict()), file=sys.stderr)


def _params(config, n):
    if config.mu is not None and config.delta is not None:
        raise seshadri.audit.ConfigError('Use only one of --mu and --delta')
    if config.mu is not None:
        return seshadri.surface.EnumParams.from_mu(config.mu, n)
    if config.delta is not None:
        return seshadri.surface.EnumParams.from_delta(config.delta, n)
    raise seshadri.audit.ConfigError('candidates needs --mu or --delta')


def _candidates_for(job):
    (n, config) = job
    return seshadri.enumeration.enumerate_homogeneous(config.surface, n, _params(config, n))


def cmd_candidates(config):
    w = config.weights
    if w is not None and (not w.homogeneous() or not config.surface.c_determined()):
        if config.cap is None:
            raise seshadri.audit.ConfigError('General enumeration needs --cap')
        if config.ns is not None and config.ns != [w.n]:
            raise seshadri.audit.ConfigError('--n does not match the weights')
        delta = _params(config, w.n).delta
        cs = seshadri.enumeration.enumerate_general(config.surface, w, delta, cap=config.cap)
        print(seshadri.report.render_candidates([cs], config.format))
        return EXIT_OK
    ns = config.ns
    if w is not None:
        ns = ns or [w.n]
        if ns != [w.n]:
            raise seshadri.audit.ConfigError('--n does not match the weights')
    if ns is None:
        raise seshadri.audit.ConfigError('candidates needs --n, --n-range or --weights')
    if len(ns) == 1 and config.workers > 1:
        n = ns[0]
        sets = [seshadri.enumeration.enumerate_homogeneous_parallel(
            config.surface, n, _params(config, n), workers=config.workers)]
    else:
        sets = _fan_out(_candidates_for, [(n, config) for n in ns], config.workers)
    print(seshadri.report.render_candidates(sets, config.format))
    return EXIT_OK


def cmd_ample(config):
    if config.surface.mode != 'P2':
        raise seshadri.audit.ConfigError('ample is for the projective plane only')
    if config.ns is None or config.ts is None or config.ms is None:
        raise seshadri.audit.ConfigError('ample needs n, t and m values')
    rows = []
    for n in config.ns:
        for t in config.ts:
            for m in config.ms:
                (status, reason) = seshadri.bounds.ample_check(n, t, m)
                rows.append((n, t, m, status, reason))
    print(seshadri.report.render_ample(rows, config.format))
    return EXIT_OK


def cmd_certs(config):
    if config.check:
        certs = seshadri.certificates.load_certificates(config.check)
        print('{}: {} certificate(s) OK'.format(config.check, len(certs)))
        return EXIT_OK
    certs = list(config.certs)
    if config.ns is not None:
        for n in config.ns:
            certs = list(seshadri.certificates.builtin_store(config.surface, n)) + certs
    if not config.list and not certs:
        raise seshadri.audit.ConfigError('certs needs --list or --check')
    print(seshadri.report.render_certs(certs, config.format))
    return EXIT_OK


COMMANDS = {'bound': cmd_bound,
            'candidates': cmd_candidates,
            'ample': cmd_ample,
            'certs': cmd_certs}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    where = common.add_mutually_exclusive_group()
    where.add_argument('--p2', help='Use the projective plane (default)', action='store_true')
    where.add_argument('--surface', help='YAML file describing the surface')
    common.add_argument('--n', type=int, help='Number of points')
    common.add_argument('--n-range', help='Range of n, as a..b')
    common.add_argument('--certs', action='append', help='Certificate file or directory')
    common.add_argument('--format', choices=seshadri.report.FORMATS, help='Output format')
    common.add_argument('--cap', type=int, help='Cap on sum of h_i^2 in general mode')
    common.add_argument('--workers', type=int, help='Worker processes for ranges')
    common.add_argument('--debug', help='Log to stderr and logs/', action='store_true')

    parser = ArgumentParser(description='Certified bounds on Seshadri constants')
    subparsers = parser.add_subparsers(dest='command', required=True,
                                       parser_class=ArgumentParser)

    bound = subparsers.add_parser('bound', parents=[common], help='Lower bound on epsilon')
    bound.add_argument('--mu', help='Use the certificate theorems at this mu')
    bound.add_argument('--theorem', choices=['a', 'b'], default='b', help='Theorem to apply')
    bound.add_argument('--mu-prime', help='Report the intermediate mu\' bound',
                       action='store_true')

    cands = subparsers.add_parser('candidates', parents=[common], help='Enumerate candidates')
    cands.add_argument('--mu', help='Enumerate at delta = (mu - 1/n)^-1')
    cands.add_argument('--delta', help='Enumerate at this delta')
    cands.add_argument('--weights', help='Comma separated weights')

    ample = subparsers.add_parser('ample', parents=[common], help='Ampleness of tL - mE')
    ample.add_argument('--t', type=int, help='Degree')
    ample.add_argument('--t-range', help='Range of t, as a..b')
    ample.add_argument('--m', type=int, help='Multiplicity')
    ample.add_argument('--m-range', help='Range of m, as a..b')

    certs = subparsers.add_parser('certs', parents=[common], help='Certificate management')
    certs.add_argument('--list', help='List builtin and loaded certificates',
                       action='store_true')
    certs.add_argument('--check', help='Parse a certificate file and report')
    return parser


def main(argv=None):
    """Main"""

    args = build_parser().parse_args(argv)
    try:
        rc = load_config()
        setup_logging(args.debug or bool(rc.get('debug', False)))
        config = RunConfig(args, rc)
        return COMMANDS[config.command](config)
    except seshadri.audit.HypothesisFailure as e:
        _report_failure(e)
        return EXIT_HYPOTHESIS
    except seshadri.audit.InvariantViolation as e:
        print('Internal check failed: {}'.format(e), file=sys.stderr)
        return EXIT_INVARIANT
    except seshadri.audit.SeshadriException as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
