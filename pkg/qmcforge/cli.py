# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Command line front end.

Exit codes: 0 for success or a passed certificate, 1 for a failed
certificate, 2 for usage and precondition errors, 3 for resource caps.
"""

import argparse
import sys

from qmcforge.api import ForgeEnvironment, QmcError, RuleSystem, UsageError
from qmcforge.api import _
from qmcforge.formula import parse_weights
from qmcforge.model import read_json, write_csv, write_json
from qmcforge.util import loglog_slope, primes_between
from qmcforge.weights import SpaceParams

EXIT_OK = 0
EXIT_FAILED = 1

DEFAULT_ALPHA = 1.0
DEFAULT_WEIGHTS = 'product:1'

SWEEP_COLUMNS = ['N_or_m', 'P', 'sqrtP', 'prop_bound', 'thm1_rhs']
SUBSET_COLUMNS = ['u', 'inner', 'phi', 'phi0', 'mu']
SELECTORS = ['thm1', 'thm2', 'prop1', 'prop2', 'eq1', 'jensen']


def parse_grid(text):
    """Grid sizes from `17,31`, `3..6` or `primes:17..31`.

    >>> parse_grid('primes:17..31')
    [17, 19, 23, 29, 31]
    >>> parse_grid('3..6')
    [3, 4, 5, 6]
    >>> parse_grid('16, 32')
    [16, 32]
    """
    if isinstance(text, (list, tuple)):
        values = [int(v) for v in text]
    else:
        text = str(text).strip()
        primes = text.startswith('primes:')
        if primes:
            text = text[len('primes:'):]
        try:
            if '..' in text:
                lo, hi = (int(v) for v in text.split('..', 1))
                values = primes_between(lo, hi) if primes \
                    else list(range(lo, hi + 1))
            else:
                values = [int(v) for v in text.split(',') if v.strip()]
        except ValueError:
            raise UsageError(_("Malformed grid '%s'") % text)
    if not values:
        raise UsageError(_("The grid is empty"))
    return values


def _modulus(text):
    if text is None or isinstance(text, list):
        return text
    try:
        return [int(c) for c in str(text).split(',')]
    except ValueError:
        raise UsageError(_("Malformed modulus '%s'; expected coefficients "
                           "lowest degree first, e.g. 1,1,0,1") % text)


class Command(object):
    """One subcommand run against a `ForgeEnvironment`."""

    def __init__(self, env, args, stdout):
        self.env = env
        self.args = args
        self.stdout = stdout
        self.system = RuleSystem(env)
        self.stored = {}

    def params(self, alpha=None, weights=None):
        """Space parameters from the flags, else from the loaded rule file,
        else the defaults."""
        for value in (self.args.alpha, self.stored.get('alpha'),
                      DEFAULT_ALPHA):
            if alpha is None:
                alpha = value
        for value in (self.args.weights, self.stored.get('weights'),
                      DEFAULT_WEIGHTS):
            if weights is None:
                weights = value
        return SpaceParams(float(alpha),
                           parse_weights(weights, self.system.s_max))

    def params_prime(self):
        args = self.args
        if args.alpha_prime is None and args.weights_prime is None:
            return None
        return self.params(args.alpha_prime, args.weights_prime)

    def require(self, *names):
        missing = ['--%s' % name.replace('_', '-') for name in names
                   if getattr(self.args, name, None) is None]
        if missing:
            raise UsageError(_("Missing %s") % ', '.join(missing))

    def size(self):
        args = self.args
        if args.kind == 'lattice':
            self.require('N')
            return args.N
        self.require('m')
        return (args.b, args.m)

    def load(self):
        data = read_json(self.args.rule)
        kind = data.get('type') if isinstance(data, dict) else None
        rule = self.system.get_family(kind).load_rule(data)
        self.stored = data
        return rule


class ConstructCommand(Command):

    def run(self):
        args = self.args
        self.require('kind', 's')
        family = self.system.get_family(args.kind)
        params = self.params()
        rule, trace = family.construct(self.size(), args.s, params,
                                       fast=args.fast,
                                       modulus=_modulus(args.p),
                                       method=args.method, seed=args.seed)
        alpha = params.integer_alpha
        data = rule.to_dict()
        data.update({
            'alpha': params.alpha if alpha is None else alpha,
            'weights': params.weights.to_dict(),
            'trace': trace.to_list() if trace else [],
            'method': args.method, 'seed': args.seed,
            'certifiable': trace.certifiable if trace else None})
        if args.out:
            write_json(data, args.out)
            write_json(data['trace'], stream=self.stdout)
        else:
            write_json(data, stream=self.stdout)
        return EXIT_OK


class EvaluateCommand(Command):

    def run(self):
        args = self.args
        rule = self.load()
        family = self.system.family_for(rule)
        weights_prime = None
        if args.weights_prime is not None:
            weights_prime = parse_weights(args.weights_prime,
                                          self.system.s_max)
        report = family.evaluate(rule, self.params(), rho=args.rho,
                                 discrepancy=args.discrepancy,
                                 weights_prime=weights_prime)
        if args.format == 'csv':
            write_csv(report['per_subset'], SUBSET_COLUMNS, self.stdout,
                      footer=['P=%r' % report['P']])
        else:
            write_json(report, stream=self.stdout)
        return EXIT_OK


class CertifyCommand(Command):

    def run(self):
        args = self.args
        rule = self.load()
        family = self.system.family_for(rule)
        cert = family.certify(rule, args.selector, self.params(),
                              self.params_prime(), lam=args.lam,
                              delta=args.delta)
        write_json(cert.to_dict(), stream=self.stdout)
        return EXIT_OK if cert.passed else EXIT_FAILED


class SweepCommand(Command):

    def run(self):
        args = self.args
        self.require('kind', 's', 'grid')
        family = self.system.get_family(args.kind)
        grid = parse_grid(args.grid)
        params, params_prime = self.params(), self.params_prime()
        rows = []
        for size in grid:
            cell = size if args.kind == 'lattice' else (args.b, size)
            rows.append(family.sweep_cell(cell, args.s, params, params_prime,
                                          certify=args.certify,
                                          fast=args.fast))
        columns = list(SWEEP_COLUMNS)
        if args.certify:
            columns.append('passed')
        footer = []
        if len(rows) >= 2:
            points = [row['N_or_m'] if args.kind == 'lattice'
                      else args.b ** row['N_or_m'] for row in rows]
            footer.append('slope_sqrtP=%.6f' % loglog_slope(
                points, [row['sqrtP'] for row in rows]))
        if args.out:
            with open(args.out, 'w', encoding='utf-8') as f:
                write_csv(rows, columns, f, footer)
        else:
            write_csv(rows, columns, self.stdout, footer)
        if args.certify and not all(row['passed'] for row in rows):
            return EXIT_FAILED
        return EXIT_OK


COMMANDS = {'construct': ConstructCommand, 'evaluate': EvaluateCommand,
            'certify': CertifyCommand, 'sweep': SweepCommand}


def _space_arguments(parser, prime=False):
    parser.add_argument('--alpha', type=float,
                        help="smoothness alpha (default: the rule file's, "
                             "else %s)" % DEFAULT_ALPHA)
    parser.add_argument('--weights',
                        help="weights, e.g. 'product:j^-2' or "
                             "'pod:k!;j^-2' (default: the rule file's, else "
                             "'%s')" % DEFAULT_WEIGHTS)
    if prime:
        parser.add_argument('--alpha-prime', dest='alpha_prime', type=float,
                            help="target smoothness alpha'")
        parser.add_argument('--weights-prime', dest='weights_prime',
                            help="target weights gamma'")


def _size_arguments(parser):
    parser.add_argument('--kind', choices=['lattice', 'poly-lattice'])
    parser.add_argument('--N', dest='N', type=int, help="number of points")
    parser.add_argument('--b', dest='b', type=int, default=2,
                        help="prime base of polynomial lattice rules")
    parser.add_argument('--m', dest='m', type=int,
                        help="modulus degree; b^m points")
    parser.add_argument('--s', dest='s', type=int, help="dimension")
    parser.add_argument('--fast', action='store_true',
                        help="fast CBC (prime N, product weights)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='qmcforge', allow_abbrev=False,
        description="Construct lattice and polynomial lattice rules and "
                    "certify their error bounds.")
    parser.add_argument('--settings', help="ini file with [qmcforge] and "
                                           "[logging] sections")
    parser.add_argument('--config', help="JSON file whose keys replace "
                                         "command line flags")
    parser.add_argument('--seed', type=int, default=0,
                        help="seed of random rules")
    parser.add_argument('--log-level', dest='log_level',
                        choices=['CRITICAL', 'ERROR', 'WARNING', 'INFO',
                                 'DEBUG'])
    commands = parser.add_subparsers(dest='command', metavar='command')
    subparsers = {}

    construct = commands.add_parser('construct', help="build a rule")
    _size_arguments(construct)
    _space_arguments(construct)
    construct.add_argument('--p', dest='p',
                           help="modulus coefficients, lowest first")
    construct.add_argument('--method', choices=['cbc', 'random'],
                           default='cbc')
    construct.add_argument('--out', help="rule file to write")
    subparsers['construct'] = construct

    evaluate = commands.add_parser('evaluate', help="merits of a rule")
    evaluate.add_argument('rule', help="rule file")
    _space_arguments(evaluate)
    evaluate.add_argument('--weights-prime', dest='weights_prime',
                          help="weights of the discrepancy bounds")
    evaluate.add_argument('--rho', action='store_true',
                          help="include the Zaremba index")
    evaluate.add_argument('--discrepancy', action='store_true',
                          help="include star discrepancy bounds")
    evaluate.add_argument('--format', choices=['json', 'csv'],
                          default='json')
    subparsers['evaluate'] = evaluate

    certify = commands.add_parser('certify', help="check a bound")
    certify.add_argument('selector', choices=SELECTORS)
    certify.add_argument('rule', help="rule file")
    _space_arguments(certify, prime=True)
    certify.add_argument('--lambda', dest='lam', type=float, default=1.0)
    certify.add_argument('--delta', type=float, default=0.5)
    subparsers['certify'] = certify

    sweep = commands.add_parser('sweep', help="construct over a size grid")
    _size_arguments(sweep)
    _space_arguments(sweep, prime=True)
    sweep.add_argument('--grid', help="'17,31', '3..6' or "
                                      "'primes:17..251'")
    sweep.add_argument('--certify', choices=SELECTORS)
    sweep.add_argument('--out', help="CSV file to write")
    subparsers['sweep'] = sweep
    return parser, subparsers


def _apply_config(argv, parser, subparsers):
    """Use the keys of the `--config` JSON file as flag defaults."""
    known, _rest = parser.parse_known_args(argv)
    if not known.config:
        return
    config = read_json(known.config)
    if not isinstance(config, dict):
        raise UsageError(_("%s must hold a JSON object") % known.config)
    config = dict((key.replace('-', '_'), value)
                  for key, value in config.items())
    parser.set_defaults(**config)
    for sub in subparsers.values():
        sub.set_defaults(**config)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser, subparsers = build_parser()
    try:
        _apply_config(argv, parser, subparsers)
    except QmcError as e:
        stderr.write('qmcforge: error: %s\n' % e.message)
        return e.exit_code
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(stderr)
        return 2
    env = ForgeEnvironment(args.settings)
    try:
        if args.log_level:
            env.setup_log(args.log_level)
        return COMMANDS[args.command](env, args, stdout).run()
    except QmcError as e:
        env.log.debug("%s failed", args.command, exc_info=True)
        stderr.write('qmcforge: error: %s\n' % e.message)
        return e.exit_code
    finally:
        env.shutdown()


if __name__ == '__main__':
    sys.exit(main())
