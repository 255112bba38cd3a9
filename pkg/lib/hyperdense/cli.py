# Copyright (C) 2026 East Asian Observatory.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""
Command line interface: the hyperdense script.

Reports are written as JSON to standard output (or --output).  Errors
are written as {"error": ..., "message": ...} to standard error, with
exit status 1 for invalid input or failed verification and 2 for usage
errors.
"""

import argparse
import json
import logging
import os
import sys

from hyperdense.__version__ import version
from hyperdense.config import PARALLEL, SEQUENTIAL, \
    read_oracle_limits, read_solver_config
from hyperdense.decomposition import dm_decompose, same_density, \
    spectral_decompose, transport_dual
from hyperdense.error import HypergraphError, TooLarge, UsageError
from hyperdense.generate import generate_random
from hyperdense.hypergraph import dual, exact_density
from hyperdense.io import report
from hyperdense.io.hmetis import read_hypergraph, serialize_hypergraph
from hyperdense.oracle import brute_force_densest, brute_force_dm, \
    brute_force_spectral
from hyperdense.solver import refine, solve
from hyperdense.support import dual_support_matrix, \
    gram_dominant_eigenvalue, validate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class ArgumentParser(argparse.ArgumentParser):
    """
    Argument parser raising UsageError instead of exiting.
    """

    def error(self, message):
        raise UsageError(message)


def _path(value):
    return os.path.abspath(os.path.expandvars(os.path.expanduser(value)))


class cli(object):
    """
    The hyperdense command: solve, decompose and verify densest subgraph
    problems on hypergraph files.
    """

    def __init__(self, stdout=None, stderr=None):
        self.stdout = sys.stdout if stdout is None else stdout
        self.stderr = sys.stderr if stderr is None else stderr

    def make_parser(self, progname):
        common = ArgumentParser(add_help=False)
        common.add_argument(
            '--verbose', '-v',
            action='store_true',
            help='show debugging messages')
        common.add_argument(
            '--quiet', '-q',
            action='store_true',
            help='show only warning and error messages')
        common.add_argument(
            '--config',
            help='path to a hyperdense.ini configuration file')
        common.add_argument(
            '--output', '-o',
            help='write the result to this file instead of standard output')

        solver = ArgumentParser(add_help=False)
        solver.add_argument(
            '--max-sweeps',
            type=int,
            dest='max_sweeps',
            help='limit on the number of solver sweeps')
        solver.add_argument(
            '--stop-gap',
            type=float,
            dest='stop_gap',
            help='relative s_max improvement below which the solver stops')
        solver.add_argument(
            '--threads',
            type=int,
            help='sweep in parallel with this many worker threads')

        infile = ArgumentParser(add_help=False)
        infile.add_argument(
            'file',
            help='hypergraph file in hMETIS format')
        infile.add_argument(
            '--strip-degenerate',
            action='store_true',
            dest='strip_degenerate',
            help='remove empty edges and isolated vertices instead of '
                 'rejecting the file')

        ap = ArgumentParser(progname)
        sub = ap.add_subparsers(dest='command', metavar='command')
        sub.required = True

        p = sub.add_parser(
            'solve', parents=[common, solver, infile],
            help='find and certify a densest subgraph')
        p.add_argument(
            '--trace',
            help='write per-sweep JSON lines to this file')
        p.add_argument(
            '--matrix',
            help='write the final support matrix as JSON to this file')

        p = sub.add_parser(
            'decompose', parents=[common, solver, infile],
            help='spectral decomposition')
        p.add_argument(
            '--dual',
            action='store_true',
            help='also report the decomposition of the dual hypergraph '
                 'and check the dual support matrix')

        sub.add_parser(
            'dual', parents=[common, infile],
            help='write the dual hypergraph')

        sub.add_parser(
            'dm', parents=[common, solver, infile],
            help='Dulmage-Mendelsohn decomposition (unit weights)')

        sub.add_parser(
            'oracle', parents=[common, infile],
            help='brute force results for small hypergraphs')

        p = sub.add_parser(
            'verify', parents=[common, solver],
            help='compare the solver with the brute force oracle')
        p.add_argument(
            'file', nargs='?',
            help='hypergraph file (omit with --random)')
        p.add_argument(
            '--strip-degenerate',
            action='store_true',
            dest='strip_degenerate',
            help='remove empty edges and isolated vertices')
        p.add_argument(
            '--random',
            type=int,
            metavar='COUNT',
            help='verify this many generated instances')
        self._add_generator_arguments(p, n=10, m=15, min_size=1, max_size=4)

        p = sub.add_parser(
            'gen', parents=[common],
            help='write a random hypergraph')
        self._add_generator_arguments(p, n=10, m=15, min_size=2, max_size=4)

        p = sub.add_parser(
            'eigen', parents=[common, solver, infile],
            help='compare the Gram matrix eigenvalue with the density')
        p.add_argument(
            '--tol',
            type=float,
            default=1.0e-10,
            help='power iteration residual tolerance')
        p.add_argument(
            '--max-iters',
            type=int,
            default=10000,
            dest='max_iters',
            help='power iteration limit')

        return ap

    def _add_generator_arguments(self, p, n, m, min_size, max_size):
        p.add_argument('--n', type=int, default=n,
                       help='number of vertices')
        p.add_argument('--m', type=int, default=m,
                       help='number of edges')
        p.add_argument('--min-size', type=int, default=min_size,
                       dest='min_size', help='smallest edge size')
        p.add_argument('--max-size', type=int, default=max_size,
                       dest='max_size', help='largest edge size')
        p.add_argument('--min-weight', type=float, default=1,
                       dest='min_weight', help='smallest weight')
        p.add_argument('--max-weight', type=float, default=1,
                       dest='max_weight', help='largest weight')
        p.add_argument('--real', action='store_true',
                       help='draw real rather than integer weights')
        p.add_argument('--seed', type=int, default=0,
                       help='random seed')

    def run(self, argv=None):
        """
        Parse the command line and run the command.

        :return: exit status.
        """

        if sys.argv[0] and sys.argv[0] != '-c':
            progname = os.path.basename(sys.argv[0])
        else:
            progname = 'hyperdense'

        try:
            args = self.make_parser(progname).parse_args(argv)
        except UsageError as e:
            self.write_error(e)
            return EXIT_USAGE
        except SystemExit as e:
            # --help
            return e.code

        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        elif args.quiet:
            logging.getLogger().setLevel(logging.WARNING)

        logger.info(progname)
        logger.info('hyperdense version = %s', version)
        for attr in sorted(vars(args)):
            logger.info('%-18s = %s', attr, getattr(args, attr))

        try:
            self.config = self.solver_config(args)
            self.limits = read_oracle_limits(
                None if args.config is None else _path(args.config))

            status = getattr(self, 'do_' + args.command)(args)

            logger.info('DONE')

        except UsageError as e:
            self.write_error(e)
            return EXIT_USAGE

        except HypergraphError as e:
            logger.debug('Error in %s', args.command, exc_info=True)
            self.write_error(e)
            return EXIT_FAILURE

        except Exception as e:
            logger.exception('ERROR')
            self.write_error(e)
            return EXIT_FAILURE

        return status

    def solver_config(self, args):
        config = read_solver_config(
            None if args.config is None else _path(args.config))

        threads = getattr(args, 'threads', None)
        if threads is not None and threads < 1:
            raise UsageError('--threads must be at least 1')

        return config.replace(
            max_sweeps=getattr(args, 'max_sweeps', None),
            stop_gap=getattr(args, 'stop_gap', None),
            mode=None if threads is None else (
                PARALLEL if threads > 1 else SEQUENTIAL),
            workers=threads)

    def write_error(self, error):
        self.stderr.write(json.dumps({
            'error': type(error).__name__,
            'message': str(error),
        }))
        self.stderr.write('\n')

    def write_output(self, args, text):
        if args.output:
            with open(_path(args.output), 'w') as f:
                f.write(text)
        else:
            self.stdout.write(text)

    def write_report(self, args, data):
        self.write_output(args, report.dumps(data) + '\n')

    def read(self, args):
        if not args.file:
            raise UsageError('a hypergraph file is required')
        return read_hypergraph(_path(args.file), strip=args.strip_degenerate)

    def do_solve(self, args):
        h = self.read(args)
        result = solve(h, self.config)

        if args.trace:
            with open(_path(args.trace), 'w') as f:
                result.trace.write_jsonl(f)

        if args.matrix:
            with open(_path(args.matrix), 'w') as f:
                f.write(report.dumps(
                    report.support_matrix_section(result.matrix)))

        self.write_report(args, report.solve_report(h, result))
        return EXIT_OK

    def do_decompose(self, args):
        h = self.read(args)
        decomposition = spectral_decompose(h, self.config)

        sections = {
            'decomposition': report.decomposition_section(decomposition),
        }

        if args.dual:
            dual_decomposition = transport_dual(decomposition)
            dual_decomposition.validate(dual(h))
            sections['dual_decomposition'] = report.decomposition_section(
                dual_decomposition)

            # Drive every column towards its factor density so that the
            # cross-factor entries vanish.
            matrix = solve(h, self.config).matrix
            targets = decomposition.vertex_factors()
            densities = [x.density for x in decomposition.factors]
            refine(matrix, [densities[r] for r in targets],
                   self.config.polish_gap, self.config.polish_sweeps)

            dual_matrix = dual_support_matrix(
                matrix, decomposition, self.config.epsilon_nz)
            check = validate(dual_matrix)
            sections['dual_support_matrix'] = {
                'valid': check.is_valid,
                's_max': float(max(dual_matrix.column_sums)),
            }

        self.write_report(args, report.report('decompose', h, **sections))
        return EXIT_OK

    def do_dual(self, args):
        h = self.read(args)
        self.write_output(args, serialize_hypergraph(dual(h)))
        return EXIT_OK

    def do_dm(self, args):
        h = self.read(args)
        dm = dm_decompose(h, self.config)
        self.write_report(args, report.report(
            'dm', h, dm=report.dm_section(dm)))
        return EXIT_OK

    def do_oracle(self, args):
        h = self.read(args)
        (best, selection) = brute_force_densest(h, self.limits)
        sections = {
            'result': report.selection_section(best, best, selection),
            'decomposition': report.decomposition_section(
                brute_force_spectral(h, self.limits)),
        }

        if h.unit_weights:
            try:
                sections['dm'] = report.dm_section(
                    brute_force_dm(h, self.limits))
            except TooLarge as e:
                logger.warning('Skipping exterior cover oracle: %s', e)

        self.write_report(args, report.report('oracle', h, **sections))
        return EXIT_OK

    def do_verify(self, args):
        if args.random is not None:
            if args.file:
                raise UsageError('give either a file or --random, not both')
            instances = [
                ('seed {0}'.format(args.seed + k), generate_random(
                    args.n, args.m, (args.min_size, args.max_size),
                    (args.min_weight, args.max_weight),
                    seed=args.seed + k, integral=not args.real))
                for k in range(args.random)]
        else:
            instances = [(args.file, self.read(args))]

        results = []
        for (name, h) in instances:
            outcome = self.verify_instance(h)
            outcome['instance'] = name
            if not outcome['match']:
                logger.error('Mismatch for %s: %s', name, outcome['reason'])
            results.append(outcome)

        mismatches = sum(1 for x in results if not x['match'])
        self.write_report(args, {
            'schema': report.SCHEMA,
            'command': 'verify',
            'instances': results,
            'mismatches': mismatches,
        })

        return EXIT_FAILURE if mismatches else EXIT_OK

    def verify_instance(self, h):
        """
        Solve and decompose one hypergraph, compare with the oracles.
        """

        certificate = solve(h, self.config).certificate
        (best, selection) = brute_force_densest(h, self.limits)

        outcome = {
            'solver': report.exact_section(certificate.exact_density),
            'oracle': report.exact_section(best),
            'optimal': bool(certificate.optimal),
        }

        reason = None
        if not certificate.optimal:
            reason = 'solver did not certify optimality'
        elif certificate.exact_density != best:
            reason = 'certified density differs from the oracle'
        elif exact_density(h, certificate.selection) != best:
            reason = 'extracted selection does not reach the oracle density'
        elif not certificate.selection.vertex_set <= selection.vertex_set:
            reason = 'selection is outside the maximal densest subgraph'
        elif not spectral_decompose(h, self.config).matches(
                brute_force_spectral(h, self.limits)):
            reason = 'spectral decomposition differs from the oracle'
        elif (h.unit_weights and
                h.n + h.m <= self.limits.max_incidence and
                dm_decompose(h, self.config) != brute_force_dm(
                    h, self.limits)):
            reason = 'D-M decomposition differs from the oracle'

        outcome['match'] = reason is None
        outcome['reason'] = reason
        return outcome

    def do_gen(self, args):
        h = generate_random(
            args.n, args.m, (args.min_size, args.max_size),
            (args.min_weight, args.max_weight),
            seed=args.seed, integral=not args.real)
        self.write_output(args, serialize_hypergraph(h))
        return EXIT_OK

    def do_eigen(self, args):
        h = self.read(args)
        result = solve(h, self.config)
        certificate = result.certificate

        sweeps = refine(result.matrix, certificate.density,
                        self.config.polish_gap, self.config.polish_sweeps)
        eigen = gram_dominant_eigenvalue(
            result.matrix, tol=args.tol, max_iters=args.max_iters)

        if not same_density(eigen.eigenvalue, certificate.density):
            logger.info('Eigenvalue %.12g differs from density %.12g',
                        eigen.eigenvalue, certificate.density)

        self.write_report(args, report.report(
            'eigen', h,
            eigen=report.eigen_section(eigen, certificate.density, sweeps),
            certificate=report.certificate_section(certificate)))
        return EXIT_OK


def main():
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s %(message)s')
    return cli().run()
