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
Solver configuration.

Defaults live in SolverConfig.  An INI file with a [solver] section (and
optionally an [oracle] section) can override them; by default the file
hyperdense.ini is looked for in $HYPERDENSE_ROOT/config or, failing that,
<sys.prefix>/config, where setup.py installs it.
"""

from collections import namedtuple
from configparser import ConfigParser
import logging
import os
import sys

from hyperdense.error import HypergraphError

logger = logging.getLogger(__name__)

CONFIG_FILE = 'hyperdense.ini'

SEQUENTIAL = 'sequential'
PARALLEL = 'parallel'


class OracleLimits(namedtuple('OracleLimits',
                              ('max_vertices', 'max_incidence'))):
    """
    Size limits for the brute force oracles: vertex subsets are enumerated
    up to max_vertices vertices, exterior covers up to max_incidence
    vertices plus edges.
    """

    __slots__ = ()

    def __new__(cls, max_vertices=20, max_incidence=16):
        return super(OracleLimits, cls).__new__(
            cls, max_vertices, max_incidence)


class SolverConfig(object):
    """
    Parameters of the row equalization solver.

    max_sweeps: hard limit on the number of sweeps.
    stop_gap: stop when s_max improved by less than this relative amount
        over the last stop_window sweeps.
    epsilon_nz: an entry counts as nonzero when it carries more than this
        share of its row budget (a_ij w_j / u_i).
    cache_refresh_period: sweeps between full column sum recomputes.
    mode: 'sequential' or 'parallel'.
    workers: number of worker threads in parallel mode.
    certify_every: sweeps between certificate attempts.
    polish_gap, polish_sweeps: convergence target for refine(), used
        before eigenvalue checks and dual support matrices.
    """

    _fields = (
        ('max_sweeps', int),
        ('stop_gap', float),
        ('stop_window', int),
        ('epsilon_nz', float),
        ('cache_refresh_period', int),
        ('mode', str),
        ('workers', int),
        ('certify_every', int),
        ('polish_gap', float),
        ('polish_sweeps', int),
    )

    def __init__(self, max_sweeps=10000, stop_gap=1.0e-10, stop_window=10,
                 epsilon_nz=1.0e-9, cache_refresh_period=16,
                 mode=SEQUENTIAL, workers=1, certify_every=8,
                 polish_gap=1.0e-10, polish_sweeps=100000):
        self.max_sweeps = max_sweeps
        self.stop_gap = stop_gap
        self.stop_window = stop_window
        self.epsilon_nz = epsilon_nz
        self.cache_refresh_period = cache_refresh_period
        self.mode = mode
        self.workers = workers
        self.certify_every = certify_every
        self.polish_gap = polish_gap
        self.polish_sweeps = polish_sweeps

        self.check()

    def check(self):
        for (name, type_) in self._fields:
            if type_ is str:
                continue
            if not getattr(self, name) > 0:
                raise HypergraphError(
                    'solver setting {0} must be positive'.format(name))

        if self.mode not in (SEQUENTIAL, PARALLEL):
            raise HypergraphError(
                'solver mode must be "sequential" or "parallel", '
                'not "{0}"'.format(self.mode))

    def replace(self, **kwargs):
        """
        Copy of this configuration with some settings changed.
        Settings given as None are left alone.
        """

        values = self.as_dict()
        values.update((k, v) for (k, v) in kwargs.items() if v is not None)
        return SolverConfig(**values)

    def as_dict(self):
        return dict((name, getattr(self, name)) for (name, _) in self._fields)

    def __repr__(self):
        return 'SolverConfig({0})'.format(', '.join(
            '{0}={1!r}'.format(name, getattr(self, name))
            for (name, _) in self._fields))


def default_config_dir():
    if 'HYPERDENSE_ROOT' in os.environ:
        return os.path.join(
            os.path.expandvars('$HYPERDENSE_ROOT'), 'config')
    return os.path.join(sys.prefix, 'config')


def _read_parser(path):
    parser = ConfigParser()

    if path is None:
        path = os.path.join(default_config_dir(), CONFIG_FILE)
        if not os.path.exists(path):
            logger.debug('No configuration file at %s, using defaults', path)
            return parser
    elif not os.path.isfile(path):
        raise HypergraphError('config file does not exist: ' + path)

    logger.debug('Reading configuration from %s', path)
    parser.read(path)
    return parser


def read_solver_config(path=None):
    """
    Read the [solver] section of a configuration file into a SolverConfig.
    """

    parser = _read_parser(path)
    values = {}

    if parser.has_section('solver'):
        for (name, type_) in SolverConfig._fields:
            if parser.has_option('solver', name):
                try:
                    values[name] = type_(parser.get('solver', name))
                except ValueError:
                    raise HypergraphError(
                        'invalid value for solver setting ' + name)

    return SolverConfig(**values)


def read_oracle_limits(path=None):
    """
    Read the [oracle] section of a configuration file into OracleLimits.
    """

    parser = _read_parser(path)
    limits = OracleLimits()

    if parser.has_section('oracle'):
        values = {}
        for name in OracleLimits._fields:
            if parser.has_option('oracle', name):
                values[name] = parser.getint('oracle', name)
        limits = limits._replace(**values)

    if min(limits) <= 0:
        raise HypergraphError('oracle limits must be positive')

    return limits
