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

from __future__ import absolute_import

import os
import shutil
import tempfile
import unittest

from hyperdense.config import OracleLimits, PARALLEL, SEQUENTIAL, \
    SolverConfig, default_config_dir, read_oracle_limits, \
    read_solver_config
from hyperdense.error import HypergraphError


class testConfig(unittest.TestCase):
    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def write(self, text):
        filename = os.path.join(self.tmpdir, 'hyperdense.ini')
        with open(filename, 'w') as f:
            f.write(text)
        return filename

    def testDefaults(self):
        config = SolverConfig()
        self.assertEqual(config.max_sweeps, 10000)
        self.assertEqual(config.mode, SEQUENTIAL)
        self.assertEqual(config.workers, 1)
        self.assertEqual(OracleLimits(), (20, 16))

    def testReplace(self):
        config = SolverConfig().replace(max_sweeps=5, stop_gap=None,
                                        mode=PARALLEL, workers=3)
        self.assertEqual(config.max_sweeps, 5)
        self.assertEqual(config.stop_gap, 1.0e-10)
        self.assertEqual((config.mode, config.workers), (PARALLEL, 3))

        self.assertEqual(sorted(config.as_dict()),
                         sorted(x[0] for x in SolverConfig._fields))

    def testInvalid(self):
        with self.assertRaisesRegex(HypergraphError, 'max_sweeps'):
            SolverConfig(max_sweeps=0)

        with self.assertRaisesRegex(HypergraphError, 'epsilon_nz'):
            SolverConfig(epsilon_nz=-1.0)

        with self.assertRaisesRegex(HypergraphError, 'mode'):
            SolverConfig(mode='async')

    def testRead(self):
        filename = self.write(
            '[solver]\nmax_sweeps = 50\nstop_gap = 1e-6\nmode = parallel\n'
            'workers = 2\n\n[oracle]\nmax_vertices = 12\n')

        config = read_solver_config(filename)
        self.assertEqual(config.max_sweeps, 50)
        self.assertEqual(config.stop_gap, 1.0e-6)
        self.assertEqual(config.mode, PARALLEL)
        self.assertEqual(config.workers, 2)
        self.assertEqual(config.certify_every, 8)

        self.assertEqual(read_oracle_limits(filename), (12, 16))

    def testReadErrors(self):
        with self.assertRaisesRegex(HypergraphError, 'does not exist'):
            read_solver_config(os.path.join(self.tmpdir, 'missing.ini'))

        filename = self.write('[solver]\nmax_sweeps = many\n')
        with self.assertRaisesRegex(HypergraphError, 'max_sweeps'):
            read_solver_config(filename)

        filename = self.write('[oracle]\nmax_incidence = 0\n')
        with self.assertRaisesRegex(HypergraphError, 'oracle limits'):
            read_oracle_limits(filename)

    def testConfigDir(self):
        saved = os.environ.get('HYPERDENSE_ROOT')
        try:
            os.environ['HYPERDENSE_ROOT'] = self.tmpdir
            self.assertEqual(default_config_dir(),
                             os.path.join(self.tmpdir, 'config'))

            # Defaults apply when the directory holds no file.
            self.assertEqual(read_solver_config().max_sweeps, 10000)

            os.mkdir(os.path.join(self.tmpdir, 'config'))
            with open(os.path.join(self.tmpdir, 'config',
                                   'hyperdense.ini'), 'w') as f:
                f.write('[solver]\ncertify_every = 3\n')
            self.assertEqual(read_solver_config().certify_every, 3)

        finally:
            if saved is None:
                del os.environ['HYPERDENSE_ROOT']
            else:
                os.environ['HYPERDENSE_ROOT'] = saved
