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

from setuptools import setup
import os
import sys

sys.path.insert(0, 'lib')
from hyperdense.__version__ import version

if 'HYPERDENSE_ROOT' in os.environ:
    configdir = os.path.join(os.path.expandvars('$HYPERDENSE_ROOT'), 'config')
else:
    configdir = os.path.join(sys.prefix, 'config')
configfiles = [os.path.join('config', f) for f in os.listdir('config')]

setup(
    name='hyperdense',
    version=version,
    description='Provably densest subgraphs and spectral decompositions '
                'of weighted hypergraphs',
    author='East Asian Observatory',
    license='GPLv3',
    package_dir={'': 'lib'},
    packages=[
        'hyperdense',
        'hyperdense.io',
    ],
    scripts=[
        'scripts/hyperdense',
    ],
    # config files are not package data and must be located
    # in ../config relative to the executables in scripts
    data_files=[(configdir, configfiles)],
    provides=['hyperdense'],
    python_requires='>=3.8',
    install_requires=[
        'numba',
        'numpy',
        'scipy',
    ],
    extras_require={
        'test': [
            'hypothesis',
        ],
    },
)
