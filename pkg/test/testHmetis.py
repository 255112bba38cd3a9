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

from hyperdense.error import ParseError
from hyperdense.hypergraph import build, density
from hyperdense.io.hmetis import parse_hypergraph, read_hypergraph, \
    read_hypergraph_text, serialize_hypergraph, write_hypergraph

from .instances import k3, k4_pendant, random_instance

UNWEIGHTED = '''% K4 plus a pendant edge
7 5
1 2
1 3
1 4
2 3
2 4
3 4
4 5
'''

WEIGHTED = '''2 3 11
% edge weight first
3 1 2
1 2 3
5
1
2
'''


class testHmetis(unittest.TestCase):
    def testUnweighted(self):
        h = parse_hypergraph(UNWEIGHTED)
        self.assertEqual(h, k4_pendant())

    def testWeighted(self):
        h = parse_hypergraph(WEIGHTED)
        self.assertEqual((h.n, h.m), (3, 2))
        self.assertEqual(h.edge_weights.tolist(), [3, 1])
        self.assertEqual(h.vertex_weights.tolist(), [5, 1, 2])
        self.assertEqual(h.supports(), [[0, 1], [1, 2]])

    def testFormatCodes(self):
        h = parse_hypergraph('1 2 1\n2.5 1 2\n')
        self.assertEqual(h.edge_weights.tolist(), [2.5])
        self.assertFalse(h.integral_weights)

        h = parse_hypergraph('1 2 10\n1 2\n4\n7\n')
        self.assertEqual(h.edge_weights.tolist(), [1])
        self.assertEqual(h.vertex_weights.tolist(), [4, 7])

        h = parse_hypergraph('1 2 0\n2 1\n')
        self.assertEqual(h.supports(), [[0, 1]])

        h = parse_hypergraph('3 3 0\n1 2\n1 3\n2 3\n')
        self.assertEqual(h, k3())

        h = parse_hypergraph('1 1 11\n3 1\n2\n')
        self.assertEqual(density(h), 1.5)

        with self.assertRaisesRegex(ParseError, 'empty support'):
            parse_hypergraph('3 3 0\n1 2\n\n2 3\n')

    def testErrors(self):
        for (text, line, message) in (
                ('', None, 'missing header'),
                ('% only a comment\n', None, 'missing header'),
                ('1\n1\n', 1, 'header must be'),
                ('1 x\n1\n', 1, 'integers'),
                ('1 1 2\n1\n', 1, 'unknown fmt'),
                ('2 2\n1 2\n', None, 'expected 2 edge lines'),
                ('1 2\n1 3\n', 2, 'out of range'),
                ('1 2\n1 0\n', 2, 'out of range'),
                ('1 2\n1 a\n', 2, 'integers'),
                ('1 2 1\nx 1 2\n', 2, 'invalid weight'),
                ('1 2 1\n\n', 2, 'missing edge weight'),
                ('1 2 10\n1 2\n1\n', None, 'vertex weight lines'),
                ('1 2 10\n1 2\n1 2\n3\n', 3, 'single vertex weight'),
                ('1 2\n1 2\n1 2\n', 3, 'unexpected content'),
                ('2 2\n1 2\n\n', 3, 'empty support'),
                ('1 2\n1 1\n', 2, 'more than once'),
                ('1 2 1\n0 1 2\n', 2, 'weight 0'),
                ('1 2 10\n1 2\n1\n-1\n', 4, 'weight -1'),
                ('1 3\n1 2\n', None, 'vertex id 3 in the file')):
            with self.assertRaisesRegex(ParseError, message) as cm:
                parse_hypergraph(text)
            self.assertEqual(cm.exception.line, line, repr(text))

    def testStrip(self):
        text = '3 4\n1 2\n\n2 4\n'
        with self.assertRaises(ParseError):
            parse_hypergraph(text)

        h = parse_hypergraph(text, strip=True)
        self.assertEqual((h.n, h.m), (3, 2))
        self.assertEqual(h.supports(), [[0, 1], [1, 2]])

        raw = read_hypergraph_text(text)
        self.assertEqual(raw.supports, [[0, 1], [], [1, 3]])
        self.assertEqual(raw.edge_lines, [2, 3, 4])

    def testSerialize(self):
        self.assertEqual(serialize_hypergraph(k4_pendant()),
                         UNWEIGHTED.split('\n', 1)[1])

        h = build(3, 2, [5, 1, 2], [3, 1], [[0, 1], [1, 2]])
        self.assertEqual(serialize_hypergraph(h),
                         '2 3 11\n3 1 2\n1 2 3\n5\n1\n2\n')

        h = build(2, 1, [1, 1], [0.1], [[0, 1]])
        self.assertEqual(serialize_hypergraph(h), '1 2 1\n0.1 1 2\n')

        for seed in range(10):
            h = random_instance(seed, weight_range=(0.5, 3.0),
                                integral=False)
            self.assertEqual(parse_hypergraph(serialize_hypergraph(h)), h)

    def testFiles(self):
        tmpdir = tempfile.mkdtemp()
        try:
            filename = os.path.join(tmpdir, 'k4.hgr')
            write_hypergraph(filename, k4_pendant())
            self.assertEqual(read_hypergraph(filename), k4_pendant())
        finally:
            shutil.rmtree(tmpdir)
