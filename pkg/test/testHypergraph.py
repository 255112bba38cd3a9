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

from fractions import Fraction
import unittest

from hypothesis import given, settings, strategies as st
import numpy as np

from hyperdense.error import DuplicateVertexInSupport, EmptySupport, \
    EmptyVertexSet, IndexOutOfRange, InvalidSelection, IsolatedVertex, \
    NonIntegralWeights, NonPositiveWeight, QuotientCreatesEmptySupport
from hyperdense.hypergraph import SubgraphSelection, WeightedHypergraph, \
    build, density, dual, exact_density, full_selection, induced_edges, \
    quotient

from .instances import k3, k4, k4_pendant, single, small_hypergraphs, star


class testHypergraph(unittest.TestCase):
    def testBuild(self):
        h = single()
        self.assertEqual((h.n, h.m, h.degree), (1, 1, 1))
        self.assertTrue(h.integral_weights)

        h = k3()
        self.assertEqual((h.n, h.m, h.degree), (3, 3, 6))
        self.assertEqual(h.supports(), [[0, 1], [0, 2], [1, 2]])
        self.assertEqual(h.incidence(0).tolist(), [0, 1])
        self.assertEqual(h.incidence(2).tolist(), [1, 2])

        # Supports are stored sorted.
        h = build(3, 1, [1, 1, 1], [1], [[2, 0, 1]])
        self.assertEqual(h.support(0).tolist(), [0, 1, 2])

        self.assertFalse(
            build(1, 1, [1.5], [1], [[0]]).integral_weights)
        self.assertTrue(
            build(1, 1, [2.0], [7], [[0]]).integral_weights)

    def testBuildErrors(self):
        with self.assertRaises(EmptySupport) as cm:
            build(2, 1, [1, 1], [1], [[]])
        self.assertEqual(cm.exception.edge, 0)

        with self.assertRaises(IsolatedVertex) as cm:
            build(3, 1, [1, 1, 1], [1], [[0, 1]])
        self.assertEqual(cm.exception.vertex, 2)

        with self.assertRaisesRegex(NonPositiveWeight, 'vertex 1'):
            build(2, 1, [1, 0], [1], [[0, 1]])

        with self.assertRaisesRegex(NonPositiveWeight, 'edge 0'):
            build(2, 1, [1, 1], [float('nan')], [[0, 1]])

        with self.assertRaises(DuplicateVertexInSupport) as cm:
            build(2, 2, [1, 1], [1, 1], [[0, 1], [1, 1]])
        self.assertEqual((cm.exception.edge, cm.exception.vertex), (1, 1))

        with self.assertRaises(IndexOutOfRange):
            build(2, 1, [1, 1], [1], [[0, 2]])

    def testImmutable(self):
        h = k3()
        with self.assertRaises(ValueError):
            h.vertex_weights[0] = 2.0
        with self.assertRaises(ValueError):
            h.edge_vertices[0] = 2

    def testTranspose(self):
        h = k4_pendant()
        for i in range(h.m):
            for j in h.support(i):
                self.assertIn(i, h.incidence(j))
        for j in range(h.n):
            for i in h.incidence(j):
                self.assertIn(j, h.support(i))

        # vertex_entries points back at the row ordered entries.
        self.assertTrue(np.array_equal(
            h.edge_vertices[h.vertex_entries],
            np.repeat(np.arange(h.n), np.diff(h.vertex_ptr))))

    def testDensity(self):
        self.assertEqual(density(k3()), 1.0)
        self.assertEqual(density(k4()), 1.5)
        self.assertEqual(density(build(1, 1, [2], [3], [[0]])), 1.5)

        self.assertEqual(exact_density(k4()), Fraction(3, 2))
        self.assertEqual(
            exact_density(k4_pendant(), SubgraphSelection(range(4), range(6))),
            Fraction(3, 2))

        with self.assertRaises(EmptyVertexSet):
            density(k3(), SubgraphSelection())

        with self.assertRaises(InvalidSelection):
            density(k3(), SubgraphSelection([0], [0]))

        with self.assertRaises(NonIntegralWeights):
            exact_density(build(1, 1, [0.5], [1], [[0]]))

    def testSelection(self):
        selection = SubgraphSelection([2, 0], [1])
        self.assertEqual(selection.sorted_vertices(), [0, 2])
        self.assertEqual(selection.vertex_set, frozenset([0, 2]))
        self.assertEqual(selection, SubgraphSelection((0, 2), (1,)))

    def testDual(self):
        h = k3()
        d = dual(h)
        self.assertEqual((d.n, d.m), (3, 3))
        self.assertTrue(all(len(x) == 2 for x in d.supports()))
        self.assertEqual(dual(d), h)

        h = build(1, 3, [1], [1, 1, 1], [[0], [0], [0]])
        d = dual(h)
        self.assertEqual((d.n, d.m), (3, 1))
        self.assertEqual(d.supports(), [[0, 1, 2]])

        h = build(2, 1, [2, 3], [7], [[0, 1]])
        d = dual(h)
        self.assertEqual(d.vertex_weights.tolist(), [7])
        self.assertEqual(d.edge_weights.tolist(), [2, 3])

        self.assertAlmostEqual(density(dual(k4())), 1.0 / 1.5, places=12)

    @given(small_hypergraphs())
    @settings(max_examples=100, deadline=None)
    def testDualProperties(self, h):
        self.assertEqual(dual(dual(h)), h)
        self.assertLessEqual(
            abs(density(dual(h)) * density(h) - 1.0), 1.0e-12)

    def testInducedEdges(self):
        self.assertEqual(induced_edges(k3(), [0, 1]), frozenset([0]))
        self.assertEqual(induced_edges(k3(), range(3)), frozenset(range(3)))
        self.assertEqual(induced_edges(k4_pendant(), range(4)),
                         frozenset(range(6)))
        self.assertEqual(induced_edges(star(), [1, 2]), frozenset())

    def testQuotient(self):
        h = k4_pendant()

        result = quotient(h, SubgraphSelection())
        self.assertEqual(result.hypergraph, h)
        self.assertEqual(result.vertex_map.tolist(), list(range(5)))

        result = quotient(h, SubgraphSelection(range(4), range(6)))
        self.assertEqual((result.hypergraph.n, result.hypergraph.m), (1, 1))
        self.assertEqual(result.hypergraph.supports(), [[0]])
        self.assertEqual(result.vertex_map.tolist(), [4])
        self.assertEqual(result.edge_map.tolist(), [6])

        result = quotient(h, full_selection(h))
        self.assertTrue(result.hypergraph.is_empty)
        self.assertEqual(result.hypergraph, WeightedHypergraph.empty())

        # Edge {0, 1} lies inside the removed vertices but is kept.
        with self.assertRaises(QuotientCreatesEmptySupport) as cm:
            quotient(k3(), SubgraphSelection([0, 1], []))
        self.assertEqual(cm.exception.edge, 0)

        with self.assertRaises(InvalidSelection):
            quotient(k3(), SubgraphSelection([0], [0]))

    @given(small_hypergraphs(), st.randoms(use_true_random=False))
    @settings(max_examples=200, deadline=None)
    def testWeightedAverage(self, h, random):
        vertices = [j for j in range(h.n) if random.random() < 0.5]
        if not vertices or len(vertices) == h.n:
            return

        selection = SubgraphSelection(vertices, induced_edges(h, vertices))
        part = density(h, selection)
        residual = quotient(h, selection).hypergraph
        rest = density(residual)

        inside = h.vertex_weight(selection.vertex_set)
        outside = residual.vertex_weight(range(residual.n))
        average = (inside * part + outside * rest) / (inside + outside)
        self.assertLessEqual(abs(average - density(h)),
                             1.0e-12 * density(h))

    @given(small_hypergraphs(), st.randoms(use_true_random=False))
    @settings(max_examples=100, deadline=None)
    def testInducedSuperset(self, h, random):
        vertices = [j for j in range(h.n) if random.random() < 0.6]
        induced = induced_edges(h, vertices)
        edges = [i for i in induced if random.random() < 0.5]
        selection = SubgraphSelection(vertices, edges)
        self.assertTrue(selection.edge_set <= induced)
