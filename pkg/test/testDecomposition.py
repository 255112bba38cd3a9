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

import numpy as np

from hyperdense.certificate import Certificate, best_certificate, \
    better_certificate, certify, extract_densest, extract_level_set, \
    upper_bound
from hyperdense.config import SolverConfig
from hyperdense.decomposition import DMDecomposition, Factor, \
    SpectralDecomposition, dm_bucket, dm_decompose, same_density, \
    spectral_decompose, transport_dual
from hyperdense.error import DecompositionInvariantViolation, \
    InvalidSelection, NonUnitWeights
from hyperdense.hypergraph import SubgraphSelection, build, density, dual
from hyperdense.oracle import brute_force_dm, brute_force_spectral
from hyperdense.solver import refine, solve
from hyperdense.support import dual_support_matrix, \
    gram_dominant_eigenvalue, init_support_matrix, validate

from .instances import disjoint_union, k3, k4, k4_pendant, loops, path, \
    random_instance, single, star
from .testSupportMatrix import k4_pendant_matrix

K4 = SubgraphSelection(range(4), range(6))


class testCertificate(unittest.TestCase):
    def testExtract(self):
        matrix = k4_pendant_matrix()
        self.assertEqual(extract_densest(matrix), K4)
        self.assertEqual(extract_level_set(matrix), K4)

        # A nonzero pendant entry pulls the closure across.
        matrix = k4_pendant_matrix(0.02)
        self.assertEqual(extract_densest(matrix).sorted_vertices(),
                         list(range(5)))
        self.assertEqual(extract_level_set(matrix).sorted_vertices(),
                         [0, 1, 2, 3])

    def testLevelSetTies(self):
        # Equal column sums everywhere: the whole graph is the only prefix.
        matrix = init_support_matrix(disjoint_union(k3(), k3()))
        self.assertEqual(extract_level_set(matrix).sorted_vertices(),
                         list(range(6)))

    def testCertify(self):
        h = k4_pendant()

        certificate = certify(h, K4, k4_pendant_matrix())
        self.assertTrue(certificate.optimal)
        self.assertEqual(certificate.exact_density, Fraction(3, 2))
        self.assertEqual(certificate.upper_bound, 1.5)
        self.assertEqual(certificate.gap, 0.0)

        # Gap 0.02 is below 1 / (wt(V') wt(V)) = 1 / 20.
        certificate = certify(h, K4, k4_pendant_matrix(0.02))
        self.assertTrue(certificate.optimal)
        self.assertAlmostEqual(certificate.upper_bound, 1.52)

        # Gap 0.06 is not.
        certificate = certify(h, K4, k4_pendant_matrix(0.06))
        self.assertFalse(certificate.optimal)

        certificate = certify(
            h, SubgraphSelection([3, 4], [6]), k4_pendant_matrix())
        self.assertFalse(certificate.optimal)
        self.assertEqual(certificate.exact_density, Fraction(1, 2))

        with self.assertRaises(InvalidSelection):
            certify(h, SubgraphSelection(), k4_pendant_matrix())

        with self.assertRaises(InvalidSelection):
            certify(h, SubgraphSelection([4], [6]), k4_pendant_matrix())

    def testCertifyRealWeights(self):
        h = build(2, 1, [0.5, 1.5], [1.0], [[0, 1]])
        certificate = certify(h, SubgraphSelection([0, 1], [0]),
                              init_support_matrix(h))
        self.assertFalse(certificate.optimal)
        self.assertIsNone(certificate.exact_density)
        self.assertAlmostEqual(certificate.density, 0.5)

    def testUpperBound(self):
        for seed in range(20):
            h = random_instance(seed, weight_range=(1, 3))
            matrix = init_support_matrix(h)
            self.assertGreaterEqual(
                upper_bound(matrix), np.max(matrix.column_sums) *
                (1.0 - 1.0e-12))

    def testBetter(self):
        selection = SubgraphSelection([0], [0])
        low = Certificate(selection, 1.0, Fraction(1), 2.0, False)
        high = Certificate(selection, 1.5, Fraction(3, 2), 2.0, False)
        proven = Certificate(selection, 1.0, Fraction(1), 1.0, True)
        wide = Certificate(SubgraphSelection([0, 1], [0]),
                           1.5, Fraction(3, 2), 2.0, False)

        self.assertIs(better_certificate(None, low), low)
        self.assertIs(better_certificate(low, None), low)
        self.assertIs(better_certificate(low, high), high)
        self.assertIs(better_certificate(high, proven), proven)
        self.assertIs(better_certificate(high, wide), wide)
        self.assertIs(better_certificate(high, high), high)

    def testBestCertificate(self):
        matrix = k4_pendant_matrix()
        matrix.column_sums[4] = 10.0
        certificate = best_certificate(matrix)
        self.assertEqual(certificate.selection, K4)
        self.assertTrue(certificate.optimal)


class testSpectral(unittest.TestCase):
    def assertFactors(self, decomposition, expect):
        self.assertEqual(len(decomposition), len(expect))
        for (factor, (vertices, edges, value)) in zip(
                decomposition.factors, expect):
            self.assertEqual(sorted(factor.vertex_set), vertices)
            self.assertEqual(sorted(factor.edge_set), edges)
            self.assertEqual(factor.exact_density, value)
            self.assertTrue(factor.optimal)

    def testExamples(self):
        self.assertFactors(spectral_decompose(single()), [
            ([0], [0], Fraction(1))])

        self.assertFactors(spectral_decompose(k4_pendant()), [
            ([0, 1, 2, 3], list(range(6)), Fraction(3, 2)),
            ([4], [6], Fraction(1))])

        self.assertFactors(spectral_decompose(star()), [
            ([0, 1, 2, 3], [0, 1, 2], Fraction(3, 4))])

        self.assertFactors(spectral_decompose(path()), [
            ([0, 1, 2], [0, 1], Fraction(2, 3))])

        self.assertFactors(spectral_decompose(disjoint_union(k4(), k3())), [
            ([0, 1, 2, 3], list(range(6)), Fraction(3, 2)),
            ([4, 5, 6], [6, 7, 8], Fraction(1))])

    def testMaximal(self):
        # Two equally dense components form a single factor.
        decomposition = spectral_decompose(disjoint_union(k3(), k3()))
        self.assertFactors(decomposition, [
            (list(range(6)), list(range(6)), Fraction(1))])

        decomposition = spectral_decompose(
            disjoint_union(k4_pendant(), k4()))
        self.assertEqual(decomposition.densities(),
                         [Fraction(3, 2), Fraction(1)])
        self.assertEqual(sorted(decomposition.factors[0].vertex_set),
                         [0, 1, 2, 3, 5, 6, 7, 8])

    def testArrays(self):
        decomposition = spectral_decompose(k4_pendant())
        self.assertEqual(decomposition.vertex_factors().tolist(),
                         [0, 0, 0, 0, 1])
        self.assertEqual(decomposition.edge_factors().tolist(),
                         [0, 0, 0, 0, 0, 0, 1])

    def testOracleAgreement(self):
        for seed in range(100):
            h = random_instance(seed, n_range=(4, 10), m_range=(4, 16),
                                weight_range=(1, 3) if seed % 3 else (1, 1))
            decomposition = spectral_decompose(h)
            expect = brute_force_spectral(h)
            self.assertTrue(decomposition.matches(expect),
                            'seed {0}: {1!r} != {2!r}'.format(
                                seed, decomposition, expect))

    def testValidate(self):
        h = k4_pendant()

        with self.assertRaisesRegex(DecompositionInvariantViolation,
                                    'partition'):
            SpectralDecomposition([
                Factor(range(4), range(6), 1.5, Fraction(3, 2))],
                5, 7).validate(h)

        with self.assertRaisesRegex(DecompositionInvariantViolation,
                                    'subgraph'):
            SpectralDecomposition([
                Factor([4], [6], 1.0, Fraction(1)),
                Factor(range(4), range(6), 1.5, Fraction(3, 2))],
                5, 7).validate(h)

        with self.assertRaisesRegex(DecompositionInvariantViolation,
                                    'decrease'):
            SpectralDecomposition([
                Factor(range(3), range(3), 1.0, Fraction(1)),
                Factor(range(3, 6), range(3, 6), 1.0, Fraction(1))],
                6, 6).validate(disjoint_union(k3(), k3()))

        with self.assertRaisesRegex(DecompositionInvariantViolation,
                                    'weight ratio'):
            SpectralDecomposition([
                Factor(range(4), range(6), 1.25),
                Factor([4], [6], 1.0)],
                5, 7).validate(h)

    def testSameDensity(self):
        self.assertTrue(same_density(1.0, 1.0 + 1.0e-12))
        self.assertFalse(same_density(1.0, 1.0 + 1.0e-6))
        self.assertFalse(same_density(
            1.0, 1.0, Fraction(1), Fraction(10 ** 12 + 1, 10 ** 12)))
        self.assertTrue(same_density(1.0, 2.0, Fraction(1), Fraction(1)))


class testDual(unittest.TestCase):
    def testTransport(self):
        h = k4_pendant()
        transported = transport_dual(spectral_decompose(h))
        transported.validate(dual(h))

        self.assertEqual(transported.densities(),
                         [Fraction(1), Fraction(2, 3)])
        self.assertEqual(sorted(transported.factors[0].vertex_set), [6])
        self.assertEqual(sorted(transported.factors[0].edge_set), [4])

        self.assertTrue(transported.matches(spectral_decompose(dual(h))))

    def testTransportAgreement(self):
        for seed in range(100):
            h = random_instance(2000 + seed, n_range=(4, 10),
                                m_range=(4, 14), weight_range=(1, 3))
            transported = transport_dual(spectral_decompose(h))
            transported.validate(dual(h))
            self.assertTrue(
                transported.matches(brute_force_spectral(dual(h))),
                'seed {0}'.format(2000 + seed))

    def testDualSupportMatrix(self):
        config = SolverConfig()

        for seed in range(20):
            h = random_instance(3000 + seed, n_range=(4, 10),
                                m_range=(4, 14))
            decomposition = spectral_decompose(h)

            matrix = solve(h).matrix
            densities = [x.density for x in decomposition.factors]
            targets = np.array(
                [densities[r] for r in decomposition.vertex_factors()])
            refine(matrix, targets, config.polish_gap, config.polish_sweeps)

            result = dual_support_matrix(matrix, decomposition)
            self.assertTrue(validate(result).is_valid)

            # Dual column sums are the inverted factor densities.
            expect = np.array(
                [1.0 / densities[r] for r in decomposition.edge_factors()])
            self.assertTrue(np.allclose(result.column_sums, expect,
                                        rtol=1.0e-6, atol=0.0))


class testDM(unittest.TestCase):
    def testExamples(self):
        self.assertEqual(dm_decompose(path()), DMDecomposition(
            [], [], [0, 1, 2], [], [], [0, 1]))
        self.assertEqual(dm_decompose(loops()), DMDecomposition(
            [0], [], [], [0, 1, 2], [], []))
        self.assertEqual(dm_decompose(k3()), DMDecomposition(
            [], [0, 1, 2], [], [], [0, 1, 2], []))

        # K4 is dense, the pendant vertex balanced by its edge.
        self.assertEqual(dm_decompose(k4_pendant()), DMDecomposition(
            [0, 1, 2, 3], [4], [], range(6), [6], []))

    def testOracleExamples(self):
        for h in (path(), loops(), k3(), star(), k4_pendant()):
            self.assertEqual(dm_decompose(h), brute_force_dm(h))

    def testOracleAgreement(self):
        for seed in range(50):
            h = random_instance(4000 + seed, n_range=(3, 7), m_range=(2, 8),
                                max_size=3)
            if h.n + h.m > 16:
                continue
            self.assertEqual(dm_decompose(h), brute_force_dm(h),
                             'seed {0}'.format(4000 + seed))

    def testBucket(self):
        decomposition = SpectralDecomposition([
            Factor([0], [0, 1], 2.0, Fraction(2)),
            Factor([1], [2], 1.0 + 1.0e-13),
            Factor([2, 3], [3], 0.5, Fraction(1, 2))], 4, 4)
        self.assertEqual(dm_bucket(decomposition), DMDecomposition(
            [0], [1], [2, 3], [0, 1], [2], [3]))

    def testValidate(self):
        with self.assertRaises(DecompositionInvariantViolation):
            DMDecomposition([0], [], [], [], [0, 1], []).validate(path())

        with self.assertRaises(DecompositionInvariantViolation):
            DMDecomposition([0], [1], [2], [1], [], [0]).validate(path())

    def testNonUnit(self):
        h = build(2, 1, [1, 2], [1], [[0, 1]])
        with self.assertRaises(NonUnitWeights):
            dm_decompose(h)
        with self.assertRaises(NonUnitWeights):
            brute_force_dm(h)


class testEigen(unittest.TestCase):
    def testEigenvalueMatchesDensity(self):
        config = SolverConfig()

        for seed in range(50):
            h = random_instance(5000 + seed, weight_range=(1, 3))
            result = solve(h)
            value = result.certificate.density
            refine(result.matrix, value, config.polish_gap,
                   config.polish_sweeps)

            eigen = gram_dominant_eigenvalue(result.matrix)
            self.assertLessEqual(abs(eigen.eigenvalue - value),
                                 1.0e-6 * value, 'seed {0}'.format(seed))
            self.assertAlmostEqual(density(h, result.certificate.selection),
                                   value)
