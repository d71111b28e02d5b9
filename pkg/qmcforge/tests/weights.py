# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import doctest
import math
import unittest

import qmcforge.weights

from qmcforge.api import DomainError, UsageError
from qmcforge.oracle import monotone_by_pairs
from qmcforge.tests import makeSuite
from qmcforge.weights import SpaceParams, WeightSet, check_monotone
from qmcforge.weights import kernel_sum, ratio_subset_sum, subset_power_sum
from qmcforge.weights import subset_size_sum, weighted_zeta_sum, zeta


class WeightSetTestCase(unittest.TestCase):

    def test_product_weight(self):
        W = WeightSet.product_decay(2, s_max=4)
        self.assertAlmostEqual(0.25, W.weight((1, 2)))
        for u, j in (((1,), 3), ((2, 3), 4), ((1,), 2)):
            self.assertAlmostEqual(W.weight(u) * W.gamma[j - 1],
                                   W.weight(u + (j,)))

    def test_pod_weight(self):
        W = WeightSet.pod([math.factorial(k) for k in range(1, 5)],
                          [1.0] * 4)
        self.assertEqual(6.0, W.weight((1, 2, 3)))
        self.assertEqual(4, W.s_max)

    def test_order_weight(self):
        W = WeightSet.order_dependent([1.0, 0.5, 0.25])
        self.assertEqual(0.5, W.weight((1, 3)))

    def test_explicit_default_zero(self):
        W = WeightSet.explicit({(1,): 0.5})
        self.assertEqual(0.0, W.weight((2,)))
        self.assertEqual(0.5, W.weight('1'))

    def test_empty_subset(self):
        W = WeightSet.unit(3)
        self.assertRaises(UsageError, W.weight, ())

    def test_out_of_dimension(self):
        W = WeightSet.unit(3)
        self.assertRaises(UsageError, W.weight, (4,))
        self.assertRaises(UsageError, W.require_dimension, 4)

    def test_negative_value(self):
        self.assertRaises(UsageError, WeightSet.product, [1.0, -0.5])
        self.assertRaises(UsageError, WeightSet.explicit, {(1,): -1})

    def test_power_and_scaled(self):
        W = WeightSet.product([0.5, 0.25])
        self.assertAlmostEqual(0.125 ** 2, W.power(2).weight((1, 2)))
        self.assertAlmostEqual(3 * 0.125, W.scaled(3).weight((1, 2)))
        self.assertRaises(UsageError, W.scaled, -1)

    def test_pod_factorial(self):
        W = WeightSet.pod_factorial(0, 1, [1.0] * 5, s_max=5)
        self.assertEqual(math.factorial(3), W.weight((1, 2, 5)))

    def test_alpha(self):
        self.assertRaises(DomainError, SpaceParams, 0.5, WeightSet.unit(1))
        self.assertEqual(2, SpaceParams(2.0, WeightSet.unit(1)).integer_alpha)
        self.assertEqual(None,
                         SpaceParams(1.5, WeightSet.unit(1)).integer_alpha)


class MonotoneTestCase(unittest.TestCase):

    def test_product_at_most_one(self):
        self.assertTrue(check_monotone(WeightSet.product_decay(2, 10), 10))

    def test_examples(self):
        self.assertFalse(check_monotone(
            WeightSet.explicit({(1,): 0.1, (1, 2): 0.5}), 2))
        self.assertFalse(check_monotone(
            WeightSet.pod([1.0, 3.0], [1.0, 1.0]), 2))

    def test_against_pairwise_scan(self):
        cases = [
            WeightSet.product([0.5, 2.0, 0.3, 0.0, 1.0, 0.9]),
            WeightSet.product([2.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            WeightSet.pod([1.0, 0.5, 0.3, 0.15, 0.08, 0.07],
                          [1.0, 1.5, 0.5, 0.5, 0.2, 0.1]),
            WeightSet.pod([1.0, 2.0, 6.0, 24.0, 120.0, 720.0],
                          [0.1 ** j for j in range(1, 7)]),
            WeightSet.order_dependent([1.0, 1.0, 0.5, 0.6, 0.1, 0.0]),
            WeightSet.explicit({(1,): 1.0, (2,): 0.5, (1, 2): 0.5,
                                (1, 2, 3): 0.1, (3,): 0.05}, s_max=6),
        ]
        for W in cases:
            for s in range(1, 7):
                self.assertEqual(monotone_by_pairs(W, s),
                                 check_monotone(W, s), (W, s))


class SubsetSumTestCase(unittest.TestCase):

    def _assert_paths_agree(self, W, s, lam, factor):
        closed = subset_power_sum(W, s, lam, factor)
        direct = subset_power_sum(W, s, lam, factor, method='enumerate')
        self.assertAlmostEqual(1.0, closed / direct, places=12)

    def test_closed_forms(self):
        for s in range(1, 11):
            self._assert_paths_agree(WeightSet.product_decay(2, 10), s, 1.0,
                                     3.0)
            self._assert_paths_agree(WeightSet.pod_factorial(
                0, 1, [j ** -2.0 for j in range(1, 11)], 10), s, 0.75, 0.5)
            self._assert_paths_agree(WeightSet.order_dependent(
                [1.0 / k for k in range(1, 11)]), s, 0.6, 2.0)

    def test_zeta(self):
        self.assertAlmostEqual(math.pi ** 2 / 6, zeta(2), places=14)
        self.assertAlmostEqual(1.2020569031595942, zeta(3), places=13)
        self.assertRaises(DomainError, zeta, 1.0)

    def test_weighted_zeta_sum(self):
        self.assertAlmostEqual(3.2898681, weighted_zeta_sum(
            WeightSet.unit(1), 1, 1.0, 1.0), places=7)
        self.assertEqual(0.0, weighted_zeta_sum(
            WeightSet.product([0.0, 0.0]), 2, 1.0, 1.0))
        z = 2 * zeta(2)
        self.assertAlmostEqual((1 + z) * (1 + z / 4) - 1, weighted_zeta_sum(
            WeightSet.product_decay(2, 2), 2, 1.0, 1.0), places=12)

    def test_weighted_zeta_sum_domain(self):
        W = WeightSet.unit(2)
        self.assertRaises(DomainError, weighted_zeta_sum, W, 2, 0.5, 1.0)
        self.assertRaises(DomainError, weighted_zeta_sum, W, 2, 1.5, 1.0)

    def test_subset_size_sum(self):
        W = WeightSet.product([0.5, 0.25, 0.2])
        direct = W.weight((1,)) + W.weight((2,)) + W.weight((3,)) \
            + 2 * (W.weight((1, 2)) + W.weight((1, 3)) + W.weight((2, 3))) \
            + 3 * W.weight((1, 2, 3))
        self.assertAlmostEqual(direct, subset_size_sum(W, 3))

    def test_ratio_subset_sum(self):
        W = WeightSet.product([1.0, 0.25])
        Wp = WeightSet.product([1.0, 0.0625])
        # u = {1}: 8, u = {2}: 0.25 * 8, u = {1,2}: 0.25 * 64 * 3
        self.assertAlmostEqual(8 + 2 + 48,
                               ratio_subset_sum(W, Wp, 2, 1.0, 8.0, 3.0))
        explicit = WeightSet.explicit({(1,): 1.0, (2,): 0.25,
                                       (1, 2): 0.25}, s_max=2)
        self.assertAlmostEqual(ratio_subset_sum(W, Wp, 2, 1.0, 8.0, 3.0),
                               ratio_subset_sum(explicit, Wp, 2, 1.0, 8.0,
                                                3.0))

    def test_ratio_subset_sum_vacuous(self):
        W = WeightSet.product([1.0, 0.0])
        Wp = WeightSet.product([1.0, 0.5])
        self.assertTrue(math.isinf(ratio_subset_sum(W, Wp, 2, 1.0, 8.0,
                                                    1.0)))
        self.assertEqual(0.0, ratio_subset_sum(W, WeightSet.product(
            [0.0, 0.0]), 2, 1.0, 8.0, 1.0))

    def test_kernel_sum(self):
        Y = [[1.0, 2.0], [0.5, -1.0]]
        W = WeightSet.explicit({(1,): 1.0, (1, 2): 0.5}, s_max=2)
        expected = ((1.0 + 0.5 * 2.0) + (0.5 + 0.5 * -0.5)) / 2
        self.assertAlmostEqual(expected, kernel_sum(W, Y))
        P = WeightSet.product([1.0, 0.5])
        expected = ((2.0 * 2.0 - 1) + (1.5 * 0.5 - 1)) / 2
        self.assertAlmostEqual(expected, kernel_sum(P, Y))


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(doctest.DocTestSuite(module=qmcforge.weights))
    suite.addTest(makeSuite(WeightSetTestCase))
    suite.addTest(makeSuite(MonotoneTestCase))
    suite.addTest(makeSuite(SubsetSumTestCase))
    return suite

if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
