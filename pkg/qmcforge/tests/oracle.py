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
from fractions import Fraction

import qmcforge.oracle

from qmcforge.api import QmcError, ResourceLimitError, UsageError
from qmcforge.korobov import LatticeRule, p_merit_closed
from qmcforge.oracle import dual_enumerate_lattice, dual_enumerate_poly
from qmcforge.oracle import exact_star_discrepancy_reference
from qmcforge.oracle import monotone_by_pairs, reference_laurent_digits
from qmcforge.oracle import single_probe_error, wce_by_function_probe
from qmcforge.tests import makeSuite
from qmcforge.walsh import PolyLatticeRule, p_merit_wal_closed
from qmcforge.weights import SpaceParams, WeightSet


class DualEnumerationTestCase(unittest.TestCase):

    def test_lattice(self):
        duals = dual_enumerate_lattice(LatticeRule(5, [1, 2]), 2)
        self.assertTrue(duals.zero_included)
        self.assertTrue((0, 0) in duals)
        self.assertEqual(sorted([(1, 2), (-1, -2), (2, -1), (-2, 1)]),
                         sorted(duals.nonzero()))

    def test_poly(self):
        rule = PolyLatticeRule(2, 2, [1, 1, 1], [[1], [0, 1]])
        duals = dual_enumerate_poly(rule, 2).nonzero()
        # tr(k1) + tr(k2) x = 0 mod x^2 + x + 1
        self.assertEqual(sorted([(1, 3), (2, 1), (3, 2)]), sorted(duals))

    def test_limits(self):
        self.assertRaises(ResourceLimitError, dual_enumerate_lattice,
                          LatticeRule(5, [1] * 8), 10)
        self.assertRaises(ResourceLimitError, dual_enumerate_poly,
                          PolyLatticeRule(2, 2, [1, 1, 1], [[1]] * 4), 8)


class LaurentDigitTestCase(unittest.TestCase):

    def test_base_three(self):
        # 1 / (x + 1) = x^-1 - x^-2 + x^-3 - ... over Z_3
        self.assertEqual([1, 2, 1, 2], reference_laurent_digits(
            [1], [1, 1], 1, 4, b=3))

    def test_invalid(self):
        self.assertRaises(UsageError, reference_laurent_digits, [1], [0], 1)
        self.assertRaises(ResourceLimitError, reference_laurent_digits,
                          [1], [1, 1], 1, 65)


class ProbeTestCase(unittest.TestCase):

    def test_dual_probe(self):
        rule = LatticeRule(5, [1, 2])
        params = SpaceParams(1, WeightSet.unit(2))
        self.assertAlmostEqual(0.5, single_probe_error(rule, params, (1, 2)))
        self.assertAlmostEqual(0.0, single_probe_error(rule, params, (1, 1)))
        self.assertEqual(0.0, single_probe_error(rule, params, (0, 0)))

    def test_walsh_probe(self):
        rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
        params = SpaceParams(1, WeightSet.unit(1))
        self.assertAlmostEqual(2.0 ** -4, single_probe_error(rule, params,
                                                             (8,)))
        self.assertAlmostEqual(0.0, single_probe_error(rule, params, (3,)))

    def test_lower_bound(self):
        params = SpaceParams(1, WeightSet.product_decay(2, 2))
        rule = LatticeRule(13, [1, 5])
        P = p_merit_closed(rule, params).p_value
        probe = wce_by_function_probe(rule, params, 500, P)
        self.assertTrue(0.0 < probe <= math.sqrt(P))
        rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1], [0, 1, 1]])
        P = p_merit_wal_closed(rule, params).p_value
        probe = wce_by_function_probe(rule, params, 300, P)
        self.assertTrue(0.0 < probe <= math.sqrt(P))

    def test_detects_understated_merit(self):
        params = SpaceParams(1, WeightSet.unit(1))
        self.assertRaises(QmcError, wce_by_function_probe,
                          LatticeRule(5, [1]), params, 100, 1e-6)

    def test_probe_cap(self):
        self.assertRaises(ResourceLimitError, wce_by_function_probe,
                          LatticeRule(5, [1]),
                          SpaceParams(1, WeightSet.unit(1)), 10 ** 5)


class MiscTestCase(unittest.TestCase):

    def test_monotone_by_pairs(self):
        self.assertTrue(monotone_by_pairs(WeightSet.unit(3), 3))
        self.assertFalse(monotone_by_pairs(
            WeightSet.order_dependent([0.5, 1.0]), 2))

    def test_reference_discrepancy(self):
        self.assertEqual(Fraction(1, 4), exact_star_discrepancy_reference(
            [Fraction(n, 4) for n in range(4)]))
        self.assertEqual(Fraction(1), exact_star_discrepancy_reference(
            [(0, 0)]))
        self.assertRaises(UsageError, exact_star_discrepancy_reference,
                          [(0, 0, 0)])


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(doctest.DocTestSuite(module=qmcforge.oracle))
    suite.addTest(makeSuite(DualEnumerationTestCase))
    suite.addTest(makeSuite(LaurentDigitTestCase))
    suite.addTest(makeSuite(ProbeTestCase))
    suite.addTest(makeSuite(MiscTestCase))
    return suite

if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
