# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import doctest
import unittest

import qmcforge.formula

from qmcforge.formula import Formula, InvalidFormula, parse_weights
from qmcforge.tests import makeSuite
from qmcforge.weights import DEFAULT_S_MAX, WeightSet


class FormulaTestCase(unittest.TestCase):

    def test_grammar(self):
        for text, x, value in (('j^-2', 2, 0.25),
                               ('j^2', 3, 9.0),
                               ('2*j^-1', 4, 0.5),
                               ('2 j^-1', 4, 0.5),
                               ('0.5·j^-2', 2, 0.125),
                               ('1e-1', 5, 0.1),
                               ('j', 7, 7.0),
                               ('k!', 4, 24.0),
                               ('-2+j', 3, 1.0)):
            self.assertAlmostEqual(value, Formula(text)(x), msg=text)

    def test_invalid(self):
        for text in ('', 'j^', 'x^2', '(j', '2 ** ', 'j)'):
            self.assertRaises(InvalidFormula, Formula, text)


class ParseWeightsTestCase(unittest.TestCase):

    def test_product_formula(self):
        W = parse_weights('product:j^-2')
        self.assertEqual(WeightSet.PRODUCT, W.kind)
        self.assertEqual(DEFAULT_S_MAX, W.s_max)
        self.assertAlmostEqual(1.0 / 36, W.weight((2, 3)))

    def test_product_formula_s_max(self):
        self.assertEqual(8, parse_weights('product:j^-2', 8).s_max)

    def test_product_list(self):
        W = parse_weights('product:0.5,0.25', 64)
        self.assertEqual(2, W.s_max)
        self.assertEqual(0.125, W.weight((1, 2)))

    def test_pod(self):
        W = parse_weights('pod:k!;j^-1')
        self.assertAlmostEqual(2.0 * 0.5 / 3, W.weight((2, 3)))

    def test_order(self):
        W = parse_weights('order:1,0.5,0.25')
        self.assertEqual(WeightSet.ORDER, W.kind)
        self.assertEqual(0.25, W.weight((1, 2, 3)))

    def test_explicit(self):
        W = parse_weights('explicit:1=0.5;1,2=0.25')
        self.assertEqual(0.0, W.weight((2,)))
        self.assertEqual(0.5, W.weight((1,)))

    def test_mappings(self):
        W = parse_weights({'kind': 'product', 'gamma': 'j^-4'})
        self.assertAlmostEqual(1.0 / 16, W.weight((2,)))
        W = parse_weights({'kind': 'explicit',
                           'map': [{'u': [1, 2], 'value': 0.3}]})
        self.assertEqual(0.3, W.weight((1, 2)))
        W = parse_weights({'kind': 'pod', 'Gamma': [1, 2], 'gamma': 'j^-1'})
        self.assertEqual(2, W.s_max)

    def test_round_trip_through_dict(self):
        W = parse_weights('pod:1,2,6;0.5,0.25,0.125')
        self.assertEqual(W, parse_weights(W.to_dict()))

    def test_malformed(self):
        for spec in ('product', 'product:', 'unknown:1', 'pod:1,2',
                     'explicit:1', 'explicit:1=x'):
            self.assertRaises(InvalidFormula, parse_weights, spec)


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(doctest.DocTestSuite(module=qmcforge.formula))
    suite.addTest(makeSuite(FormulaTestCase))
    suite.addTest(makeSuite(ParseWeightsTestCase))
    return suite

if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
