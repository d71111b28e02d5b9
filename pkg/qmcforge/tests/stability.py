# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import doctest
import itertools
import math
import unittest

import numpy as np

import qmcforge.stability

from qmcforge.api import DomainError, PreconditionError
from qmcforge.cbc import cbc_construct
from qmcforge.korobov import LatticeRule
from qmcforge.stability import CorollaryProbe, StabilityCertificate
from qmcforge.stability import binomial_tail_check, c_alpha_prime
from qmcforge.stability import combined_bound_eq1, corollary_probe
from qmcforge.stability import jensen_certificate, prop1_certificate
from qmcforge.stability import prop2_certificate, prop_bound
from qmcforge.stability import theorem1_bound, theorem1_subset_bounds
from qmcforge.stability import theorem2_bound_poly, totient_bound_check
from qmcforge.stability import walsh_level_count_check
from qmcforge.gfpoly import GFPoly, smallest_irreducible
from qmcforge.tests import makeSuite
from qmcforge.walsh import PolyLatticeRule, cbc_construct_poly
from qmcforge.weights import SpaceParams, WeightSet, zeta


def _lattice_rules(W, alpha=1, sizes=(13, 31, 61), s=3):
    for N in sizes:
        yield cbc_construct(N, s, SpaceParams(alpha, W))[0]


def _poly_rules(W, alpha=1, degrees=(4, 5, 6), s=3):
    for m in degrees:
        yield cbc_construct_poly(2, m, None, s, SpaceParams(alpha, W))[0]


GRID_ALPHAS = (1, 1.5, 2)
GRID_SIZES = (8, 16, 32, 64)
GRID_DEGREES = (3, 4, 5)


def _lattice_grid():
    """CBC rules for alpha in {1, 2} on every (s, N) cell of the grid, then
    20 seeded random rules."""
    rules = []
    for s in (1, 2, 3):
        W = WeightSet.product_decay(2, s)
        for N in GRID_SIZES:
            for alpha in (1, 2):
                rules.append(cbc_construct(N, s, SpaceParams(alpha, W))[0])
    rng = np.random.default_rng(2026)
    for i in range(20):
        N, s = GRID_SIZES[i % 4], 1 + i % 3
        rules.append(LatticeRule(N, [1] + rng.integers(1, N, s - 1).tolist()))
    return rules


def _poly_grid():
    rules = []
    for s in (1, 2):
        W = WeightSet.product_decay(2, s)
        for m in GRID_DEGREES:
            for alpha in GRID_ALPHAS:
                rules.append(cbc_construct_poly(2, m, None, s,
                                                SpaceParams(alpha, W))[0])
    rng = np.random.default_rng(2026)
    for i in range(20):
        m, s = GRID_DEGREES[i % 3], 1 + i % 2
        q = [GFPoly.from_int(1, 2)] + [GFPoly.from_int(int(c), 2)
                                       for c in rng.integers(1, 2 ** m,
                                                             s - 1)]
        rules.append(PolyLatticeRule(2, m, smallest_irreducible(2, m), q))
    return rules


class CertificateTestCase(unittest.TestCase):

    def test_vacuous(self):
        cert = StabilityCertificate('thm1', 5.0, math.inf)
        self.assertTrue(cert.passed)
        self.assertTrue(cert.vacuous)
        data = cert.to_dict()
        self.assertEqual(None, data['rhs'])
        self.assertEqual(None, data['margin'])

    def test_checks(self):
        cert = StabilityCertificate('prop2', 0.1, 1.0,
                                    checks={'rho_below_P': False})
        self.assertFalse(cert.passed)

    def test_slack(self):
        self.assertFalse(StabilityCertificate('x', 1.0 + 1e-12, 1.0,
                                              slack=0.0).passed)
        self.assertTrue(StabilityCertificate('x', 1.0, 1.0,
                                             slack=0.0).passed)

    def test_csv_row(self):
        row = StabilityCertificate('thm1', 0.25, 1.0).csv_row(2, 13)
        self.assertEqual({'s': 2, 'N_or_m': 13, 'lhs': 0.25, 'rhs': 1.0,
                          'margin': 0.75, 'passed': True}, row)

    def test_c_alpha_prime(self):
        z = zeta(4.0)
        self.assertAlmostEqual(1 + z + (16 + z) * 7 / 256.0,
                               c_alpha_prime(2), places=13)
        self.assertTrue(2.4 < c_alpha_prime(8) < 2.6)
        self.assertRaises(DomainError, c_alpha_prime, 0.5)


class LatticeBoundTestCase(unittest.TestCase):

    def test_theorem1_holds(self):
        W = WeightSet.product_decay(2, 3)
        for rule in _lattice_rules(W):
            for alpha_prime, Wprime in ((1, W), (2, W.power(2)),
                                        (1.5, W.power(1.5))):
                cert = theorem1_bound(rule, 1, W, alpha_prime, Wprime)
                self.assertTrue(cert.passed, (rule, alpha_prime, cert))
                self.assertFalse(cert.vacuous)

    def test_theorem1_grid(self):
        rules = _lattice_grid()
        self.assertEqual(44, len(rules))
        for rule, alpha, alpha_prime, r in itertools.product(
                rules, GRID_ALPHAS, GRID_ALPHAS, (2, 4)):
            W = WeightSet.product_decay(2, rule.s)
            Wprime = WeightSet.product_decay(r, rule.s)
            cert = theorem1_bound(rule, alpha, W, alpha_prime, Wprime,
                                  series_radius=256)
            self.assertTrue(cert.passed, (rule, alpha, alpha_prime, r, cert))
            self.assertFalse(cert.vacuous)

    def test_theorem1_series_lhs(self):
        W = WeightSet.unit(2)
        cert = theorem1_bound(LatticeRule(13, [1, 5]), 1, W, 1.5, W)
        self.assertEqual('truncated-series', cert.components['lhs_method'])
        self.assertTrue(cert.components['lhs_lower'] <= cert.lhs)

    def test_theorem1_vacuous(self):
        W = WeightSet.product([1.0, 0.0])
        cert = theorem1_bound(LatticeRule(13, [1, 5]), 1, W, 1,
                              WeightSet.unit(2))
        self.assertTrue(cert.vacuous)
        self.assertTrue(cert.passed)

    def test_theorem1_zero_target(self):
        W = WeightSet.unit(2)
        cert = theorem1_bound(LatticeRule(13, [1, 5]), 1, W, 1,
                              WeightSet.product([0.0, 0.0]))
        self.assertEqual(0.0, cert.lhs)
        self.assertEqual(0.0, cert.rhs)
        self.assertTrue(cert.passed)

    def test_theorem1_needs_monotone_weights(self):
        self.assertRaises(PreconditionError, theorem1_bound,
                          LatticeRule(13, [1, 5]), 1,
                          WeightSet.product([2.0, 2.0]), 1,
                          WeightSet.unit(2))

    def test_subset_bounds(self):
        rule = cbc_construct(31, 3, SpaceParams(1, WeightSet.unit(3)))[0]
        rows = theorem1_subset_bounds(rule, 1, 1)
        self.assertEqual(7, len(rows))
        for row in rows:
            self.assertTrue(row['holds'], row)
        Wprime = WeightSet.explicit({(1,): 1.0, (1, 2): 0.5}, s_max=3)
        rows = theorem1_subset_bounds(rule, 1, 2, Wprime)
        self.assertEqual([[1], [1, 2]], [row['u'] for row in rows])

    def test_prop1(self):
        W = WeightSet.product_decay(2, 3)
        for rule in _lattice_rules(W):
            for lam in (1.0, 0.75, 0.55):
                cert = prop1_certificate(rule, 1, W, lam)
                self.assertTrue(cert.passed, (rule, lam))

    def test_eq1_dominates_theorem1(self):
        W = WeightSet.product_decay(2, 3)
        for rule in _lattice_rules(W):
            thm1 = theorem1_bound(rule, 1, W, 2, W.power(2))
            eq1 = combined_bound_eq1(rule, 1, W, 2, W.power(2))
            self.assertTrue(thm1.rhs <= eq1.rhs)
            self.assertTrue(eq1.passed)

    def test_prop_bound(self):
        W = WeightSet.unit(1)
        self.assertAlmostEqual(math.pi ** 2 / 12, prop_bound('lattice', 5, 1,
                                                             1, W))
        self.assertRaises(PreconditionError, prop_bound, 'net', 5, 1, 1, W)
        self.assertRaises(DomainError, prop_bound, 'lattice', 5, 1, 1, W,
                          0.5)
        self.assertRaises(DomainError, prop_bound, 'lattice', 5, 1, 1, W,
                          1.5)


class PolyBoundTestCase(unittest.TestCase):

    def test_theorem2_example(self):
        rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
        W = WeightSet.unit(1)
        cert = theorem2_bound_poly(rule, 1, W, 1, W)
        self.assertEqual(2.0 ** -7, cert.lhs)
        self.assertEqual(2.0 ** -7, cert.rhs)
        self.assertTrue(cert.passed)

    def test_theorem2_holds(self):
        W = WeightSet.product_decay(2, 3)
        for rule in _poly_rules(W):
            for alpha_prime, Wprime in ((1, W), (2, W.power(2)),
                                        (0.75, W.power(0.75))):
                cert = theorem2_bound_poly(rule, 1, W, alpha_prime, Wprime)
                self.assertTrue(cert.passed, (rule, alpha_prime, cert))

    def test_theorem2_grid(self):
        rules = _poly_grid()
        self.assertEqual(38, len(rules))
        for rule, alpha, alpha_prime, r in itertools.product(
                rules, GRID_ALPHAS, GRID_ALPHAS, (2, 4)):
            W = WeightSet.product_decay(2, rule.s)
            Wprime = WeightSet.product_decay(r, rule.s)
            cert = theorem2_bound_poly(rule, alpha, W, alpha_prime, Wprime)
            self.assertTrue(cert.passed, (rule, alpha, alpha_prime, r, cert))

    def test_theorem2_without_monotone_weights(self):
        W = WeightSet.product([2.0, 2.0])
        rule = cbc_construct_poly(2, 4, None, 2, SpaceParams(1, W))[0]
        self.assertTrue(theorem2_bound_poly(rule, 1, W, 1, W).passed)

    def test_prop2(self):
        W = WeightSet.product_decay(2, 3)
        for rule in _poly_rules(W):
            cert = prop2_certificate(rule, 1, W)
            self.assertTrue(cert.passed, rule)
            self.assertTrue(cert.checks['rho_below_P'])

    def test_prop2_reducible(self):
        rule = PolyLatticeRule(2, 3, [0, 0, 0, 1], [[1]])
        self.assertRaises(PreconditionError, prop2_certificate, rule, 1,
                          WeightSet.unit(1))

    def test_prop_bound(self):
        self.assertAlmostEqual(1.0 / 7 / 2, prop_bound(
            'poly-lattice', (2, 3), 1, 1, WeightSet.unit(1)))


class JensenTestCase(unittest.TestCase):

    def test_lattice(self):
        W = WeightSet.product_decay(2, 3)
        rule = LatticeRule(31, [1, 12, 7])
        for delta in (1.0, 0.5, 0.25):
            cert = jensen_certificate(rule, 1, W, delta)
            self.assertTrue(cert.passed, delta)
            self.assertEqual('closed-form', cert.components['lhs_method'])
        self.assertAlmostEqual(jensen_certificate(rule, 1, W, 1.0).lhs,
                               jensen_certificate(rule, 1, W, 1.0).rhs)

    def test_lattice_grid(self):
        for rule, alpha in itertools.product(_lattice_grid(), GRID_ALPHAS):
            W = WeightSet.product_decay(2, rule.s)
            for delta in (0.5, 0.8):
                cert = jensen_certificate(rule, alpha, W, delta,
                                          series_radius=1024)
                self.assertTrue(cert.passed, (rule, alpha, delta, cert))

    def test_poly(self):
        W = WeightSet.product_decay(1, 2)
        rule = PolyLatticeRule(2, 4, [1, 1, 0, 0, 1], [[1], [0, 1, 1]])
        for delta in (0.9, 0.8, 0.5, 0.2):
            self.assertTrue(jensen_certificate(rule, 1, W, delta).passed)

    def test_poly_grid(self):
        for rule, alpha in itertools.product(_poly_grid(), GRID_ALPHAS):
            W = WeightSet.product_decay(2, rule.s)
            for delta in (0.5, 0.8):
                cert = jensen_certificate(rule, alpha, W, delta)
                self.assertTrue(cert.passed, (rule, alpha, delta, cert))

    def test_domain(self):
        rule = LatticeRule(5, [1])
        W = WeightSet.unit(1)
        for delta in (0.0, -0.5, 1.5):
            self.assertRaises(DomainError, jensen_certificate, rule, 1, W,
                              delta)


class CorollaryTestCase(unittest.TestCase):

    def _probe(self, **kwargs):
        W = WeightSet.product_decay(2, 4)
        return CorollaryProbe(1, W, 2, W.power(2), **kwargs)

    def test_columns(self):
        probe = self._probe()
        table = corollary_probe('cor1', probe, [(2, 13), (4, 31)])
        self.assertEqual(['s', 'N_or_m', 'A', 'B', 'shape',
                          'sum_gamma_lambda', 'sum_ratio'], table.columns)
        self.assertEqual(None, table.constant)
        table = corollary_probe('cor4', probe, [(2, 4)])
        self.assertTrue('A2' in table.columns)

    def test_shape(self):
        probe = self._probe(delta=0.25)
        row = corollary_probe('cor1', probe, [(3, 13)]).rows[0]
        self.assertAlmostEqual(12.0 ** (0.25 - 2.0), row['shape'])
        row = corollary_probe('cor3', probe, [(3, 5)]).rows[0]
        self.assertAlmostEqual(32.0 ** (0.25 - 2.0), row['shape'])

    def test_measured(self):
        probe = self._probe()
        table = corollary_probe('cor1', probe, [(2, 13), (2, 31), (3, 31)],
                                measure=True, workers=2)
        ratios = [row['ratio'] for row in table.rows]
        self.assertEqual(max(ratios), table.constant)
        for row in table.rows:
            self.assertAlmostEqual(row['measured'] / row['shape'],
                                   row['ratio'])
        table = corollary_probe('cor2', probe, [(2, 13)], measure=True)
        self.assertTrue(0.0 < table.rows[0]['measured'] < 1.0)

    def test_pod_weights_omit_product_sums(self):
        W = WeightSet.pod_factorial(0, 1, [0.5 ** j for j in range(1, 5)],
                                    4)
        probe = CorollaryProbe(1, W, 1, W)
        table = corollary_probe('cor3', probe, [(3, 4)])
        self.assertFalse('sum_ratio' in table.columns)

    def test_delta_range(self):
        # alpha = 1, alpha' = 2: caps 2 / lambda (error), 1 / lambda
        # (discrepancy)
        probe = self._probe(delta=0.6)
        corollary_probe('cor2', probe, [(2, 13)])
        corollary_probe('cor4', probe, [(2, 4)])
        probe = self._probe(delta=1.0)
        self.assertRaises(DomainError, corollary_probe, 'cor2', probe,
                          [(2, 13)])
        self.assertRaises(DomainError, corollary_probe, 'cor4', probe,
                          [(2, 4)])
        corollary_probe('cor1', probe, [(2, 13)])
        probe = self._probe(lam=0.75, delta=1.0)
        self.assertAlmostEqual(4.0 / 3.0, probe.delta_cap('cor2'))
        self.assertAlmostEqual(2.0 / 3.0, probe.decay('cor2'))
        corollary_probe('cor2', probe, [(2, 13)])
        self.assertRaises(DomainError, corollary_probe, 'cor3',
                          self._probe(delta=2.0), [(2, 4)])

    def test_growing_shape_beyond_decay(self):
        probe = self._probe(delta=0.75)
        row = corollary_probe('cor2', probe, [(2, 13)]).rows[0]
        self.assertAlmostEqual(12.0 ** 0.25, row['shape'])

    def test_invalid(self):
        probe = self._probe()
        self.assertRaises(PreconditionError, corollary_probe, 'cor5', probe,
                          [(2, 13)])
        self.assertRaises(PreconditionError, corollary_probe, 'cor1', probe,
                          [])
        W = WeightSet.unit(2)
        self.assertRaises(DomainError, CorollaryProbe, 1, W, 1, W, lam=0.4)
        self.assertRaises(DomainError, CorollaryProbe, 1, W, 1, W, q=-1)


class AuxiliaryTestCase(unittest.TestCase):

    def test_binomial_tail(self):
        for b in (2, 3, 1.5):
            for k in (1, 2, 5):
                for t0 in (1, 4, 10):
                    self.assertTrue(binomial_tail_check(b, k, t0).passed,
                                    (b, k, t0))
        self.assertRaises(DomainError, binomial_tail_check, 1, 2, 2)

    def test_binomial_tail_geometric(self):
        cert = binomial_tail_check(2, 1, 3)
        self.assertAlmostEqual(0.25, cert.lhs)
        self.assertAlmostEqual(0.25, cert.rhs)

    def test_walsh_level_count(self):
        rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
        for level, count in ((3, 0), (4, 1), (5, 2), (6, 4)):
            cert = walsh_level_count_check(rule, (1,), level)
            self.assertEqual(count, cert.lhs)
            self.assertEqual(count, cert.rhs)
            self.assertTrue(cert.passed)

    def test_walsh_level_count_two_dimensions(self):
        rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1], [1, 1]])
        for level in range(2, 8):
            self.assertTrue(walsh_level_count_check(rule, (1, 2), level)
                            .passed, level)

    def test_walsh_level_count_reducible(self):
        rule = PolyLatticeRule(2, 3, [0, 0, 0, 1], [[1]])
        self.assertRaises(PreconditionError, walsh_level_count_check, rule,
                          (1,), 4)

    def test_totient(self):
        for N in range(3, 10001):
            self.assertTrue(totient_bound_check(N).passed, N)
        self.assertRaises(DomainError, totient_bound_check, 2)


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(doctest.DocTestSuite(module=qmcforge.stability))
    suite.addTest(makeSuite(CertificateTestCase))
    suite.addTest(makeSuite(LatticeBoundTestCase))
    suite.addTest(makeSuite(PolyBoundTestCase))
    suite.addTest(makeSuite(JensenTestCase))
    suite.addTest(makeSuite(CorollaryTestCase))
    suite.addTest(makeSuite(AuxiliaryTestCase))
    return suite

if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
