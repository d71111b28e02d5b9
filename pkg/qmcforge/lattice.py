# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import numpy as np

from trac.core import Component, implements

from qmcforge.api import IRuleFamily, PreconditionError, ResourceLimitError
from qmcforge.api import RuleSystem, UsageError, _
from qmcforge.cbc import cbc_construct, cbc_construct_fast
from qmcforge.discrepancy import exact_for_rule, star_disc_bound_lattice
from qmcforge.discrepancy import star_disc_bound_rho_lattice
from qmcforge.discrepancy import EXACT_MAX_POINTS
from qmcforge.korobov import LatticeRule, p_merit_closed, p_merit_series
from qmcforge.korobov import zaremba_rho
from qmcforge.model import rule_from_dict
from qmcforge.stability import combined_bound_eq1, jensen_certificate
from qmcforge.stability import lattice_merit_range, prop1_certificate
from qmcforge.stability import prop_bound, theorem1_bound
from qmcforge.weights import PER_SUBSET_MAX_DIM, check_monotone


class LatticeRuleFamily(Component):
    """[main] Rank-1 lattice rules in weighted Korobov spaces."""

    implements(IRuleFamily)

    selectors = ('thm1', 'prop1', 'eq1', 'jensen')

    # IRuleFamily methods

    def get_rule_kind(self):
        return LatticeRule.kind

    def construct(self, size, s, params, fast=False, modulus=None,
                  method='cbc', seed=0):
        N = int(size)
        if modulus is not None:
            raise UsageError(_("Lattice rules take no modulus polynomial"))
        system = RuleSystem(self.env)
        if method == 'random':
            rng = np.random.default_rng(seed)
            z = [1] + [int(c) for c in rng.integers(1, N, size=s - 1)]
            self.log.debug("Random lattice rule N=%d, seed=%d: %r", N, seed,
                           z)
            return LatticeRule(N, z), None
        if method != 'cbc':
            raise UsageError(_("Unknown construction method '%s'") % method)
        if fast:
            rule, trace = cbc_construct_fast(N, s, params.alpha,
                                             params.weights,
                                             system.tie_tolerance)
        else:
            rule, trace = cbc_construct(N, s, params, system.tie_tolerance,
                                        system.workers)
        for step, (component, merit) in enumerate(trace.steps, 1):
            self.log.debug("CBC N=%d step %d: z=%d P=%.12g", N, step,
                           component, merit)
        self.log.info("Constructed %r (%d candidate evaluations)", rule,
                      trace.evaluations)
        return rule, trace

    def load_rule(self, data):
        rule = rule_from_dict(data)
        if rule.kind != self.get_rule_kind():
            raise UsageError(_("Expected a lattice rule, got '%s'")
                             % rule.kind)
        return rule

    def evaluate(self, rule, params, rho=False, discrepancy=False,
                 weights_prime=None):
        per_subset = rule.s <= PER_SUBSET_MAX_DIM
        if params.integer_alpha in (1, 2, 3, 4):
            report = p_merit_closed(rule, params, per_subset=per_subset)
        else:
            radius = RuleSystem(self.env).series_radius
            report = p_merit_series(rule, params, radius * rule.N,
                                    per_subset=per_subset)
        if rho:
            report.merge(zaremba_rho(rule, params))
        result = {'rule': rule.to_dict(), 'alpha': params.alpha,
                  'weights': params.weights.to_dict()}
        result.update(report.to_dict())
        if discrepancy:
            W = weights_prime or params.weights
            disc = star_disc_bound_lattice(rule, W)
            disc.merge(star_disc_bound_rho_lattice(rule, params.alpha,
                                                   params.weights, W))
            if rule.s <= 2 and rule.N <= EXACT_MAX_POINTS:
                disc.exact_dstar = float(exact_for_rule(rule, W))
            if disc.vacuous:
                self.log.warning("Discrepancy bound from rho is vacuous for "
                                 "%r", rule)
            result['discrepancy'] = disc.to_dict()
        return result

    def certify(self, rule, selector, params, params_prime=None, lam=1.0,
                delta=0.5):
        system = RuleSystem(self.env)
        slack = system.certificate_slack
        radius = system.series_radius
        target = params_prime or params
        if selector == 'thm1':
            cert = theorem1_bound(rule, params.alpha, params.weights,
                                  target.alpha, target.weights, slack, radius)
        elif selector == 'prop1':
            cert = prop1_certificate(rule, params.alpha, params.weights, lam,
                                     slack)
        elif selector == 'eq1':
            cert = combined_bound_eq1(rule, params.alpha, params.weights,
                                      target.alpha, target.weights, lam,
                                      slack, radius)
        elif selector == 'jensen':
            cert = jensen_certificate(rule, params.alpha, params.weights,
                                      delta, slack, radius)
        else:
            raise PreconditionError(_("Certificate '%(selector)s' does not "
                                      "apply to lattice rules",
                                      selector=selector))
        if cert.vacuous:
            self.log.warning("Certificate %s for %r is vacuous", selector,
                             rule)
        else:
            self.log.info("Certificate %s for %r: lhs=%.6g rhs=%.6g %s",
                          selector, rule, cert.lhs, cert.rhs,
                          'passed' if cert.passed else 'FAILED')
        return cert

    def sweep_cell(self, size, s, params, params_prime=None, certify=None,
                   fast=False):
        rule, trace = self.construct(size, s, params, fast=fast)
        radius = RuleSystem(self.env).series_radius
        P = lattice_merit_range(rule, params.alpha, params.weights,
                                radius)[1]
        row = {'N_or_m': rule.N, 's': s, 'P': P, 'sqrtP': P ** 0.5,
               'prop_bound': prop_bound('lattice', rule.N, s, params.alpha,
                                        params.weights),
               'thm1_rhs': None}
        if check_monotone(params.weights, s):
            target = params_prime or params
            try:
                row['thm1_rhs'] = theorem1_bound(
                    rule, params.alpha, params.weights, target.alpha,
                    target.weights).rhs
            except ResourceLimitError as e:
                if certify:
                    raise
                self.log.warning("No Zaremba index for N=%d: %s", rule.N, e)
        if certify:
            row['passed'] = self.certify(rule, certify, params,
                                         params_prime).passed
        return row
