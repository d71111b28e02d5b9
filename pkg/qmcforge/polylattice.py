# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import numpy as np

from trac.core import Component, implements

from qmcforge.api import IRuleFamily, PreconditionError, RuleSystem
from qmcforge.api import UsageError, _
from qmcforge.discrepancy import exact_for_rule, star_disc_bound_poly
from qmcforge.discrepancy import star_disc_bound_rho_poly
from qmcforge.discrepancy import EXACT_MAX_POINTS
from qmcforge.gfpoly import GFPoly, smallest_irreducible
from qmcforge.model import rule_from_dict
from qmcforge.stability import jensen_certificate, prop2_certificate
from qmcforge.stability import prop_bound, theorem2_bound_poly
from qmcforge.walsh import PolyLatticeRule, cbc_construct_poly
from qmcforge.walsh import p_merit_wal_closed, rho_wal
from qmcforge.weights import PER_SUBSET_MAX_DIM


class PolyLatticeRuleFamily(Component):
    """[main] Polynomial lattice rules over Z_b in weighted Walsh spaces."""

    implements(IRuleFamily)

    selectors = ('thm2', 'prop2', 'jensen')

    # IRuleFamily methods

    def get_rule_kind(self):
        return PolyLatticeRule.kind

    def construct(self, size, s, params, fast=False, modulus=None,
                  method='cbc', seed=0):
        b, m = (int(v) for v in size)
        if fast:
            raise PreconditionError(_("Fast CBC is available for lattice "
                                      "rules only"))
        if modulus is not None and not isinstance(modulus, GFPoly):
            modulus = GFPoly(modulus, b)
        if method == 'random':
            p = modulus or smallest_irreducible(b, m)
            rng = np.random.default_rng(seed)
            q = [GFPoly.one(b)] + [GFPoly.from_int(int(c), b, m) for c in
                                   rng.integers(1, b ** m, size=s - 1)]
            self.log.debug("Random polynomial lattice rule b=%d m=%d, "
                           "seed=%d", b, m, seed)
            return PolyLatticeRule(b, m, p, q), None
        if method != 'cbc':
            raise UsageError(_("Unknown construction method '%s'") % method)
        system = RuleSystem(self.env)
        rule, trace = cbc_construct_poly(b, m, modulus, s, params,
                                         system.tie_tolerance, system.workers)
        if not trace.certifiable:
            self.log.warning("Modulus %s is reducible; the CBC error bound "
                             "does not apply", rule.p)
        for step, (component, merit) in enumerate(trace.steps, 1):
            self.log.debug("CBC b=%d m=%d step %d: q=%r P=%.12g", b, m, step,
                           component, merit)
        self.log.info("Constructed %r (%d candidate evaluations)", rule,
                      trace.evaluations)
        return rule, trace

    def load_rule(self, data):
        rule = rule_from_dict(data)
        if rule.kind != self.get_rule_kind():
            raise UsageError(_("Expected a polynomial lattice rule, got "
                               "'%s'") % rule.kind)
        return rule

    def evaluate(self, rule, params, rho=False, discrepancy=False,
                 weights_prime=None):
        report = p_merit_wal_closed(rule, params,
                                    per_subset=rule.s <= PER_SUBSET_MAX_DIM)
        if rho:
            report.merge(rho_wal(rule, params))
        result = {'rule': rule.to_dict(), 'alpha': params.alpha,
                  'weights': params.weights.to_dict()}
        result.update(report.to_dict())
        if discrepancy:
            W = weights_prime or params.weights
            disc = star_disc_bound_poly(rule, W)
            disc.merge(star_disc_bound_rho_poly(rule, params.alpha,
                                                params.weights, W))
            if rule.s <= 2 and rule.size <= EXACT_MAX_POINTS:
                disc.exact_dstar = float(exact_for_rule(rule, W))
            if disc.vacuous:
                self.log.warning("Discrepancy bound from rho is vacuous for "
                                 "%r", rule)
            result['discrepancy'] = disc.to_dict()
        return result

    def certify(self, rule, selector, params, params_prime=None, lam=1.0,
                delta=0.5):
        slack = RuleSystem(self.env).certificate_slack
        target = params_prime or params
        if selector == 'thm2':
            cert = theorem2_bound_poly(rule, params.alpha, params.weights,
                                       target.alpha, target.weights, slack)
        elif selector == 'prop2':
            cert = prop2_certificate(rule, params.alpha, params.weights, lam,
                                     slack)
        elif selector == 'jensen':
            cert = jensen_certificate(rule, params.alpha, params.weights,
                                      delta, slack)
        else:
            raise PreconditionError(_("Certificate '%(selector)s' does not "
                                      "apply to polynomial lattice rules",
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
        P = p_merit_wal_closed(rule, params).p_value
        target = params_prime or params
        row = {'N_or_m': rule.m, 's': s, 'P': P, 'sqrtP': P ** 0.5,
               'prop_bound': prop_bound('poly', (rule.b, rule.m), s,
                                        params.alpha, params.weights),
               'thm1_rhs': theorem2_bound_poly(
                   rule, params.alpha, params.weights, target.alpha,
                   target.weights).rhs}
        if certify:
            row['passed'] = self.certify(rule, certify, params,
                                         params_prime).passed
        return row
