# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Stability certificates.

A rule built for smoothness alpha and weights gamma keeps an error bound
under other parameters (alpha', gamma'). The functions here evaluate both
sides of such bounds for a given rule and report the comparison as a
`StabilityCertificate`; a failed comparison is data, not an exception.
"""

import math

from qmcforge.api import DomainError, PreconditionError, _
from qmcforge.cbc import cbc_construct, euler_totient
from qmcforge.discrepancy import exact_for_rule, star_disc_bound_lattice
from qmcforge.discrepancy import star_disc_bound_poly
from qmcforge.gfpoly import gf_is_irreducible
from qmcforge.korobov import p_merit_closed, p_merit_series, zaremba_rho
from qmcforge.util import parallel_map
from qmcforge.walsh import cbc_construct_poly, p_merit_wal_closed, rho_wal
from qmcforge.walsh import walsh_level_count
from qmcforge.weights import SpaceParams, WeightSet, check_monotone
from qmcforge.weights import ratio_subset_sum, subset_power_sum
from qmcforge.weights import subset_size_sum, weighted_zeta_sum, zeta

__all__ = ['StabilityCertificate', 'CorollaryProbe', 'c_alpha_prime',
           'theorem1_bound', 'theorem1_subset_bounds', 'theorem2_bound_poly',
           'prop_bound', 'prop1_certificate', 'prop2_certificate',
           'combined_bound_eq1', 'jensen_certificate', 'corollary_probe',
           'binomial_tail_check', 'walsh_level_count_check',
           'totient_bound_check']

DEFAULT_SLACK = 1e-9
DEFAULT_SERIES_RADIUS = 4

EULER_GAMMA = 0.5772156649

CSV_COLUMNS = ('s', 'N_or_m', 'lhs', 'rhs', 'margin', 'passed')


class StabilityCertificate(object):
    """Outcome of comparing `lhs` against the bound `rhs`.

    An infinite `rhs` marks a vacuous bound, which passes. `checks` holds
    named side conditions that must hold as well.

    >>> StabilityCertificate('thm1', 0.5, 1.0).passed
    True
    >>> StabilityCertificate('thm1', 1.0 + 1e-12, 1.0).passed
    True
    >>> StabilityCertificate('thm1', 1.1, 1.0).passed
    False
    """

    def __init__(self, selector, lhs, rhs, components=None, checks=None,
                 slack=DEFAULT_SLACK):
        self.selector = selector
        self.lhs = lhs
        self.rhs = rhs
        self.components = components or {}
        self.checks = checks or {}
        self.slack = slack

    @property
    def vacuous(self):
        return math.isinf(self.rhs)

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def passed(self):
        if not all(self.checks.values()):
            return False
        return self.vacuous or self.lhs <= self.rhs * (1.0 + self.slack)

    def to_dict(self):
        return {'certificate': self.selector, 'lhs': self.lhs,
                'rhs': None if self.vacuous else self.rhs,
                'margin': None if self.vacuous else self.margin,
                'passed': self.passed, 'vacuous': self.vacuous,
                'components': self.components, 'checks': self.checks}

    def csv_row(self, s, size):
        return {'s': s, 'N_or_m': size, 'lhs': self.lhs,
                'rhs': self.rhs, 'margin': self.margin,
                'passed': self.passed}

    def __repr__(self):
        return '<StabilityCertificate %s lhs=%r rhs=%r %s>' % (
            self.selector, self.lhs, self.rhs,
            'passed' if self.passed else 'failed')


def c_alpha_prime(alpha_prime):
    """(1 + zeta(2a)) + (2^(2a) + zeta(2a)) (2^(2a-1) - 1) / 2^(4a).

    >>> round(c_alpha_prime(1), 6)
    2.997742
    """
    a = float(alpha_prime)
    if not a > 0.5:
        raise DomainError(_("alpha' must exceed 1/2, got %s") % a)
    z = zeta(2.0 * a)
    return (1.0 + z) + (2.0 ** (2 * a) + z) * (2.0 ** (2 * a - 1) - 1.0) \
        / 2.0 ** (4 * a)


def _korobov_factor(alpha_prime):
    return 2.0 ** (2 * alpha_prime + 1) / (2.0 ** (2 * alpha_prime - 1) - 1.0)


def _walsh_factor(b, alpha_prime):
    top = float(b) ** (2 * alpha_prime - 1)
    return top * (b - 1) / (top - 1.0)


def _require_monotone(W, s):
    if not check_monotone(W, s):
        raise PreconditionError(_("Weights must satisfy gamma_v >= gamma_u "
                                  "whenever v is a subset of u"))


def lattice_merit_range(rule, alpha, W, series_radius=DEFAULT_SERIES_RADIUS):
    """(lower, upper, method) enclosing P_{alpha, W} of a lattice rule.

    Integer alpha in 1..4 uses the closed form; otherwise the dual series
    with K = series_radius N and its truncation bound.
    """
    params = SpaceParams(alpha, W)
    if params.integer_alpha in (1, 2, 3, 4):
        value = p_merit_closed(rule, params).p_value
        return value, value, 'closed-form'
    report = p_merit_series(rule, params, series_radius * rule.N)
    return report.p_value, report.p_value + report.truncation_bound, \
        'truncated-series'


def theorem1_bound(rule, alpha, W, alpha_prime, Wprime, slack=DEFAULT_SLACK,
                   series_radius=DEFAULT_SERIES_RADIUS):
    """Bound P_{alpha', gamma'} of a lattice rule by its Zaremba index
    under (alpha, gamma).

    >>> from qmcforge.korobov import LatticeRule
    >>> cert = theorem1_bound(LatticeRule(5, [1]), 1, WeightSet.unit(1),
    ...                       1, WeightSet.unit(1))
    >>> cert.passed, round(cert.rhs, 4)
    (True, 0.9593)
    """
    s = rule.s
    _require_monotone(W, s)
    rho = zaremba_rho(rule, SpaceParams(alpha, W), per_subset=False).rho_value
    c = c_alpha_prime(alpha_prime)
    exponent = float(alpha_prime) / alpha
    total = ratio_subset_sum(W, Wprime, s, exponent,
                             _korobov_factor(alpha_prime), math.log2(rule.N))
    rhs = math.inf if math.isinf(total) else c * rho ** exponent * total
    lower, upper, method = lattice_merit_range(rule, alpha_prime, Wprime,
                                               series_radius)
    return StabilityCertificate('thm1', upper, rhs, components={
        'rho': rho, 'c_alpha_prime': c, 'subset_sum': total,
        'lhs_method': method, 'lhs_lower': lower}, slack=slack)


def theorem1_subset_bounds(rule, alpha, alpha_prime, Wprime=None):
    """Per-subset form of the lattice bound.

    For each u, the inner error sum under (alpha', gamma' = 1) against
    c_alpha' f^|u| (mu_u + 1)^(|u|-1) / phi_{u,0}^(2 alpha'), where mu_u is
    the largest integer with 2^mu_u < phi_{u,0}, taken as at least 0.
    Subsets with gamma'_u = 0 are left out when `Wprime` is given.
    """
    s = rule.s
    unit = WeightSet.unit(s)
    merit = p_merit_closed(rule, SpaceParams(alpha_prime, unit),
                           per_subset=True)
    rho = zaremba_rho(rule, SpaceParams(alpha, unit))
    c = c_alpha_prime(alpha_prime)
    factor = _korobov_factor(alpha_prime)
    rows = []
    for entry in rho.per_subset:
        u = entry.u
        if Wprime is not None and Wprime.weight(u) == 0:
            continue
        bound = c * factor ** len(u) * (entry.mu + 1) ** (len(u) - 1) \
            / float(entry.phi0) ** (2.0 * alpha_prime)
        inner = merit.subset(u).inner
        rows.append({'u': list(u), 'inner': inner, 'phi0': entry.phi0,
                     'mu': entry.mu, 'bound': bound,
                     'holds': inner <= bound * (1.0 + DEFAULT_SLACK)})
    return rows


def theorem2_bound_poly(rule, alpha, W, alpha_prime, Wprime,
                        slack=DEFAULT_SLACK):
    """Bound P_{alpha', gamma'} of a polynomial lattice rule by its Walsh
    Zaremba index under (alpha, gamma); no monotonicity needed.
    """
    s = rule.s
    rho = rho_wal(rule, SpaceParams(alpha, W), per_subset=False).rho_value
    exponent = float(alpha_prime) / alpha
    total = ratio_subset_sum(W, Wprime, s, exponent,
                             _walsh_factor(rule.b, alpha_prime), rule.m + 1)
    rhs = math.inf if math.isinf(total) else rho ** exponent * total
    lhs = p_merit_wal_closed(rule, SpaceParams(alpha_prime, Wprime)).p_value
    return StabilityCertificate('thm2', lhs, rhs, components={
        'rho': rho, 'subset_sum': total}, slack=slack)


def _require_lambda(alpha, lam):
    if not 1.0 / (2.0 * alpha) < lam <= 1.0:
        raise DomainError(_("lambda must lie in (1/(2 alpha), 1], got %s")
                          % lam)


def prop_bound(kind, size, s, alpha, W, lam=1.0):
    """Error bound guaranteed for CBC output.

    :param kind: `'lattice'` with `size` = N, or `'poly'` with
                 `size` = (b, m).

    >>> round(prop_bound('lattice', 5, 1, 1, WeightSet.unit(1)), 4)
    0.8225
    >>> prop_bound('poly', (2, 3), 1, 1, WeightSet.unit(1)) == 1.0 / 14
    True
    """
    _require_lambda(alpha, lam)
    if kind == 'lattice':
        total = weighted_zeta_sum(W, s, lam, alpha) / euler_totient(size)
    elif kind in ('poly', 'poly-lattice'):
        b, m = size
        factor = (b - 1) / (float(b) ** (2 * alpha * lam) - b)
        total = subset_power_sum(W, s, lam, factor) / (b ** m - 1)
    else:
        raise PreconditionError(_("Unknown bound kind '%s'") % kind)
    return total ** (1.0 / lam)


def prop1_certificate(rule, alpha, W, lam=1.0, slack=DEFAULT_SLACK):
    lhs = p_merit_closed(rule, SpaceParams(alpha, W)).p_value
    rhs = prop_bound('lattice', rule.N, rule.s, alpha, W, lam)
    return StabilityCertificate('prop1', lhs, rhs,
                                components={'lambda': lam}, slack=slack)


def prop2_certificate(rule, alpha, W, lam=1.0, slack=DEFAULT_SLACK):
    """P against the CBC guarantee, with the chain rho <= P as a check."""
    if not gf_is_irreducible(rule.p):
        raise PreconditionError(_("The polynomial CBC guarantee needs an "
                                  "irreducible modulus, got %s") % rule.p)
    params = SpaceParams(alpha, W)
    lhs = p_merit_wal_closed(rule, params).p_value
    rho = rho_wal(rule, params, per_subset=False).rho_value
    rhs = prop_bound('poly', (rule.b, rule.m), rule.s, alpha, W, lam)
    return StabilityCertificate(
        'prop2', lhs, rhs, components={'lambda': lam, 'rho': rho},
        checks={'rho_below_P': rho <= lhs * (1.0 + slack)}, slack=slack)


def combined_bound_eq1(rule, alpha, W, alpha_prime, Wprime, lam=1.0,
                       slack=DEFAULT_SLACK,
                       series_radius=DEFAULT_SERIES_RADIUS):
    """The lattice bound with the Zaremba index replaced by the CBC
    guarantee.

    >>> from qmcforge.korobov import LatticeRule
    >>> cert = combined_bound_eq1(LatticeRule(5, [1]), 1, WeightSet.unit(1),
    ...                           1, WeightSet.unit(1))
    >>> round(cert.rhs, 2)
    19.72
    """
    s = rule.s
    _require_monotone(W, s)
    c = c_alpha_prime(alpha_prime)
    bound = prop_bound('lattice', rule.N, s, alpha, W, lam)
    exponent = float(alpha_prime) / alpha
    total = ratio_subset_sum(W, Wprime, s, exponent,
                             _korobov_factor(alpha_prime), math.log2(rule.N))
    rhs = math.inf if math.isinf(total) else c * bound ** exponent * total
    lower, upper, method = lattice_merit_range(rule, alpha_prime, Wprime,
                                               series_radius)
    return StabilityCertificate('eq1', upper, rhs, components={
        'prop_bound': bound, 'c_alpha_prime': c, 'subset_sum': total,
        'lambda': lam, 'lhs_method': method}, slack=slack)


def jensen_certificate(rule, alpha, W, delta, slack=DEFAULT_SLACK,
                       series_radius=DEFAULT_SERIES_RADIUS):
    """(P_{alpha/delta, gamma^(1/delta)})^delta against P_{alpha, gamma}.

    Where a series is needed the left side takes the upper and the right
    side the lower end of its enclosure.
    """
    if not 0.0 < delta <= 1.0:
        raise DomainError(_("delta must lie in (0, 1], got %s") % delta)
    target_alpha = alpha / float(delta)
    target_W = W.power(1.0 / delta)
    if rule.kind == 'lattice':
        _lo, upper, method = lattice_merit_range(rule, target_alpha, target_W,
                                                 series_radius)
        lower, _hi, _m = lattice_merit_range(rule, alpha, W, series_radius)
    else:
        upper = p_merit_wal_closed(
            rule, SpaceParams(target_alpha, target_W)).p_value
        lower = p_merit_wal_closed(rule, SpaceParams(alpha, W)).p_value
        method = 'closed-form'
    return StabilityCertificate('jensen', upper ** delta, lower, components={
        'delta': delta, 'alpha_target': target_alpha, 'lhs_method': method},
        slack=slack)


# Corollary probes

PROBE_KINDS = ('cor1', 'cor2', 'cor3', 'cor4')


class CorollaryProbe(object):
    """Parameters and exponents of a tractability probe.

    The probe kinds are `cor1` (lattice error), `cor2` (lattice
    discrepancy), `cor3` (polynomial lattice error) and `cor4` (polynomial
    lattice discrepancy). `q1` and `q2` stand for q' and q''.
    """

    def __init__(self, alpha, W, alpha_prime, Wprime, lam=1.0, delta=0.1,
                 q=0.0, q1=0.0, q2=0.0, b=2):
        self.alpha = float(alpha)
        self.alpha_prime = float(alpha_prime)
        self.W = W
        self.Wprime = Wprime
        self.lam = float(lam)
        self.delta = float(delta)
        self.q, self.q1, self.q2 = float(q), float(q1), float(q2)
        self.b = int(b)
        _require_lambda(self.alpha, self.lam)
        if min(self.q, self.q1, self.q2) < 0:
            raise DomainError(_("Probe exponents must be nonnegative"))

    def decay(self, kind):
        """Exponent of the rate in phi(N) or b^m, before delta."""
        if _is_error(kind):
            return self.alpha_prime / (self.alpha * self.lam)
        return 1.0 / (2.0 * self.alpha * self.lam)

    def delta_cap(self, kind):
        """Upper end of the admissible delta range; for the discrepancy
        kinds it is twice the decay exponent."""
        if _is_error(kind):
            return self.alpha_prime / (self.alpha * self.lam)
        return 1.0 / (self.alpha * self.lam)

    def s_power(self, kind):
        if _is_error(kind):
            return self.q * self.alpha_prime / (self.alpha * self.lam) \
                + self.q1
        return max(self.q1, self.q / (2.0 * self.alpha * self.lam) + self.q2)

    def check(self, kind):
        if kind not in PROBE_KINDS:
            raise PreconditionError(_("Unknown corollary probe '%s'") % kind)
        cap = self.delta_cap(kind)
        if not 0.0 < self.delta < cap:
            raise DomainError(_("delta must lie in (0, %s) for %s, got %s")
                              % (cap, kind, self.delta))


def _is_lattice(kind):
    return kind in ('cor1', 'cor2')


def _is_error(kind):
    return kind in ('cor1', 'cor3')


class CorollaryTable(object):
    """Rows of a corollary probe and the empirical constant C."""

    def __init__(self, kind, rows, constant=None):
        self.kind = kind
        self.rows = rows
        self.constant = constant

    @property
    def columns(self):
        return list(self.rows[0].keys()) if self.rows else []

    def to_dict(self):
        return {'kind': self.kind, 'constant': self.constant,
                'rows': self.rows}


def _probe_cell(kind, probe, s, size, measure):
    W, Wprime, lam = probe.W, probe.Wprime, probe.lam
    if _is_lattice(kind):
        scale = float(euler_totient(size))
        A = weighted_zeta_sum(W, s, lam, probe.alpha)
        level = math.log2(size)
    else:
        b = probe.b
        scale = float(b) ** size
        A = subset_power_sum(W, s, lam,
                             (b - 1) / (float(b) ** (2 * probe.alpha * lam)
                                        - b))
        level = size + 1
    row = {'s': s, 'N_or_m': size, 'A': A / s ** probe.q}
    if _is_error(kind):
        if _is_lattice(kind):
            factor = _korobov_factor(probe.alpha_prime)
        else:
            factor = _walsh_factor(probe.b, probe.alpha_prime)
        B = ratio_subset_sum(W, Wprime, s, probe.alpha_prime / probe.alpha,
                             factor, level)
        row['B'] = B / (s ** probe.q1 * scale ** probe.delta)
        exponent = probe.alpha_prime / probe.alpha
    else:
        if _is_lattice(kind) or probe.b == 2:
            k_b = 2.0 if _is_lattice(kind) else 1.0
        else:
            k_b = 1.0 + 1.0 / math.sin(math.pi / probe.b)
        B = ratio_subset_sum(W, Wprime, s, 1.0 / (2.0 * probe.alpha),
                             k_b * level, 1.0)
        row['A2'] = subset_size_sum(Wprime, s) / s ** probe.q1
        row['B'] = B / (s ** probe.q2 * scale ** probe.delta)
        exponent = 1.0 / (2.0 * probe.alpha)
    row['shape'] = s ** probe.s_power(kind) \
        * scale ** (probe.delta - probe.decay(kind))
    if W.kind == W.PRODUCT and Wprime.kind == W.PRODUCT:
        row['sum_gamma_lambda'] = math.fsum(g ** lam for g in W.gamma[:s])
        row['sum_ratio'] = _partial_ratio_sum(W.gamma[:s], Wprime.gamma[:s],
                                              exponent)
    if measure:
        row['measured'] = _measure(kind, probe, s, size)
        row['ratio'] = row['measured'] / row['shape']
    return row


def _partial_ratio_sum(gamma, gamma_prime, exponent):
    terms = []
    for g, gp in zip(gamma, gamma_prime):
        if gp == 0:
            continue
        if g == 0:
            return math.inf
        terms.append(gp / g ** exponent)
    return math.fsum(terms)


def _measure(kind, probe, s, size):
    params = SpaceParams(probe.alpha, probe.W)
    if _is_lattice(kind):
        rule, _trace = cbc_construct(size, s, params)
    else:
        rule, _trace = cbc_construct_poly(probe.b, size, None, s, params)
    if _is_error(kind):
        if _is_lattice(kind):
            return lattice_merit_range(rule, probe.alpha_prime,
                                       probe.Wprime)[1]
        return p_merit_wal_closed(
            rule, SpaceParams(probe.alpha_prime, probe.Wprime)).p_value
    if s <= 2:
        return float(exact_for_rule(rule, probe.Wprime))
    if _is_lattice(kind):
        return star_disc_bound_lattice(rule, probe.Wprime).bound_joe
    return star_disc_bound_poly(rule, probe.Wprime).bound_joe


def corollary_probe(kind, probe, grid, measure=False, workers=1):
    """Evaluate the finite quantities of a tractability statement over a
    grid of (s, N) cells, or (s, m) cells for polynomial lattices.

    Columns `A` and `B` (and `A2` for discrepancy) are the expressions
    whose suprema the statement requires finite, `shape` the rate
    expression without its constant. With `measure`, CBC rules are built
    and the measured quantity and its ratio to `shape` are added; the
    constant of the table is the largest ratio. Nothing is asserted.

    >>> probe = CorollaryProbe(1, WeightSet.product([0.0] * 4), 2,
    ...                        WeightSet.product([0.0] * 4))
    >>> table = corollary_probe('cor1', probe, [(2, 7), (4, 11)])
    >>> [(row['A'], row['B']) for row in table.rows]
    [(0.0, 0.0), (0.0, 0.0)]
    """
    probe.check(kind)
    grid = [(int(s), int(size)) for s, size in grid]
    if not grid:
        raise PreconditionError(_("Corollary probe needs a nonempty grid"))
    rows = parallel_map(
        lambda cell: _probe_cell(kind, probe, cell[0], cell[1], measure),
        grid, workers)
    constant = max(row['ratio'] for row in rows) if measure else None
    return CorollaryTable(kind, rows, constant)


# Auxiliary inequalities

def binomial_tail_check(b, k, t0):
    """Sum over t >= t0 of b^-t C(t+k-1, k-1) against
    b^-t0 C(t0+k-1, k-1) (1 - 1/b)^-k.

    >>> binomial_tail_check(2.0, 3, 2).passed
    True
    """
    b = float(b)
    if not b > 1.0 or k < 1 or t0 < 1:
        raise DomainError(_("Tail check needs b > 1 and k, t0 >= 1"))
    terms, t = [], t0
    while True:
        term = b ** -t * math.comb(t + k - 1, k - 1)
        terms.append(term)
        # terms decrease geometrically once t exceeds k / (b - 1)
        if t > t0 + k and term < 1e-18 * math.fsum(terms):
            break
        t += 1
    lhs = math.fsum(terms)
    rhs = b ** -t0 * math.comb(t0 + k - 1, k - 1) * (1.0 - 1.0 / b) ** -k
    return StabilityCertificate('binomial-tail', lhs, rhs,
                                components={'b': b, 'k': k, 't0': t0})


def walsh_level_count_check(rule, u, level):
    """Dual vectors supported on u with digit total `level` against
    (b-1)^|u| b^(level - phi_u) C(level-1, |u|-1)."""
    if not gf_is_irreducible(rule.p):
        raise PreconditionError(_("Level counts are bounded for irreducible "
                                  "moduli only"))
    u = tuple(u)
    report = rho_wal(rule, SpaceParams(1.0, WeightSet.unit(rule.s)))
    phi = report.subset(u).phi
    count = walsh_level_count(rule, u, level)
    if level < phi:
        bound = 0
    else:
        bound = (rule.b - 1) ** len(u) * rule.b ** (level - phi) \
            * math.comb(level - 1, len(u) - 1)
    return StabilityCertificate('walsh-level-count', count, bound,
                                components={'phi': phi, 'level': level},
                                slack=0.0)


def totient_bound_check(N):
    """1/phi(N) against (e^gamma log log N + 2.50637 / log log N) / N.

    >>> totient_bound_check(30).passed
    True
    """
    if N < 3:
        raise DomainError(_("The totient bound needs N >= 3"))
    loglog = math.log(math.log(N))
    rhs = (math.exp(EULER_GAMMA) * loglog + 2.50637 / loglog) / N
    return StabilityCertificate('totient', 1.0 / euler_totient(N), rhs,
                                components={'N': N}, slack=0.0)

