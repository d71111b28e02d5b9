# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Weighted star discrepancy: upper bounds for lattice and polynomial
lattice rules, and exact values in one and two dimensions."""

import math
from fractions import Fraction

import numpy as np

from qmcforge.api import PreconditionError, ResourceLimitError, UsageError, _
from qmcforge.korobov import cyclic_zero_sum, lattice_points, residue_sums
from qmcforge.korobov import zaremba_rho
from qmcforge.util import nonempty_subsets
from qmcforge.walsh import SyndromeGroup, point_numerators, rho_wal
from qmcforge.weights import EXPLICIT_MAX_DIM, SpaceParams, check_monotone
from qmcforge.weights import normalise_subset

__all__ = ['DiscrepancyReport', 'r_u_lattice', 'r_u_poly',
           'star_disc_bound_lattice', 'star_disc_bound_rho_lattice',
           'star_disc_bound_poly', 'star_disc_bound_rho_poly',
           'exact_star_discrepancy', 'weighted_star_discrepancy']

R_MAX_SUBSET = 3
R_MAX_N = 256
EXACT_MAX_POINTS = 256


class DiscrepancyReport(object):
    """Discrepancy bounds of one rule.

    `bound_rho` is infinite and `vacuous` set when some gamma'_u > 0 meets
    gamma_u = 0.
    """

    def __init__(self, bound_joe=None, bound_rho=None, exact_dstar=None,
                 per_subset=None, vacuous=False):
        self.bound_joe = bound_joe
        self.bound_rho = bound_rho
        self.exact_dstar = exact_dstar
        self.per_subset = per_subset or {}
        self.vacuous = vacuous

    def merge(self, other):
        for name in ('bound_joe', 'bound_rho', 'exact_dstar'):
            if getattr(other, name) is not None:
                setattr(self, name, getattr(other, name))
        self.per_subset.update(other.per_subset)
        self.vacuous = self.vacuous or other.vacuous
        return self

    def to_dict(self):
        bound_rho = self.bound_rho
        if bound_rho is not None and math.isinf(bound_rho):
            bound_rho = None
        exact = self.exact_dstar
        return {'bound_joe': self.bound_joe, 'bound_rho': bound_rho,
                'exact_dstar': None if exact is None else float(exact),
                'vacuous': self.vacuous,
                'per_subset': [{'u': list(u), 'R': value} for u, value
                               in sorted(self.per_subset.items(),
                                         key=lambda item: (len(item[0]),
                                                           item[0]))]}

    def __repr__(self):
        return '<DiscrepancyReport joe=%r rho=%r exact=%r>' % (
            self.bound_joe, self.bound_rho, self.exact_dstar)


def _subset(u, s):
    if not u:
        raise UsageError(_("Subsets must be nonempty"))
    u = normalise_subset(u)
    if u[-1] > s:
        raise UsageError(_("Subset %r exceeds dimension %d") % (u, s))
    if len(u) > R_MAX_SUBSET:
        raise ResourceLimitError(_("R sums are limited to |u| <= %d")
                                 % R_MAX_SUBSET)
    return u


def _weighted_subsets(W, s):
    """The (u, gamma_u) with gamma_u > 0."""
    W.require_dimension(s)
    if W.kind == W.EXPLICIT:
        return sorted((u, v) for u, v in W.table.items()
                      if u[-1] <= s and v > 0)
    if s > EXPLICIT_MAX_DIM:
        raise ResourceLimitError(_("Subset enumeration is limited to %d "
                                   "coordinates") % EXPLICIT_MAX_DIM)
    return [(u, W.weight(u)) for u in nonempty_subsets(s) if W.weight(u) > 0]


def r_u_lattice(rule, u):
    """Sum over the nonzero dual vectors supported in u with
    -N/2 < k_j <= N/2 of prod 1/max(1, |k_j|).

    >>> from qmcforge.korobov import LatticeRule
    >>> r_u_lattice(LatticeRule(4, [1]), [1])
    0.0
    >>> r_u_lattice(LatticeRule(2, [1, 1]), [1, 2])
    1.0
    """
    u = _subset(u, rule.s)
    N = rule.N
    if N > R_MAX_N:
        raise ResourceLimitError(_("R sums are limited to N <= %d") % R_MAX_N)
    k = np.arange(-N // 2 + 1, N // 2 + 1, dtype=np.int64)
    w = 1.0 / np.maximum(1, np.abs(k))
    columns = [residue_sums(k, rule.z[j - 1], N, w) for j in u]
    # the zero vector contributes exactly 1
    return max(cyclic_zero_sum(columns, N) - 1.0, 0.0)


def star_disc_bound_lattice(rule, W):
    """Sum over u of gamma_u [1 - (1 - 1/N)^|u| + R_u / 2].

    >>> from qmcforge.korobov import LatticeRule
    >>> from qmcforge.weights import WeightSet
    >>> star_disc_bound_lattice(LatticeRule(4, [1]),
    ...                         WeightSet.unit(1)).bound_joe
    0.25
    """
    N = rule.N
    terms, per_subset = [], {}
    for u, gamma in _weighted_subsets(W, rule.s):
        R = r_u_lattice(rule, u)
        per_subset[u] = R
        terms.append(gamma * (1.0 - (1.0 - 1.0 / N) ** len(u) + R / 2.0))
    return DiscrepancyReport(bound_joe=math.fsum(terms), per_subset=per_subset)


def _rho_bound(rule, alpha, W, Wprime, rho, size, term):
    s = rule.s
    if not check_monotone(W, s):
        raise PreconditionError(_("The rho bound needs weights with "
                                  "gamma_v >= gamma_u for v in u"))
    root = rho ** (1.0 / (2.0 * alpha))
    terms = []
    for u, gamma_prime in _weighted_subsets(Wprime, s):
        gamma = W.weight(u)
        if gamma == 0:
            return DiscrepancyReport(bound_rho=math.inf, vacuous=True)
        terms.append(gamma_prime * (1.0 - (1.0 - 1.0 / size) ** len(u)
                                    + root / gamma ** (1.0 / (2.0 * alpha))
                                    * term(len(u))))
    return DiscrepancyReport(bound_rho=math.fsum(terms))


def star_disc_bound_rho_lattice(rule, alpha, W, Wprime):
    """Discrepancy bound under gamma' from the Zaremba index under
    (alpha, gamma).

    >>> from qmcforge.korobov import LatticeRule
    >>> from qmcforge.weights import WeightSet
    >>> report = star_disc_bound_rho_lattice(LatticeRule(5, [1]), 1,
    ...     WeightSet.unit(1), WeightSet.unit(1))
    >>> abs(report.bound_rho - (0.2 + 0.1 * (math.log(5) + 3))) < 1e-12
    True
    """
    rho = zaremba_rho(rule, SpaceParams(alpha, W),
                      per_subset=False).rho_value
    log_n = math.log2(rule.N)

    def term(k):
        return 0.5 * (math.log(2.0) * log_n ** k
                      + 3.0 * (2.0 * log_n) ** (k - 1))
    return _rho_bound(rule, alpha, W, Wprime, rho, rule.N, term)


def _r_tilde(b, m):
    """r~(k) for 0 <= k < b^m, r~(0) = 1."""
    values = np.ones(b ** m)
    for k in range(1, b ** m):
        a, top = 0, k
        while top >= b:
            top //= b
            a += 1
        values[k] = 1.0 / (b ** (a + 1) * math.sin(math.pi * top / b))
    return values


def r_u_poly(rule, u):
    """Sum over the nonzero dual vectors supported in u with components
    below b^m of prod r~(k_j).

    >>> from qmcforge.walsh import PolyLatticeRule
    >>> r_u_poly(PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]]), [1])
    0.0
    """
    u = _subset(u, rule.s)
    group = SyndromeGroup(rule)
    k = np.arange(group.size, dtype=np.int64)
    weights = _r_tilde(rule.b, rule.m)
    columns = [np.bincount(group.syndromes(j, k), weights=weights,
                           minlength=group.size) for j in u]
    return max(group.zero_sum(columns) - 1.0, 0.0)


def star_disc_bound_poly(rule, W):
    """Sum over u of gamma_u [1 - (1 - 1/b^m)^|u| + R_u]."""
    size = rule.size
    terms, per_subset = [], {}
    for u, gamma in _weighted_subsets(W, rule.s):
        R = r_u_poly(rule, u)
        per_subset[u] = R
        terms.append(gamma * (1.0 - (1.0 - 1.0 / size) ** len(u) + R))
    return DiscrepancyReport(bound_joe=math.fsum(terms), per_subset=per_subset)


def star_disc_bound_rho_poly(rule, alpha, W, Wprime):
    """Discrepancy bound under gamma' from the Walsh Zaremba index.

    >>> from qmcforge.walsh import PolyLatticeRule
    >>> from qmcforge.weights import WeightSet
    >>> star_disc_bound_rho_poly(PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]]),
    ...     1, WeightSet.unit(1), WeightSet.unit(1)).bound_rho
    0.375
    """
    b, m = rule.b, rule.m
    rho = rho_wal(rule, SpaceParams(alpha, W), per_subset=False).rho_value
    k_b = 1.0 if b == 2 else 1.0 + 1.0 / math.sin(math.pi / b)

    def term(k):
        return (b - 1) * (k_b * (m + 1)) ** k
    return _rho_bound(rule, alpha, W, Wprime, rho, rule.size, term)


def _numerators(points, denominator):
    if denominator is not None:
        X = np.asarray(points, dtype=np.int64)
        return X.reshape(len(X), -1), int(denominator)
    rows = [tuple(Fraction(c) for c in (x if isinstance(x, (tuple, list))
                                        else (x,))) for x in points]
    denominator = 1
    for row in rows:
        for c in row:
            denominator = denominator * c.denominator \
                // math.gcd(denominator, c.denominator)
    X = np.array([[int(c * denominator) for c in row] for row in rows],
                 dtype=np.int64)
    return X, denominator


def exact_star_discrepancy(points, denominator=None):
    """Exact star discrepancy of a point set in one or two dimensions.

    The supremum is attained at grid values y_j taken from the point
    coordinates and 1, counting points in [0, y) from below and in [0, y]
    as the limit from above.

    :param points: coordinates as fractions, or integer numerators when
                   `denominator` is given.

    >>> exact_star_discrepancy([Fraction(n, 4) for n in range(4)])
    Fraction(1, 4)
    >>> exact_star_discrepancy([(0, 0), (Fraction(1, 2), Fraction(1, 2))])
    Fraction(3, 4)
    >>> exact_star_discrepancy([0])
    Fraction(1, 1)
    """
    if len(points) == 0:
        raise UsageError(_("Star discrepancy of an empty point set"))
    if len(points) > EXACT_MAX_POINTS:
        raise ResourceLimitError(_("Exact star discrepancy is limited to %d "
                                   "points") % EXACT_MAX_POINTS)
    X, D = _numerators(points, denominator)
    N, s = X.shape
    if s > 2:
        raise PreconditionError(_("Exact star discrepancy is supported for "
                                  "s <= 2 only"))
    grids = [np.union1d(X[:, j], [D]) for j in range(s)]
    below = [(X[:, j][None, :] < g[:, None]).astype(np.int64)
             for j, g in enumerate(grids)]
    upto = [(X[:, j][None, :] <= g[:, None]).astype(np.int64)
            for j, g in enumerate(grids)]
    if s == 1:
        open_count, closed_count = below[0].sum(axis=1), upto[0].sum(axis=1)
        volume = grids[0]
        scale = D
    else:
        open_count = below[0] @ below[1].T
        closed_count = upto[0] @ upto[1].T
        volume = grids[0][:, None] * grids[1][None, :]
        scale = D * D
    # both sides scaled by N D^s
    low = volume * N - open_count * scale
    high = closed_count * scale - volume * N
    return Fraction(int(max(low.max(), high.max())), N * scale)


def weighted_star_discrepancy(points, W, denominator=None):
    """max over u of gamma_u times the star discrepancy of the projection
    onto u, for s <= 2."""
    X, D = _numerators(points, denominator)
    s = X.shape[1]
    best = Fraction(0)
    for u, gamma in _weighted_subsets(W, s):
        value = exact_star_discrepancy(X[:, [j - 1 for j in u]], D)
        best = max(best, Fraction(gamma) * value)
    return best


def exact_for_rule(rule, W):
    """Weighted star discrepancy of a lattice or polynomial lattice rule."""
    if rule.kind == 'lattice':
        return weighted_star_discrepancy(lattice_points(rule), W, rule.N)
    return weighted_star_discrepancy(point_numerators(rule), W, rule.size)
