# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Polynomial lattice rules and their merit in the weighted Walsh space.

A rule with modulus p of degree m and generating polynomials q_j has the
b^m points x_j(n) = nu_m(n q_j / p) for n running over the polynomials of
degree < m. The dual lattice holds the Walsh indices k with
sum_j tr_m(k_j) q_j = 0 mod p. Since tr_m only sees the lowest m digits,
membership is decided by the syndrome tr_m(k_j) q_j mod p of each
coordinate, an element of the additive group (Z_b)^m; the series and the
Zaremba index below work on syndrome classes rather than on single
indices.
"""

import math
from fractions import Fraction

import numpy as np

from qmcforge.api import DomainError, PreconditionError, QmcError
from qmcforge.api import ResourceLimitError, UsageError, _
from qmcforge.cbc import CbcState, CbcTrace, DEFAULT_TIE_TOLERANCE
from qmcforge.cbc import scan_candidates, select_candidate
from qmcforge.gfpoly import GFPoly, gf_is_irreducible, nu_m
from qmcforge.gfpoly import smallest_irreducible
from qmcforge.korobov import MeritReport, SubsetMerit, power_gap
from qmcforge.korobov import require_weights
from qmcforge.util import digit_matrix, nonempty_subsets
from qmcforge.weights import kernel_sum, subset_means

__all__ = ['PolyLatticeRule', 'poly_lattice_points', 'point_numerators',
           'mu_of', 'walsh_phi_alpha', 'p_merit_wal_closed',
           'p_merit_wal_series', 'rho_wal', 'cbc_construct_poly',
           'walsh_function', 'walsh_char_sum', 'walsh_level_count']

# Size b^m of the syndrome group handled by the class convolutions
GROUP_MAX_SIZE = 1024
SERIES_MAX_INDICES = 1 << 20
CBC_MAX_CELLS = 1 << 24


class PolyLatticeRule(object):
    """Polynomial lattice rule over Z_b with modulus p of degree m.

    >>> rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
    >>> rule
    PolyLatticeRule(b=2, m=3, p=[1, 1, 0, 1], q=[[1]])
    >>> rule.size
    8
    """

    kind = 'poly-lattice'

    __slots__ = ('b', 'm', 'p', 'q')

    def __init__(self, b, m, p, q):
        b, m = int(b), int(m)
        if m < 1:
            raise UsageError(_("Polynomial lattice rules need m >= 1"))
        p = p if isinstance(p, GFPoly) else GFPoly(p, b)
        if p.b != b or p.degree != m:
            raise UsageError(_("Modulus %s is not a degree %d polynomial "
                               "over Z_%d") % (p, m, b))
        q = tuple(c if isinstance(c, GFPoly) else GFPoly(c, b) for c in q)
        if not q:
            raise UsageError(_("Generating polynomials must not be empty"))
        for c in q:
            if c.b != b or not c or c.degree >= m:
                raise UsageError(_("Generating polynomial %s must be "
                                   "nonzero with degree < %d") % (c, m))
        self.b = b
        self.m = m
        self.p = p
        self.q = q

    @property
    def s(self):
        return len(self.q)

    @property
    def size(self):
        return self.b ** self.m

    def prefix(self, s):
        return PolyLatticeRule(self.b, self.m, self.p, self.q[:s])

    def to_dict(self):
        return {'type': self.kind, 'b': self.b, 'm': self.m,
                'p': self.p.to_list(), 'q': [c.to_list() for c in self.q]}

    def __eq__(self, other):
        return isinstance(other, PolyLatticeRule) and \
            (self.b, self.m, self.p, self.q) == \
            (other.b, other.m, other.p, other.q)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.b, self.m, self.p, self.q))

    def __repr__(self):
        return 'PolyLatticeRule(b=%d, m=%d, p=%r, q=%r)' % (
            self.b, self.m, self.p.to_list(), [c.to_list() for c in self.q])


# Linear maps over Z_b

def _multiplication_matrix(q, p):
    """Matrix of r -> r q mod p on coefficient vectors of length m."""
    m = p.degree
    columns = [((GFPoly.monomial(i, p.b) * q) % p) for i in range(m)]
    return np.array([[c.coeff(k) for c in columns] for k in range(m)],
                    dtype=np.int64)


def _digit_map_matrix(p):
    """Matrix of r -> digits of nu_m(r / p), t_1 in row 0."""
    m = p.degree
    columns = [nu_m(GFPoly.monomial(i, p.b), p, m).digits for i in range(m)]
    return np.array(columns, dtype=np.int64).T


def _numerators_for(q, p, digits, L):
    b, m = p.b, p.degree
    A = (L @ _multiplication_matrix(q, p)) % b
    t = (digits @ A.T) % b
    weights = b ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return t @ weights


def point_numerators(rule):
    """Coordinates of all points times b^m, one row per n in integer order.

    >>> rule = PolyLatticeRule(2, 2, [1, 1, 1], [[1]])
    >>> point_numerators(rule).ravel().tolist()
    [0, 1, 3, 2]
    """
    digits = digit_matrix(rule.b, rule.m)
    L = _digit_map_matrix(rule.p)
    return np.stack([_numerators_for(q, rule.p, digits, L) for q in rule.q],
                    axis=1)


def poly_lattice_points(rule):
    """Points as tuples of exact fractions with denominator b^m.

    >>> [x for (x,) in poly_lattice_points(PolyLatticeRule(2, 1, [0, 1],
    ...                                                     [[1]]))]
    [Fraction(0, 1), Fraction(1, 2)]
    """
    size = rule.size
    return [tuple(Fraction(int(v), size) for v in row)
            for row in point_numerators(rule)]


# Walsh kernel

def mu_of(k, b):
    """Number of base-b digits of k >= 1.

    >>> mu_of(1, 2), mu_of(4, 2), mu_of(9, 3)
    (1, 3, 3)
    """
    k = int(k)
    if k < 1:
        raise DomainError(_("mu(k) is defined for k >= 1, got %d") % k)
    mu = 0
    while k:
        k //= b
        mu += 1
    return mu


def _require_alpha(alpha):
    if not alpha > 0.5:
        raise DomainError(_("The Walsh kernel needs alpha > 1/2, got %s")
                          % alpha)


def walsh_phi_alpha(x, alpha, b):
    """Walsh kernel factor, the sum over k >= 1 of b^(-2 alpha mu(k))
    wal_k(x), evaluated from the first nonzero digit of x.

    >>> walsh_phi_alpha(0, 1, 2)
    0.5
    >>> walsh_phi_alpha(Fraction(1, 2), 1, 2)
    -0.25
    >>> abs(walsh_phi_alpha(0, 2, 2) - 1.0 / 14) < 1e-15
    True
    """
    _require_alpha(alpha)
    x = Fraction(x)
    if not 0 <= x < 1:
        raise UsageError(_("Walsh kernel arguments lie in [0, 1), got %s")
                         % x)
    scale = float(b) ** (2 * alpha)
    base = (b - 1) / (scale - b)
    if x == 0:
        return base
    a = 1
    while x * b ** a < 1:
        a += 1
    return base - (scale - 1) / (float(b) ** ((2 * alpha - 1) * a)
                                 * (scale - b))


def walsh_phi_table(alpha, b, m):
    """walsh_phi_alpha(r / b^m) for r = 0, ..., b^m - 1."""
    _require_alpha(alpha)
    r = np.arange(b ** m, dtype=np.int64)
    length = np.zeros(b ** m, dtype=np.int64)
    for i in range(m):
        length += r >= b ** i
    a = np.where(r > 0, m - length + 1, 1)
    scale = float(b) ** (2 * alpha)
    base = (b - 1) / (scale - b)
    table = base - (scale - 1) / (float(b) ** ((2 * alpha - 1) * a)
                                  * (scale - b))
    table[0] = base
    return table


def _walsh_tail(b, alpha, cap=None):
    """Sum of b^(-2 alpha mu(k)) over 1 <= k < b^cap; all k when cap is
    None."""
    if cap is None:
        return (b - 1) / (float(b) ** (2 * alpha) - b)
    return math.fsum((b - 1) * float(b) ** (a - 1 - 2 * alpha * a)
                     for a in range(1, cap + 1))


def p_merit_wal_closed(rule, params, per_subset=False):
    """P by the Walsh closed form; any alpha > 1/2.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
    >>> p_merit_wal_closed(rule, SpaceParams(1, WeightSet.unit(1))).p_value
    0.0078125
    """
    require_weights(params.weights, rule.s)
    table = walsh_phi_table(params.alpha, rule.b, rule.m)
    Y = table[point_numerators(rule)]
    report = MeritReport(kernel_sum(params.weights, Y),
                         method=MeritReport.CLOSED_FORM)
    if per_subset:
        W = params.weights
        report.per_subset = [SubsetMerit(u, inner=W.weight(u) * mean)
                             for u, mean in subset_means(Y).items()]
    return report


# Syndrome classes

class SyndromeGroup(object):
    """Additive group (Z_b)^m with elements encoded as integers."""

    def __init__(self, rule):
        self.b, self.m = rule.b, rule.m
        self.size = rule.size
        if self.size > GROUP_MAX_SIZE:
            raise ResourceLimitError(_("Syndrome enumeration is limited to "
                                       "b^m <= %d") % GROUP_MAX_SIZE)
        D = digit_matrix(self.b, self.m)
        powers = self.b ** np.arange(self.m, dtype=np.int64)
        # difference[s, t] encodes s - t
        self.difference = ((D[:, None, :] - D[None, :, :]) % self.b) @ powers
        self.rule = rule
        self._codes = [(D @ _multiplication_matrix(q, rule.p).T % self.b)
                       @ powers for q in rule.q]

    def syndromes(self, j, k):
        """Syndrome codes of the Walsh indices k in coordinate j."""
        return self._codes[j - 1][np.asarray(k) % self.size]

    def zero_sum(self, columns):
        """Sum over syndrome tuples adding up to zero of the product of
        the class values."""
        current = columns[0]
        for column in columns[1:]:
            current = column[self.difference] @ current
        return float(current[0])

    def zero_min(self, columns):
        """Minimum over syndrome tuples adding up to zero of the sum of the
        class values."""
        current = columns[0]
        for column in columns[1:]:
            current = np.min(column[self.difference] + current[None, :],
                             axis=1)
        return current[0]


def _index_mu(k, b, cap):
    mu = np.zeros(len(k), dtype=np.int64)
    for i in range(cap + 1):
        mu += k >= b ** i
    return mu


def p_merit_wal_series(rule, params, digit_cap):
    """P by summing the Walsh dual series over indices below b^digit_cap.

    `truncation_bound` majorises the dropped terms, those with some index
    of more than `digit_cap` digits.
    """
    digit_cap = int(digit_cap)
    if digit_cap < 1:
        raise PreconditionError(_("Digit cap must be at least 1"))
    b = rule.b
    if b ** digit_cap > SERIES_MAX_INDICES:
        raise ResourceLimitError(_("Walsh series are limited to %d indices "
                                   "per coordinate") % SERIES_MAX_INDICES)
    W = params.weights
    require_weights(W, rule.s)
    _require_alpha(params.alpha)
    group = SyndromeGroup(rule)
    k = np.arange(1, b ** digit_cap, dtype=np.int64)
    r = float(b) ** (-2.0 * params.alpha * _index_mu(k, b, digit_cap))
    classes = [np.bincount(group.syndromes(j, k), weights=r,
                           minlength=group.size)
               for j in range(1, rule.s + 1)]
    full = _walsh_tail(b, params.alpha)
    capped = _walsh_tail(b, params.alpha, digit_cap)
    total, tail, entries = [], [], []
    for u in nonempty_subsets(rule.s):
        gamma = W.weight(u)
        if gamma == 0:
            continue
        inner = gamma * group.zero_sum([classes[j - 1] for j in u])
        total.append(inner)
        tail.append(gamma * power_gap(capped, max(full - capped, 0.0),
                                      len(u)))
        entries.append(SubsetMerit(u, inner=inner))
    return MeritReport(math.fsum(total), method=MeritReport.SERIES,
                       truncation_bound=math.fsum(tail), per_subset=entries)


def rho_wal(rule, params, per_subset=True):
    """Zaremba index max_u gamma_u b^(-2 alpha phi_u), with phi_u the least
    sum of mu(k_j) over dual vectors with every k_j, j in u, positive.

    Indices beyond b^(m+1) never attain the minimum: k and b^m + (k mod b^m)
    share a syndrome.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
    >>> report = rho_wal(rule, SpaceParams(1, WeightSet.unit(1)))
    >>> report.rho_value, report.per_subset[0].phi
    (0.00390625, 4)
    """
    W = params.weights
    require_weights(W, rule.s)
    _require_alpha(params.alpha)
    b, m = rule.b, rule.m
    group = SyndromeGroup(rule)
    k = np.arange(1, b ** (m + 1), dtype=np.int64)
    mu = _index_mu(k, b, m + 1).astype(float)
    classes = []
    for j in range(1, rule.s + 1):
        best = np.full(group.size, np.inf)
        np.minimum.at(best, group.syndromes(j, k), mu)
        classes.append(best)
    irreducible = gf_is_irreducible(rule.p)
    rho, entries = 0.0, []
    for u in nonempty_subsets(rule.s):
        phi = group.zero_min([classes[j - 1] for j in u])
        if not math.isfinite(phi) or phi < len(u) or \
                (irreducible and phi > m + len(u)):
            raise QmcError(_("Walsh dual minimum %s out of range for u = %r")
                           % (phi, u))
        phi = int(phi)
        gamma = W.weight(u)
        if gamma > 0:
            rho = max(rho, gamma * float(b) ** (-2.0 * params.alpha * phi))
        entries.append(SubsetMerit(u, phi=phi))
    return MeritReport(rho_value=rho, per_subset=entries if per_subset else [])


def walsh_level_count(rule, u, level):
    """Number of dual vectors with positive components exactly on u and
    sum of mu(k_j) equal to `level`."""
    u = tuple(u)
    b, m = rule.b, rule.m
    if level < len(u):
        return 0
    group = SyndromeGroup(rule)
    residues = np.arange(group.size, dtype=np.int64)
    # counts[j][a][s]: indices with a digits and syndrome s
    tables = []
    for j in u:
        codes = group.syndromes(j, residues)
        per_residue = np.bincount(codes, minlength=group.size)
        table = np.zeros((level + 1, group.size), dtype=object)
        for a in range(1, level + 1):
            if a <= m:
                k = np.arange(b ** (a - 1), b ** a, dtype=np.int64)
                table[a] = np.bincount(codes[k], minlength=group.size)
            else:
                table[a] = per_residue.astype(object) \
                    * ((b - 1) * b ** (a - 1 - m))
        tables.append(table)
    # state[a][s]: partial tuples with digit total a and syndrome sum s
    state = tables[0]
    for table in tables[1:]:
        merged = np.zeros_like(state)
        for a in range(level + 1):
            for c in range(1, a):
                if state[c].any() and table[a - c].any():
                    merged[a] += table[a - c][group.difference] @ state[c]
        state = merged
    return int(state[level][0])


# Walsh functions

def walsh_function(k, x, b):
    """wal_k(x) = omega_b^(sum kappa_i xi_(i+1)) on exact base-b digits.

    >>> walsh_function(1, Fraction(1, 2), 2)
    (-1+0j)
    >>> walsh_function(0, Fraction(1, 3), 3)
    (1+0j)
    """
    k = int(k)
    x = Fraction(x)
    exponent, i = 0, 0
    while k:
        kappa = k % b
        if kappa:
            exponent += kappa * (math.floor(x * b ** (i + 1)) % b)
        k //= b
        i += 1
    exponent %= b
    if exponent == 0:
        return complex(1.0, 0.0)
    if 2 * exponent == b:
        return complex(-1.0, 0.0)
    angle = 2.0 * math.pi * exponent / b
    return complex(math.cos(angle), math.sin(angle))


def walsh_char_sum(rule, k):
    """(1/b^m) sum over the points of prod_j wal_(k_j)(x_j).

    >>> rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
    >>> walsh_char_sum(rule, [8])
    (1+0j)
    >>> abs(walsh_char_sum(rule, [1])) < 1e-9
    True
    """
    b, m = rule.b, rule.m
    if len(k) != rule.s or any(int(c) < 0 for c in k):
        raise UsageError(_("Walsh index must have %d nonnegative "
                           "components") % rule.s)
    numerators = point_numerators(rule)
    exponent = np.zeros(rule.size, dtype=np.int64)
    for j, kj in enumerate(k):
        kj = int(kj)
        for i in range(m):
            kappa = kj // b ** i % b
            if kappa:
                xi = numerators[:, j] // b ** (m - i - 1) % b
                exponent += kappa * xi
    exponent %= b
    if not exponent.any():
        return complex(1.0, 0.0)
    return complex(np.mean(np.exp(2j * np.pi * exponent / b)))


# Construction

def _candidate_columns(b, m, p, table):
    """Kernel columns of every candidate q in G_m minus zero, row c - 1 for
    the candidate with integer encoding c."""
    size = b ** m
    if size * size > CBC_MAX_CELLS:
        raise ResourceLimitError(_("Polynomial CBC is limited to b^(2m) <= "
                                   "%d") % CBC_MAX_CELLS)
    digits = digit_matrix(b, m)
    L = _digit_map_matrix(p)
    rows = [table[_numerators_for(GFPoly.from_int(c, b, m), p, digits, L)]
            for c in range(1, size)]
    return np.array(rows)


def cbc_construct_poly(b, m, p, s, params,
                       tie_tolerance=DEFAULT_TIE_TOLERANCE, workers=1):
    """CBC construction of a polynomial lattice rule.

    Candidates run over every nonzero q of degree < m in integer-encoding
    order; the first within the tie window wins. A reducible `p` is
    accepted but clears `certifiable` on the trace. `p = None` picks the
    smallest irreducible modulus of degree m.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> rule, trace = cbc_construct_poly(2, 3, None, 1,
    ...                                  SpaceParams(1, WeightSet.unit(1)))
    >>> rule.q, trace.certifiable
    ((GFPoly([1], b=2),), True)
    """
    b, m, s = int(b), int(m), int(s)
    if s < 1:
        raise PreconditionError(_("CBC needs s >= 1"))
    if p is None:
        p = smallest_irreducible(b, m)
    elif not isinstance(p, GFPoly):
        p = GFPoly(p, b)
    if p.b != b or p.degree != m:
        raise UsageError(_("Modulus %s is not a degree %d polynomial over "
                           "Z_%d") % (p, m, b))
    _require_alpha(params.alpha)
    table = walsh_phi_table(params.alpha, b, m)
    columns = _candidate_columns(b, m, p, table)
    size = b ** m
    state = CbcState(params.weights, size, s)
    trace = CbcTrace('q')
    trace.certifiable = gf_is_irreducible(p)
    state.append(columns[0])
    trace.add([1], state.value)
    q = [GFPoly.one(b)]
    candidates = np.arange(1, size, dtype=np.int64)
    for _j in range(1, s):
        values = state.value + scan_candidates(
            candidates, lambda block: columns[block - 1], state.increment(),
            workers)
        chosen = int(candidates[select_candidate(values, tie_tolerance)])
        trace.evaluations += len(candidates)
        state.append(columns[chosen - 1])
        q.append(GFPoly.from_int(chosen, b, m))
        trace.add(q[-1].to_list(), state.value)
    return PolyLatticeRule(b, m, p, q), trace
