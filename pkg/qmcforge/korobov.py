# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Rank-1 lattice rules and their merit in the weighted Korobov space.

The squared worst-case error P of a lattice rule with generating vector z
is the sum of gamma_u prod_{j in u} |k_j|^(-2 alpha) over the nonzero dual
vectors k, those with k.z = 0 mod N. For integer alpha it has a closed form
in terms of Bernoulli polynomials; for other alpha it is summed over a
truncated box.
"""

import math

import numpy as np

from qmcforge.api import PreconditionError, QmcError, ResourceLimitError
from qmcforge.api import UnsupportedSmoothness, UsageError, _
from qmcforge.util import nonempty_subsets
from qmcforge.weights import EXPLICIT_MAX_DIM, kernel_sum, subset_means
from qmcforge.weights import zeta

__all__ = ['LatticeRule', 'MeritReport', 'SubsetMerit', 'lattice_points',
           'bernoulli_even', 'omega', 'p_merit_closed', 'p_merit_series',
           'zaremba_rho', 'character_sum']

SERIES_MAX_DIM = 4
RHO_MAX_DIM = 4
RHO_MAX_N = 1024

# Monomial coefficients of B_2, B_4, B_6, B_8, highest degree first
_BERNOULLI_POLY = {
    1: [1.0, -1.0, 1.0 / 6],
    2: [1.0, -2.0, 1.0, 0.0, -1.0 / 30],
    3: [1.0, -3.0, 5.0 / 2, 0.0, -1.0 / 2, 0.0, 1.0 / 42],
    4: [1.0, -4.0, 14.0 / 3, 0.0, -7.0 / 3, 0.0, 2.0 / 3, 0.0, -1.0 / 30],
}


class LatticeRule(object):
    """Rank-1 lattice rule with N points and generating vector z.

    >>> LatticeRule(5, [1, 2])
    LatticeRule(N=5, z=(1, 2))
    >>> LatticeRule(5, [1, 2]).s
    2
    """

    kind = 'lattice'

    __slots__ = ('N', 'z')

    def __init__(self, N, z):
        N = int(N)
        if N < 2:
            raise UsageError(_("Lattice rules need N >= 2, got %d") % N)
        z = tuple(int(c) for c in z)
        if not z:
            raise UsageError(_("Generating vector must not be empty"))
        if not all(1 <= c <= N - 1 for c in z):
            raise UsageError(_("Generating vector components must lie in "
                               "1..%d, got %r") % (N - 1, z))
        self.N = N
        self.z = z

    @property
    def s(self):
        return len(self.z)

    @property
    def size(self):
        return self.N

    def prefix(self, s):
        return LatticeRule(self.N, self.z[:s])

    def to_dict(self):
        return {'type': self.kind, 'N': self.N, 'z': list(self.z)}

    def __eq__(self, other):
        return isinstance(other, LatticeRule) and \
            (self.N, self.z) == (other.N, other.z)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.N, self.z))

    def __repr__(self):
        return 'LatticeRule(N=%d, z=%r)' % (self.N, self.z)


class SubsetMerit(object):
    """Per-subset part of a merit report."""

    __slots__ = ('u', 'inner', 'phi', 'phi0', 'mu')

    def __init__(self, u, inner=None, phi=None, phi0=None, mu=None):
        self.u = u
        self.inner = inner
        self.phi = phi
        self.phi0 = phi0
        self.mu = mu

    def to_dict(self):
        data = {'u': list(self.u), 'inner': self.inner, 'phi': self.phi}
        if self.phi0 is not None:
            data['phi0'] = self.phi0
        if self.mu is not None:
            data['mu'] = self.mu
        return data

    def __repr__(self):
        return '<SubsetMerit %r inner=%r phi=%r>' % (self.u, self.inner,
                                                     self.phi)


class MeritReport(object):
    """Squared worst-case error P, Zaremba index rho and per-subset data."""

    CLOSED_FORM = 'closed-form'
    SERIES = 'truncated-series'

    def __init__(self, p_value=None, rho_value=None, method=CLOSED_FORM,
                 truncation_bound=None, per_subset=None):
        self.p_value = p_value
        self.rho_value = rho_value
        self.method = method
        self.truncation_bound = truncation_bound
        self.per_subset = per_subset or []

    def subset(self, u):
        for entry in self.per_subset:
            if entry.u == tuple(u):
                return entry
        raise KeyError(u)

    def merge(self, other):
        """Fold the rho data of `other` into this report."""
        self.rho_value = other.rho_value
        inner = dict((e.u, e) for e in self.per_subset)
        for entry in other.per_subset:
            if entry.u in inner:
                target = inner[entry.u]
                target.phi, target.phi0, target.mu = \
                    entry.phi, entry.phi0, entry.mu
            else:
                self.per_subset.append(entry)
        return self

    def to_dict(self):
        return {'P': self.p_value, 'rho': self.rho_value,
                'method': self.method,
                'truncation_bound': self.truncation_bound,
                'per_subset': [e.to_dict() for e in self.per_subset]}

    def __repr__(self):
        return '<MeritReport P=%r rho=%r %s>' % (self.p_value, self.rho_value,
                                                 self.method)


def lattice_points(rule):
    """Point numerators n z mod N, one row per point, over denominator N.

    >>> lattice_points(LatticeRule(5, [1, 2])).tolist()
    [[0, 0], [1, 2], [2, 4], [3, 1], [4, 3]]
    >>> lattice_points(LatticeRule(4, [3])).ravel().tolist()
    [0, 3, 2, 1]
    """
    n = np.arange(rule.N, dtype=np.int64)
    z = np.asarray(rule.z, dtype=np.int64)
    return (n[:, None] * z[None, :]) % rule.N


def bernoulli_even(alpha, x):
    """Bernoulli polynomial B_{2 alpha}(x) for alpha in 1..4.

    >>> bernoulli_even(1, 0.0) == 1.0 / 6
    True
    >>> abs(bernoulli_even(1, 0.5) + 1.0 / 12) < 1e-15
    True
    >>> bernoulli_even(2, 0.0) == -1.0 / 30
    True
    """
    try:
        coefficients = _BERNOULLI_POLY[alpha]
    except (KeyError, TypeError):
        raise UnsupportedSmoothness(_("Closed forms exist for alpha in 1..4 "
                                      "only, got %s") % (alpha,))
    return np.polyval(coefficients, x)


def omega(alpha, x):
    """Kernel factor (2 pi)^(2 alpha) / ((-1)^(alpha+1) (2 alpha)!)
    B_{2 alpha}(x), the sum over k != 0 of e^(2 pi i k x) / |k|^(2 alpha).
    """
    scale = (2.0 * math.pi) ** (2 * alpha) \
        / ((-1) ** (alpha + 1) * math.factorial(2 * alpha))
    return scale * bernoulli_even(alpha, x)


def omega_table(alpha, N):
    """omega(alpha, r / N) for r = 0, ..., N - 1."""
    return omega(alpha, np.arange(N, dtype=float) / N)


def require_integer_alpha(params):
    alpha = params.integer_alpha
    if alpha not in _BERNOULLI_POLY:
        raise UnsupportedSmoothness(_("Closed forms exist for alpha in 1..4 "
                                      "only, got %s") % params.alpha)
    return alpha


def require_weights(W, s):
    W.require_dimension(s)
    if W.kind == W.EXPLICIT and s > EXPLICIT_MAX_DIM:
        raise PreconditionError(_("Explicit weights support at most %d "
                                  "coordinates") % EXPLICIT_MAX_DIM)


def p_merit_closed(rule, params, per_subset=False):
    """P by the Bernoulli closed form, for alpha in 1..4.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> report = p_merit_closed(LatticeRule(5, [1]),
    ...                         SpaceParams(1, WeightSet.unit(1)))
    >>> abs(report.p_value - math.pi ** 2 / 75) < 1e-12
    True
    """
    alpha = require_integer_alpha(params)
    require_weights(params.weights, rule.s)
    Y = omega_table(alpha, rule.N)[lattice_points(rule)]
    report = MeritReport(kernel_sum(params.weights, Y),
                         method=MeritReport.CLOSED_FORM)
    if per_subset:
        W = params.weights
        report.per_subset = [SubsetMerit(u, inner=W.weight(u) * mean)
                             for u, mean in subset_means(Y).items()]
    return report


def residue_sums(values, z, N, weights):
    """Sum of weights[i] over the values[i] with values[i] z = r mod N, as
    an array indexed by r."""
    return np.bincount((values * z) % N, weights=weights, minlength=N)


def cyclic_zero_sum(columns, N):
    """Sum over residue tuples adding up to 0 mod N of the product of the
    column entries."""
    current = columns[0]
    r = np.arange(N)
    shift = (r[:, None] - r[None, :]) % N
    for column in columns[1:]:
        current = column[shift] @ current
    return float(current[0])


def _series_inner(rule, u, alpha, K):
    k = np.concatenate([np.arange(-K, 0), np.arange(1, K + 1)])
    w = np.abs(k).astype(float) ** (-2.0 * alpha)
    columns = [residue_sums(k, rule.z[j - 1], rule.N, w) for j in u]
    return cyclic_zero_sum(columns, rule.N)


def p_merit_series(rule, params, K, per_subset=False):
    """P by summing the dual series over 0 < |k_j| <= K.

    Works for any alpha > 1/2. The `truncation_bound` majorises the dropped
    terms.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> report = p_merit_series(LatticeRule(5, [1]),
    ...                         SpaceParams(1, WeightSet.unit(1)), 10000)
    >>> abs(report.p_value - math.pi ** 2 / 75) < report.truncation_bound
    True
    """
    K = int(K)
    if K < rule.N:
        raise PreconditionError(_("Series radius K = %d must be at least "
                                  "N = %d") % (K, rule.N))
    if rule.s > SERIES_MAX_DIM:
        raise ResourceLimitError(_("Dual series are limited to %d "
                                   "coordinates") % SERIES_MAX_DIM)
    W = params.weights
    require_weights(W, rule.s)
    alpha = params.alpha
    zeta_full = zeta(2.0 * alpha)
    partial = math.fsum(k ** (-2.0 * alpha) for k in range(1, K + 1))
    # 2 zeta - 2 S_K without cancellation against zeta
    gap = 2.0 * max(zeta_full - partial, 0.0)
    total, tail, entries = [], [], []
    for u in nonempty_subsets(rule.s):
        gamma = W.weight(u)
        if gamma == 0:
            if per_subset:
                entries.append(SubsetMerit(u, inner=0.0))
            continue
        inner = gamma * _series_inner(rule, u, alpha, K)
        total.append(inner)
        tail.append(gamma * power_gap(1.0 + 2.0 * partial, gap, len(u)))
        if per_subset:
            entries.append(SubsetMerit(u, inner=inner))
    return MeritReport(math.fsum(total), method=MeritReport.SERIES,
                       truncation_bound=math.fsum(tail), per_subset=entries)


def power_gap(low, gap, k):
    """(low + gap)^k - low^k, summed term by term."""
    high = low + gap
    return gap * math.fsum(high ** i * low ** (k - 1 - i) for i in range(k))


def singleton_phi(N, zj):
    """Smallest |k| > 0 with k zj = 0 mod N."""
    return N // math.gcd(zj, N)


def _last_coordinate_table(N, zj, allow_zero):
    """Smallest factor max(1, |k|) of a last coordinate k with
    k zj = -r mod N, indexed by r; zero is admitted when `allow_zero`."""
    best = np.full(N, np.inf)
    for k in range(1, N + 1):
        for kk in (k, -k):
            r = (-kk * zj) % N
            if k < best[r]:
                best[r] = k
    if allow_zero:
        best[0] = 1.0
    return best


def _min_dual_product(rule, u, allow_zero):
    """Minimum over dual vectors supported in u of prod max(1, |k_j|);
    without `allow_zero` every component must be nonzero."""
    N = rule.N
    z = [rule.z[j - 1] for j in u]
    if len(u) == 1:
        return singleton_phi(N, z[0])
    last = _last_coordinate_table(N, z[-1], False)
    last_zero = _last_coordinate_table(N, z[-1], True) if allow_zero else None
    prefix = z[:-1]
    best = [float(N) ** len(u)]
    if allow_zero:
        best[0] = min(singleton_phi(N, c) for c in z)

    def search(depth, residue, product, nonzero):
        if product >= best[0]:
            return
        if depth == len(prefix):
            table = last_zero if (allow_zero and nonzero) else last
            value = product * table[residue % N]
            if value < best[0]:
                best[0] = value
            return
        start = 0 if allow_zero else 1
        for k in range(start, N + 1):
            factor = max(1, k)
            if product * factor >= best[0]:
                break
            for kk in ((k, -k) if k else (0,)):
                search(depth + 1, residue + kk * prefix[depth],
                       product * factor, nonzero or kk != 0)

    search(0, 0, 1, False)
    return int(best[0])


def zaremba_rho(rule, params, per_subset=True):
    """Zaremba index rho = max_u gamma_u / phi_u^(2 alpha).

    phi_u is the smallest prod |k_j| over dual vectors whose support is
    exactly u; phi_{u,0} admits zero components, so it is the minimum of
    phi_v over nonempty v in u.

    >>> from qmcforge.weights import SpaceParams, WeightSet
    >>> report = zaremba_rho(LatticeRule(5, [1, 2]),
    ...                      SpaceParams(1, WeightSet.unit(2)))
    >>> [(e.u, e.phi, e.phi0) for e in report.per_subset]
    [((1,), 5, 5), ((2,), 5, 5), ((1, 2), 2, 2)]
    >>> report.rho_value
    0.25
    """
    if rule.s > RHO_MAX_DIM or rule.N > RHO_MAX_N:
        raise ResourceLimitError(_("Zaremba index enumeration is limited to "
                                   "s <= %d and N <= %d")
                                 % (RHO_MAX_DIM, RHO_MAX_N))
    W = params.weights
    require_weights(W, rule.s)
    phis, entries, rho = {}, [], 0.0
    for u in nonempty_subsets(rule.s):
        phi = _min_dual_product(rule, u, allow_zero=False)
        phi0 = _min_dual_product(rule, u, allow_zero=True)
        phis[u] = phi
        expected = min(phis[v] for v in phis if set(v) <= set(u))
        if phi0 != expected:
            raise QmcError(_("Inconsistent dual minima for u = %r: %d != %d")
                           % (u, phi0, expected))
        if len(u) >= 2 and 2 * phi0 > rule.N:
            raise QmcError(_("phi_{u,0} = %d exceeds N/2 for u = %r")
                           % (phi0, u))
        gamma = W.weight(u)
        if gamma > 0:
            rho = max(rho, gamma / float(phi) ** (2.0 * params.alpha))
        entries.append(SubsetMerit(u, phi=phi, phi0=phi0,
                                   mu=_log2_floor_below(phi0)))
    return MeritReport(rho_value=rho, per_subset=entries if per_subset else [])


def _log2_floor_below(value):
    """Largest integer mu with 2^mu < value, clamped at 0.

    >>> _log2_floor_below(1), _log2_floor_below(2), _log2_floor_below(5)
    (0, 0, 2)
    """
    mu = 0
    while 2 ** (mu + 1) < value:
        mu += 1
    return mu


def character_sum(rule, k):
    """(1/N) sum over the points of exp(2 pi i k.x).

    `k` may also hold one frequency vector per row; the result is then an
    array with one sum per row.

    >>> abs(character_sum(LatticeRule(5, [1, 2]), [1, 2]) - 1) < 1e-12
    True
    >>> np.round(abs(character_sum(LatticeRule(5, [1, 2]),
    ...                            [[1, 2], [1, 0], [2, -1]])), 12).tolist()
    [1.0, 0.0, 1.0]
    """
    k = np.asarray(k, dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(rule.N) / rule.N)
    phase = (lattice_points(rule) @ k.T) % rule.N
    sums = roots[phase].mean(axis=0)
    return complex(sums) if k.ndim == 1 else sums
