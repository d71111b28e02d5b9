# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Coordinate weights and the weighted subset sums built from them.

A `WeightSet` assigns a weight to every nonempty subset u of coordinates.
Four kinds exist:

    product    gamma_u = prod_{j in u} gamma_j
    pod        gamma_u = Gamma_{|u|} prod_{j in u} gamma_j
    order      gamma_u = Gamma_{|u|}
    explicit   gamma_u listed per subset, unlisted subsets weigh 0

>>> W = WeightSet.product(lambda j: j ** -2.0)
>>> W.weight((1, 2))
0.25
>>> WeightSet.explicit({(1,): 0.5}).weight((2,))
0.0
"""

import math

import numpy as np

from qmcforge.api import DomainError, PreconditionError, ResourceLimitError
from qmcforge.api import UsageError, _
from qmcforge.util import nonempty_subsets

__all__ = ['WeightSet', 'SpaceParams', 'check_monotone', 'zeta',
           'subset_power_sum', 'subset_size_sum', 'ratio_subset_sum',
           'weighted_zeta_sum', 'kernel_sum', 'subset_means']

DEFAULT_S_MAX = 64
EXPLICIT_MAX_DIM = 20
PER_SUBSET_MAX_DIM = 12


class WeightSet(object):
    """Immutable weight set; use the class method constructors."""

    PRODUCT = 'product'
    POD = 'pod'
    ORDER = 'order'
    EXPLICIT = 'explicit'

    __slots__ = ('kind', 'gamma', 'Gamma', 'table', 's_max')

    def __init__(self, kind, gamma=(), Gamma=(), table=None, s_max=0):
        self.kind = kind
        self.gamma = tuple(gamma)
        self.Gamma = tuple(Gamma)
        self.table = dict(table or {})
        self.s_max = s_max

    # Constructors

    @classmethod
    def product(cls, gamma, s_max=None):
        gamma = _tabulate(gamma, s_max, 'gamma')
        return cls(cls.PRODUCT, gamma=gamma, s_max=len(gamma))

    @classmethod
    def pod(cls, Gamma, gamma, s_max=None):
        if s_max is None and not (callable(Gamma) and callable(gamma)):
            lengths = [len(seq) for seq in (Gamma, gamma)
                       if not callable(seq)]
            s_max = min(lengths)
        Gamma = _tabulate(Gamma, s_max, 'Gamma')
        gamma = _tabulate(gamma, s_max, 'gamma')
        s_max = min(len(Gamma), len(gamma))
        return cls(cls.POD, gamma=gamma[:s_max], Gamma=Gamma[:s_max],
                   s_max=s_max)

    @classmethod
    def order_dependent(cls, Gamma, s_max=None):
        Gamma = _tabulate(Gamma, s_max, 'Gamma')
        return cls(cls.ORDER, Gamma=Gamma, s_max=len(Gamma))

    @classmethod
    def explicit(cls, mapping, s_max=EXPLICIT_MAX_DIM):
        table = {}
        for key, value in dict(mapping).items():
            u = normalise_subset(key)
            if u[-1] > s_max:
                raise UsageError(_("Subset %r exceeds dimension %d")
                                 % (u, s_max))
            table[u] = _check_value(value, 'gamma_u')
        return cls(cls.EXPLICIT, table=table, s_max=s_max)

    @classmethod
    def unit(cls, s_max=DEFAULT_S_MAX):
        """gamma_u = 1 for every u."""
        return cls.product([1.0] * s_max)

    @classmethod
    def product_decay(cls, r, s_max=DEFAULT_S_MAX, c=1.0):
        """Product weights gamma_j = c j^-r."""
        return cls.product([c * j ** -float(r) for j in range(1, s_max + 1)])

    @classmethod
    def pod_factorial(cls, n, p, gamma, s_max=DEFAULT_S_MAX):
        """POD weights with Gamma_k = ((k + n)!)^p."""
        Gamma = [float(math.factorial(k + n)) ** p
                 for k in range(1, s_max + 1)]
        return cls.pod(Gamma, gamma, s_max)

    # Queries

    def weight(self, u):
        """Return gamma_u for a nonempty subset `u` of {1, ..., s_max}."""
        u = normalise_subset(u)
        if u[-1] > self.s_max:
            raise UsageError(_("Coordinate %d exceeds the weight dimension "
                               "%d") % (u[-1], self.s_max))
        if self.kind == self.EXPLICIT:
            return self.table.get(u, 0.0)
        if self.kind == self.ORDER:
            return self.Gamma[len(u) - 1]
        value = math.prod(self.gamma[j - 1] for j in u)
        if self.kind == self.POD:
            value *= self.Gamma[len(u) - 1]
        return value

    def coordinate_weights(self, s):
        """Per-coordinate factors for product and POD weights."""
        self.require_dimension(s)
        if self.kind == self.ORDER:
            return np.ones(s)
        return np.array(self.gamma[:s], dtype=float)

    def is_zero(self, s):
        self.require_dimension(s)
        if self.kind == self.EXPLICIT:
            return not any(v for u, v in self.table.items() if u[-1] <= s)
        if self.kind == self.PRODUCT:
            return not any(self.gamma[:s])
        if self.kind == self.ORDER:
            return not any(self.Gamma[:s])
        positive = sum(1 for g in self.gamma[:s] if g > 0)
        return not any(self.Gamma[:positive])

    def require_dimension(self, s):
        if s < 1 or s > self.s_max:
            raise UsageError(_("Weights are declared for %d coordinates, "
                               "%d requested") % (self.s_max, s))

    # Transformations

    def power(self, p):
        """The weights gamma_u^p."""
        if self.kind == self.EXPLICIT:
            return WeightSet(self.kind, table=dict((u, v ** p) for u, v
                                                   in self.table.items()),
                             s_max=self.s_max)
        return WeightSet(self.kind, gamma=[g ** p for g in self.gamma],
                         Gamma=[g ** p for g in self.Gamma], s_max=self.s_max)

    def scaled(self, c):
        """The weights c gamma_u."""
        if c < 0:
            raise UsageError(_("Weights must stay nonnegative"))
        if self.kind == self.EXPLICIT:
            return WeightSet(self.kind, table=dict((u, c * v) for u, v
                                                   in self.table.items()),
                             s_max=self.s_max)
        if self.kind == self.PRODUCT:
            return WeightSet(self.POD, gamma=self.gamma,
                             Gamma=[c] * self.s_max, s_max=self.s_max)
        return WeightSet(self.kind, gamma=self.gamma,
                         Gamma=[c * g for g in self.Gamma], s_max=self.s_max)

    def to_dict(self):
        data = {'kind': self.kind}
        if self.kind == self.EXPLICIT:
            data['s_max'] = self.s_max
            data['map'] = [{'u': list(u), 'value': v}
                           for u, v in sorted(self.table.items(),
                                              key=lambda i: (len(i[0]), i[0]))]
        else:
            if self.kind in (self.PRODUCT, self.POD):
                data['gamma'] = list(self.gamma)
            if self.kind in (self.POD, self.ORDER):
                data['Gamma'] = list(self.Gamma)
        return data

    def __eq__(self, other):
        return isinstance(other, WeightSet) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind, self.gamma, self.Gamma, self.s_max))

    def __repr__(self):
        if self.kind == self.EXPLICIT:
            return '<WeightSet explicit: %d subsets>' % len(self.table)
        return '<WeightSet %s: s_max=%d>' % (self.kind, self.s_max)


class SpaceParams(object):
    """Smoothness alpha and weights of a weighted Korobov or Walsh space."""

    __slots__ = ('alpha', 'weights')

    def __init__(self, alpha, weights):
        alpha = float(alpha)
        if not alpha > 0.5:
            raise DomainError(_("Smoothness alpha must exceed 1/2, got %s")
                              % alpha)
        self.alpha = alpha
        self.weights = weights

    @property
    def integer_alpha(self):
        """alpha as an int when it is integral, else None."""
        if self.alpha.is_integer():
            return int(self.alpha)
        return None

    def __repr__(self):
        return '<SpaceParams alpha=%g %r>' % (self.alpha, self.weights)


def normalise_subset(u):
    """Sorted tuple form of a coordinate subset.

    >>> normalise_subset('2,1')
    (1, 2)
    >>> normalise_subset([3])
    (3,)
    """
    if isinstance(u, str):
        u = [part for part in u.replace(' ', '').split(',') if part]
    try:
        u = tuple(sorted(set(int(j) for j in u)))
    except (TypeError, ValueError):
        raise UsageError(_("Invalid coordinate subset %r") % (u,))
    if not u:
        raise UsageError(_("Coordinate subsets must be nonempty"))
    if u[0] < 1:
        raise UsageError(_("Coordinates are numbered from 1"))
    return u


def check_monotone(W, s):
    """Whether gamma_v >= gamma_u holds whenever v is a nonempty proper
    subset of u within {1, ..., s}.

    Removing one coordinate at a time suffices, since the condition then
    follows along chains.

    >>> check_monotone(WeightSet.product([0.5, 1.0, 0.2]), 3)
    True
    >>> check_monotone(WeightSet.explicit({(1,): 0.1, (1, 2): 0.5}), 2)
    False
    >>> check_monotone(WeightSet.pod([1.0, 3.0], [1.0, 1.0]), 2)
    False
    """
    W.require_dimension(s)
    if s == 1:
        return True
    if W.kind == W.PRODUCT:
        gamma = W.gamma[:s]
        for j, g in enumerate(gamma):
            if g > 1.0 and any(h > 0 for i, h in enumerate(gamma) if i != j):
                return False
        return True
    if W.kind == W.EXPLICIT:
        for u, value in W.table.items():
            if len(u) < 2 or u[-1] > s or value <= 0:
                continue
            for j in u:
                v = tuple(i for i in u if i != j)
                if W.table.get(v, 0.0) < value:
                    return False
        return True
    if W.kind == W.ORDER:
        positive, top = s, 1.0
    else:
        positive = [g for g in W.gamma[:s] if g > 0]
        positive, top = len(positive), max(positive or [0.0])
    for k in range(2, positive + 1):
        if W.Gamma[k - 2] < W.Gamma[k - 1] * top:
            return False
    return True


# Bernoulli numbers B_2, B_4, ..., B_14 for the Euler-Maclaurin tail
_BERNOULLI = (1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
              -691.0 / 2730, 7.0 / 6)
_ZETA_CUTOFF = 16


def zeta(x):
    """Riemann zeta function for real x > 1.

    Direct summation up to a fixed cutoff followed by an Euler-Maclaurin
    correction for the tail.

    >>> abs(zeta(2.0) - math.pi ** 2 / 6) < 1e-14
    True
    >>> abs(zeta(4.0) - math.pi ** 4 / 90) < 1e-14
    True
    """
    x = float(x)
    if not x > 1.0:
        raise DomainError(_("zeta(%s) diverges") % x)
    n = _ZETA_CUTOFF
    terms = [k ** -x for k in range(1, n)]
    terms.append(n ** (1.0 - x) / (x - 1.0))
    terms.append(0.5 * n ** -x)
    rising, factorial, power = x, 2.0, n ** (-x - 1.0)
    for k, bernoulli in enumerate(_BERNOULLI, 1):
        terms.append(bernoulli / factorial * rising * power)
        rising *= (x + 2 * k - 1) * (x + 2 * k)
        factorial *= (2 * k + 1) * (2 * k + 2)
        power /= n * n
    return math.fsum(terms)


def _elementary_symmetric(values):
    """e_0, ..., e_n of a sequence of numbers or numpy arrays."""
    e = [1.0] + [0.0] * len(values)
    for i, value in enumerate(values):
        for k in range(i + 1, 0, -1):
            e[k] = e[k] + value * e[k - 1]
    return e


def subset_power_sum(W, s, lam, factor, method=None):
    """Sum over nonempty u in {1..s} of gamma_u^lam factor^|u|.

    :param method: `'enumerate'` forces summation subset by subset;
                   otherwise the closed form of the weight kind is used.
    """
    W.require_dimension(s)
    if method == 'enumerate' or W.kind == W.EXPLICIT:
        if W.kind == W.EXPLICIT:
            items = [(u, v) for u, v in W.table.items() if u[-1] <= s]
        else:
            _require_enumerable(s)
            items = [(u, W.weight(u)) for u in nonempty_subsets(s)]
        return math.fsum(v ** lam * factor ** len(u) for u, v in items
                         if v > 0)
    if W.kind == W.PRODUCT:
        return math.prod(1.0 + g ** lam * factor for g in W.gamma[:s]) - 1.0
    if W.kind == W.ORDER:
        return math.fsum(W.Gamma[k - 1] ** lam * math.comb(s, k) * factor ** k
                         for k in range(1, s + 1))
    e = _elementary_symmetric([g ** lam * factor for g in W.gamma[:s]])
    return math.fsum(W.Gamma[k - 1] ** lam * e[k] for k in range(1, s + 1))


def subset_size_sum(W, s):
    """Sum over nonempty u in {1..s} of |u| gamma_u."""
    W.require_dimension(s)
    if W.kind == W.EXPLICIT:
        return math.fsum(len(u) * v for u, v in W.table.items()
                         if u[-1] <= s)
    if W.kind == W.PRODUCT:
        gamma = W.gamma[:s]
        return math.fsum(g * math.prod(1.0 + h for i, h in enumerate(gamma)
                                       if i != j)
                         for j, g in enumerate(gamma))
    if W.kind == W.ORDER:
        return math.fsum(k * W.Gamma[k - 1] * math.comb(s, k)
                         for k in range(1, s + 1))
    e = _elementary_symmetric(list(W.gamma[:s]))
    return math.fsum(k * W.Gamma[k - 1] * e[k] for k in range(1, s + 1))


def ratio_subset_sum(W, Wprime, s, exponent, factor, level):
    """Sum over nonempty u of (gamma'_u / gamma_u^exponent) factor^|u|
    level^(|u|-1).

    Subsets with gamma'_u = 0 are skipped. A subset with gamma_u = 0 but
    gamma'_u > 0 makes the sum infinite.
    """
    W.require_dimension(s)
    Wprime.require_dimension(s)
    if W.kind == W.PRODUCT and Wprime.kind == W.PRODUCT:
        ratios = []
        for g, gp in zip(W.gamma[:s], Wprime.gamma[:s]):
            if gp == 0:
                ratios.append(0.0)
            elif g == 0:
                return math.inf
            else:
                ratios.append(gp / g ** exponent)
        if level == 0:
            return factor * math.fsum(ratios)
        return (math.prod(1.0 + factor * level * r for r in ratios) - 1.0) \
            / level
    if Wprime.kind == W.EXPLICIT:
        items = [(u, v) for u, v in Wprime.table.items() if u[-1] <= s]
    else:
        _require_enumerable(s)
        items = [(u, Wprime.weight(u)) for u in nonempty_subsets(s)]
    terms = []
    for u, gp in items:
        if gp == 0:
            continue
        g = W.weight(u)
        if g == 0:
            return math.inf
        terms.append(gp / g ** exponent * factor ** len(u)
                     * level ** (len(u) - 1))
    return math.fsum(terms)


def weighted_zeta_sum(W, s, lam, alpha, method=None):
    """Sum over nonempty u of gamma_u^lam (2 zeta(2 alpha lam))^|u|.

    >>> abs(weighted_zeta_sum(WeightSet.unit(1), 1, 1.0, 1.0)
    ...     - math.pi ** 2 / 3) < 1e-13
    True
    """
    if not 1.0 / (2.0 * alpha) < lam <= 1.0:
        raise DomainError(_("lambda must lie in (1/(2 alpha), 1], got %s")
                          % lam)
    return subset_power_sum(W, s, lam, 2.0 * zeta(2.0 * alpha * lam),
                            method=method)


def kernel_sum(W, Y):
    """Mean over points of sum_u gamma_u prod_{j in u} Y[n, j].

    :param Y: array of shape (number of points, s) holding one kernel
              factor per point and coordinate.
    """
    Y = np.asarray(Y, dtype=float)
    n, s = Y.shape
    W.require_dimension(s)
    if W.kind == W.PRODUCT:
        gamma = np.asarray(W.gamma[:s])
        return float(np.mean(np.prod(1.0 + gamma * Y, axis=1) - 1.0))
    if W.kind == W.EXPLICIT:
        if s > EXPLICIT_MAX_DIM:
            raise PreconditionError(_("Explicit weights support at most %d "
                                      "coordinates") % EXPLICIT_MAX_DIM)
        total = np.zeros(n)
        for u, value in sorted(W.table.items()):
            if u[-1] <= s and value > 0:
                total += value * np.prod(Y[:, [j - 1 for j in u]], axis=1)
        return float(np.mean(total))
    gamma = W.coordinate_weights(s)
    e = _elementary_symmetric([gamma[j] * Y[:, j] for j in range(s)])
    total = np.zeros(n)
    for k in range(1, s + 1):
        total += W.Gamma[k - 1] * e[k]
    return float(np.mean(total))


def subset_means(Y):
    """Map each nonempty u to the mean over points of prod_{j in u} Y[n, j].
    """
    Y = np.asarray(Y, dtype=float)
    s = Y.shape[1]
    if s > PER_SUBSET_MAX_DIM:
        raise ResourceLimitError(_("Per-subset breakdown is limited to %d "
                                   "coordinates") % PER_SUBSET_MAX_DIM)
    products, means = {}, {}
    for u in nonempty_subsets(s):
        column = Y[:, u[-1] - 1]
        products[u] = products[u[:-1]] * column if len(u) > 1 else column
        means[u] = float(np.mean(products[u]))
    return means


def _require_enumerable(s):
    if s > EXPLICIT_MAX_DIM:
        raise ResourceLimitError(_("Subset enumeration is limited to %d "
                                   "coordinates") % EXPLICIT_MAX_DIM)


def _check_value(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise UsageError(_("Weight %s is not a number: %r") % (name, value))
    if not math.isfinite(value) or value < 0:
        raise UsageError(_("Weight %s must be finite and nonnegative, got %s")
                         % (name, value))
    return value


def _tabulate(values, s_max, name):
    if callable(values):
        count = DEFAULT_S_MAX if s_max is None else s_max
        values = [values(j) for j in range(1, count + 1)]
    else:
        values = list(values)
        if s_max is not None:
            if len(values) < s_max:
                raise UsageError(_("%d values of %s given, %d needed")
                                 % (len(values), name, s_max))
            values = values[:s_max]
    if not values:
        raise UsageError(_("No values given for %s") % name)
    return [_check_value(v, name) for v in values]
