# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Component-by-component construction of lattice rules.

Both constructions start from z_1 = 1 and append, one coordinate at a time,
the candidate minimising the closed-form squared worst-case error with the
earlier coordinates frozen. The naive scan works for every weight kind; the
fast scan handles product weights with prime N through a circular
correlation over the multiplicative group mod N.
"""

import numpy as np

from qmcforge.api import PreconditionError, ResourceLimitError, UsageError, _
from qmcforge.korobov import LatticeRule, omega_table, require_integer_alpha
from qmcforge.util import chunked, is_prime, parallel_map
from qmcforge.util import prime_factors
from qmcforge.weights import SpaceParams, WeightSet

__all__ = ['CbcTrace', 'cbc_construct', 'cbc_construct_fast',
           'euler_totient', 'primitive_root']

EXPLICIT_CBC_MAX_DIM = 12
DEFAULT_TIE_TOLERANCE = 1e-12

# Candidate rows per block of the naive scan
_SCAN_CELLS = 1 << 21


class CbcTrace(object):
    """Chosen component and merit after each CBC step.

    `certifiable` is cleared when the construction cannot carry the
    guarantees of the error bound (a reducible modulus polynomial).
    """

    def __init__(self, label='z'):
        self.label = label
        self.steps = []
        self.evaluations = 0
        self.certifiable = True

    def add(self, component, merit):
        self.steps.append((component, merit))

    @property
    def components(self):
        return [c for c, _m in self.steps]

    @property
    def merits(self):
        return [m for _c, m in self.steps]

    def to_list(self):
        return [{self.label: c, 'P': m} for c, m in self.steps]

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return '<CbcTrace %d steps, %d evaluations>' % (len(self.steps),
                                                        self.evaluations)


class CbcState(object):
    """Running kernel state of a CBC search over `n` points.

    `value` is the merit of the components appended so far. For a new
    coordinate with kernel column y the merit becomes
    value + mean(y * increment()).
    """

    def __init__(self, W, n, s):
        W.require_dimension(s)
        if W.kind == W.EXPLICIT and s > EXPLICIT_CBC_MAX_DIM:
            raise ResourceLimitError(_("CBC with explicit weights is limited "
                                       "to %d coordinates")
                                     % EXPLICIT_CBC_MAX_DIM)
        self.W = W
        self.n = n
        self.dim = 0
        self.value = 0.0
        ones = np.ones(n)
        if W.kind == W.PRODUCT:
            self.prodstate = ones
        elif W.kind == W.EXPLICIT:
            self.products = {(): ones}
        else:
            self.gamma = W.coordinate_weights(s)
            self.e = [ones]

    def increment(self):
        W, j = self.W, self.dim + 1
        if W.kind == W.PRODUCT:
            return W.gamma[j - 1] * self.prodstate
        if W.kind == W.EXPLICIT:
            total = np.zeros(self.n)
            for v, product in self.products.items():
                weight = W.weight(v + (j,))
                if weight:
                    total += weight * product
            return total
        total = np.zeros(self.n)
        for k in range(1, j + 1):
            total += W.Gamma[k - 1] * self.e[k - 1]
        return self.gamma[j - 1] * total

    def append(self, y):
        W, j = self.W, self.dim + 1
        if W.kind == W.PRODUCT:
            self.prodstate = self.prodstate * (1.0 + W.gamma[j - 1] * y)
            self.value = float(np.mean(self.prodstate - 1.0))
        elif W.kind == W.EXPLICIT:
            for v, product in list(self.products.items()):
                self.products[v + (j,)] = product * y
            self.value = float(sum(
                W.weight(v) * np.mean(p)
                for v, p in sorted(self.products.items()) if v))
        else:
            g = self.gamma[j - 1] * y
            self.e.append(np.zeros(self.n))
            for k in range(j, 0, -1):
                self.e[k] = self.e[k] + g * self.e[k - 1]
            self.value = float(sum(W.Gamma[k - 1] * np.mean(self.e[k])
                                   for k in range(1, j + 1)))
        self.dim = j


def select_candidate(values, tolerance=DEFAULT_TIE_TOLERANCE):
    """Index of the smallest value, the first one within `tolerance`
    (relative) of the minimum winning ties.

    >>> select_candidate(np.array([3.0, 1.0, 1.0 + 1e-15, 0.5 + 1e-16,
    ...                            0.5]))
    3
    """
    best = float(np.min(values))
    threshold = best + tolerance * abs(best)
    return int(np.flatnonzero(values <= threshold)[0])


def scan_candidates(candidates, columns, T, workers=1):
    """mean(columns(c) * T) for every candidate c, in candidate order.

    :param columns: callable mapping a block of candidates to the matrix
                    of their kernel columns, one row per candidate.
    :param T: increment weights of the running `CbcState`.
    """
    size = max(1, _SCAN_CELLS // max(1, len(T)))
    blocks = chunked(candidates, size)
    results = parallel_map(lambda block: columns(block) @ T / len(T),
                           blocks, workers)
    return np.concatenate(results) if results else np.zeros(0)


def cbc_construct(N, s, params, tie_tolerance=DEFAULT_TIE_TOLERANCE,
                  workers=1):
    """Naive CBC construction of an N-point rule in s dimensions.

    Every z in 1..N-1 is scanned at each step, including candidates sharing
    a factor with a composite N.

    >>> from qmcforge.weights import WeightSet
    >>> rule, trace = cbc_construct(5, 2, SpaceParams(1, WeightSet.unit(2)))
    >>> rule.z
    (1, 2)
    """
    N, s = int(N), int(s)
    if N < 2 or s < 1:
        raise PreconditionError(_("CBC needs N >= 2 and s >= 1"))
    alpha = require_integer_alpha(params)
    table = omega_table(alpha, N)
    n = np.arange(N, dtype=np.int64)
    state = CbcState(params.weights, N, s)
    trace = CbcTrace('z')
    state.append(table[n])
    trace.add(1, state.value)
    z = [1]
    candidates = np.arange(1, N, dtype=np.int64)

    def columns(block):
        return table[(block[:, None] * n[None, :]) % N]

    for _j in range(1, s):
        values = state.value + scan_candidates(
            candidates, columns, state.increment(), workers)
        chosen = int(candidates[select_candidate(values, tie_tolerance)])
        trace.evaluations += len(candidates)
        state.append(table[(n * chosen) % N])
        z.append(chosen)
        trace.add(chosen, state.value)
    return LatticeRule(N, z), trace


def primitive_root(N):
    """Smallest generator of the multiplicative group mod a prime N.

    >>> primitive_root(13)
    2
    >>> primitive_root(31)
    3
    """
    if not is_prime(N):
        raise PreconditionError(_("%d is not prime") % N)
    if N == 2:
        return 1
    factors = prime_factors(N - 1)
    for g in range(2, N):
        if all(pow(g, (N - 1) // q, N) != 1 for q in factors):
            return g


def cbc_construct_fast(N, s, alpha, gamma,
                       tie_tolerance=DEFAULT_TIE_TOLERANCE):
    """CBC construction for product weights and prime N by fast circular
    correlation; chooses the same vector as `cbc_construct`.

    :param gamma: product `WeightSet` or the sequence gamma_1, gamma_2, ...
    """
    N, s = int(N), int(s)
    if not is_prime(N):
        raise PreconditionError(_("Fast CBC needs a prime N, got %d") % N)
    W = gamma if isinstance(gamma, WeightSet) else WeightSet.product(gamma)
    if W.kind != W.PRODUCT:
        raise PreconditionError(_("Fast CBC supports product weights only"))
    W.require_dimension(s)
    alpha = require_integer_alpha(SpaceParams(alpha, W))
    table = omega_table(alpha, N)
    n = np.arange(N, dtype=np.int64)
    g = primitive_root(N)
    perm = np.empty(N - 1, dtype=np.int64)
    value = 1
    for k in range(N - 1):
        perm[k] = value
        value = value * g % N
    A = np.fft.rfft(table[perm])
    trace = CbcTrace('z')
    prodstate = 1.0 + W.gamma[0] * table[n]
    trace.add(1, float(np.mean(prodstate - 1.0)))
    z = [1]
    for j in range(1, s):
        base = float(np.mean(prodstate - 1.0))
        B = np.fft.rfft(prodstate[perm])
        C = np.fft.irfft(A * np.conj(B), n=N - 1)
        values = np.empty(N - 1)
        values[perm - 1] = base + W.gamma[j] / N \
            * (prodstate[0] * table[0] + C)
        chosen = select_candidate(values, tie_tolerance) + 1
        trace.evaluations += N - 1
        prodstate = prodstate * (1.0 + W.gamma[j] * table[(n * chosen) % N])
        z.append(chosen)
        trace.add(chosen, float(np.mean(prodstate - 1.0)))
    return LatticeRule(N, z), trace


def euler_totient(N):
    """Number of 1 <= n <= N coprime to N.

    >>> [euler_totient(N) for N in (1, 12, 13)]
    [1, 4, 12]
    """
    N = int(N)
    if N < 1:
        raise UsageError(_("Totient needs N >= 1, got %d") % N)
    result = N
    for p in prime_factors(N):
        result -= result // p
    return result
