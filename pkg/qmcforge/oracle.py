# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Brute-force reference computations for the test suite.

Nothing here reuses the arithmetic of the modules it checks: polynomials
are plain coefficient lists, points are computed from scratch and every
enumeration is exhaustive. Caps abort instead of approximating.
"""

import cmath
import itertools
import math
from fractions import Fraction

from qmcforge.api import QmcError, ResourceLimitError, UsageError, _

__all__ = ['DualVectors', 'dual_enumerate_lattice', 'dual_enumerate_poly',
           'reference_laurent_digits', 'single_probe_error',
           'wce_by_function_probe', 'monotone_by_pairs',
           'exact_star_discrepancy_reference']

MAX_ENUMERATION = 10 ** 8
MAX_DIGITS = 64
MAX_PROBES = 10 ** 4


class DualVectors(list):
    """Dual vectors in enumeration order; the zero vector is included and
    flagged by `zero_included`."""

    zero_included = True

    def nonzero(self):
        return [k for k in self if any(k)]


def dual_enumerate_lattice(rule, K):
    """All k with |k_j| <= K and k . z = 0 mod N.

    >>> from qmcforge.korobov import LatticeRule
    >>> sorted(k for k, in dual_enumerate_lattice(LatticeRule(5, [1]),
    ...                                          12).nonzero())
    [-10, -5, 5, 10]
    """
    N, z = rule.N, rule.z
    if (2 * K + 1) ** len(z) > MAX_ENUMERATION:
        raise ResourceLimitError(_("Dual enumeration box too large"))
    box = range(-K, K + 1)
    result = DualVectors()
    for k in itertools.product(box, repeat=len(z)):
        if sum(kj * zj for kj, zj in zip(k, z)) % N == 0:
            result.append(k)
    return result


# Coefficient-list polynomials over Z_b, lowest degree first

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, c, b):
    out = [0] * max(len(a) + len(c) - 1, 0)
    for i, x in enumerate(a):
        for j, y in enumerate(c):
            out[i + j] = (out[i + j] + x * y) % b
    return _trim(out)


def _poly_mod(a, p, b):
    a = [x % b for x in a]
    p = _trim(p)
    lead_inverse = pow(p[-1], b - 2, b)
    for top in range(len(a) - 1, len(p) - 2, -1):
        factor = a[top] * lead_inverse % b
        if factor:
            shift = top - (len(p) - 1)
            for i, c in enumerate(p):
                a[shift + i] = (a[shift + i] - factor * c) % b
    return _trim(a)


def _digits_of(k, b, count):
    return [(k // b ** i) % b for i in range(count)]


def dual_enumerate_poly(rule, digit_cap):
    """All index vectors with components below b^digit_cap whose truncated
    polynomials satisfy sum_j tr_m(k_j) q_j = 0 mod p.

    >>> from qmcforge.walsh import PolyLatticeRule
    >>> rule = PolyLatticeRule(2, 3, [1, 1, 0, 1], [[1]])
    >>> [k for k, in dual_enumerate_poly(rule, 5)]
    [0, 8, 16, 24]
    """
    b, m = rule.b, rule.m
    p = rule.p.to_list()
    q = [c.to_list() for c in rule.q]
    if b ** (digit_cap * len(q)) > MAX_ENUMERATION:
        raise ResourceLimitError(_("Dual enumeration box too large"))
    products = []
    for qj in q:
        table = []
        for k in range(b ** digit_cap):
            table.append(_poly_mod(_poly_mul(_digits_of(k, b, m), qj, b),
                                   p, b))
        products.append(table)
    result = DualVectors()
    for k in itertools.product(range(b ** digit_cap), repeat=len(q)):
        total = [0] * m
        for j, kj in enumerate(k):
            for i, c in enumerate(products[j][kj]):
                total[i] = (total[i] + c) % b
        if not any(total):
            result.append(k)
    return result


def reference_laurent_digits(numer, p, m, count=None, b=None):
    """Digits t_1, t_2, ... of numer / p by long division: multiply the
    remainder by x and peel off the multiple of p.

    :param numer: coefficient list or polynomial
    :param p: modulus, coefficient list or polynomial
    :param count: number of digits, `m` when omitted
    :param b: base for plain lists, 2 when omitted

    >>> reference_laurent_digits([0, 1], [1, 1, 1], 2, 6)
    [1, 1, 0, 1, 1, 0]
    >>> reference_laurent_digits([1], [0, 0, 1], 2, 4)
    [0, 1, 0, 0]
    """
    count = m if count is None else count
    if count > MAX_DIGITS:
        raise ResourceLimitError(_("At most %d reference digits")
                                 % MAX_DIGITS)
    b = b or _base_of(numer, p)
    numer = numer.to_list() if hasattr(numer, 'to_list') else list(numer)
    p = _trim(p.to_list() if hasattr(p, 'to_list') else p)
    if not p:
        raise UsageError(_("Division by the zero polynomial"))
    degree = len(p) - 1
    lead_inverse = pow(p[-1], b - 2, b)
    remainder = _poly_mod(numer, p, b) if numer else []
    digits = []
    for _i in range(count):
        shifted = [0] + remainder
        shifted += [0] * (degree + 1 - len(shifted))
        digit = shifted[degree] * lead_inverse % b
        digits.append(digit)
        remainder = _trim((x - digit * c) % b
                          for x, c in zip(shifted, p))
    return digits


def _base_of(numer, p):
    for value in (p, numer):
        if hasattr(value, 'b'):
            return value.b
    return 2


def _lattice_points(rule):
    return [[Fraction(n * zj % rule.N, rule.N) for zj in rule.z]
            for n in range(rule.N)]


def _poly_points(rule):
    b, m = rule.b, rule.m
    p = rule.p.to_list()
    points = []
    for n in range(b ** m):
        row = []
        for qj in rule.q:
            numer = _poly_mul(_digits_of(n, b, m), qj.to_list(), b)
            digits = reference_laurent_digits(numer, p, m, b=b)
            row.append(sum(Fraction(t, b ** (i + 1))
                           for i, t in enumerate(digits)))
        points.append(row)
    return points


def _walsh(k, x, b):
    """wal_k(x) on the exact digits of x."""
    exponent, frac = 0, Fraction(x)
    while k:
        frac *= b
        digit = int(frac)
        frac -= digit
        exponent += (k % b) * digit
        k //= b
    return cmath.exp(2j * math.pi * exponent / b)


def _mu(k, b):
    digits = 0
    while k:
        k //= b
        digits += 1
    return digits


def _decay(rule, params, k):
    u = tuple(j + 1 for j, kj in enumerate(k) if kj)
    value = params.weights.weight(u)
    for kj in k:
        if not kj:
            continue
        if rule.kind == 'lattice':
            value *= abs(kj) ** (-2.0 * params.alpha)
        else:
            value *= float(rule.b) ** (-2.0 * params.alpha * _mu(kj, rule.b))
    return value


def single_probe_error(rule, params, k, points=None):
    """|I(f) - Q(f)| for the unit-norm probe r(k)^(1/2) times the Fourier
    (lattice) or Walsh (polynomial lattice) basis function of k."""
    if not any(k):
        return 0.0
    if points is None:
        points = _lattice_points(rule) if rule.kind == 'lattice' \
            else _poly_points(rule)
    total = 0j
    for x in points:
        term = 1 + 0j
        for kj, xj in zip(k, x):
            if rule.kind == 'lattice':
                term *= cmath.exp(2j * math.pi * kj * xj)
            else:
                term *= _walsh(kj, xj, rule.b)
        total += term
    return math.sqrt(_decay(rule, params, k)) * abs(total) / len(points)


def wce_by_function_probe(rule, params, probe_count, p_value=None):
    """Largest single-frequency probe error, a lower bound on sqrt(P).

    Frequencies fill the largest box with at most `probe_count` vectors.
    When `p_value` is given the bound is checked against sqrt(p_value).
    """
    if probe_count > MAX_PROBES:
        raise ResourceLimitError(_("At most %d probes") % MAX_PROBES)
    s = rule.s
    if rule.kind == 'lattice':
        K = 0
        while (2 * K + 3) ** s <= probe_count:
            K += 1
        frequencies = itertools.product(range(-K, K + 1), repeat=s)
        points = _lattice_points(rule)
    else:
        cap = 0
        while rule.b ** ((cap + 1) * s) <= probe_count:
            cap += 1
        frequencies = itertools.product(range(rule.b ** cap), repeat=s)
        points = _poly_points(rule)
    best = max((single_probe_error(rule, params, k, points)
                for k in frequencies), default=0.0)
    if p_value is not None and best > math.sqrt(p_value) + 1e-9:
        raise QmcError(_("Probe error %s exceeds sqrt(P) = %s")
                       % (best, math.sqrt(p_value)))
    return best


def monotone_by_pairs(W, s):
    """gamma_v >= gamma_u for every pair of nonempty subsets v in u."""
    subsets = [u for r in range(1, s + 1)
               for u in itertools.combinations(range(1, s + 1), r)]
    return all(W.weight(v) >= W.weight(u)
               for u in subsets for v in subsets
               if v != u and set(v) <= set(u))


def exact_star_discrepancy_reference(points):
    """Star discrepancy by checking every anchored box with corners on the
    coordinate grid, counting with fractions, for s <= 2."""
    points = [tuple(Fraction(c) for c in (x if isinstance(x, (list, tuple))
                                          else (x,))) for x in points]
    N, s = len(points), len(points[0])
    if s > 2:
        raise UsageError(_("Reference discrepancy handles s <= 2"))
    grids = [sorted(set(x[j] for x in points) | {Fraction(1)})
             for j in range(s)]
    best = Fraction(0)
    for corner in itertools.product(*grids):
        volume = math.prod(corner)
        open_count = sum(1 for x in points
                         if all(xj < yj for xj, yj in zip(x, corner)))
        closed_count = sum(1 for x in points
                           if all(xj <= yj for xj, yj in zip(x, corner)))
        best = max(best, volume - Fraction(open_count, N),
                   Fraction(closed_count, N) - volume)
    return best
