# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Polynomials over Z_b for a prime b, and the digit map of their
formal Laurent expansions."""

from fractions import Fraction

from qmcforge.api import PreconditionError, ResourceLimitError, UsageError, _
from qmcforge.util import base_digits, is_prime

__all__ = ['GFPoly', 'DigitExpansion', 'gf_mulmod', 'gf_is_irreducible',
           'smallest_irreducible', 'nu_m', 'tr_m']

MAX_BASE = 7
NEG_INF = float('-inf')

# Trial division candidates allowed in one irreducibility test
IRREDUCIBLE_MAX_CANDIDATES = 1 << 16


class GFPoly(object):
    """Polynomial over Z_b, coefficients stored lowest degree first.

    >>> p = GFPoly([1, 1, 1], 2)
    >>> p
    GFPoly([1, 1, 1], b=2)
    >>> str(p)
    'x^2 + x + 1'
    >>> p.degree
    2
    >>> GFPoly([0, 0], 2).degree
    -inf
    >>> str(GFPoly([3, 4], 3))
    'x'
    """

    __slots__ = ('b', 'coeffs')

    def __init__(self, coeffs=(), b=2):
        b = int(b)
        if not is_prime(b) or b > MAX_BASE:
            raise UsageError(_("Polynomial base must be a prime <= %d, got %d")
                             % (MAX_BASE, b))
        coeffs = [int(c) % b for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.b = b
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_int(cls, k, b, m=None):
        """Polynomial whose coefficients are the base-b digits of k.

        >>> str(GFPoly.from_int(11, 2))
        'x^3 + x + 1'
        """
        k = int(k)
        if k < 0:
            raise UsageError(_("Cannot encode negative integer %d") % k)
        if m is None:
            m = 0
            while b ** m <= k:
                m += 1
        return cls(base_digits(k, b, m), b)

    @classmethod
    def one(cls, b):
        return cls([1], b)

    @classmethod
    def monomial(cls, i, b):
        return cls([0] * i + [1], b)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def to_int(self):
        """Integer encoding sum c_i b^i, the candidate order of CBC scans."""
        value = 0
        for c in reversed(self.coeffs):
            value = value * self.b + c
        return value

    def to_list(self):
        return list(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, GFPoly) and \
            (self.b, self.coeffs) == (other.b, other.coeffs)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.b, self.coeffs))

    def __neg__(self):
        return GFPoly([-c for c in self.coeffs], self.b)

    def __add__(self, other):
        self._check_base(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return GFPoly([self.coeff(i) + other.coeff(i) for i in range(size)],
                      self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_base(other)
        if not self or not other:
            return GFPoly((), self.b)
        result = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, c in enumerate(other.coeffs):
                    result[i + j] += a * c
        return GFPoly(result, self.b)

    def __divmod__(self, other):
        """Quotient and remainder of polynomial long division.

        >>> q, r = divmod(GFPoly([1, 0, 1], 2), GFPoly([1, 1, 1], 2))
        >>> str(q), str(r)
        ('1', 'x')
        """
        self._check_base(other)
        if not other:
            raise PreconditionError(_("Division by the zero polynomial"))
        b = self.b
        inverse = pow(other.lead, b - 2, b)
        remainder = list(self.coeffs)
        shift = len(remainder) - len(other.coeffs)
        quotient = [0] * max(shift + 1, 0)
        while shift >= 0:
            factor = remainder[shift + len(other.coeffs) - 1] * inverse % b
            if factor:
                quotient[shift] = factor
                for i, c in enumerate(other.coeffs):
                    remainder[shift + i] = (remainder[shift + i]
                                            - factor * c) % b
            shift -= 1
        return GFPoly(quotient, b), GFPoly(remainder, b)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __str__(self):
        if not self.coeffs:
            return '0'
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append('%d' % c)
                continue
            power = 'x' if i == 1 else 'x^%d' % i
            terms.append(power if c == 1 else '%d%s' % (c, power))
        return ' + '.join(terms)

    def __repr__(self):
        return 'GFPoly(%r, b=%d)' % (list(self.coeffs), self.b)

    def _check_base(self, other):
        if not isinstance(other, GFPoly) or other.b != self.b:
            raise UsageError(_("Polynomial base mismatch: %r and %r")
                             % (self, other))


class DigitExpansion(object):
    """Base-b digits t_1, ..., t_m of a number in [0, 1).

    >>> DigitExpansion((1, 1), 2).value
    Fraction(3, 4)
    """

    __slots__ = ('digits', 'b')

    def __init__(self, digits, b):
        self.digits = tuple(int(t) for t in digits)
        self.b = b

    @property
    def numerator(self):
        """The value times b^m, an integer."""
        value = 0
        for t in self.digits:
            value = value * self.b + t
        return value

    @property
    def value(self):
        return Fraction(self.numerator, self.b ** len(self.digits))

    def __float__(self):
        return float(self.value)

    def __eq__(self, other):
        return isinstance(other, DigitExpansion) and \
            (self.b, self.digits) == (other.b, other.digits)

    def __hash__(self):
        return hash((self.b, self.digits))

    def __repr__(self):
        return 'DigitExpansion(%r, b=%d)' % (self.digits, self.b)


def gf_mulmod(a, c, p):
    """(a c) mod p.

    >>> str(gf_mulmod(GFPoly([1, 1]), GFPoly([1, 1]), GFPoly([1, 1, 1])))
    'x'
    """
    return (a * c) % p


def gf_is_irreducible(p):
    """True when no monic polynomial of degree 1..deg(p)//2 divides p.

    >>> gf_is_irreducible(GFPoly([1, 1, 1], 2))
    True
    >>> gf_is_irreducible(GFPoly([0, 0, 1], 2))
    False
    """
    d = p.degree
    if d < 1:
        raise PreconditionError(_("Irreducibility needs deg p >= 1"))
    b = p.b
    half = d // 2
    if sum(b ** k for k in range(1, half + 1)) > IRREDUCIBLE_MAX_CANDIDATES:
        raise ResourceLimitError(_("Irreducibility test of degree %d over "
                                   "Z_%d is too large") % (d, b))
    for k in range(1, half + 1):
        # Monic polynomials of degree k encode as b^k .. 2 b^k - 1
        for code in range(b ** k, 2 * b ** k):
            if not p % GFPoly.from_int(code, b, k + 1):
                return False
    return True


def smallest_irreducible(b, m):
    """First irreducible monic polynomial of degree m in integer order.

    >>> str(smallest_irreducible(2, 3))
    'x^3 + x + 1'
    >>> str(smallest_irreducible(2, 5))
    'x^5 + x^2 + 1'
    """
    if m < 1:
        raise PreconditionError(_("Degree must be at least 1, got %d") % m)
    for code in range(b ** m, 2 * b ** m):
        p = GFPoly.from_int(code, b, m + 1)
        if gf_is_irreducible(p):
            return p


def nu_m(numer, p, m):
    """Digits t_1..t_m of the Laurent expansion of numer / p.

    With numer reduced mod p to r and p = sum p_i x^i, the digits follow
    from p_m t_k = r_{m-k} - sum_{i<k} p_{m-k+i} t_i over Z_b.

    >>> p = GFPoly([1, 1, 1], 2)
    >>> nu_m(GFPoly([0, 1], 2), p, 2)
    DigitExpansion((1, 1), b=2)
    >>> nu_m(GFPoly([1], 2), GFPoly([0, 0, 1], 2), 2).value
    Fraction(1, 4)
    """
    if p.degree != m:
        raise UsageError(_("nu_m needs deg p = m, got deg p = %s and m = %d")
                         % (p.degree, m))
    b = p.b
    r = numer % p
    inverse = pow(p.lead, b - 2, b)
    digits = []
    for k in range(1, m + 1):
        acc = r.coeff(m - k)
        for i in range(1, k):
            acc -= p.coeff(m - k + i) * digits[i - 1]
        digits.append(acc * inverse % b)
    return DigitExpansion(digits, b)


def tr_m(k, m, b):
    """Polynomial from the lowest m base-b digits of k.

    >>> str(tr_m(6, 3, 2))
    'x^2 + x'
    >>> str(tr_m(5, 2, 2))
    '1'
    """
    if k < 0:
        raise UsageError(_("tr_m needs k >= 0, got %d") % k)
    return GFPoly(base_digits(k, b, m), b)
