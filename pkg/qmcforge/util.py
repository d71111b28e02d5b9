# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

import numpy as np

THREADS_ENV = 'QMCFORGE_THREADS'


def nonempty_subsets(s, max_size=None):
    """Iterate over the nonempty subsets of {1, ..., s} as sorted tuples,
    by size first and lexicographically within a size.

    >>> list(nonempty_subsets(3))
    [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    >>> list(nonempty_subsets(3, max_size=1))
    [(1,), (2,), (3,)]
    """
    top = s if max_size is None else min(s, max_size)
    for size in range(1, top + 1):
        for u in combinations(range(1, s + 1), size):
            yield u


def is_prime(n):
    """
    >>> [n for n in range(20) if is_prime(n)]
    [2, 3, 5, 7, 11, 13, 17, 19]
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """Distinct prime factors of `n` by trial division.

    >>> prime_factors(360)
    [2, 3, 5]
    >>> prime_factors(1)
    []
    """
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def primes_between(lo, hi):
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def base_digits(n, b, count):
    """The lowest `count` base-`b` digits of `n`, least significant first.

    >>> base_digits(6, 2, 4)
    [0, 1, 1, 0]
    """
    digits = []
    for _i in range(count):
        digits.append(n % b)
        n //= b
    return digits


def digit_matrix(b, m):
    """All vectors of G_m as a (b^m, m) array of digits, row n holding the
    digits of the integer n least significant first."""
    n = np.arange(b ** m, dtype=np.int64)
    powers = b ** np.arange(m, dtype=np.int64)
    return (n[:, None] // powers[None, :]) % b


def worker_count(configured=0):
    """Resolve the number of worker threads.

    The `QMCFORGE_THREADS` environment variable wins over the configured
    value; 0 or a negative number means one worker per CPU.
    """
    value = os.environ.get(THREADS_ENV, '').strip()
    try:
        count = int(value) if value else int(configured)
    except ValueError:
        count = int(configured)
    if count <= 0:
        count = os.cpu_count() or 1
    return count


def parallel_map(func, items, workers=1):
    """Map `func` over `items`, returning results in input order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def chunked(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def loglog_slope(xs, ys):
    """Least-squares slope of log(ys) against log(xs).

    >>> round(loglog_slope([1, 2, 4, 8], [1.0, 0.5, 0.25, 0.125]), 12)
    -1.0
    """
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])
