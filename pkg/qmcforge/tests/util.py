# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import doctest
import os
import unittest

import qmcforge.util

from qmcforge.tests import makeSuite
from qmcforge.util import THREADS_ENV, base_digits, chunked, digit_matrix
from qmcforge.util import nonempty_subsets, parallel_map, primes_between
from qmcforge.util import worker_count


class SubsetTestCase(unittest.TestCase):

    def test_count(self):
        self.assertEqual(2 ** 6 - 1, len(list(nonempty_subsets(6))))

    def test_order(self):
        subsets = list(nonempty_subsets(4))
        sizes = [len(u) for u in subsets]
        self.assertEqual(sorted(sizes), sizes)
        self.assertEqual((1,), subsets[0])
        self.assertEqual((1, 2, 3, 4), subsets[-1])


class DigitTestCase(unittest.TestCase):

    def test_base_digits(self):
        self.assertEqual([0, 1, 1, 0], base_digits(6, 2, 4))
        self.assertEqual([2, 1], base_digits(5, 3, 2))

    def test_digit_matrix(self):
        matrix = digit_matrix(3, 2)
        self.assertEqual((9, 2), matrix.shape)
        self.assertEqual([2, 1], list(matrix[5]))

    def test_primes_between(self):
        self.assertEqual([17, 19, 23, 29, 31], primes_between(17, 31))
        self.assertEqual([], primes_between(24, 28))


class ParallelTestCase(unittest.TestCase):

    def setUp(self):
        self._saved = os.environ.pop(THREADS_ENV, None)

    def tearDown(self):
        os.environ.pop(THREADS_ENV, None)
        if self._saved is not None:
            os.environ[THREADS_ENV] = self._saved

    def test_order_preserved(self):
        items = list(range(50))
        self.assertEqual([i * i for i in items],
                         parallel_map(lambda i: i * i, items, 4))
        self.assertEqual([i * i for i in items],
                         parallel_map(lambda i: i * i, items, 1))

    def test_worker_count_environment(self):
        self.assertEqual(3, worker_count(3))
        os.environ[THREADS_ENV] = '2'
        self.assertEqual(2, worker_count(3))
        os.environ[THREADS_ENV] = '0'
        self.assertTrue(worker_count(3) >= 1)

    def test_chunked(self):
        self.assertEqual([[1, 2], [3, 4], [5]], chunked([1, 2, 3, 4, 5], 2))


def test_suite():
    suite = unittest.TestSuite()
    suite.addTest(doctest.DocTestSuite(module=qmcforge.util))
    suite.addTest(makeSuite(SubsetTestCase))
    suite.addTest(makeSuite(DigitTestCase))
    suite.addTest(makeSuite(ParallelTestCase))
    return suite

if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
