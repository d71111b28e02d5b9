# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import unittest


def makeSuite(testCaseClass):
    return unittest.defaultTestLoader.loadTestsFromTestCase(testCaseClass)


def test_suite():
    suite = unittest.TestSuite()

    import qmcforge.tests.util
    suite.addTest(qmcforge.tests.util.test_suite())

    import qmcforge.tests.formula
    suite.addTest(qmcforge.tests.formula.test_suite())

    import qmcforge.tests.weights
    suite.addTest(qmcforge.tests.weights.test_suite())

    import qmcforge.tests.korobov
    suite.addTest(qmcforge.tests.korobov.test_suite())

    import qmcforge.tests.cbc
    suite.addTest(qmcforge.tests.cbc.test_suite())

    import qmcforge.tests.gfpoly
    suite.addTest(qmcforge.tests.gfpoly.test_suite())

    import qmcforge.tests.walsh
    suite.addTest(qmcforge.tests.walsh.test_suite())

    import qmcforge.tests.discrepancy
    suite.addTest(qmcforge.tests.discrepancy.test_suite())

    import qmcforge.tests.stability
    suite.addTest(qmcforge.tests.stability.test_suite())

    import qmcforge.tests.oracle
    suite.addTest(qmcforge.tests.oracle.test_suite())

    import qmcforge.tests.model
    suite.addTest(qmcforge.tests.model.test_suite())

    import qmcforge.tests.api
    suite.addTest(qmcforge.tests.api.test_suite())

    import qmcforge.tests.cli
    suite.addTest(qmcforge.tests.cli.test_suite())

    return suite


# Start test suite directly from command line like so:
#   $> PYTHONPATH=$PWD python qmcforge/tests/__init__.py
if __name__ == '__main__':
    unittest.main(defaultTest='test_suite')
