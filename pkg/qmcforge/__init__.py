# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""
See qmcforge.api for detailed information.
"""

from qmcforge import api
from qmcforge import lattice
from qmcforge import polylattice
