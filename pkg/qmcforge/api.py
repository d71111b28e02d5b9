# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""Component plumbing for qmcforge.

Rule construction and evaluation is organised like a small Trac
application: a `ForgeEnvironment` acts as component manager and owns the
configuration and the logger, and each rule kind (`lattice`,
`poly-lattice`) is an `IRuleFamily` component registered with the
`RuleSystem`.

>>> env = ForgeEnvironment()
>>> sorted(RuleSystem(env).get_rule_kinds())
['lattice', 'poly-lattice']
>>> RuleSystem(env).tie_tolerance
1e-12
>>> env.shutdown()
"""

from trac.config import ChoiceOption, Configuration, FloatOption, IntOption
from trac.config import Option
from trac.core import Component, ComponentManager, ExtensionPoint, Interface
from trac.core import TracError
from trac.log import logger_handler_factory
from trac.util.translation import domain_functions

# Messages are marked for translation; no catalog is shipped.
(_,) = domain_functions('qmcforge', ('_',))


class QmcError(TracError):
    """Base class of all qmcforge errors.

    `exit_code` is what the command line front end returns for it.
    """

    exit_code = 2


class UsageError(QmcError):
    """Raised for malformed input such as an empty coordinate subset."""


class PreconditionError(QmcError):
    """Raised when an operation is called outside its preconditions."""


class DomainError(QmcError):
    """Raised when a quantity is mathematically undefined."""


class UnsupportedSmoothness(QmcError):
    """Raised when a closed form is requested for a smoothness it lacks."""


class InvalidRuleKind(QmcError):
    """Raised for an unknown rule kind."""


class ResourceLimitError(QmcError):
    """Raised when an exhaustive enumeration would exceed its cap."""

    exit_code = 3


class IRuleFamily(Interface):
    """The interface for Components constructing and evaluating one kind of
    quadrature rule.
    """

    def get_rule_kind():
        """Return the rule kind this family handles, as written in rule
        files (`"type"`)."""

    def construct(size, s, params, fast=False, modulus=None, method='cbc',
                  seed=0):
        """Construct an `s`-dimensional rule.

        :param size: `N` for lattice rules, `(b, m)` for polynomial ones.
        :param params: `SpaceParams` the construction minimises for.
        :param method: `'cbc'` or `'random'`.
        :rtype: (rule, CbcTrace) tuple; the trace is `None` for random rules.
        """

    def load_rule(data):
        """Build a rule object from its JSON mapping."""

    def evaluate(rule, params, rho=False, discrepancy=False,
                 weights_prime=None):
        """Return the merit report mapping of a rule."""

    def certify(rule, selector, params, params_prime=None, lam=1.0,
                delta=0.5):
        """Return a `StabilityCertificate` for the named bound."""

    def sweep_cell(size, s, params, params_prime=None, certify=None,
                   fast=False):
        """Construct a rule for one grid cell and return its table row."""


class RuleSystem(Component):
    """Dispatches rule operations to the registered rule families and holds
    the numerical settings shared by all of them.
    """

    families = ExtensionPoint(IRuleFamily)

    threads = IntOption('qmcforge', 'threads', 0,
        doc="""Number of worker threads for candidate scans, 0 meaning one
        per CPU. The `QMCFORGE_THREADS` environment variable overrides it.""")
    tie_tolerance = FloatOption('qmcforge', 'tie_tolerance', 1e-12,
        doc="Relative window inside which CBC candidates count as ties.")
    certificate_slack = FloatOption('qmcforge', 'certificate_slack', 1e-9,
        doc="Relative slack allowed when checking bound certificates.")
    series_radius = IntOption('qmcforge', 'series_radius', 4,
        doc="""Truncation radius, as a multiple of N, of the dual series used
        when no closed form exists for the smoothness.""")
    digit_cap_extra = IntOption('qmcforge', 'digit_cap_extra', 3,
        doc="Digits above m kept by truncated Walsh series.")
    explicit_max_dim = IntOption('qmcforge', 'explicit_max_dim', 20,
        doc="Largest dimension for explicitly listed weights.")
    s_max = IntOption('qmcforge', 's_max', 64,
        doc="Dimension up to which formula weights are tabulated.")

    # Internal variables
    _kind_family_map = None

    def __init__(self):
        self._populate_family_map()

    # Public methods

    def get_rule_kinds(self):
        return set(self._kind_family_map)

    def get_family(self, kind):
        try:
            return self._kind_family_map[kind]
        except KeyError:
            raise InvalidRuleKind(_("Unknown rule kind '%s'") % kind)

    def family_for(self, rule):
        return self.get_family(rule.kind)

    @property
    def workers(self):
        from qmcforge.util import worker_count
        return worker_count(self.threads)

    # Internal methods

    def _populate_family_map(self):
        if self._kind_family_map is None:
            self._kind_family_map = dict((family.get_rule_kind(), family)
                                         for family in self.families)


class ForgeEnvironment(Component, ComponentManager):
    """Component manager holding configuration and logger.

    :param path: optional ini file with `[qmcforge]` and `[logging]`
                 sections; without it every option has its default.
    """

    log_type = Option('logging', 'log_type', 'stderr',
        doc="Logging facility to use, `stderr` or `none`.")
    log_level = ChoiceOption('logging', 'log_level',
                             ['WARNING', 'CRITICAL', 'ERROR', 'INFO',
                              'DEBUG'],
        doc="Level of verbosity in log.")

    def __init__(self, path=None):
        ComponentManager.__init__(self)
        self.path = path
        self.config = Configuration(path)
        self.setup_log()

    def component_activated(self, component):
        component.env = self
        component.config = self.config
        component.log = self.log

    _log_handler = None

    def setup_log(self, level=None):
        if level is not None:
            self.config.set('logging', 'log_level', level.upper())
        self.shutdown()
        self.log, self._log_handler = \
            logger_handler_factory(self.log_type, None, self.log_level,
                                   'qmcforge')

    def shutdown(self):
        if self._log_handler is not None:
            self.log.removeHandler(self._log_handler)
            self._log_handler = None
