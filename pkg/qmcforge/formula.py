# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

"""
Weight declarations: a small formula language and the weight spec parser.
"""

import math
import re

from qmcforge.api import QmcError, _
from qmcforge.weights import DEFAULT_S_MAX, EXPLICIT_MAX_DIM, WeightSet

__all__ = ['Formula', 'InvalidFormula', 'parse_weights']


class InvalidFormula(QmcError):
    """Raised when a weight formula or weight spec is invalid."""


class FormulaNode(object):
    """A formula parse node.

    >>> FormulaNode(FormulaNode.NUMBER, 2.0)
    (2.0)
    >>> FormulaNode(FormulaNode.POWER,
    ...     left=FormulaNode(FormulaNode.VARIABLE, 'j'),
    ...     right=FormulaNode(FormulaNode.NUMBER, -2.0))
    (pow
      (j)
      (-2.0))
    """

    NUMBER = 1
    VARIABLE = 2
    NEG = 3
    ADD = 4
    MUL = 5
    POWER = 6
    FACTORIAL = 7

    __slots__ = ('type', 'value', 'left', 'right')

    _type_map = {NEG: 'neg', ADD: 'add', MUL: 'mul', POWER: 'pow',
                 FACTORIAL: 'fact'}

    def __init__(self, type, value=None, left=None, right=None):
        self.type = type
        self.value = value
        self.left = left
        self.right = right

    def evaluate(self, x):
        if self.type == FormulaNode.NUMBER:
            return self.value
        if self.type == FormulaNode.VARIABLE:
            return float(x)
        if self.type == FormulaNode.NEG:
            return -self.left.evaluate(x)
        if self.type == FormulaNode.ADD:
            return self.left.evaluate(x) + self.right.evaluate(x)
        if self.type == FormulaNode.MUL:
            return self.left.evaluate(x) * self.right.evaluate(x)
        if self.type == FormulaNode.POWER:
            try:
                return self.left.evaluate(x) ** self.right.evaluate(x)
            except ZeroDivisionError:
                raise InvalidFormula(_("Zero raised to a negative power"))
        value = self.left.evaluate(x)
        if value < 0 or not float(value).is_integer():
            raise InvalidFormula(_("Factorial of %s is undefined") % value)
        return float(math.factorial(int(value)))

    def __repr__(self):
        def show(node, depth=0):
            indent = '  ' * depth
            if node.type in (FormulaNode.NUMBER, FormulaNode.VARIABLE):
                return '%s(%s)' % (indent, node.value)
            text = '%s(%s' % (indent, self._type_map[node.type])
            for child in (node.left, node.right):
                if child is not None:
                    text += '\n' + show(child, depth + 1)
            return text + ')'
        return show(self)


class Formula(FormulaNode):
    """Formula parser.

    Converts a formula in one variable (`j` for coordinates, `k` for subset
    orders) into a callable parse tree.

        j^-2        power of the variable
        0.5*j^-2    a coefficient, also written 0.5·j^-2 or 0.5 j^-2
        k!          factorial
        (k+1)!^2    parentheses and sums

    >>> Formula('j^-2')
    (pow
      (j)
      (-2.0))
    >>> Formula('j^-2')(2)
    0.25
    >>> Formula('0.5·j^-1')(4)
    0.125
    >>> Formula('(k+1)!^2')(2)
    36.0
    >>> Formula('0.3')(7)
    0.3
    """

    _tokenise_re = re.compile(r"""
        (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|
        (?P<variable>[jkJK])|
        (?P<power>\^|\*\*)|
        (?P<times>[*·×])|
        (?P<plus>\+)|
        (?P<minus>-)|
        (?P<bang>!)|
        (?P<startsub>\()|
        (?P<endsub>\))|
        (?P<space>\s+)""", re.UNICODE | re.VERBOSE)

    def __init__(self, phrase):
        FormulaNode.__init__(self, None)
        self.phrase = phrase
        tokens = self._tokenise(phrase)
        if not tokens:
            raise InvalidFormula(_("Empty formula"))
        root = self.parse_sum(tokens)
        if tokens:
            raise InvalidFormula(_("Unexpected '%s' in formula '%s'")
                                 % (tokens[0][1], phrase))
        for k in self.__slots__:
            setattr(self, k, getattr(root, k))

    def __call__(self, x):
        return self.evaluate(x)

    def parse_sum(self, tokens):
        left = self.parse_product(tokens)
        while tokens and tokens[0][0] in ('plus', 'minus'):
            op = tokens.pop(0)[0]
            right = self.parse_product(tokens)
            if op == 'minus':
                right = FormulaNode(FormulaNode.NEG, left=right)
            left = FormulaNode(FormulaNode.ADD, left=left, right=right)
        return left

    def parse_product(self, tokens):
        """Explicit or implied multiplication.

        >>> f = Formula('1')
        >>> f.parse_product(f._tokenise('2 j'))
        (mul
          (2.0)
          (j))
        """
        left = self.parse_unary(tokens)
        while tokens:
            if tokens[0][0] == 'times':
                tokens.pop(0)
            elif tokens[0][0] not in ('number', 'variable', 'startsub'):
                break
            left = FormulaNode(FormulaNode.MUL, left=left,
                               right=self.parse_unary(tokens))
        return left

    def parse_unary(self, tokens):
        if tokens and tokens[0][0] == 'minus':
            tokens.pop(0)
            return FormulaNode(FormulaNode.NEG, left=self.parse_unary(tokens))
        if tokens and tokens[0][0] == 'plus':
            tokens.pop(0)
        return self.parse_power(tokens)

    def parse_power(self, tokens):
        base = self.parse_postfix(tokens)
        if tokens and tokens[0][0] == 'power':
            tokens.pop(0)
            exponent = self.parse_unary(tokens)
            if exponent.type == FormulaNode.NEG and \
                    exponent.left.type == FormulaNode.NUMBER:
                exponent = FormulaNode(FormulaNode.NUMBER,
                                       -exponent.left.value)
            return FormulaNode(FormulaNode.POWER, left=base, right=exponent)
        return base

    def parse_postfix(self, tokens):
        node = self.parse_terminal(tokens)
        while tokens and tokens[0][0] == 'bang':
            tokens.pop(0)
            node = FormulaNode(FormulaNode.FACTORIAL, left=node)
        return node

    def parse_terminal(self, tokens):
        if not tokens:
            raise InvalidFormula(_("Unexpected end of formula"))
        kind, text = tokens.pop(0)
        if kind == 'number':
            return FormulaNode(FormulaNode.NUMBER, float(text))
        if kind == 'variable':
            return FormulaNode(FormulaNode.VARIABLE, text.lower())
        if kind == 'startsub':
            node = self.parse_sum(tokens)
            if not tokens or tokens[0][0] != 'endsub':
                raise InvalidFormula(_("Expected ) in formula"))
            tokens.pop(0)
            return node
        raise InvalidFormula(_("Expected a number or variable, got '%s'")
                             % text)

    # Internal methods

    def _tokenise(self, phrase):
        tokens = []
        pos = 0
        while pos < len(phrase):
            match = self._tokenise_re.match(phrase, pos)
            if match is None:
                raise InvalidFormula(_("Invalid character '%s' in formula "
                                       "'%s'") % (phrase[pos], phrase))
            pos = match.end()
            if match.lastgroup != 'space':
                tokens.append((match.lastgroup, match.group(0)))
        return tokens


def parse_sequence(text):
    """A comma-separated list of numbers, or a formula.

    >>> parse_sequence('0.5, 0.25')
    [0.5, 0.25]
    >>> parse_sequence('j^-1')(2)
    0.5
    """
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    if isinstance(text, (int, float)):
        return Formula(repr(float(text)))
    if ',' in text:
        try:
            return [float(v) for v in text.split(',')]
        except ValueError:
            raise InvalidFormula(_("Invalid number list '%s'") % text)
    return Formula(text)


def parse_weights(spec, s_max=None):
    """Build a `WeightSet` from a declaration string or mapping.

    >>> parse_weights('product:j^-2').weight((1, 2))
    0.25
    >>> parse_weights('pod:k!;1').weight((1, 2, 3))
    6.0
    >>> parse_weights('explicit:1=0.5;1,2=0.25').weight((1, 2))
    0.25
    >>> parse_weights({'kind': 'order', 'Gamma': [1, 0.5]}).weight((1, 2))
    0.5
    """
    if isinstance(spec, WeightSet):
        return spec
    if isinstance(spec, dict):
        return _weights_from_mapping(spec, s_max)
    kind, sep, body = spec.partition(':')
    kind = kind.strip().lower()
    body = body.strip()
    if not sep or not body:
        raise InvalidFormula(_("Weight spec '%s' must read <kind>:<values>")
                             % spec)
    if kind == 'product':
        return WeightSet.product(parse_sequence(body), _size(body, s_max))
    if kind == 'pod':
        Gamma, sep, gamma = body.partition(';')
        if not sep:
            raise InvalidFormula(_("POD weights read pod:<Gamma>;<gamma>"))
        return WeightSet.pod(parse_sequence(Gamma.strip()),
                             parse_sequence(gamma.strip()),
                             _pod_size(Gamma, gamma, s_max))
    if kind == 'order':
        return WeightSet.order_dependent(parse_sequence(body),
                                         _size(body, s_max))
    if kind == 'explicit':
        mapping = {}
        for item in body.split(';'):
            u, sep, value = item.partition('=')
            if not sep:
                raise InvalidFormula(_("Explicit weights read u=value, got "
                                       "'%s'") % item)
            mapping[u.strip()] = _number(value)
        return WeightSet.explicit(mapping, s_max or EXPLICIT_MAX_DIM)
    raise InvalidFormula(_("Unknown weight kind '%s'") % kind)


# Internal functions

def _weights_from_mapping(data, s_max):
    kind = str(data.get('kind', '')).lower()
    s_max = data.get('s_max', s_max)
    if kind == 'product':
        gamma = parse_sequence(data.get('gamma', 1.0))
        return WeightSet.product(gamma, _size(gamma, s_max))
    if kind == 'pod':
        Gamma = parse_sequence(data.get('Gamma', 1.0))
        gamma = parse_sequence(data.get('gamma', 1.0))
        return WeightSet.pod(Gamma, gamma, _pod_size(Gamma, gamma, s_max))
    if kind == 'order':
        Gamma = parse_sequence(data.get('Gamma', 1.0))
        return WeightSet.order_dependent(Gamma, _size(Gamma, s_max))
    if kind == 'explicit':
        entries = data.get('map', {})
        if isinstance(entries, dict):
            mapping = dict((u, _number(v)) for u, v in entries.items())
        else:
            mapping = dict((tuple(e['u']), _number(e['value']))
                           for e in entries)
        return WeightSet.explicit(mapping, s_max or EXPLICIT_MAX_DIM)
    raise InvalidFormula(_("Unknown weight kind '%s'") % kind)


def _number(text):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise InvalidFormula(_("'%s' is not a number") % text)


def _size(values, s_max):
    if isinstance(values, str):
        values = parse_sequence(values)
    if callable(values):
        return s_max or DEFAULT_S_MAX
    return None


def _pod_size(Gamma, gamma, s_max):
    if isinstance(Gamma, str):
        Gamma = parse_sequence(Gamma.strip())
    if isinstance(gamma, str):
        gamma = parse_sequence(gamma.strip())
    if callable(Gamma) and callable(gamma):
        return s_max or DEFAULT_S_MAX
    return None
