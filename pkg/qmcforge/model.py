# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The qmcforge developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

import csv
import io
import json
import math

from trac.util.text import exception_to_unicode

from qmcforge.api import InvalidRuleKind, UsageError, _
from qmcforge.korobov import LatticeRule
from qmcforge.walsh import PolyLatticeRule


# Rule files

def rule_to_dict(rule):
    return rule.to_dict()


def rule_from_dict(data):
    """Rebuild a rule from its JSON form.

    >>> rule_from_dict({'type': 'lattice', 'N': 5, 'z': [1, 2]})
    LatticeRule(N=5, z=(1, 2))
    >>> rule_from_dict({'type': 'poly-lattice', 'b': 2, 'm': 3,
    ...                 'p': [1, 1, 0, 1], 'q': [[1]]})
    PolyLatticeRule(b=2, m=3, p=[1, 1, 0, 1], q=[[1]])
    """
    if not isinstance(data, dict):
        raise UsageError(_("A rule must be a JSON object"))
    kind = data.get('type')
    try:
        if kind == LatticeRule.kind:
            return LatticeRule(data['N'], data['z'])
        if kind == PolyLatticeRule.kind:
            return PolyLatticeRule(data['b'], data['m'], data['p'],
                                   data['q'])
    except KeyError as e:
        raise UsageError(_("Rule of type '%(kind)s' lacks field %(field)s",
                           kind=kind, field=e))
    except (TypeError, ValueError) as e:
        raise UsageError(_("Malformed rule: %(error)s",
                           error=exception_to_unicode(e)))
    raise InvalidRuleKind(_("Unknown rule type '%s'") % kind)


def weights_to_dict(W):
    return W.to_dict()


# JSON and CSV artifacts

def _plain(value):
    """Replace infinities by None; JSON has no spelling for them."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return dict((str(k), _plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def read_json(path):
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except (IOError, OSError) as e:
        raise UsageError(_("Cannot read %(path)s: %(error)s", path=path,
                           error=exception_to_unicode(e)))
    except ValueError as e:
        raise UsageError(_("%(path)s is not valid JSON: %(error)s",
                           path=path, error=exception_to_unicode(e)))


def dump_json(data):
    return json.dumps(_plain(data), indent=2, sort_keys=True)


def write_json(data, path=None, stream=None):
    """Write `data` to `path`, or to `stream` when no path is given."""
    text = dump_json(data) + '\n'
    if path is None:
        stream.write(text)
        return
    try:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
    except (IOError, OSError) as e:
        raise UsageError(_("Cannot write %(path)s: %(error)s", path=path,
                           error=exception_to_unicode(e)))


def write_csv(rows, columns, stream=None, footer=None):
    """Write dict rows as CSV, missing cells left empty. `footer` lines
    follow the table as `# ` comments. Returns the text when no stream is
    given.

    >>> print(write_csv([{'N': 5, 'P': 0.5}], ['N', 'P'],
    ...                 footer=['slope=-1.0']).strip())
    N,P
    5,0.5
    # slope=-1.0
    """
    out = io.StringIO() if stream is None else stream
    writer = csv.DictWriter(out, fieldnames=list(columns),
                            extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    for line in footer or ():
        out.write('# %s\n' % line)
    if stream is None:
        return out.getvalue()
