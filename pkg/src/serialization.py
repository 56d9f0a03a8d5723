"""
JSON formats for signatures, elements, function tables, user cocycle tables
and probe reports

Rationals are written as "p/q" or integer strings.
"""

import json
import logging
from fractions import Fraction

from src.algebra import Element, Monomial, check_monomial
from src.cocycles import (Coboundary, FunctionTable, Phi0, PhiGamma, UserTable, lift_cocycle,
                          zero_cocycle)
from src.errors import UsageError
from src.parser import format_monomial
from src.signature import to_fraction, validate_signature

logger = logging.getLogger(__name__)


def read_json(path):
    """Load a JSON document, mapping I/O and syntax problems to UsageError"""
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}")


def load_signature(path, tau_search_bound=None):
    return validate_signature(read_json(path), tau_search_bound)


def _field(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise UsageError(f"{where}: missing field '{key}'")
    return data[key]


def monomial_to_json(m):
    return {
        'alpha': [str(a) for a in m.alpha],
        'k': list(m.k),
        'mu': list(m.mu),
    }


def monomial_from_json(sig, data, where='monomial'):
    try:
        m = Monomial(tuple(to_fraction(a) for a in _field(data, 'alpha', where)),
                     tuple(int(v) for v in _field(data, 'k', where)),
                     tuple(int(v) for v in _field(data, 'mu', where)))
    except (TypeError, ValueError) as e:
        raise UsageError(f"{where}: {e}")
    check_monomial(sig, m)
    return m


def element_to_json(e):
    return {'terms': [dict(c=str(c), **monomial_to_json(m)) for m, c in e.items()]}


def element_from_json(sig, data):
    terms = {}
    for i, term in enumerate(_field(data, 'terms', 'element')):
        m = monomial_from_json(sig, term, f"term {i}")
        try:
            c = to_fraction(term.get('c', '1'))
        except ValueError as e:
            raise UsageError(f"term {i}: {e}")
        terms[m] = terms.get(m, 0) + c
    return Element(terms)


def function_table_to_json(table):
    return {'entries': [{'monomial': monomial_to_json(m), 'value': str(v)}
                        for m, v in sorted(table.entries.items())]}


def function_table_from_json(sig, data):
    entries = {}
    for i, entry in enumerate(_field(data, 'entries', 'function table')):
        m = monomial_from_json(sig, _field(entry, 'monomial', f"entry {i}"), f"entry {i}")
        try:
            entries[m] = to_fraction(_field(entry, 'value', f"entry {i}"))
        except ValueError as e:
            raise UsageError(f"entry {i}: {e}")
    return FunctionTable(entries)


def user_table_from_json(sig, data):
    pairs = {}
    for i, entry in enumerate(_field(data, 'pairs', 'cocycle table')):
        u = monomial_from_json(sig, _field(entry, 'u', f"pair {i}"), f"pair {i}.u")
        v = monomial_from_json(sig, _field(entry, 'v', f"pair {i}"), f"pair {i}.v")
        try:
            pairs[(u, v)] = to_fraction(_field(entry, 'value', f"pair {i}"))
        except ValueError as e:
            raise UsageError(f"pair {i}: {e}")
    return UserTable(sig, pairs)


def _equation(sig, probe, row):
    lhs = []
    for i, c in sorted(row.coefficients.items()):
        name = f"f({format_monomial(sig, probe.unknowns[i])})"
        lhs.append(name if c == 1 else f"{c}*{name}")
    return f"{' + '.join(lhs) if lhs else '0'} = {row.rhs}"


def probe_report(sig, probe):
    report = {
        'verdict': probe.verdict,
        'rank': probe.rank,
        'unknowns': len(probe.unknowns),
        'rows': len(probe.rows),
        'witness': [
            {
                'u': format_monomial(sig, row.u),
                'v': format_monomial(sig, row.v),
                'equation': _equation(sig, probe, row),
            }
            for row in probe.witness
        ],
        'solution': function_table_to_json(probe.solution) if probe.solution is not None else None,
    }
    return report


def scalar_to_json(value):
    return str(Fraction(value))


def parse_vector(text, where='vector'):
    """Comma-separated rationals, e.g. "1" or "1/2,0" """
    try:
        return tuple(to_fraction(part.strip()) for part in str(text).split(','))
    except ValueError as e:
        raise UsageError(f"{where}: {e}")


def parse_range(text, where='range'):
    """Parse "a:b", a single integer or a two-item list into an integer pair"""
    if isinstance(text, (list, tuple)):
        if len(text) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in text):
            raise UsageError(f"{where}: expected two integers, got {text!r}")
        return text[0], text[1]
    lo, sep, hi = str(text).partition(':')
    try:
        if not sep:
            value = int(lo)
            return value, value
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"{where}: expected a:b with integers, got {text!r}")


def cocycle_from_spec(sig, spec, inline=None):
    """
    Build a cocycle from a spec string

        phi0 | phigamma:<vec> | lifted:<phi0|phigamma:<vec>> | zero
        coboundary:<path> | table:<path>

    "coboundary" and "table" without a path read their JSON document from
    `inline` instead of a file.
    """
    kind, _, rest = spec.partition(':')
    if kind == 'phi0' and not rest:
        return Phi0(sig)
    if kind == 'phigamma':
        if not rest:
            raise UsageError("phigamma needs a group element, e.g. phigamma:0")
        return PhiGamma(sig, parse_vector(rest, 'gamma'))
    if kind == 'lifted':
        if not rest.startswith(('phi0', 'phigamma')):
            raise UsageError("lifted takes phi0 or phigamma:<vec>")
        return lift_cocycle(sig, cocycle_from_spec(sig, rest))
    if kind == 'zero' and not rest:
        return zero_cocycle(sig)
    if kind in ('coboundary', 'table'):
        if rest:
            data = read_json(rest)
        elif inline is not None:
            data = inline
        else:
            raise UsageError(f"{kind} needs a file path, e.g. {kind}:values.json")
        if kind == 'coboundary':
            return Coboundary(sig, function_table_from_json(sig, data))
        return user_table_from_json(sig, data)
    raise UsageError(f"unknown cocycle spec {spec!r}")
