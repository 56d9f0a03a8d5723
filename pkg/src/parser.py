"""
Concrete syntax for elements

    element := term (("+" | "-") term)*
    term    := rational | [rational ["*"]] factor (["*"] factor)*
    factor  := "x[" rational ("," rational)* "]"   group part
             | "t" N ["^" int]                     even variable
             | "s" N                               Grassmann variable
             | "d" N ["^" nat]                     even derivation
             | "q" N                               odd derivation

A term is the left-to-right product of its factors, so non-canonical
orderings such as "q1 s1" pick up their signs from the product itself.
format_element writes factors in the canonical order x t s d q, which
re-parses without signs.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import pyparsing as pp

from src.algebra import Element, Monomial, identity_monomial, mul
from src.errors import ExpressionIndexError, ExpressionSyntaxError
from src.signature import PLAIN, POLY


@dataclass(frozen=True)
class Factor:
    kind: str
    loc: int
    index: int = 0
    exponent: Optional[int] = None
    values: Tuple[Fraction, ...] = ()


def _simple_factor(kind, pattern):
    expr = pp.Regex(pattern)

    def action(s, loc, toks):
        exponent = toks.get('exp')
        return Factor(kind, loc, int(toks['index']), int(exponent) if exponent else None)

    return expr.set_parse_action(action)


def _x_action(s, loc, toks):
    return Factor('x', loc, values=tuple(Fraction(v) for v in toks[0]))


_UNSIGNED = pp.Regex(r"\d+(?:/\d+)?")
_SIGNED = pp.Regex(r"[+-]?\d+(?:/\d+)?")

_X = pp.Group(pp.Suppress(pp.Literal("x") + pp.Literal("[")) + _SIGNED
              + pp.ZeroOrMore(pp.Suppress(",") + _SIGNED) + pp.Suppress("]")).set_parse_action(_x_action)
_T = _simple_factor('t', r"t(?P<index>\d+)(?:\^(?P<exp>[+-]?\d+))?")
_S = _simple_factor('s', r"s(?P<index>\d+)")
_D = _simple_factor('d', r"d(?P<index>\d+)(?:\^(?P<exp>\d+))?")
_Q = _simple_factor('q', r"q(?P<index>\d+)")

_FACTOR = _X | _T | _S | _D | _Q
_FACTORS = _FACTOR + pp.ZeroOrMore(pp.Optional(pp.Suppress("*")) + _FACTOR)
_COEFFICIENT = _UNSIGNED.copy().set_parse_action(lambda toks: Fraction(toks[0]))
_BODY = (_COEFFICIENT + pp.Optional(pp.Optional(pp.Suppress("*")) + _FACTORS)) | _FACTORS
_SIGN = pp.one_of("+ -")

ELEMENT = (pp.Group(pp.Optional(_SIGN, default='+') + _BODY)
           + pp.ZeroOrMore(pp.Group(_SIGN + _BODY))
           + pp.StringEnd())


def _group_vector(sig, factor):
    values = factor.values
    if len(values) == 1 and sig.even_count == 1 and sig.total > 1:
        values = values + (Fraction(0),) * (sig.total - 1)
    if len(values) != sig.total:
        raise ExpressionIndexError(
            f"x[...] at char {factor.loc} needs {sig.total} entries, got {len(factor.values)}")
    if not sig.has_group_support(values):
        raise ExpressionIndexError(f"x[...] at char {factor.loc} is nonzero outside the group coordinates")
    return values


def _check_index(factor, upper, what):
    if not 1 <= factor.index <= upper:
        raise ExpressionIndexError(
            f"{factor.kind}{factor.index} at char {factor.loc}: {what} index must lie in 1..{upper}")


def factor_monomial(sig, factor):
    """The monomial a single factor denotes"""
    base = identity_monomial(sig)
    alpha, k, mu = list(base.alpha), list(base.k), list(base.mu)

    if factor.kind == 'x':
        alpha = list(_group_vector(sig, factor))
    elif factor.kind == 't':
        _check_index(factor, sig.partial(3), "even variable")
        c = factor.index - 1
        exponent = 1 if factor.exponent is None else factor.exponent
        if exponent < 0 and sig.zone(c) in (PLAIN, POLY):
            raise ExpressionIndexError(
                f"t{factor.index}^{exponent} at char {factor.loc}: negative power of a polynomial variable")
        k[c] = exponent
    elif factor.kind == 'd':
        _check_index(factor, sig.even_count, "even derivation")
        mu[factor.index - 1] = 1 if factor.exponent is None else factor.exponent
    else:
        _check_index(factor, sig.odd_count, "odd")
        c = sig.even_count + factor.index - 1
        (k if factor.kind == 's' else mu)[c] = 1

    return Monomial(tuple(alpha), tuple(k), tuple(mu))


def parse_expression(sig, text):
    """
    Parse text into a canonical Element

    Raises:
        ExpressionSyntaxError: text does not match the grammar
        ExpressionIndexError: an index or exponent is out of range for the signature
    """
    try:
        terms = ELEMENT.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ExpressionSyntaxError(f"cannot parse expression: {e.msg}", e.loc, e.lineno, e.col) from e

    total = Element()
    for term in terms:
        sign, *body = list(term)
        coeff = Fraction(1)
        if body and isinstance(body[0], Fraction):
            coeff = body.pop(0)
        value = Element.scalar(sig, -coeff if sign == '-' else coeff)
        for factor in body:
            value = mul(sig, value, Element.from_monomial(factor_monomial(sig, factor)))
        total = total + value
    return total


def _format_group(sig, alpha):
    if sig.even_count == 1:
        return f"x[{alpha[0]}]"
    return "x[" + ",".join(str(a) for a in alpha) + "]"


def format_monomial(sig, m):
    """Canonical text of a monomial, '1' for the identity"""
    parts = []
    if any(m.alpha):
        parts.append(_format_group(sig, m.alpha))
    for c in range(sig.partial(3)):
        if m.k[c]:
            parts.append(f"t{c + 1}" if m.k[c] == 1 else f"t{c + 1}^{m.k[c]}")
    for r, c in enumerate(sig.odd_coords, start=1):
        if m.k[c]:
            parts.append(f"s{r}")
    for c in range(sig.even_count):
        if m.mu[c]:
            parts.append(f"d{c + 1}" if m.mu[c] == 1 else f"d{c + 1}^{m.mu[c]}")
    for r, c in enumerate(sig.odd_coords, start=1):
        if m.mu[c]:
            parts.append(f"q{r}")
    return " ".join(parts) if parts else "1"


def format_element(sig, e):
    """Terms in canonical (alpha, k, mu) order; coefficients as exact rationals"""
    if not e:
        return "0"
    out = []
    for i, (m, c) in enumerate(e.items()):
        text = format_monomial(sig, m)
        magnitude = abs(c)
        if text == "1":
            body = str(magnitude)
        elif magnitude == 1:
            body = text
        else:
            body = f"{magnitude}*{text}"
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)
