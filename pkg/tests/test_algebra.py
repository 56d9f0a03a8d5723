"""Tests for the product, derivation action, bracket and ordering"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.algebra import (Element, Monomial, Order, amul, apply_multi_derivation, apply_partial, bracket,
                         compare_deriv_order, element_parity_parts, falling_action, falling_factorial_element,
                         identity_monomial, monomial, monomial_parity, mul, to_falling_basis)
from src.errors import DomainError, ShapeError, SignatureMismatchError
from src.selftest import FAMILIES
from src.signature import validate_signature

from .strategies import elements, monomials

WEYL_ODD1 = validate_signature(FAMILIES['weyl-odd1'])
WEYL_ODD2 = validate_signature(FAMILIES['weyl-odd2'])
LAURENT_ODD1 = validate_signature(FAMILIES['laurent-odd1'])
GROUP2 = validate_signature(FAMILIES['group2'])


def e(m, c=1):
    return Element.from_monomial(m, c)


def test_monomial_validation(weyl_odd1):
    with pytest.raises(ShapeError):
        monomial(weyl_odd1, k=(0, 2))
    with pytest.raises(ShapeError):
        monomial(weyl_odd1, alpha=(0, 1))
    with pytest.raises(ShapeError):
        monomial(weyl_odd1, k=(1, 0))
    with pytest.raises(SignatureMismatchError):
        monomial(weyl_odd1, mu=(1,))


def test_parity(weyl_odd2):
    assert monomial_parity(weyl_odd2, monomial(weyl_odd2, alpha=(1, 0, 0))) == 0
    assert monomial_parity(weyl_odd2, monomial(weyl_odd2, k=(0, 1, 1))) == 0
    assert monomial_parity(weyl_odd2, monomial(weyl_odd2, k=(0, 1, 0))) == 1
    assert monomial_parity(weyl_odd2, monomial(weyl_odd2, k=(0, 1, 0), mu=(0, 0, 1))) == 0


def test_element_parity_parts(weyl_odd1):
    s = monomial(weyl_odd1, k=(0, 1))
    x = monomial(weyl_odd1, alpha=(1, 0))
    even, odd = element_parity_parts(weyl_odd1, e(s, 2) + e(x, 3))
    assert even == e(x, 3)
    assert odd == e(s, 2)


def test_amul_grassmann_signs(weyl_odd2):
    s1 = monomial(weyl_odd2, k=(0, 1, 0))
    s2 = monomial(weyl_odd2, k=(0, 0, 1))
    s12 = monomial(weyl_odd2, k=(0, 1, 1))
    assert amul(weyl_odd2, s1, s2) == e(s12)
    assert amul(weyl_odd2, s2, s1) == e(s12, -1)
    assert amul(weyl_odd2, s1, s1) == 0


def test_amul_rejects_derivations(weyl_odd1):
    with pytest.raises(ShapeError):
        amul(weyl_odd1, monomial(weyl_odd1, mu=(1, 0)), identity_monomial(weyl_odd1))


def test_partial_mixed_rule(laurent_odd1):
    m = monomial(laurent_odd1, alpha=(2, 0), k=(3, 0))
    expected = e(m, 2) + e(monomial(laurent_odd1, alpha=(2, 0), k=(2, 0)), 3)
    assert apply_partial(laurent_odd1, 1, m) == expected


def test_odd_partial_sign(weyl_odd2):
    s12 = monomial(weyl_odd2, k=(0, 1, 1))
    s1 = monomial(weyl_odd2, k=(0, 1, 0))
    assert apply_partial(weyl_odd2, 3, s12) == e(s1, -1)


def test_partial_kills_constants(any_family):
    one = identity_monomial(any_family)
    for p in range(1, any_family.total + 1):
        assert apply_partial(any_family, p, one) == 0


def test_partial_index_range(weyl):
    with pytest.raises(DomainError):
        apply_partial(weyl, 2, identity_monomial(weyl))


def test_multi_derivation(weyl_odd2, laurent_odd1):
    s12 = monomial(weyl_odd2, k=(0, 1, 1))
    assert apply_multi_derivation(weyl_odd2, (0, 0, 0), s12) == e(s12)
    assert apply_multi_derivation(weyl_odd2, (0, 1, 1), s12) == Element.scalar(weyl_odd2, -1)
    x3 = monomial(laurent_odd1, alpha=(3, 0))
    assert apply_multi_derivation(laurent_odd1, (2, 0), x3) == e(x3, 9)


def test_product_cases(weyl_odd1):
    a, b = 2, -1
    xa_d = monomial(weyl_odd1, alpha=(a, 0), mu=(1, 0))
    xb = monomial(weyl_odd1, alpha=(b, 0))
    expected = (e(monomial(weyl_odd1, alpha=(a + b, 0), mu=(1, 0)))
                + e(monomial(weyl_odd1, alpha=(a + b, 0)), b))
    assert mul(weyl_odd1, e(xa_d), e(xb)) == expected


def test_odd_product_cases(weyl_odd1):
    s = monomial(weyl_odd1, k=(0, 1))
    q = monomial(weyl_odd1, mu=(0, 1))
    sq = monomial(weyl_odd1, k=(0, 1), mu=(0, 1))
    assert mul(weyl_odd1, e(q), e(s)) == Element.scalar(weyl_odd1, 1) - e(sq)
    assert mul(weyl_odd1, e(sq), e(sq)) == e(sq)
    assert mul(weyl_odd1, e(s), e(s)) == 0


def test_bracket_cases(weyl_odd1):
    a, b = 1, -1
    xa = monomial(weyl_odd1, alpha=(a, 0), mu=(1, 0))
    xb = monomial(weyl_odd1, alpha=(b, 0), mu=(1, 0))
    assert bracket(weyl_odd1, e(xa), e(xb)) == e(monomial(weyl_odd1, mu=(1, 0)), b - a)
    assert bracket(weyl_odd1, e(xa), e(xa)) == 0

    s = monomial(weyl_odd1, k=(0, 1))
    q = monomial(weyl_odd1, mu=(0, 1))
    assert bracket(weyl_odd1, e(s), e(q)) == Element.scalar(weyl_odd1, 1)


def test_element_arithmetic(weyl):
    x = monomial(weyl, alpha=(1,))
    total = e(x, Fraction(1, 2)) + e(x, Fraction(1, 2)) - e(x)
    assert total == 0
    assert not total
    assert 2 * e(x) == e(x, 2)


@pytest.mark.parametrize('mu, nu, expected', [
    ((2, 0), (0, 1), Order.GREATER),
    ((0, 1), (1, 0), Order.LESS),
    ((1, 1), (1, 1), Order.EQUAL),
])
def test_deriv_order(mu, nu, expected):
    assert compare_deriv_order(mu, nu) == expected


def test_falling_factorials(weyl):
    d = [e(monomial(weyl, mu=(m,))) for m in range(4)]
    assert falling_factorial_element(weyl, 0) == Element.scalar(weyl, 1)
    assert falling_factorial_element(weyl, 2) == d[2] - d[1]
    assert falling_factorial_element(weyl, 3) == d[3] - 3 * d[2] + 2 * d[1]


def test_falling_basis(weyl):
    assert to_falling_basis(weyl, 1) == [(1, 1)]
    assert to_falling_basis(weyl, 2) == [(1, 1), (2, 1)]


@pytest.mark.parametrize('m', range(9))
def test_falling_round_trip(weyl, m):
    rebuilt = Element()
    for k, c in to_falling_basis(weyl, m):
        rebuilt = rebuilt + c * falling_factorial_element(weyl, k)
    assert rebuilt == e(monomial(weyl, mu=(m,)))


@pytest.mark.parametrize('mu1, beta', [(0, 5), (1, -2), (2, 3), (3, 2), (3, -1)])
def test_falling_action(weyl, mu1, beta):
    expected = 1
    for i in range(mu1):
        expected *= beta - i
    assert falling_action(weyl, mu1, beta) == expected


def test_falling_factorial_needs_one_even_coordinate(group2):
    with pytest.raises(ShapeError):
        falling_factorial_element(group2, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([WEYL_ODD1, WEYL_ODD2, LAURENT_ODD1, GROUP2]), st.data())
def test_associativity(sig, data):
    u, v, w = (data.draw(monomials(sig)) for _ in range(3))
    left = mul(sig, mul(sig, e(u), e(v)), e(w))
    right = mul(sig, e(u), mul(sig, e(v), e(w)))
    assert left == right


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([WEYL_ODD1, WEYL_ODD2, LAURENT_ODD1]), st.data())
def test_super_jacobi(sig, data):
    ms = [data.draw(monomials(sig)) for _ in range(3)]
    u, v, w = (e(m) for m in ms)
    sign = (-1) ** (monomial_parity(sig, ms[0]) * monomial_parity(sig, ms[1]))
    assert bracket(sig, u, v) == -sign * bracket(sig, v, u)
    residual = (bracket(sig, u, bracket(sig, v, w))
                - bracket(sig, bracket(sig, u, v), w)
                - sign * bracket(sig, v, bracket(sig, u, w)))
    assert residual == 0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_product_is_bilinear(data):
    sig = WEYL_ODD1
    a, b, c = (data.draw(elements(sig)) for _ in range(3))
    assert mul(sig, a + b, c) == mul(sig, a, c) + mul(sig, b, c)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_amul_supercommutative(data):
    sig = WEYL_ODD2
    a, b = (data.draw(monomials(sig, a_part=True)) for _ in range(2))
    sign = (-1) ** (monomial_parity(sig, a) * monomial_parity(sig, b))
    assert amul(sig, a, b) == sign * amul(sig, b, a)


def test_monomial_ordering_is_canonical(weyl):
    small = Monomial((Fraction(-1),), (0,), (3,))
    large = Monomial((Fraction(1),), (0,), (0,))
    assert sorted([large, small]) == [small, large]
