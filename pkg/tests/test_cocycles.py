"""Tests for the cocycle families, the functional P and lifted cocycles"""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.algebra import Element, bracket, monomial, monomial_parity, mul
from src.cocycles import (Coboundary, FunctionTable, Phi0, PhiGamma, UserTable, coboundary_eval,
                          cocycle_residuals, combination, cyclic_residual, derivation_residual,
                          element_parity, end_relations, lift_cocycle, odd_factor_basis,
                          odd_factor_functional, odd_idempotent, p_functional, restricted_form,
                          split_monomial, tensor_bracket_residual, top_odd_monomial, top_odd_sign,
                          wedge_relations, zero_cocycle)
from src.errors import DomainError, ShapeError
from src.selftest import FAMILIES
from src.signature import validate_signature

from .strategies import monomials

WEYL = validate_signature(FAMILIES['weyl'])
LAURENT = validate_signature(FAMILIES['laurent'])
WEYL_ODD1 = validate_signature(FAMILIES['weyl-odd1'])


def e(m, c=1):
    return Element.from_monomial(m, c)


# -- phi0 ---------------------------------------------------------------------

@pytest.mark.parametrize('alpha', range(-5, 6))
def test_phi0_golden_values(weyl, alpha):
    phi = Phi0(weyl)
    assert phi(monomial(weyl, alpha=(alpha,)), monomial(weyl, alpha=(-alpha,))) == alpha
    left = monomial(weyl, alpha=(alpha,), mu=(1,))
    right = monomial(weyl, alpha=(-alpha,), mu=(1,))
    assert phi(left, right) == -Fraction(alpha ** 3 - alpha, 6)


def test_phi0_needs_matching_group_parts(weyl):
    phi = Phi0(weyl)
    assert phi(monomial(weyl, alpha=(2,)), monomial(weyl, alpha=(-1,))) == 0


def test_phi0_shape(laurent):
    with pytest.raises(ShapeError):
        Phi0(laurent)


def test_phi0_rejects_odd_arguments(weyl_odd1):
    phi = Phi0(weyl_odd1)
    with pytest.raises(ShapeError):
        phi(monomial(weyl_odd1, k=(0, 1)), monomial(weyl_odd1))


def test_phi0_residual_case(weyl):
    phi = Phi0(weyl)
    triple = [monomial(weyl, alpha=(a,)) for a in (1, -1, 0)]
    assert cocycle_residuals(weyl, phi, *triple) == (0, 0)


# -- phi_gamma ----------------------------------------------------------------

@pytest.mark.parametrize('i, j', itertools.product(range(-5, 6), repeat=2))
def test_phigamma_on_even_variables(laurent, i, j):
    phi = PhiGamma(laurent, (0,))
    expected = i if i + j == 0 else 0
    assert phi(monomial(laurent, k=(i,)), monomial(laurent, k=(j,))) == expected


@pytest.mark.parametrize('alpha', range(-3, 4))
def test_phigamma_skew_pair(laurent, alpha):
    phi = PhiGamma(laurent, (0,))
    left = monomial(laurent, alpha=(alpha,), k=(1,))
    right = monomial(laurent, alpha=(-alpha,), k=(-1,))
    assert phi(left, right) == 1
    assert phi(right, left) == -1


def test_phigamma_gamma_must_lie_in_the_group(laurent):
    with pytest.raises(DomainError):
        PhiGamma(laurent, ('1/2',))


def test_phigamma_scalar_gamma_is_padded(laurent_odd1):
    phi = PhiGamma(laurent_odd1, (1,))
    assert phi.gamma == (1, 0)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([0, 1]), st.data())
def test_phigamma_cocycle_identities(gamma, data):
    phi = PhiGamma(LAURENT, (gamma,))
    u, v = (data.draw(monomials(LAURENT)) for _ in range(2))
    w = data.draw(monomials(LAURENT))
    w = type(w)((gamma - u.alpha[0] - v.alpha[0],), w.k, w.mu)
    assert cocycle_residuals(LAURENT, phi, u, v, w) == (0, 0)
    assert cyclic_residual(LAURENT, phi, u, v, w) == 0


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_phi0_cocycle_identities(data):
    phi = Phi0(WEYL)
    u, v = (data.draw(monomials(WEYL)) for _ in range(2))
    w = data.draw(monomials(WEYL))
    w = type(w)((-u.alpha[0] - v.alpha[0],), w.k, w.mu)
    assert cocycle_residuals(WEYL, phi, u, v, w) == (0, 0)
    assert cyclic_residual(WEYL, phi, u, v, w) == 0


# -- split and P ----------------------------------------------------------------

def test_split_monomial(weyl_odd1):
    m = monomial(weyl_odd1, alpha=(3, 0), k=(0, 1), mu=(1, 1))
    even, odd = split_monomial(weyl_odd1, m)
    assert even == monomial(weyl_odd1, alpha=(3, 0), mu=(1, 0))
    assert odd == monomial(weyl_odd1, k=(0, 1), mu=(0, 1))
    assert split_monomial(weyl_odd1, even) == (even, monomial(weyl_odd1))


def test_p_table(weyl_odd1):
    values = {
        monomial(weyl_odd1): 0,
        monomial(weyl_odd1, k=(0, 1)): 0,
        monomial(weyl_odd1, mu=(0, 1)): 0,
        monomial(weyl_odd1, k=(0, 1), mu=(0, 1)): 1,
    }
    for m, expected in values.items():
        assert p_functional(weyl_odd1, e(m)) == expected


@pytest.mark.parametrize('odd', [1, 2, 3])
def test_p_codimension_one(odd):
    sig = validate_signature({'ell': [0, 0, 0, 1, odd], 'generators': [['1'] + ['0'] * odd]})
    functional = odd_factor_functional(sig)
    assert len(odd_factor_basis(sig)) == 4 ** odd
    assert functional(e(top_odd_monomial(sig))) == 1


@pytest.mark.parametrize('odd, sign', [(1, 1), (2, -1), (3, -1)])
def test_top_odd_monomial_squares_to_a_signed_copy(odd, sign):
    sig = validate_signature({'ell': [0, 0, 0, 1, odd], 'generators': [['1'] + ['0'] * odd]})
    u1 = e(top_odd_monomial(sig))
    assert top_odd_sign(sig) == sign
    assert mul(sig, u1, u1) == sign * u1
    idempotent = odd_idempotent(sig)
    assert mul(sig, idempotent, idempotent) == idempotent
    assert idempotent == sign * u1
    assert p_functional(sig, idempotent) == sign


def test_p_twisted_symmetry_and_brackets(weyl_odd1):
    basis = odd_factor_basis(weyl_odd1)
    for a, b in itertools.product(basis, repeat=2):
        sign = (-1) ** (monomial_parity(weyl_odd1, a) * monomial_parity(weyl_odd1, b))
        assert p_functional(weyl_odd1, mul(weyl_odd1, e(a), e(b))) == \
            sign * p_functional(weyl_odd1, mul(weyl_odd1, e(b), e(a)))
        assert p_functional(weyl_odd1, bracket(weyl_odd1, e(a), e(b))) == 0


def test_p_rejects_even_factors(weyl_odd1):
    with pytest.raises(ShapeError):
        p_functional(weyl_odd1, e(monomial(weyl_odd1, alpha=(1, 0))))


def test_p_needs_odd_coordinates(weyl):
    with pytest.raises(ShapeError):
        odd_factor_functional(weyl)


# -- lifted cocycles ----------------------------------------------------------------

@pytest.mark.parametrize('alpha', [-2, 1, 3])
def test_lifted_cases(weyl_odd1, alpha):
    phi = lift_cocycle(weyl_odd1, Phi0(weyl_odd1))
    u1 = top_odd_monomial(weyl_odd1)

    def x(a, k=(0, 0), mu=(0, 0)):
        return monomial(weyl_odd1, alpha=(a, 0), k=k, mu=mu)

    left = mul(weyl_odd1, e(x(alpha)), e(u1))
    right = mul(weyl_odd1, e(x(-alpha)), e(u1))
    assert phi(left, right) == alpha
    assert phi(x(alpha, k=(0, 1)), x(-alpha, k=(0, 1))) == 0
    assert phi(x(alpha, k=(0, 1)), x(-alpha, mu=(0, 1))) == alpha


def test_lift_rejects_other_bases(weyl_odd1):
    with pytest.raises(ShapeError):
        lift_cocycle(weyl_odd1, Coboundary(weyl_odd1, FunctionTable()))


def test_lifted_combination(laurent_odd1):
    base = combination(laurent_odd1, [(1, PhiGamma(laurent_odd1, (0,))), (2, PhiGamma(laurent_odd1, (1,)))])
    phi = lift_cocycle(laurent_odd1, base)
    assert phi.describe().startswith('lifted:')


def test_restricted_form_recovers_base(weyl_odd1):
    base = Phi0(weyl_odd1)
    restricted = restricted_form(weyl_odd1, lift_cocycle(weyl_odd1, base))
    for alpha in range(-3, 4):
        a = monomial(weyl_odd1, alpha=(alpha, 0), mu=(1, 0))
        b = monomial(weyl_odd1, alpha=(-alpha, 0), mu=(2, 0))
        assert restricted(a, b) == base(a, b)


def test_restricted_form_with_two_odd_coordinates(weyl_odd2):
    base = Phi0(weyl_odd2)
    phi = lift_cocycle(weyl_odd2, base)
    restricted = restricted_form(weyl_odd2, phi)
    u1 = e(top_odd_monomial(weyl_odd2))
    for alpha in range(-3, 4):
        a = monomial(weyl_odd2, alpha=(alpha, 0, 0), mu=(1, 0, 0))
        b = monomial(weyl_odd2, alpha=(-alpha, 0, 0), mu=(2, 0, 0))
        assert restricted(a, b) == base(a, b)
        assert phi(mul(weyl_odd2, e(a), u1), mul(weyl_odd2, e(b), u1)) == -base(a, b)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_lifted_cocycle_identities(data):
    sig = WEYL_ODD1
    phi = lift_cocycle(sig, Phi0(sig))
    u, v = (data.draw(monomials(sig)) for _ in range(2))
    w = data.draw(monomials(sig))
    w = type(w)((-u.alpha[0] - v.alpha[0], 0), w.k, w.mu)
    assert cocycle_residuals(sig, phi, u, v, w) == (0, 0)


def test_wedge_and_factorization_relations(weyl_odd2):
    phi = lift_cocycle(weyl_odd2, Phi0(weyl_odd2))
    for alpha in (-2, 1):
        y0 = monomial(weyl_odd2, alpha=(alpha, 0, 0), mu=(1, 0, 0))
        z0 = monomial(weyl_odd2, alpha=(-alpha, 0, 0), mu=(2, 0, 0))
        s2q2 = monomial(weyl_odd2, k=(0, 0, 1), mu=(0, 0, 1))
        y = mul(weyl_odd2, e(y0), e(s2q2))
        z = mul(weyl_odd2, e(z0), e(monomial(weyl_odd2, mu=(0, 0, 1))))
        assert all(value == 0 for value in wedge_relations(weyl_odd2, phi, y, z, 1).values())

        u = e(monomial(weyl_odd2, k=(0, 1, 0)))
        v = e(monomial(weyl_odd2, mu=(0, 1, 1)))
        assert end_relations(weyl_odd2, phi, e(y0), e(z0), u, v) == (0, 0)
        assert tensor_bracket_residual(weyl_odd2, e(y0), e(z0), u, v) == 0


def test_wedge_relations_need_y_and_z_free_of_the_index(weyl_odd2):
    phi = lift_cocycle(weyl_odd2, Phi0(weyl_odd2))
    s1 = monomial(weyl_odd2, k=(0, 1, 0))
    with pytest.raises(DomainError):
        wedge_relations(weyl_odd2, phi, s1, monomial(weyl_odd2), 1)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bracket_is_a_superderivation(data):
    u, v, w = (data.draw(monomials(WEYL_ODD1, bound=1)) for _ in range(3))
    assert not derivation_residual(WEYL_ODD1, u, v, w)


# -- coboundaries and tables --------------------------------------------------------

def test_coboundary_case(weyl):
    table = FunctionTable({monomial(weyl, mu=(1,)): 1})
    for alpha in range(-3, 4):
        u = monomial(weyl, alpha=(alpha,), mu=(1,))
        v = monomial(weyl, alpha=(-alpha,), mu=(1,))
        assert coboundary_eval(weyl, table, u, v) == -2 * alpha


def test_user_table_and_zero(weyl):
    u, v = monomial(weyl, alpha=(1,)), monomial(weyl, alpha=(-1,))
    table = UserTable(weyl, {(u, v): '3/2'})
    assert table(u, v) == Fraction(3, 2)
    assert table(v, u) == 0
    assert zero_cocycle(weyl)(u, v) == 0
    assert combination(weyl, [(2, table), (-1, Phi0(weyl))])(u, v) == 3 - 1


def test_user_table_skew_residual(weyl):
    x = monomial(weyl, alpha=(1,))
    table = UserTable(weyl, {(x, x): 1})
    skew, jacobi = cocycle_residuals(weyl, table, x, x, x)
    assert skew == 2
    assert jacobi == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_coboundary_residuals_vanish(data):
    sig = WEYL_ODD1
    u, v, w = (e(data.draw(monomials(sig, bound=1))) for _ in range(3))
    support = set()
    for a, b in ((u, v), (v, w), (u, w)):
        support.update(bracket(sig, a, b).monomials())
    for outer, inner in ((u, bracket(sig, v, w)), (bracket(sig, u, v), w), (v, bracket(sig, u, w))):
        support.update(bracket(sig, outer, inner).monomials())
    table = FunctionTable({m: i + 1 for i, m in enumerate(sorted(support))})
    assert cocycle_residuals(sig, Coboundary(sig, table), u, v, w) == (0, 0)


def test_element_parity_rejects_mixed(weyl_odd1):
    mixed = e(monomial(weyl_odd1)) + e(monomial(weyl_odd1, k=(0, 1)))
    with pytest.raises(DomainError):
        element_parity(weyl_odd1, mixed)
