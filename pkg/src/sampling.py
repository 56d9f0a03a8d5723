"""
Seeded random monomials, elements and function tables for the verification suites
"""

import random
from fractions import Fraction

from src.algebra import Element, Monomial, monomial_parity
from src.cocycles import FunctionTable
from src.signature import GROUP, LAURENT, ODD, PLAIN, POLY


def make_rng(seed):
    return random.Random(seed)


def random_alpha(rng, sig, bound=3):
    """Integer combination of the generators with coefficients in [-bound, bound]"""
    alpha = [Fraction(0)] * sig.total
    for g in sig.generators:
        c = rng.randint(-bound, bound)
        for i, value in enumerate(g):
            alpha[i] += c * value
    return tuple(alpha)


def _random_k(rng, sig, c, bound):
    zone = sig.zone(c)
    if zone in (PLAIN, POLY):
        return rng.randint(0, bound)
    if zone == LAURENT:
        return rng.randint(-bound, bound)
    if zone == GROUP:
        return 0
    return rng.randint(0, 1)


def random_monomial(rng, sig, bound=3, alpha_bound=3, even_only=False, parity=None):
    """
    Random monomial with exponents and even derivation powers bounded by `bound`

    even_only drops odd coordinates; parity, when given, is enforced by toggling
    one odd derivation (a no-op request when there are no odd coordinates).
    """
    alpha = random_alpha(rng, sig, alpha_bound)
    k = [_random_k(rng, sig, c, bound) for c in range(sig.total)]
    mu = [rng.randint(0, 1) if sig.zone(c) == ODD else rng.randint(0, bound) for c in range(sig.total)]
    if even_only:
        for c in sig.odd_coords:
            k[c] = mu[c] = 0
    m = Monomial(alpha, tuple(k), tuple(mu))
    if parity is not None and sig.odd_count and not even_only and monomial_parity(sig, m) != parity:
        c = rng.choice(list(sig.odd_coords))
        mu[c] = 1 - mu[c]
        m = Monomial(alpha, tuple(k), tuple(mu))
    return m


def random_odd_factor_monomial(rng, sig, avoid=None):
    """Random s^j q^nu; avoid is an odd index (1-based) left out"""
    base_alpha = tuple(Fraction(0) for _ in range(sig.total))
    k = [0] * sig.total
    mu = [0] * sig.total
    for r, c in enumerate(sig.odd_coords, start=1):
        if r != avoid:
            k[c] = rng.randint(0, 1)
            mu[c] = rng.randint(0, 1)
    return Monomial(base_alpha, tuple(k), tuple(mu))


def random_element(rng, sig, terms=2, bound=2, even_only=False, parity=None):
    """Sum of a few random monomials with small integer coefficients"""
    out = {}
    for _ in range(terms):
        m = random_monomial(rng, sig, bound=bound, alpha_bound=bound, even_only=even_only, parity=parity)
        out[m] = out.get(m, 0) + rng.choice((-2, -1, 1, 2, 3))
    return Element(out)


def random_function_table(rng, sig, size=6, bound=2):
    """Finite-support linear function with small integer values"""
    entries = {}
    for _ in range(size):
        entries[random_monomial(rng, sig, bound=bound, alpha_bound=1)] = rng.randint(-3, 3)
    return FunctionTable(entries)
