"""
Exact combinatorial helpers: generalized binomials, factorial reciprocals,
zero-base powers and Stirling numbers of both kinds
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial


def binomial(top, bottom):
    """
    Generalized binomial top(top-1)...(top-bottom+1)/bottom!

    Args:
        top: any rational (or integer) upper argument
        bottom: integer lower argument; negative gives 0

    Returns:
        Fraction
    """
    if bottom < 0:
        return Fraction(0)
    top = Fraction(top)
    value = Fraction(1)
    for i in range(bottom):
        value *= top - i
    return value / factorial(bottom)


def multi_binomial(mu, lam):
    """Product of coordinatewise binomials binom(mu_p, lam_p)"""
    value = 1
    for m, l in zip(mu, lam):
        if l < 0 or l > m:
            return 0
        value *= binomial(m, l)
    return value


def reciprocal_factorial(k):
    """1/k!, understood as zero for k < 0"""
    if k < 0:
        return Fraction(0)
    return Fraction(1, factorial(k))


def power_over_factorial(base, exponent):
    """
    base^exponent / exponent! with the zero-base limit convention

    The factorial guard runs first: a negative exponent yields 0 before any
    power is formed, so 0 is never raised to a negative power. A zero base
    gives 1 at exponent 0 and 0 at positive exponents.
    """
    if exponent < 0:
        return Fraction(0)
    return Fraction(base) ** exponent / factorial(exponent)


def falling_factorial(x, n):
    """x(x-1)...(x-n+1)"""
    value = Fraction(1)
    for i in range(n):
        value *= Fraction(x) - i
    return value


@lru_cache(maxsize=None)
def stirling_first(n, k):
    """Signed Stirling number of the first kind, s(n+1,k) = s(n,k-1) - n s(n,k)"""
    if n < 0 or k < 0:
        raise ValueError("Stirling numbers need non-negative arguments")
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return stirling_first(n - 1, k - 1) - (n - 1) * stirling_first(n - 1, k)


@lru_cache(maxsize=None)
def stirling_second(n, k):
    """Stirling number of the second kind, S(n,k) = k S(n-1,k) + S(n-1,k-1)"""
    if n < 0 or k < 0:
        raise ValueError("Stirling numbers need non-negative arguments")
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return k * stirling_second(n - 1, k) + stirling_second(n - 1, k - 1)
