"""
Monomials and elements of the generalized Weyl superalgebra

A monomial x^{alpha,k} d^mu is stored as three coordinate tuples; the
Grassmann signs live in amul, the derivation action and the product rule,
never inside a monomial.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from config import Config
from src.combinatorics import multi_binomial, stirling_first, stirling_second
from src.errors import DomainError, ShapeError, SignatureMismatchError
from src.signature import GROUP, LAURENT, ODD, PLAIN, POLY

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Monomial:
    """x^{alpha,k} d^mu; ordering is lexicographic by (alpha, k, mu)"""

    alpha: Tuple[Fraction, ...]
    k: Tuple[int, ...]
    mu: Tuple[int, ...]

    @property
    def is_a_part(self):
        """True when there is no derivation factor"""
        return not any(self.mu)

    def a_part(self):
        return Monomial(self.alpha, self.k, (0,) * len(self.mu))

    def __repr__(self):
        return f"Monomial(alpha={[str(a) for a in self.alpha]}, k={list(self.k)}, mu={list(self.mu)})"


def monomial(sig, alpha=None, k=None, mu=None):
    """Build and validate a monomial; omitted parts are zero"""
    n = sig.total
    m = Monomial(
        tuple(Fraction(a) for a in (alpha if alpha is not None else (0,) * n)),
        tuple(int(v) for v in (k if k is not None else (0,) * n)),
        tuple(int(v) for v in (mu if mu is not None else (0,) * n)),
    )
    check_monomial(sig, m)
    return m


def identity_monomial(sig):
    zero = (0,) * sig.total
    return Monomial(tuple(Fraction(0) for _ in zero), zero, zero)


def _k_valid(sig, c, value):
    zone = sig.zone(c)
    if zone in (PLAIN, POLY):
        return value >= 0
    if zone == LAURENT:
        return True
    if zone == GROUP:
        return value == 0
    return value in (0, 1)


def _mu_valid(sig, c, value):
    if sig.is_odd(c):
        return value in (0, 1)
    return value >= 0


def is_valid_monomial(sig, m):
    n = sig.total
    if len(m.alpha) != n or len(m.k) != n or len(m.mu) != n:
        return False
    return (sig.has_group_support(m.alpha)
            and all(_k_valid(sig, c, v) for c, v in enumerate(m.k))
            and all(_mu_valid(sig, c, v) for c, v in enumerate(m.mu)))


def check_monomial(sig, m):
    """
    Raises:
        SignatureMismatchError: coordinate tuples have the wrong length
        ShapeError: alpha, k or mu leave their admissible ranges
    """
    n = sig.total
    if len(m.alpha) != n or len(m.k) != n or len(m.mu) != n:
        raise SignatureMismatchError(f"monomial coordinates must have length {n}")
    if not sig.has_group_support(m.alpha):
        raise ShapeError("alpha is nonzero outside the group coordinates")
    for c, v in enumerate(m.k):
        if not _k_valid(sig, c, v):
            raise ShapeError(f"exponent {v} not allowed at coordinate {c + 1} ({sig.zone(c)})")
    for c, v in enumerate(m.mu):
        if not _mu_valid(sig, c, v):
            raise ShapeError(f"derivation power {v} not allowed at coordinate {c + 1}")


class Element:
    """Finite rational combination of monomials with no zero coefficients"""

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        self._terms: Dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if c:
                self._terms[m] = self._terms.get(m, 0) + c
                if not self._terms[m]:
                    del self._terms[m]

    @classmethod
    def from_monomial(cls, m, coeff=1):
        return cls({m: coeff})

    @classmethod
    def scalar(cls, sig, value):
        return cls({identity_monomial(sig): value})

    def items(self):
        return sorted(self._terms.items())

    def monomials(self):
        return sorted(self._terms)

    def coefficient(self, m):
        return self._terms.get(m, Fraction(0))

    def __iter__(self):
        return iter(self.monomials())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Element(out)

    def __neg__(self):
        return Element({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return Element({m: c * scalar for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        body = ', '.join(f"{c}*{m!r}" for m, c in self.items())
        return f"Element({body})"


def element_sum(elements: Iterable[Element]):
    out = {}
    for e in elements:
        for m, c in e._terms.items():
            out[m] = out.get(m, 0) + c
    return Element(out)


def check_element(sig, e):
    n = sig.total
    for m in e._terms:
        if len(m.alpha) != n or len(m.k) != n or len(m.mu) != n:
            raise SignatureMismatchError(f"element coordinates must have length {n}")


def monomial_parity(sig, m):
    """Number of odd factors (Grassmann variables and odd derivations) mod 2"""
    return sum(m.k[c] + m.mu[c] for c in sig.odd_coords) % 2


def element_parity_parts(sig, e):
    """Split an element into its (even, odd) parts"""
    even, odd = {}, {}
    for m, c in e.items():
        (odd if monomial_parity(sig, m) else even)[m] = c
    return Element(even), Element(odd)


def in_even_subalgebra(sig, m):
    """No Grassmann variable and no odd derivation"""
    return not any(m.k[c] or m.mu[c] for c in sig.odd_coords)


def in_odd_factor(sig, m):
    """Zero group part and no even variable or derivation"""
    return (not any(m.alpha)
            and not any(m.k[c] or m.mu[c] for c in range(sig.even_count)))


def avoids_odd_index(sig, m, r):
    """No s_r and no odd derivation r (r is 1-based among the odd indices)"""
    c = sig.even_count + r - 1
    return not (m.k[c] or m.mu[c])


def _a_product(sig, alpha1, k1, alpha2, k2):
    """Signed product of two A-monomials, or None when it vanishes"""
    k = tuple(a + b for a, b in zip(k1, k2))
    odd = sig.odd_coords
    if any(k[c] > 1 for c in odd):
        return None
    exponent = 0
    for q in odd:
        if k1[q]:
            exponent += sum(k2[p] for p in range(odd.start, q))
    alpha = tuple(a + b for a, b in zip(alpha1, alpha2))
    return (-1) ** exponent, alpha, k


def amul(sig, a, b):
    """
    Product in the semigroup superalgebra A

    Raises:
        ShapeError: either argument carries a derivation factor
    """
    if not a.is_a_part or not b.is_a_part:
        raise ShapeError("amul takes monomials without derivation factors")
    result = _a_product(sig, a.alpha, a.k, b.alpha, b.k)
    if result is None:
        return Element()
    sign, alpha, k = result
    return Element.from_monomial(Monomial(alpha, k, a.mu), sign)


def _partial_terms(sig, c, alpha, k):
    """Action of d_c on x^{alpha,k} as a list of (coeff, alpha, k)"""
    zone = sig.zone(c)
    terms = []
    if zone in (POLY, LAURENT, GROUP) and alpha[c]:
        terms.append((alpha[c], alpha, k))
    if k[c] and zone != GROUP:
        lowered = k[:c] + (k[c] - 1,) + k[c + 1:]
        if zone == ODD:
            sign = (-1) ** sum(k[sig.even_count:c])
            terms.append((sign, alpha, lowered))
        else:
            terms.append((k[c], alpha, lowered))
    return terms


@lru_cache(maxsize=Config.CACHE_SIZE)
def _multi_partial(sig, lam, alpha, k):
    """d^lam applied to x^{alpha,k}, innermost (last) coordinate first"""
    current = {(alpha, k): Fraction(1)}
    for c in reversed(range(sig.total)):
        for _ in range(lam[c]):
            nxt = {}
            for (a, kk), coeff in current.items():
                for t, a2, k2 in _partial_terms(sig, c, a, kk):
                    key = (a2, k2)
                    nxt[key] = nxt.get(key, 0) + coeff * t
            current = {key: v for key, v in nxt.items() if v}
            if not current:
                return ()
    return tuple(current.items())


def apply_partial(sig, p, a):
    """
    Apply the derivation d_p (p is 1-based) to an A-monomial

    Raises:
        DomainError: p out of range
        ShapeError: a carries a derivation factor
    """
    if not 1 <= p <= sig.total:
        raise DomainError(f"derivation index {p} out of range 1..{sig.total}")
    if not a.is_a_part:
        raise ShapeError("apply_partial takes a monomial without derivation factors")
    return Element({Monomial(alpha, k, a.mu): c for c, alpha, k in _partial_terms(sig, p - 1, a.alpha, a.k)})


def apply_multi_derivation(sig, lam, a):
    """d_1^{lam_1}(d_2^{lam_2}(...(d_l^{lam_l}(a)))) for an A-monomial a"""
    if not a.is_a_part:
        raise ShapeError("apply_multi_derivation takes a monomial without derivation factors")
    lam = tuple(lam)
    if len(lam) != sig.total:
        raise SignatureMismatchError(f"derivation index must have length {sig.total}")
    return Element({Monomial(alpha, k, a.mu): c for (alpha, k), c in _multi_partial(sig, lam, a.alpha, a.k)})


@lru_cache(maxsize=Config.CACHE_SIZE)
def _monomial_product(sig, m1, m2):
    """
    u d^mu . v d^nu as a tuple of (monomial, coeff)

    The sign of the lam-term collects three moves of odd derivations: the
    unused part mu-lam passes v, passes the used odd derivations of larger
    index, and is merged into d^nu.
    """
    odd = sig.odd_coords
    odd_pairs = [(p, q) for p in odd for q in odd if p < q]
    g_v = sum(m2.k[c] for c in odd) % 2
    out = {}

    for lam in itertools.product(*(range(m + 1) for m in m1.mu)):
        rest = tuple(m - l for m, l in zip(m1.mu, lam))
        new_mu = tuple(r + n for r, n in zip(rest, m2.mu))
        if any(new_mu[c] > 1 for c in odd):
            continue
        exponent = g_v * sum(rest[c] for c in odd)
        exponent += sum(rest[p] * lam[q] + rest[q] * m2.mu[p] for p, q in odd_pairs)
        coeff = multi_binomial(m1.mu, lam) * (-1) ** exponent

        for (alpha, k), c in _multi_partial(sig, lam, m2.alpha, m2.k):
            product = _a_product(sig, m1.alpha, m1.k, alpha, k)
            if product is None:
                continue
            sign, alpha2, k2 = product
            key = Monomial(alpha2, k2, new_mu)
            out[key] = out.get(key, 0) + coeff * c * sign

    return tuple((m, c) for m, c in out.items() if c)


def mul(sig, e1, e2):
    """Associative product of two elements"""
    check_element(sig, e1)
    check_element(sig, e2)
    out = {}
    for m1, c1 in e1._terms.items():
        for m2, c2 in e2._terms.items():
            for m, c in _monomial_product(sig, m1, m2):
                out[m] = out.get(m, 0) + c1 * c2 * c
    return Element(out)


@lru_cache(maxsize=Config.CACHE_SIZE)
def _monomial_bracket(sig, m1, m2):
    sign = (-1) ** (monomial_parity(sig, m1) * monomial_parity(sig, m2))
    out = dict(_monomial_product(sig, m1, m2))
    for m, c in _monomial_product(sig, m2, m1):
        out[m] = out.get(m, 0) - sign * c
    return tuple((m, c) for m, c in out.items() if c)


def bracket(sig, e1, e2):
    """Lie superbracket, extended bilinearly over parity-homogeneous monomials"""
    check_element(sig, e1)
    check_element(sig, e2)
    out = {}
    for m1, c1 in e1._terms.items():
        for m2, c2 in e2._terms.items():
            for m, c in _monomial_bracket(sig, m1, m2):
                out[m] = out.get(m, 0) + c1 * c2 * c
    return Element(out)


class Order(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def deriv_order_key(mu):
    """Sort key of the total order on derivation indices: level, then lexicographic"""
    return sum(mu), tuple(mu)


def compare_deriv_order(mu, nu):
    a, b = deriv_order_key(mu), deriv_order_key(nu)
    if a < b:
        return Order.LESS
    if a > b:
        return Order.GREATER
    return Order.EQUAL


def _first_derivation_shape(sig):
    if sig.even_count != 1:
        raise ShapeError("falling factorials of d_1 need exactly one even coordinate")


def falling_factorial_element(sig, mu1):
    """[d_1]_mu = d_1(d_1 - 1)...(d_1 - mu + 1) expanded in powers of d_1"""
    _first_derivation_shape(sig)
    if mu1 < 0:
        raise DomainError("falling factorial order must be non-negative")
    base = identity_monomial(sig)
    terms = {}
    for power in range(mu1 + 1):
        c = stirling_first(mu1, power)
        if c:
            terms[Monomial(base.alpha, base.k, (power,) + base.mu[1:])] = c
    return Element(terms)


def to_falling_basis(sig, m):
    """Coefficients c_k with d_1^m = sum_k c_k [d_1]_k"""
    if m < 0:
        raise DomainError("power must be non-negative")
    return [(k, stirling_second(m, k)) for k in range(m + 1) if stirling_second(m, k)]


def falling_action(sig, mu1, beta):
    """Coefficient of x^beta in [d_1]_mu . x^beta, the falling factorial of beta"""
    _first_derivation_shape(sig)
    if sig.ell[0]:
        raise ShapeError("the first coordinate carries no group part")
    target = monomial(sig, alpha=(beta,) + (0,) * (sig.total - 1))
    product = mul(sig, falling_factorial_element(sig, mu1), Element.from_monomial(target))
    return product.coefficient(target)
