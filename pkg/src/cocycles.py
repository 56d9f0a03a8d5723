"""
2-cocycles on the superalgebra: the explicit forms phi0 and phi_gamma, the
functional P on the odd factor, lifted forms, coboundaries, user tables and
the residuals that check the cocycle identities on concrete arguments
"""

import itertools
import logging
import threading
from collections import OrderedDict
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Tuple

from config import Config
from src.algebra import (Element, Monomial, avoids_odd_index, bracket, check_element, identity_monomial,
                         in_even_subalgebra, in_odd_factor, monomial_parity, mul)
from src.combinatorics import binomial, power_over_factorial, stirling_second
from src.errors import DomainError, InternalConsistencyError, ShapeError
from src.linear import EchelonBasis, solve_exact_linear
from src.signature import gamma_membership, to_fraction

logger = logging.getLogger(__name__)


def as_element(value):
    if isinstance(value, Monomial):
        return Element.from_monomial(value)
    return value


def element_parity(sig, e):
    """
    Parity of a homogeneous element (the zero element counts as even)

    Raises:
        DomainError: the element mixes parities
    """
    parities = {monomial_parity(sig, m) for m in as_element(e)}
    if len(parities) > 1:
        raise DomainError("argument is not parity-homogeneous; split it first")
    return parities.pop() if parities else 0


class FunctionTable:
    """A linear function on W given by its values on finitely many monomials"""

    def __init__(self, entries=None):
        self.entries: Dict[Monomial, Fraction] = {
            m: Fraction(v) for m, v in (entries or {}).items() if v != 0
        }

    def value(self, m):
        return self.entries.get(m, Fraction(0))

    def apply(self, e):
        return sum((c * self.value(m) for m, c in as_element(e).items()), Fraction(0))

    def __len__(self):
        return len(self.entries)


class Cocycle:
    """Bilinear form evaluated monomial by monomial"""

    kind = 'cocycle'

    def __init__(self, sig):
        self.sig = sig

    def pair(self, m1, m2):
        raise NotImplementedError

    def __call__(self, u, v):
        u, v = as_element(u), as_element(v)
        check_element(self.sig, u)
        check_element(self.sig, v)
        total = Fraction(0)
        for m1, c1 in u.items():
            for m2, c2 in v.items():
                value = self.pair(m1, m2)
                if value:
                    total += c1 * c2 * value
        return total

    def describe(self):
        return self.kind


def _require_even(sig, m):
    if not in_even_subalgebra(sig, m):
        raise ShapeError("argument has odd coordinates; expected an element of the even subalgebra")


class Phi0(Cocycle):
    """
    phi0(x^a [d]_m, x^b [d]_n) = delta_{a+b,0} (-1)^m m! n! binom(a+m, m+n+1)

    Standard powers of d are rewritten in the falling-factorial basis first.
    """

    kind = 'phi0'

    def __init__(self, sig):
        super().__init__(sig)
        if sig.ell[:4] != (0, 0, 0, 1):
            raise ShapeError("phi0 needs a single even coordinate of group type (l1=l2=l3=0, l4=1)")

    def pair(self, m1, m2):
        _require_even(self.sig, m1)
        _require_even(self.sig, m2)
        alpha, beta = m1.alpha[0], m2.alpha[0]
        if alpha + beta != 0:
            return Fraction(0)
        m, n = m1.mu[0], m2.mu[0]
        total = Fraction(0)
        for a in range(m + 1):
            sa = stirling_second(m, a)
            if not sa:
                continue
            for b in range(n + 1):
                sb = stirling_second(n, b)
                if sb:
                    total += sa * sb * (-1) ** a * factorial(a) * factorial(b) * binomial(alpha + a, a + b + 1)
        return total


class PhiGamma(Cocycle):
    """The family phi_gamma on the signature with a single Laurent coordinate"""

    kind = 'phigamma'

    def __init__(self, sig, gamma):
        super().__init__(sig)
        if sig.ell[:4] != (0, 0, 1, 0):
            raise ShapeError("phi_gamma needs a single even coordinate of Laurent type (l1=l2=l4=0, l3=1)")
        gamma = tuple(to_fraction(g) for g in gamma)
        if len(gamma) == 1 and sig.total > 1:
            gamma = gamma + (Fraction(0),) * (sig.total - 1)
        if not gamma_membership(sig, gamma):
            raise DomainError(f"gamma {[str(g) for g in gamma]} is not in the group")
        self.gamma = gamma

    def describe(self):
        return f"phigamma:{self.gamma[0]}"

    def pair(self, m1, m2):
        _require_even(self.sig, m1)
        _require_even(self.sig, m2)
        gamma = self.gamma[0]
        alpha, i, mu = m1.alpha[0], m1.k[0], m1.mu[0]
        beta, j, nu = m2.alpha[0], m2.k[0], m2.mu[0]
        if alpha + beta != gamma:
            return Fraction(0)
        top = mu + nu + 1
        total = Fraction(0)
        for s in range(top + 1):
            # factorial guards run before powers, so 0 is never raised to a negative power
            gamma_part = power_over_factorial(gamma, s - i - j - 1)
            if not gamma_part:
                continue
            total += binomial(i, s) * power_over_factorial(alpha, top - s) * gamma_part
        return (-1) ** mu * factorial(mu) * factorial(nu) * total


def split_monomial(sig, m):
    """Split x^{a,k} d^mu into its even factor and its odd factor"""
    odd = sig.odd_coords
    m0 = Monomial(m.alpha,
                  tuple(0 if c in odd else v for c, v in enumerate(m.k)),
                  tuple(0 if c in odd else v for c, v in enumerate(m.mu)))
    m1 = Monomial(tuple(Fraction(0) for _ in m.alpha),
                  tuple(v if c in odd else 0 for c, v in enumerate(m.k)),
                  tuple(v if c in odd else 0 for c, v in enumerate(m.mu)))
    return m0, m1


def odd_factor_basis(sig):
    """The 4^l5 monomials s^j d^nu of the odd factor, in canonical order"""
    base = identity_monomial(sig)
    start = sig.even_count
    out = []
    for bits in itertools.product((0, 1), repeat=2 * sig.odd_count):
        k = list(base.k)
        mu = list(base.mu)
        for r in range(sig.odd_count):
            k[start + r] = bits[2 * r]
            mu[start + r] = bits[2 * r + 1]
        out.append(Monomial(base.alpha, tuple(k), tuple(mu)))
    return sorted(out)


def top_odd_monomial(sig):
    """u1 = s_1...s_l5 q_1...q_l5"""
    base = identity_monomial(sig)
    k = tuple(1 if sig.is_odd(c) else 0 for c in range(sig.total))
    return Monomial(base.alpha, k, k)


def top_odd_sign(sig):
    """The sign in u1 u1 = (-1)^(l5(l5-1)/2) u1"""
    return -1 if sig.odd_count % 4 in (2, 3) else 1


def odd_idempotent(sig):
    """e = (s_1 q_1)...(s_l5 q_l5); e e = e and e = top_odd_sign(sig) u1"""
    base = identity_monomial(sig)
    e = Element.from_monomial(base)
    for c in sig.odd_coords:
        e = mul(sig, e, Element.from_monomial(Monomial(base.alpha, sig.unit(c), sig.unit(c))))
    return e


class OddFactorFunctional:
    """
    The linear functional P on the odd factor: P(u1) = 1, P([W1, W1]) = 0

    Values on the basis are solved once; construction verifies that the
    bracket span has codimension one and misses u1.
    """

    def __init__(self, sig):
        if sig.odd_count < 1:
            raise ShapeError("the functional P needs at least one odd coordinate (l5 >= 1)")
        self.sig = sig
        basis = odd_factor_basis(sig)
        index = {m: i for i, m in enumerate(basis)}
        u1 = top_odd_monomial(sig)

        span = EchelonBasis()
        for a, b in itertools.product(basis, repeat=2):
            br = bracket(sig, Element.from_monomial(a), Element.from_monomial(b))
            span.add({index[m]: c for m, c in br.items()})

        n = len(basis)
        u1_vector = {index[u1]: 1}
        if span.rank != n - 1 or u1_vector in span:
            raise InternalConsistencyError(
                f"bracket span of the odd factor has rank {span.rank} (expected {n - 1}) "
                f"or contains u1; the product sign rules are inconsistent")

        rows = [dict(vector) for vector in span.vectors()] + [u1_vector]
        rhs = [0] * span.rank + [1]
        solved = solve_exact_linear(rows, rhs)
        if not solved.consistent or solved.rank != n:
            raise InternalConsistencyError("functional P is not uniquely determined")

        self.values = {m: solved.solution.get(i, Fraction(0)) for m, i in index.items()}
        logger.debug("functional P solved on %d basis monomials", n)

    def __call__(self, e):
        total = Fraction(0)
        for m, c in as_element(e).items():
            if not in_odd_factor(self.sig, m):
                raise ShapeError("P is defined on the odd factor only (zero group part, no even factors)")
            total += c * self.values[m]
        return total


_functionals: "OrderedDict[object, OddFactorFunctional]" = OrderedDict()
_functionals_lock = threading.Lock()


def odd_factor_functional(sig):
    """OddFactorFunctional for a signature, from a small least-recently-used cache"""
    with _functionals_lock:
        functional = _functionals.pop(sig, None) or OddFactorFunctional(sig)
        _functionals[sig] = functional
        while len(_functionals) > Config.FUNCTIONAL_CACHE_SIZE:
            _functionals.popitem(last=False)
        return functional


def p_functional(sig, e):
    return odd_factor_functional(sig)(e)


class Lifted(Cocycle):
    """phi~(a u, b v) = phi(a, b) P(u v) for even factors a, b and odd factors u, v"""

    kind = 'lifted'

    def __init__(self, sig, base):
        super().__init__(sig)
        if not _liftable(base):
            raise ShapeError("only phi0, phi_gamma and combinations of them can be lifted")
        if base.sig != sig:
            raise ShapeError("base cocycle belongs to another signature")
        self.base = base
        self.functional = odd_factor_functional(sig)

    def describe(self):
        return f"lifted:{self.base.describe()}"

    def pair(self, m1, m2):
        a, u = split_monomial(self.sig, m1)
        b, v = split_monomial(self.sig, m2)
        value = self.base.pair(a, b)
        if not value:
            return Fraction(0)
        return value * self.functional(mul(self.sig, Element.from_monomial(u), Element.from_monomial(v)))


def _liftable(base):
    if isinstance(base, (Phi0, PhiGamma)):
        return True
    if isinstance(base, Combination):
        return all(_liftable(part) for _, part in base.parts)
    return False


def lift_cocycle(sig, base):
    return Lifted(sig, base)


class Coboundary(Cocycle):
    """psi_f(u, v) = f([u, v]) for any f offering value(monomial)"""

    kind = 'coboundary'

    def __init__(self, sig, table):
        super().__init__(sig)
        self.table = table

    def pair(self, m1, m2):
        br = bracket(self.sig, Element.from_monomial(m1), Element.from_monomial(m2))
        return sum((c * self.table.value(m) for m, c in br.items()), Fraction(0))


def coboundary_eval(sig, table, u, v):
    return Coboundary(sig, table)(u, v)


class UserTable(Cocycle):
    """A form given by its values on finitely many monomial pairs"""

    kind = 'table'

    def __init__(self, sig, pairs):
        super().__init__(sig)
        self.pairs = {key: Fraction(value) for key, value in pairs.items() if value != 0}

    def pair(self, m1, m2):
        return self.pairs.get((m1, m2), Fraction(0))


class Combination(Cocycle):
    """sum_i c_i psi_i; the empty combination is the zero form"""

    kind = 'combination'

    def __init__(self, sig, parts: Iterable[Tuple[object, Cocycle]] = ()):
        super().__init__(sig)
        self.parts = [(Fraction(c), psi) for c, psi in parts]

    def describe(self):
        if not self.parts:
            return 'zero'
        return ' + '.join(f"{c}*{psi.describe()}" for c, psi in self.parts)

    def pair(self, m1, m2):
        return sum((c * psi.pair(m1, m2) for c, psi in self.parts), Fraction(0))


def combination(sig, parts):
    return Combination(sig, parts)


def zero_cocycle(sig):
    return Combination(sig, [])


class RestrictedForm(Cocycle):
    """
    a, b -> phi~(a, b u1) on the even subalgebra, which is the base cocycle

    phi~(a u1, b u1) is top_odd_sign(sig) times the same value.
    """

    kind = 'restricted'

    def __init__(self, sig, lifted):
        super().__init__(sig)
        self.lifted = lifted
        self.u1 = Element.from_monomial(top_odd_monomial(sig))

    def pair(self, m1, m2):
        b = mul(self.sig, Element.from_monomial(m2), self.u1)
        return self.lifted(Element.from_monomial(m1), b)


def restricted_form(sig, lifted):
    return RestrictedForm(sig, lifted)


def cocycle_residuals(sig, psi, u, v, w):
    """
    Residuals of super-skew-symmetry and of the cocycle identity on one triple

    Returns:
        (psi(u,v) + (-1)^{g(u)g(v)} psi(v,u),
         psi(u,[v,w]) - psi([u,v],w) - (-1)^{g(u)g(v)} psi(v,[u,w]))
    """
    u, v, w = as_element(u), as_element(v), as_element(w)
    gu, gv = element_parity(sig, u), element_parity(sig, v)
    element_parity(sig, w)
    sign = (-1) ** (gu * gv)
    skew = psi(u, v) + sign * psi(v, u)
    jacobi = (psi(u, bracket(sig, v, w))
              - psi(bracket(sig, u, v), w)
              - sign * psi(v, bracket(sig, u, w)))
    return skew, jacobi


def cyclic_residual(sig, phi, a, b, c):
    """phi(a, bc) + phi(b, ca) + phi(c, ab) with the associative product"""
    a, b, c = as_element(a), as_element(b), as_element(c)
    return phi(a, mul(sig, b, c)) + phi(b, mul(sig, c, a)) + phi(c, mul(sig, a, b))


def _odd_generators(sig, p):
    if not 1 <= p <= sig.odd_count:
        raise DomainError(f"odd index {p} out of range 1..{sig.odd_count}")
    base = identity_monomial(sig)
    unit = sig.unit(sig.even_count + p - 1)
    s = Element.from_monomial(Monomial(base.alpha, unit, base.mu))
    q = Element.from_monomial(Monomial(base.alpha, base.k, unit))
    return s, q


def wedge_relations(sig, phi, y, z, p):
    """
    Values of a lifted form on y, z free of s_p and q_p, multiplied on the right
    by s_p, q_p or s_p q_p. Every entry of the returned map must be zero.
    """
    y, z = as_element(y), as_element(z)
    s, q = _odd_generators(sig, p)
    if not all(avoids_odd_index(sig, m, p) for m in itertools.chain(y.monomials(), z.monomials())):
        raise DomainError(f"y and z must not contain s_{p} or q_{p}")
    sq = mul(sig, s, q)
    ys, yq, ysq = mul(sig, y, s), mul(sig, y, q), mul(sig, y, sq)
    zs, zq, zsq = mul(sig, z, s), mul(sig, z, q), mul(sig, z, sq)
    gz = element_parity(sig, z)
    return {
        'y,z': phi(y, z),
        'ys,z': phi(ys, z),
        'ys,zs': phi(ys, zs),
        'yq,z': phi(yq, z),
        'yq,zq': phi(yq, zq),
        'ysq,zs': phi(ysq, zs),
        'ysq,zq': phi(ysq, zq),
        'ys,zq=y,zsq': (-1) ** gz * phi(ys, zq) - phi(y, zsq),
        'y,zsq=ysq,zsq': phi(y, zsq) - phi(ysq, zsq),
    }


def end_relations(sig, phi, a, b, u, v):
    """(phi~(a, b[u,v]), phi~(au, bv) - phi~(a, b uv)) for a, b even and u, v odd-factor"""
    a, b, u, v = (as_element(x) for x in (a, b, u, v))
    first = phi(a, mul(sig, b, bracket(sig, u, v)))
    second = phi(mul(sig, a, u), mul(sig, b, v)) - phi(a, mul(sig, b, mul(sig, u, v)))
    return first, second


def tensor_bracket_residual(sig, a, b, u, v):
    """[au, bv] - ([a,b]uv + ba[u,v]); zero for a, b even and u, v in the odd factor"""
    a, b, u, v = (as_element(x) for x in (a, b, u, v))
    left = bracket(sig, mul(sig, a, u), mul(sig, b, v))
    right = (mul(sig, mul(sig, bracket(sig, a, b), u), v)
             + mul(sig, mul(sig, b, a), bracket(sig, u, v)))
    return left - right


def derivation_residual(sig, u, v, w):
    """[u, vw] - [u,v]w - (-1)^{g(u)g(v)} v[u,w]"""
    u, v, w = as_element(u), as_element(v), as_element(w)
    sign = (-1) ** (element_parity(sig, u) * element_parity(sig, v))
    return (bracket(sig, u, mul(sig, v, w))
            - mul(sig, bracket(sig, u, v), w)
            - sign * mul(sig, v, bracket(sig, u, w)))
