"""
Normalization of a 2-cocycle psi: the linear function f with phi = psi - psi_f
vanishing against t_p d_p, d_p and s_p q_p

f is defined monomial by monomial by a recursion that descends either in the
absolute value of one Laurent exponent or in the total order of derivation
indices. Each recursive call checks that it descends.
"""

import itertools
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from config import Config
from src.algebra import Monomial, deriv_order_key, identity_monomial
from src.cocycles import Coboundary, Combination
from src.combinatorics import multi_binomial
from src.errors import InternalConsistencyError, MissingTauError
from src.signature import check_tau, to_fraction

logger = logging.getLogger(__name__)


def _bump(vector, c, delta):
    return vector[:c] + (vector[c] + delta,) + vector[c + 1:]


class NormalizationSession:
    """
    Memoized evaluation of the normalizing function f for one cocycle and one tau

    The session behaves as a function table (value(monomial)), so
    Coboundary(sig, session) is psi_f.
    """

    def __init__(self, sig, source, tau=None, max_depth=None):
        self.sig = sig
        self.source = source
        self.max_depth = Config.NORMALIZE_MAX_DEPTH if max_depth is None else max_depth
        if tau is None:
            tau = sig.tau
        self.tau = tuple(to_fraction(t) for t in tau) if tau else None
        if self.tau is not None:
            check_tau(sig, self.tau)
        self.memo: Dict[Monomial, Fraction] = {}
        self._lock = threading.RLock()
        self.calls = 0

    # -- building blocks ---------------------------------------------------

    def _unit_monomial(self, k_coord=None, mu_coord=None, alpha=None):
        base = identity_monomial(self.sig)
        k, mu = base.k, base.mu
        if k_coord is not None:
            k = _bump(k, k_coord, 1)
        if mu_coord is not None:
            mu = _bump(mu, mu_coord, 1)
        return Monomial(alpha if alpha is not None else base.alpha, k, mu)

    def _psi(self, left, right):
        return self.source.pair(left, right)

    def _require_tau(self):
        if self.tau is None or not any(self.tau):
            raise MissingTauError("this normalization step needs tau; the session has none")
        return self.tau

    # -- recursion ---------------------------------------------------------

    def value(self, m):
        return self.normalize(m)

    def normalize(self, m):
        with self._lock:
            return self._f(m, 0)

    def _f(self, m, depth):
        cached = self.memo.get(m)
        if cached is not None:
            return cached
        if depth > self.max_depth:
            raise InternalConsistencyError(
                f"normalization recursion exceeded depth {self.max_depth}")
        self.calls += 1
        value = self._compute(m, depth)
        self.memo[m] = value
        return value

    def _recurse(self, parent, child, depth, descent_key):
        if not descent_key(child) < descent_key(parent):
            raise InternalConsistencyError(
                f"normalization recursion does not descend: {parent!r} -> {child!r}")
        return self._f(child, depth + 1)

    def _compute(self, m, depth):
        sig = self.sig
        group = [c for c in sig.group_coords if m.alpha[c] != 0]
        if group:
            return self._group_case(m, group[0], depth)

        even_k = [c for c in range(sig.partial(3)) if m.k[c] != 0]
        if even_k:
            return self._even_variable_case(m, even_k[0])

        odd_k = [c for c in sig.odd_coords if m.k[c] != 0]
        if odd_k:
            r = odd_k[0]
            if m.mu[r] == 0:
                return self._psi(self._unit_monomial(k_coord=r, mu_coord=r), m)
            return self._derivation_case(m, depth)

        return self._derivation_case(m, depth)

    def _group_case(self, m, q, depth):
        """Nonzero group part; q is the first coordinate where it is nonzero"""
        alpha_q, k_q, mu_q = m.alpha[q], m.k[q], m.mu[q]
        d_q = self._unit_monomial(mu_coord=q)

        def key(x):
            return abs(x.k[q])

        if k_q >= 0:
            value = self._psi(d_q, m)
            if k_q:
                lower = Monomial(m.alpha, _bump(m.k, q, -1), m.mu)
                value -= k_q * self._recurse(m, lower, depth, key)
            return value / alpha_q

        upper = Monomial(m.alpha, _bump(m.k, q, 1), m.mu)
        f_upper = self._recurse(m, upper, depth, key)
        if k_q == -1:
            t_d_q = self._unit_monomial(k_coord=q, mu_coord=q)
            return -(self._psi(t_d_q, m) - alpha_q * f_upper) / (1 + mu_q)
        return (self._psi(d_q, upper) - alpha_q * f_upper) / (k_q + 1)

    def _even_variable_case(self, m, r):
        """Zero group part with some even variable; r is the first such coordinate"""
        i_r, mu_r = m.k[r], m.mu[r]
        if i_r != mu_r:
            t_d_r = self._unit_monomial(k_coord=r, mu_coord=r)
            return self._psi(t_d_r, m) / (i_r - mu_r)
        d_r = self._unit_monomial(mu_coord=r)
        raised = Monomial(m.alpha, _bump(m.k, r, 1), m.mu)
        return self._psi(d_r, raised) / (i_r + 1)

    def _derivation_case(self, m, depth):
        """Monomials s^j d^mu whose leading odd variable (if any) is paired with its derivation"""
        sig = self.sig
        if sig.partial(3):
            t_1 = Monomial(m.alpha, _bump(m.k, 0, 1), m.mu)
            return self._psi(self._unit_monomial(mu_coord=0), t_1)

        tau = self._require_tau()
        e = sig.even_count - 1
        nu = _bump(m.mu, e, 1)
        neg_tau = tuple(-t for t in tau)
        value = self._psi(Monomial(tau, identity_monomial(sig).k, identity_monomial(sig).mu),
                          Monomial(neg_tau, m.k, nu))

        def key(x):
            return deriv_order_key(x.mu)

        even_ranges = [range(nu[c] + 1) for c in range(sig.even_count)]
        odd_zero = (0,) * sig.odd_count
        for head in itertools.product(*even_ranges):
            lam = head + odd_zero
            if not any(lam) or (sum(lam) == 1 and lam[e] == 1):
                continue
            weight = multi_binomial(nu, lam)
            for c in range(sig.even_count):
                weight *= tau[c] ** lam[c]
            if not weight:
                continue
            child = Monomial(m.alpha, m.k, tuple(a - b for a, b in zip(nu, lam)))
            value += weight * self._recurse(m, child, depth, key)

        return -value / (tau[e] * (m.mu[e] + 1))

    # -- derived forms -----------------------------------------------------

    def table(self):
        return dict(self.memo)

    def normalized_cocycle(self):
        """phi = psi - psi_f"""
        return Combination(self.sig, [(1, self.source), (-1, Coboundary(self.sig, self))])


def normalize_f(session, m):
    return session.normalize(m)


@dataclass(frozen=True)
class Violation:
    """A nonzero value phi(generator, monomial) where normalization requires zero"""

    generator: str
    monomial: Monomial
    value: Fraction


def normalization_generators(sig):
    """(name, monomial) for t_p d_p (p <= l3'), d_p (all p) and s_p q_p (p <= l5)"""
    base = identity_monomial(sig)
    out = []
    for c in range(sig.partial(3)):
        out.append((f"t{c + 1}d{c + 1}", Monomial(base.alpha, _bump(base.k, c, 1), _bump(base.mu, c, 1))))
    for c in range(sig.total):
        name = f"d{c + 1}" if not sig.is_odd(c) else f"q{c - sig.even_count + 1}"
        out.append((name, Monomial(base.alpha, base.k, _bump(base.mu, c, 1))))
    for r, c in enumerate(sig.odd_coords, start=1):
        out.append((f"s{r}q{r}", Monomial(base.alpha, _bump(base.k, c, 1), _bump(base.mu, c, 1))))
    return out


def normalized_check(sig, phi, samples) -> List[Violation]:
    """Every nonzero value of phi against the normalization generators on the samples"""
    violations = []
    generators = normalization_generators(sig)
    for m in samples:
        for name, g in generators:
            value = phi.pair(g, m)
            if value:
                violations.append(Violation(name, m, value))
    if violations:
        logger.debug("normalized_check: %d violations on %d samples", len(violations), len(samples))
    return violations
