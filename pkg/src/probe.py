"""
Triviality probes: is a cocycle a coboundary on a finite truncation?

Every unordered pair (u, v) of truncation monomials contributes the equation
f([u, v]) = psi(u, v) in the unknown values of f on the bracket monomials. An
inconsistent system certifies that psi is not a coboundary.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config import Config
from src.algebra import Element, Monomial, bracket
from src.cocycles import FunctionTable
from src.errors import DomainError, TruncationTooLargeError
from src.linear import solve_exact_linear
from src.signature import GROUP, LAURENT, ODD, PLAIN, POLY

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Truncation:
    """
    Finite set of monomials

    alpha runs over integer combinations of the generators with coefficients in
    alpha_range; exponents of even variables lie in k_range (clipped to
    non-negative values where the variable is polynomial); odd variables and
    odd derivations take 0 or 1; even derivation powers are at most mu_max.
    """

    alpha_range: Tuple[int, int] = (0, 0)
    k_range: Tuple[int, int] = (0, 0)
    mu_max: int = 1

    def __post_init__(self):
        for name in ('alpha_range', 'k_range'):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise DomainError(f"{name} is empty: {lo} > {hi}")
        if self.mu_max < 0:
            raise DomainError("mu_max must be non-negative")

    def alphas(self, sig):
        seen = set()
        lo, hi = self.alpha_range
        for coeffs in itertools.product(range(lo, hi + 1), repeat=len(sig.generators)):
            alpha = tuple(sum((c * g[i] for c, g in zip(coeffs, sig.generators)), Fraction(0))
                          for i in range(sig.total))
            seen.add(alpha)
        if not seen:
            seen.add(tuple(Fraction(0) for _ in range(sig.total)))
        return sorted(seen)

    def _k_values(self, sig, c):
        lo, hi = self.k_range
        zone = sig.zone(c)
        if zone in (PLAIN, POLY):
            return range(max(lo, 0), max(hi, 0) + 1)
        if zone == LAURENT:
            return range(lo, hi + 1)
        if zone == GROUP:
            return range(0, 1)
        return range(0, 2)

    def _mu_values(self, sig, c):
        if sig.zone(c) == ODD:
            return range(0, 2)
        return range(0, self.mu_max + 1)

    def monomials(self, sig):
        ks = list(itertools.product(*(self._k_values(sig, c) for c in range(sig.total))))
        mus = list(itertools.product(*(self._mu_values(sig, c) for c in range(sig.total))))
        return [Monomial(alpha, k, mu) for alpha in self.alphas(sig) for k in ks for mu in mus]


@dataclass
class ProbeRow:
    """One equation f([u, v]) = psi(u, v)"""

    u: Monomial
    v: Monomial
    coefficients: Dict[int, Fraction]
    rhs: Fraction


@dataclass
class LinearProbe:
    unknowns: List[Monomial]
    rows: List[ProbeRow]
    consistent: bool
    rank: int
    solution: Optional[FunctionTable] = None
    witness: List[ProbeRow] = field(default_factory=list)

    @property
    def verdict(self):
        return 'consistent' if self.consistent else 'inconsistent'


def build_rows(sig, psi, monomials, max_unknowns):
    index: Dict[Monomial, int] = {}
    unknowns: List[Monomial] = []
    rows: List[ProbeRow] = []

    for i, u in enumerate(monomials):
        for v in monomials[i:]:
            br = bracket(sig, Element.from_monomial(u), Element.from_monomial(v))
            rhs = psi.pair(u, v)
            if not br and not rhs:
                continue
            coefficients = {}
            for m, c in br.items():
                if m not in index:
                    index[m] = len(unknowns)
                    unknowns.append(m)
                    if len(unknowns) > max_unknowns:
                        raise TruncationTooLargeError(
                            f"truncation needs more than {max_unknowns} unknowns")
                coefficients[index[m]] = c
            rows.append(ProbeRow(u, v, coefficients, rhs))

    return unknowns, rows


def triviality_probe(sig, psi, truncation, max_unknowns=None):
    """
    Solve f([u,v]) = psi(u,v) over all unordered pairs of truncation monomials

    Raises:
        TruncationTooLargeError: more unknowns (or truncation monomials) than the cap
    """
    cap = Config.PROBE_MAX_UNKNOWNS if max_unknowns is None else max_unknowns
    monomials = truncation.monomials(sig)
    if len(monomials) > cap:
        raise TruncationTooLargeError(
            f"truncation has {len(monomials)} monomials, more than the cap of {cap}")

    unknowns, rows = build_rows(sig, psi, monomials, cap)
    logger.debug("probe: %d monomials, %d rows, %d unknowns", len(monomials), len(rows), len(unknowns))

    solved = solve_exact_linear([row.coefficients for row in rows], [row.rhs for row in rows])
    if solved.consistent:
        table = FunctionTable({unknowns[i]: value for i, value in solved.solution.items()})
        return LinearProbe(unknowns, rows, True, solved.rank, solution=table)

    return LinearProbe(unknowns, rows, False, solved.rank,
                       witness=[rows[i] for i in solved.witness])


def verify_solution(probe):
    """Rows of a consistent probe that the returned table fails to satisfy"""
    failures = []
    for row in probe.rows:
        lhs = sum((c * probe.solution.value(probe.unknowns[i]) for i, c in row.coefficients.items()),
                  Fraction(0))
        if lhs != row.rhs:
            failures.append(row)
    return failures
