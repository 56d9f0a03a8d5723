"""
Algebra signature: the five block sizes, the generators of the group Γ and
the distinguished element τ

Coordinates are 0-based. With partial sums P1..P4 of the block sizes, a
coordinate c belongs to one of five zones:

    c < P1          plain       polynomial variable, no group part
    P1 <= c < P2    poly        polynomial variable with group part
    P2 <= c < P3    laurent     Laurent variable with group part
    P3 <= c < P4    group       group part only
    c >= P4         odd         Grassmann variable and odd derivation
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Tuple

from config import Config
from src.errors import SignatureError, ShapeError
from src.lattice import IntegerLattice
from src.linear import rank, solve_exact_linear

logger = logging.getLogger(__name__)

PLAIN, POLY, LAURENT, GROUP, ODD = 'plain', 'poly', 'laurent', 'group', 'odd'


def to_fraction(value):
    """Parse an int, Fraction or a "p/q" / integer string into a Fraction"""
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        return Fraction(text)
    raise ValueError(f"not a rational number: {value!r}")


@dataclass(frozen=True)
class Signature:
    """A validated signature; build it with validate_signature"""

    ell: Tuple[int, int, int, int, int]
    generators: Tuple[Tuple[Fraction, ...], ...]
    tau: Tuple[Fraction, ...]

    def partial(self, i):
        """Partial sum of the first i block sizes"""
        return sum(self.ell[:i])

    @property
    def total(self):
        return self.partial(5)

    @property
    def even_count(self):
        return self.partial(4)

    @property
    def odd_count(self):
        return self.ell[4]

    @property
    def group_coords(self):
        """Coordinates carrying a group part"""
        return range(self.ell[0], self.even_count)

    @property
    def odd_coords(self):
        return range(self.even_count, self.total)

    def zone(self, c):
        if c < self.ell[0]:
            return PLAIN
        if c < self.partial(2):
            return POLY
        if c < self.partial(3):
            return LAURENT
        if c < self.even_count:
            return GROUP
        return ODD

    def is_odd(self, c):
        return c >= self.even_count

    def unit(self, c):
        return tuple(1 if i == c else 0 for i in range(self.total))

    def has_group_support(self, vector):
        """True when the vector vanishes outside the group coordinates"""
        return all(value == 0 for c, value in enumerate(vector) if c not in self.group_coords)

    def to_dict(self):
        return {
            'ell': list(self.ell),
            'generators': [[str(value) for value in g] for g in self.generators],
            'tau': [str(value) for value in self.tau],
        }


def _read_vector(raw, length, what):
    try:
        vector = tuple(to_fraction(value) for value in raw)
    except (TypeError, ValueError) as e:
        raise SignatureError(f"{what}: {e}")
    if len(vector) != length:
        raise SignatureError(f"{what} has length {len(vector)}, expected {length}")
    return vector


def _read_ell(raw):
    ell = list(raw) if isinstance(raw, (list, tuple)) else None
    if ell is None or len(ell) != 5:
        raise SignatureError("ell must be a list of five non-negative integers")
    for value in ell:
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise SignatureError(f"ell entries must be non-negative integers, got {value!r}")
    return tuple(ell)


def _value_order(radius):
    """0, 1, -1, 2, -2, ... up to the radius"""
    values = [0]
    for r in range(1, radius + 1):
        values.extend((r, -r))
    return values


def synthesize_tau(sig, search_bound=None):
    """
    Find an integer combination of the generators with every group coordinate nonzero

    Coefficient vectors are tried by increasing radius max|c_i|, lexicographically
    in the value order 0, 1, -1, 2, -2, ... within a radius.
    """
    bound = Config.TAU_SEARCH_BOUND if search_bound is None else search_bound
    coords = list(sig.group_coords)
    if not coords:
        return tuple(Fraction(0) for _ in range(sig.total))

    n = len(sig.generators)
    for radius in range(1, bound + 1):
        for coeffs in itertools.product(_value_order(radius), repeat=n):
            if max(abs(c) for c in coeffs) != radius:
                continue
            tau = tuple(sum((c * g[i] for c, g in zip(coeffs, sig.generators)), Fraction(0))
                        for i in range(sig.total))
            if all(tau[c] != 0 for c in coords):
                logger.debug("tau %s from coefficients %s", tau, coeffs)
                return tau

    raise SignatureError(f"no tau found with generator coefficients bounded by {bound}")


def validate_signature(raw, tau_search_bound=None):
    """
    Validate candidate signature data

    Args:
        raw: a Signature, or a mapping with "ell", "generators" and optional "tau"
        tau_search_bound: overrides Config.TAU_SEARCH_BOUND for tau synthesis

    Returns:
        Signature

    Raises:
        SignatureError: on any violated signature invariant
    """
    if isinstance(raw, Signature):
        raw = {'ell': raw.ell, 'generators': raw.generators, 'tau': raw.tau}
    if not isinstance(raw, dict):
        raise SignatureError("signature data must be a JSON object")

    ell = _read_ell(raw.get('ell'))
    total = sum(ell)
    even = sum(ell[:4])
    if even < 1:
        raise SignatureError("the even part of the signature is empty (l1+l2+l3+l4 = 0)")

    raw_generators = raw.get('generators') or []
    generators = tuple(_read_vector(g, total, f"generator {i}") for i, g in enumerate(raw_generators))
    sig = Signature(ell=ell, generators=generators, tau=())

    for i, g in enumerate(generators):
        if not sig.has_group_support(g):
            raise SignatureError(f"generator {i} is nonzero outside coordinates {ell[0] + 1}..{even}")

    needed = even - ell[0]
    restricted = [{c: g[c] for c in sig.group_coords} for g in generators]
    found = rank(restricted)
    if found < needed:
        raise SignatureError(f"generators are degenerate: rank {found} < {needed}")

    raw_tau = raw.get('tau')
    if raw_tau is None or len(raw_tau) == 0:
        tau = synthesize_tau(sig, tau_search_bound)
    else:
        tau = _read_vector(raw_tau, total, "tau")
        check_tau(sig, tau)

    return Signature(ell=ell, generators=generators, tau=tau)


def check_tau(sig, tau):
    """Raise SignatureError unless tau is a valid distinguished element of Γ"""
    if len(tau) != sig.total:
        raise SignatureError(f"tau has length {len(tau)}, expected {sig.total}")
    if not sig.has_group_support(tau):
        raise SignatureError("tau is nonzero outside the group coordinates")
    if any(tau[c] == 0 for c in sig.group_coords):
        raise SignatureError("tau has a zero group coordinate")
    if not gamma_membership(sig, tau):
        raise SignatureError("tau is not an integer combination of the generators")


def gamma_membership(sig, v):
    """
    Decide whether v is an integer combination of the generators

    Raises:
        ShapeError: v has the wrong length or is nonzero outside the group coordinates
    """
    v = tuple(to_fraction(value) for value in v)
    if len(v) != sig.total:
        raise ShapeError(f"group vector has length {len(v)}, expected {sig.total}")
    if not sig.has_group_support(v):
        raise ShapeError("group vector is nonzero outside the group coordinates")
    if not any(v):
        return True

    rows = [{i: g[c] for i, g in enumerate(sig.generators)} for c in range(sig.total)]
    solved = solve_exact_linear(rows, list(v))
    if not solved.consistent:
        return False
    if all(value.denominator == 1 for value in solved.solution.values()):
        return True

    # particular solution is fractional; decide on the scaled generator lattice
    scale = lcm(*(value.denominator for vector in (*sig.generators, v) for value in vector))
    lattice = IntegerLattice(sig.total)
    for g in sig.generators:
        lattice.add_vector([value * scale for value in g])
    return [value * scale for value in v] in lattice
