"""
Exact linear algebra over the rationals

solve_exact_linear runs fraction-free (integer) row elimination on sparse rows,
tracks which original rows each reduced row is built from, and on an
inconsistent system shrinks that provenance to an irreducible infeasible
subsystem. EchelonBasis is the incremental span used for rank and
membership questions.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass
class LinearSolution:
    """Outcome of solve_exact_linear"""

    consistent: bool
    rank: int
    solution: Optional[Dict[int, Fraction]] = None
    witness: List[int] = field(default_factory=list)


def _as_sparse(row):
    if isinstance(row, Mapping):
        items = row.items()
    else:
        items = enumerate(row)
    return {col: Fraction(value) for col, value in items if value != 0}


def _integer_row(row, rhs):
    """Scale a rational row and its right-hand side to coprime integers"""
    denominators = [value.denominator for value in row.values()]
    denominators.append(rhs.denominator)
    scale = lcm(*denominators)
    ints = {col: int(value * scale) for col, value in row.items()}
    int_rhs = int(rhs * scale)
    content = gcd(*ints.values(), int_rhs)
    if content > 1:
        ints = {col: value // content for col, value in ints.items()}
        int_rhs //= content
    return ints, int_rhs, Fraction(scale, content or 1)


def _combine(a, row_a, b, row_b):
    """a*row_a - b*row_b on sparse rows, dropping zeros"""
    out = {col: a * value for col, value in row_a.items()}
    for col, value in row_b.items():
        updated = out.get(col, 0) - b * value
        if updated:
            out[col] = updated
        else:
            out.pop(col, None)
    return out


class _Eliminator:
    """Integer row echelon form with optional provenance tracking"""

    def __init__(self, track=True):
        self.track = track
        # pivot column -> (row, rhs, provenance)
        self.pivots = {}

    def insert(self, index, row, rhs, scale):
        """
        Reduce one integer row against the pivots and store it.

        Returns:
            None if the row was absorbed or became a new pivot, otherwise the
            provenance (original row -> multiplier) of a row reduced to 0 = c.
        """
        provenance = {index: scale} if self.track else {}
        while True:
            shared = [col for col in row if col in self.pivots]
            if not shared:
                break
            col = min(shared)
            p_row, p_rhs, p_prov = self.pivots[col]
            a, b = p_row[col], row[col]
            g = gcd(a, b)
            a, b = a // g, b // g
            row = _combine(a, row, b, p_row)
            rhs = a * rhs - b * p_rhs
            if self.track:
                provenance = _combine(a, provenance, b, p_prov)
            content = gcd(*row.values(), rhs) if row else abs(rhs)
            if content > 1:
                row = {c: v // content for c, v in row.items()}
                rhs //= content
                if self.track:
                    provenance = {k: Fraction(v, content) for k, v in provenance.items()}

        if not row:
            return provenance if rhs != 0 else None

        self.pivots[min(row)] = (row, rhs, provenance)
        return None

    def back_substitute(self):
        """Solve the echelon system with every free variable set to 0"""
        values = {}
        for col in sorted(self.pivots, reverse=True):
            row, rhs, _ = self.pivots[col]
            acc = Fraction(rhs)
            for other, coeff in row.items():
                if other != col:
                    acc -= coeff * values.get(other, 0)
            values[col] = acc / row[col]
        return {col: value for col, value in values.items() if value != 0}


def _first_conflict(rows, rhs, indices, track):
    eliminator = _Eliminator(track=track)
    for index in indices:
        row, value, scale = _integer_row(rows[index], rhs[index])
        conflict = eliminator.insert(index, row, value, scale)
        if conflict is not None:
            return eliminator, conflict
    return eliminator, None


def _shrink_witness(rows, rhs, candidate):
    """Deletion filter: drop rows while the subsystem stays infeasible"""
    witness = sorted(candidate)
    for index in list(witness):
        trial = [i for i in witness if i != index]
        _, conflict = _first_conflict(rows, rhs, trial, track=False)
        if conflict is not None:
            witness = trial
    return witness


def solve_exact_linear(rows, rhs):
    """
    Solve rows * x = rhs exactly over the rationals

    Args:
        rows: sequence of sparse rows (mapping column -> rational) or dense lists
        rhs: sequence of rationals, one per row

    Returns:
        LinearSolution: consistent with a solution (free variables 0), or
        inconsistent with an irreducible infeasible set of row indices
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs must have the same length")

    sparse = [_as_sparse(row) for row in rows]
    values = [Fraction(value) for value in rhs]
    eliminator, conflict = _first_conflict(sparse, values, range(len(sparse)), track=True)

    if conflict is not None:
        candidate = [index for index, mult in conflict.items() if mult != 0]
        witness = _shrink_witness(sparse, values, candidate)
        logger.debug("inconsistent system: %d candidate rows, witness %s", len(candidate), witness)
        return LinearSolution(consistent=False, rank=len(eliminator.pivots), witness=witness)

    return LinearSolution(consistent=True, rank=len(eliminator.pivots),
                          solution=eliminator.back_substitute())


class EchelonBasis:
    """Incrementally maintained reduced basis of a span of sparse rational vectors"""

    def __init__(self):
        self._pivots: Dict[int, Dict[int, Fraction]] = {}

    @property
    def rank(self):
        return len(self._pivots)

    def reduce(self, vector):
        """Residual of vector after subtracting its component in the span"""
        residual = _as_sparse(vector)
        while True:
            shared = [col for col in residual if col in self._pivots]
            if not shared:
                return residual
            col = min(shared)
            factor = residual[col]
            for other, value in self._pivots[col].items():
                updated = residual.get(other, 0) - factor * value
                if updated:
                    residual[other] = updated
                else:
                    residual.pop(other, None)

    def add(self, vector):
        """Add vector to the span; True when it was independent"""
        residual = self.reduce(vector)
        if not residual:
            return False
        col = min(residual)
        lead = residual[col]
        self._pivots[col] = {c: v / lead for c, v in residual.items()}
        return True

    def __contains__(self, vector):
        return not self.reduce(vector)

    def vectors(self):
        """The stored basis vectors, one per pivot column"""
        return [dict(self._pivots[col]) for col in sorted(self._pivots)]


def rank(vectors: Sequence):
    """Rank of a collection of vectors over the rationals"""
    basis = EchelonBasis()
    for vector in vectors:
        basis.add(vector)
    return basis.rank
