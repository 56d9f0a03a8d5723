"""Tests for exact elimination, witnesses and echelon spans"""

import random
from fractions import Fraction

import pytest

from src.linear import EchelonBasis, rank, solve_exact_linear


def _substitute(rows, solution):
    return [sum(Fraction(c) * solution.get(i, 0) for i, c in enumerate(row)) for row in rows]


def test_unique_solution():
    rows = [[2, 1], [1, -1]]
    result = solve_exact_linear(rows, [5, 1])
    assert result.consistent
    assert result.rank == 2
    assert result.solution == {0: 2, 1: 1}


def test_rational_coefficients():
    rows = [[Fraction(1, 2), Fraction(1, 3)]]
    result = solve_exact_linear(rows, [1])
    assert result.consistent
    assert _substitute(rows, result.solution) == [1]


def test_free_variables_are_zero():
    result = solve_exact_linear([[1, 1, 0]], [3])
    assert result.consistent
    assert result.rank == 1
    assert sum(result.solution.get(i, 0) for i in range(3)) == 3
    assert sum(1 for v in result.solution.values() if v) == 1


def test_sparse_rows():
    result = solve_exact_linear([{0: 1, 5: 1}, {5: 2}], [4, 2])
    assert result.consistent
    assert result.solution[0] == 3
    assert result.solution[5] == 1


def test_zero_row_with_nonzero_rhs_is_its_own_witness():
    result = solve_exact_linear([[1, 0], [0, 0], [0, 1]], [1, 2, 3])
    assert not result.consistent
    assert result.witness == [1]


def test_witness_is_irreducible():
    rows = [[1, 1], [1, -1], [2, 0], [0, 1]]
    rhs = [1, 1, 3, 0]
    result = solve_exact_linear(rows, rhs)
    assert not result.consistent
    witness = result.witness
    assert len(witness) >= 2
    sub_rows = [rows[i] for i in witness]
    sub_rhs = [rhs[i] for i in witness]
    assert not solve_exact_linear(sub_rows, sub_rhs).consistent
    for drop in range(len(witness)):
        keep = [i for j, i in enumerate(witness) if j != drop]
        assert solve_exact_linear([rows[i] for i in keep], [rhs[i] for i in keep]).consistent


def test_length_mismatch():
    with pytest.raises(ValueError):
        solve_exact_linear([[1]], [1, 2])


def test_empty_system():
    result = solve_exact_linear([], [])
    assert result.consistent
    assert result.rank == 0
    assert result.solution == {}


def test_echelon_basis_membership():
    basis = EchelonBasis()
    assert basis.add({0: 1, 1: 1})
    assert basis.add({1: 1, 2: 1})
    assert not basis.add({0: 1, 1: 2, 2: 1})
    assert basis.rank == 2
    assert {0: 1, 2: -1} in basis
    assert {2: 1} not in basis


def test_rank():
    assert rank([[1, 2], [2, 4], [0, 0]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0], [1, 1, 1]]) == 3


def test_random_invertible_system():
    rng = random.Random(20)
    n = 20
    rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][i] += 200
    expected = [Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(n)]
    rhs = [sum(c * x for c, x in zip(row, expected)) for row in rows]
    result = solve_exact_linear(rows, rhs)
    assert result.consistent
    assert result.rank == n
    assert _substitute(rows, result.solution) == rhs
    assert [result.solution.get(i, 0) for i in range(n)] == expected
