"""Tests for the normalizing function f and normalized_check"""

import dataclasses

import pytest

from src.algebra import monomial
from src.cocycles import Coboundary, FunctionTable, Phi0
from src.errors import InternalConsistencyError, MissingTauError
from src.normalization import NormalizationSession, normalization_generators, normalize_f, normalized_check
from src.sampling import make_rng, random_function_table, random_monomial


@pytest.mark.parametrize('seed', range(3))
def test_coboundaries_normalize_to_zero(any_family, seed):
    rng = make_rng(f"normalize:{seed}")
    g = random_function_table(rng, any_family)
    session = NormalizationSession(any_family, Coboundary(any_family, g))
    samples = [random_monomial(rng, any_family, bound=2, alpha_bound=1) for _ in range(30)]

    assert normalized_check(any_family, session.normalized_cocycle(), samples) == []
    for m in samples:
        assert normalize_f(session, m) == g.value(m)


def test_single_entry_table_is_recovered(group2):
    d2 = monomial(group2, mu=(0, 1))
    g = FunctionTable({d2: 5})
    session = NormalizationSession(group2, Coboundary(group2, g))
    assert session.value(d2) == 5
    assert session.value(monomial(group2, mu=(1, 1))) == 0
    assert session.value(monomial(group2, alpha=(1, -1), mu=(2, 0))) == 0


def test_explicit_tau_gives_the_same_f(group2):
    g = FunctionTable({monomial(group2, mu=(1, 1)): 2, monomial(group2): -1})
    default = NormalizationSession(group2, Coboundary(group2, g))
    other = NormalizationSession(group2, Coboundary(group2, g), tau=('1', '-1'))
    for mu in [(0, 0), (1, 1), (2, 0), (0, 2)]:
        m = monomial(group2, mu=mu)
        assert default.value(m) == other.value(m) == g.value(m)


def test_missing_tau(weyl):
    untau = dataclasses.replace(weyl, tau=())
    session = NormalizationSession(untau, Phi0(weyl))
    with pytest.raises(MissingTauError):
        session.value(monomial(weyl))


def test_laurent_signatures_need_no_tau(laurent):
    untau = dataclasses.replace(laurent, tau=())
    g = FunctionTable({monomial(laurent, mu=(2,)): 1})
    session = NormalizationSession(untau, Coboundary(laurent, g))
    assert session.value(monomial(laurent, mu=(2,))) == 1


def test_depth_bound(weyl):
    session = NormalizationSession(weyl, Phi0(weyl), max_depth=1)
    with pytest.raises(InternalConsistencyError):
        session.value(monomial(weyl, mu=(3,)))


def test_memo_is_reused(weyl):
    session = NormalizationSession(weyl, Phi0(weyl))
    m = monomial(weyl, alpha=(2,), mu=(1,))
    first = session.value(m)
    calls = session.calls
    assert session.value(m) == first
    assert session.calls == calls
    assert m in session.table()


def test_generator_names(weyl_odd1, laurent):
    assert [name for name, _ in normalization_generators(weyl_odd1)] == ['d1', 'q1', 's1q1']
    assert [name for name, _ in normalization_generators(laurent)] == ['t1d1', 'd1']


def test_normalized_check_reports_violations(weyl):
    x_d = monomial(weyl, alpha=(1,), mu=(1,))
    psi = Coboundary(weyl, FunctionTable({x_d: 1}))
    violations = normalized_check(weyl, psi, [x_d])
    assert violations
    assert {v.generator for v in violations} == {'d1'}
