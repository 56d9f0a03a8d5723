"""
Verification suites

Runs the algebraic identities of the toolkit on seeded random samples over a
set of signature families and reports every failing instance.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

from config import Config
from src.algebra import (Element, Monomial, amul, apply_multi_derivation, apply_partial, bracket,
                         compare_deriv_order, element_sum, falling_action, falling_factorial_element,
                         monomial, monomial_parity, mul, Order, to_falling_basis)
from src.cocycles import (Coboundary, Phi0, PhiGamma, cocycle_residuals, cyclic_residual,
                          derivation_residual, end_relations, lift_cocycle, odd_factor_basis,
                          odd_factor_functional, odd_idempotent, restricted_form, split_monomial,
                          tensor_bracket_residual, top_odd_monomial, top_odd_sign, wedge_relations)
from src.combinatorics import falling_factorial
from src.normalization import NormalizationSession, normalized_check
from src.parser import format_element, parse_expression
from src.probe import Truncation, triviality_probe, verify_solution
from src.sampling import (make_rng, random_element, random_function_table, random_monomial,
                          random_odd_factor_monomial)
from src.signature import validate_signature

logger = logging.getLogger(__name__)

FAMILIES = {
    'weyl': {'ell': [0, 0, 0, 1, 0], 'generators': [['1']]},
    'weyl-odd1': {'ell': [0, 0, 0, 1, 1], 'generators': [['1', '0']]},
    'weyl-odd2': {'ell': [0, 0, 0, 1, 2], 'generators': [['1', '0', '0']]},
    'laurent-odd1': {'ell': [0, 0, 1, 0, 1], 'generators': [['1', '0']]},
    'laurent-odd2': {'ell': [0, 0, 1, 0, 2], 'generators': [['1', '0', '0']]},
    'group2': {'ell': [0, 0, 0, 2, 0], 'generators': [['1', '0'], ['0', '1']]},
    'laurent': {'ell': [0, 0, 1, 0, 0], 'generators': [['1']]},
}


@dataclass
class SuiteResult:
    family: str
    suite: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def expect(self, condition, message):
        self.checks += 1
        if not condition:
            self.failures.append(message)

    def to_dict(self):
        return {'family': self.family, 'suite': self.suite, 'checks': self.checks,
                'failures': list(self.failures)}


def _single(m):
    return Element.from_monomial(m)


def _with_alpha(m, alpha):
    return Monomial(alpha, m.k, m.mu)


def _with_mu(m, mu):
    return Monomial(m.alpha, m.k, mu)


def _balance(sig, ms, target):
    """Replace the last monomial's group part so the group parts sum to target"""
    rest = [sum((m.alpha[i] for m in ms[:-1]), Fraction(0)) for i in range(sig.total)]
    alpha = tuple(target[i] - rest[i] for i in range(sig.total))
    return ms[:-1] + [_with_alpha(ms[-1], alpha)]


class FamilyVerifier:
    """All suites that apply to one signature"""

    def __init__(self, name, sig, samples, seed):
        self.name = name
        self.sig = sig
        self.samples = samples
        self.seed = seed

    def _rng(self, suite):
        return make_rng(f"{self.seed}:{self.name}:{suite}")

    def _result(self, suite):
        return SuiteResult(self.name, suite)

    @property
    def _zero(self):
        return tuple(Fraction(0) for _ in range(self.sig.total))

    def _group_unit(self):
        """First generator, the group element used for golden values"""
        return self.sig.generators[0] if self.sig.generators else self._zero

    def suites(self):
        sig = self.sig
        runs = [self.check_associativity, self.check_bracket_axioms, self.check_a_identities,
                self.check_deriv_order, self.check_parser, self.check_normalization]
        if sig.even_count == 1 and sig.ell[0] == 0:
            runs.append(self.check_falling)
        if sig.ell[:4] == (0, 0, 0, 1):
            runs.append(self.check_phi0)
        if sig.ell[:4] == (0, 0, 1, 0):
            runs.append(self.check_phi_gamma)
        if sig.odd_count:
            runs.append(self.check_p_functional)
            if sig.ell[:4] in ((0, 0, 0, 1), (0, 0, 1, 0)):
                runs.append(self.check_lifted)
        if sig.odd_count == 0 and sig.ell[:4] in ((0, 0, 0, 1), (0, 0, 1, 0)):
            runs.append(self.check_probe)
        return runs

    # -- algebra -----------------------------------------------------------

    def check_associativity(self):
        sig, rng, result = self.sig, self._rng('assoc'), self._result('associativity')
        for _ in range(self.samples):
            u, v, w = (_single(random_monomial(rng, sig)) for _ in range(3))
            left = mul(sig, mul(sig, u, v), w)
            right = mul(sig, u, mul(sig, v, w))
            result.expect(left == right, f"(uv)w != u(vw) for {format_element(sig, u)}, "
                                         f"{format_element(sig, v)}, {format_element(sig, w)}")
            uv = mul(sig, u, v)
            expected = (monomial_parity(sig, u.monomials()[0]) + monomial_parity(sig, v.monomials()[0])) % 2
            result.expect(all(monomial_parity(sig, m) == expected for m in uv),
                          f"parity not additive for {format_element(sig, u)} * {format_element(sig, v)}")
        return result

    def check_bracket_axioms(self):
        sig, rng, result = self.sig, self._rng('bracket'), self._result('bracket')
        for _ in range(self.samples):
            ms = [random_monomial(rng, sig, bound=2) for _ in range(3)]
            u, v, w = (_single(m) for m in ms)
            g = [monomial_parity(sig, m) for m in ms]
            sign = (-1) ** (g[0] * g[1])
            result.expect(bracket(sig, u, v) == -sign * bracket(sig, v, u),
                          f"skew-symmetry fails on {format_element(sig, u)}, {format_element(sig, v)}")
            jacobi = (bracket(sig, u, bracket(sig, v, w))
                      - bracket(sig, bracket(sig, u, v), w)
                      - sign * bracket(sig, v, bracket(sig, u, w)))
            result.expect(not jacobi, f"Jacobi fails on {[format_element(sig, x) for x in (u, v, w)]}")
            result.expect(not derivation_residual(sig, u, v, w),
                          f"bracket is not a derivation of the product on {format_element(sig, u)}")
        return result

    def check_a_identities(self):
        sig, rng, result = self.sig, self._rng('a'), self._result('a-identities')
        for _ in range(self.samples):
            a, b = (random_monomial(rng, sig).a_part() for _ in range(2))
            ga, gb = monomial_parity(sig, a), monomial_parity(sig, b)
            result.expect(amul(sig, a, b) == (-1) ** (ga * gb) * amul(sig, b, a),
                          f"A is not supercommutative on {a!r}, {b!r}")
            ab = amul(sig, a, b)
            for p in range(1, sig.total + 1):
                odd = 1 if sig.is_odd(p - 1) else 0
                left = element_sum(apply_partial(sig, p, m) * c for m, c in ab.items())
                right = (element_sum(amul(sig, m, b) * c for m, c in apply_partial(sig, p, a).items())
                         + (-1) ** (odd * ga) * element_sum(amul(sig, a, m) * c
                                                            for m, c in apply_partial(sig, p, b).items()))
                result.expect(left == right, f"Leibniz rule fails for d{p} on {a!r}, {b!r}")
            for c in sig.odd_coords:
                lam = tuple(2 if i == c else 0 for i in range(sig.total))
                result.expect(not apply_multi_derivation(sig, lam, a),
                              f"odd derivation {c + 1} does not square to zero on {a!r}")
        return result

    def check_deriv_order(self):
        sig, rng, result = self.sig, self._rng('order'), self._result('deriv-order')
        for _ in range(self.samples):
            a, b, c = (random_monomial(rng, sig).mu for _ in range(3))
            ab, ba = compare_deriv_order(a, b), compare_deriv_order(b, a)
            result.expect(ab.value == -ba.value, f"order not antisymmetric on {a}, {b}")
            result.expect((ab == Order.EQUAL) == (a == b), f"order not total on {a}, {b}")
            if ab == Order.LESS and compare_deriv_order(b, c) == Order.LESS:
                result.expect(compare_deriv_order(a, c) == Order.LESS, f"order not transitive on {a}, {b}, {c}")
        return result

    def check_falling(self):
        sig, result = self.sig, self._result('falling-factorial')
        d = monomial(sig, mu=(1,) + (0,) * (sig.total - 1))
        for m in range(9):
            rebuilt = element_sum(falling_factorial_element(sig, k) * c for k, c in to_falling_basis(sig, m))
            power = monomial(sig, mu=(m,) + (0,) * (sig.total - 1))
            result.expect(rebuilt == _single(power), f"Stirling round trip fails at m={m}")
        d2 = monomial(sig, mu=(2,) + (0,) * (sig.total - 1))
        d3 = monomial(sig, mu=(3,) + (0,) * (sig.total - 1))
        result.expect(falling_factorial_element(sig, 2) == _single(d2) - _single(d),
                      "[d1]_2 != d1^2 - d1")
        result.expect(falling_factorial_element(sig, 3) == _single(d3) - 3 * _single(d2) + 2 * _single(d),
                      "[d1]_3 != d1^3 - 3 d1^2 + 2 d1")
        for mu1, beta in itertools.product(range(4), (-2, 1, 3)):
            result.expect(falling_action(sig, mu1, beta) == falling_factorial(beta, mu1),
                          f"[d1]_{mu1} does not act on x^{beta} by the falling factorial")
        return result

    def check_parser(self):
        sig, rng, result = self.sig, self._rng('parser'), self._result('parser')
        for _ in range(self.samples):
            e = random_element(rng, sig, terms=rng.randint(0, 3))
            text = format_element(sig, e)
            result.expect(parse_expression(sig, text) == e, f"round trip fails on {text!r}")
        return result

    # -- cocycles ----------------------------------------------------------

    def _cocycle_axioms(self, phi, rng, result, target):
        sig = self.sig
        for _ in range(self.samples):
            ms = [random_monomial(rng, sig, bound=2, alpha_bound=2, even_only=True) for _ in range(3)]
            if rng.random() < 0.5:
                ms = _balance(sig, ms, target)
            u, v, w = (_single(m) for m in ms)
            skew, jacobi = cocycle_residuals(sig, phi, u, v, w)
            result.expect(skew == 0 and jacobi == 0,
                          f"{phi.describe()}: residuals ({skew}, {jacobi}) on {[format_element(sig, x) for x in (u, v, w)]}")
            cyc = cyclic_residual(sig, phi, u, v, w)
            result.expect(cyc == 0, f"{phi.describe()}: cyclic residual {cyc}")

    def check_phi0(self):
        sig, rng, result = self.sig, self._rng('phi0'), self._result('phi0')
        phi = Phi0(sig)
        unit = self._group_unit()[0]
        for a in range(-5, 6):
            alpha = a * unit
            x_a = monomial(sig, alpha=(alpha,) + (0,) * (sig.total - 1))
            x_b = monomial(sig, alpha=(-alpha,) + (0,) * (sig.total - 1))
            result.expect(phi(x_a, x_b) == alpha, f"phi0(x^{alpha}, x^{-alpha}) != {alpha}")
            mu = (1,) + (0,) * (sig.total - 1)
            value = phi(_with_mu(x_a, mu), _with_mu(x_b, mu))
            result.expect(value == -(alpha ** 3 - alpha) / 6, f"phi0(x^a d, x^-a d) wrong at a={alpha}")
        self._cocycle_axioms(phi, rng, result, self._zero)
        return result

    def check_phi_gamma(self):
        sig, rng, result = self.sig, self._rng('phigamma'), self._result('phigamma')
        unit = self._group_unit()
        phi = PhiGamma(sig, self._zero)
        for i, j in itertools.product(range(-5, 6), repeat=2):
            t_i = monomial(sig, k=(i,) + (0,) * (sig.total - 1))
            t_j = monomial(sig, k=(j,) + (0,) * (sig.total - 1))
            result.expect(phi(t_i, t_j) == (i if i + j == 0 else 0), f"phi(t^{i}, t^{j}) wrong")
        for a in range(-3, 4):
            alpha = a * unit[0]
            left = monomial(sig, alpha=(alpha,) + (0,) * (sig.total - 1), k=(1,) + (0,) * (sig.total - 1))
            right = monomial(sig, alpha=(-alpha,) + (0,) * (sig.total - 1), k=(-1,) + (0,) * (sig.total - 1))
            result.expect(phi(left, right) == 1 and phi(right, left) == -1,
                          f"phi(x^(a,1), x^(-a,-1)) wrong at a={alpha}")
        self._cocycle_axioms(phi, rng, result, self._zero)
        self._cocycle_axioms(PhiGamma(sig, unit), rng, result, unit)
        return result

    def check_p_functional(self):
        sig, rng, result = self.sig, self._rng('pfunc'), self._result('p-functional')
        functional = odd_factor_functional(sig)
        basis = odd_factor_basis(sig)
        u1 = top_odd_monomial(sig)
        result.expect(functional(_single(u1)) == 1, "P(u1) != 1")
        sign = top_odd_sign(sig)
        result.expect(mul(sig, _single(u1), _single(u1)) == sign * _single(u1), f"u1 u1 != {sign} u1")
        e = odd_idempotent(sig)
        result.expect(mul(sig, e, e) == e and e == sign * _single(u1), "(s1 q1)...(sn qn) is not an idempotent")
        if sig.odd_count == 1:
            for m in basis:
                result.expect(functional(_single(m)) == (1 if m == u1 else 0), f"P({m!r}) wrong")
            pairs = list(itertools.product(basis, repeat=2))
        else:
            pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(self.samples)]
        for a, b in pairs:
            ga, gb = monomial_parity(sig, a), monomial_parity(sig, b)
            left = functional(mul(sig, _single(a), _single(b)))
            right = (-1) ** (ga * gb) * functional(mul(sig, _single(b), _single(a)))
            result.expect(left == right, f"P(uv) twisted symmetry fails on {a!r}, {b!r}")
        for a, b in itertools.product(basis, repeat=2):
            result.expect(functional(bracket(sig, _single(a), _single(b))) == 0,
                          f"P([u, v]) != 0 for {a!r}, {b!r}")
        return result

    def _bases(self):
        sig = self.sig
        if sig.ell[:4] == (0, 0, 0, 1):
            return [(Phi0(sig), self._zero)]
        unit = self._group_unit()
        return [(PhiGamma(sig, self._zero), self._zero), (PhiGamma(sig, unit), unit)]

    def check_lifted(self):
        sig, rng, result = self.sig, self._rng('lifted'), self._result('lifted')
        for base, target in self._bases():
            phi = lift_cocycle(sig, base)
            restricted = restricted_form(sig, phi)
            u1, sign = _single(top_odd_monomial(sig)), top_odd_sign(sig)
            for _ in range(self.samples):
                ms = [random_monomial(rng, sig, bound=2, alpha_bound=2) for _ in range(3)]
                if rng.random() < 0.7:
                    ms = _balance(sig, ms, target)
                skew, jacobi = cocycle_residuals(sig, phi, *(_single(m) for m in ms))
                result.expect(skew == 0 and jacobi == 0,
                              f"{phi.describe()}: residuals ({skew}, {jacobi}) on {ms!r}")
            for _ in range(max(1, self.samples // 2)):
                p = rng.randint(1, sig.odd_count)
                y0, z0 = (random_monomial(rng, sig, bound=2, alpha_bound=2, even_only=True) for _ in range(2))
                y0, z0 = _balance(sig, [y0, z0], target)
                y = mul(sig, _single(y0), _single(random_odd_factor_monomial(rng, sig, avoid=p)))
                z = mul(sig, _single(z0), _single(random_odd_factor_monomial(rng, sig, avoid=p)))
                for key, value in wedge_relations(sig, phi, y, z, p).items():
                    result.expect(value == 0, f"{phi.describe()}: relation {key} gives {value}")
                u, v = (_single(random_odd_factor_monomial(rng, sig)) for _ in range(2))
                first, second = end_relations(sig, phi, _single(y0), _single(z0), u, v)
                result.expect(first == 0 and second == 0,
                              f"{phi.describe()}: factorization relations ({first}, {second})")
                result.expect(not tensor_bracket_residual(sig, _single(y0), _single(z0), u, v),
                              "bracket does not factor over even and odd parts")
                value = base(y0, z0)
                result.expect(restricted(y0, z0) == value, f"{phi.describe()}: restricted form differs from the base")
                result.expect(phi(mul(sig, _single(y0), u1), mul(sig, _single(z0), u1)) == sign * value,
                              f"{phi.describe()}: phi~(a u1, b u1) != {sign} phi(a, b)")
                m = random_monomial(rng, sig)
                m0, m1 = split_monomial(sig, m)
                result.expect(mul(sig, _single(m0), _single(m1)) == _single(m), f"split fails on {m!r}")
        return result

    # -- normalization and probes ------------------------------------------

    def check_normalization(self):
        sig, rng, result = self.sig, self._rng('normalize'), self._result('normalization')
        trials = max(1, self.samples // 10)
        per_trial = max(1, self.samples // 2)
        for _ in range(trials):
            g = random_function_table(rng, sig)
            session = NormalizationSession(sig, Coboundary(sig, g))
            samples = [random_monomial(rng, sig, bound=2, alpha_bound=1) for _ in range(per_trial)]
            violations = normalized_check(sig, session.normalized_cocycle(), samples)
            result.expect(not violations, f"{len(violations)} normalization violations, first {violations[:1]!r}")
            for m in samples:
                result.expect(session.value(m) == g.value(m), f"normalization does not recover g at {m!r}")
        return result

    def check_probe(self):
        sig, rng, result = self.sig, self._rng('probe'), self._result('probe')
        if sig.ell[:4] == (0, 0, 0, 1):
            psi, truncation = Phi0(sig), Truncation(alpha_range=(-2, 2), mu_max=1)
        else:
            psi, truncation = PhiGamma(sig, self._zero), Truncation(k_range=(-2, 2), mu_max=1)
        probe = triviality_probe(sig, psi, truncation)
        result.expect(not probe.consistent, f"{psi.describe()} looks trivial on the truncation")
        for _ in range(max(1, self.samples // 20)):
            g = random_function_table(rng, sig)
            probe = triviality_probe(sig, Coboundary(sig, g), truncation)
            result.expect(probe.consistent and not verify_solution(probe),
                          "coboundary probe inconsistent or solution fails substitution")
        return result

    def run(self):
        results = []
        for suite in self.suites():
            started = time.perf_counter()
            results.append(suite())
            logger.debug("%s/%s finished in %.2fs", self.name, suite.__name__, time.perf_counter() - started)
        return results


class SelfTestRunner:
    """Runs the suites over the built-in families and an optional user signature"""

    def __init__(self, samples=None, seed=None, families=None, extra_signature=None, verbose=True):
        self.samples = Config.SELFTEST_SAMPLES if samples is None else samples
        self.seed = Config.SELFTEST_SEED if seed is None else seed
        self.family_names = list(FAMILIES) if families is None else list(families)
        self.extra_signature = extra_signature
        self.verbose = verbose

    def _families(self):
        for name in self.family_names:
            yield name, validate_signature(FAMILIES[name])
        if self.extra_signature is not None:
            yield 'sig', self.extra_signature

    def run(self):
        results = {
            'samples': self.samples,
            'seed': self.seed,
            'families': [],
            'suites': [],
            'checks': 0,
            'failures': 0,
        }

        for name, sig in self._families():
            results['families'].append(name)
            if self.verbose:
                print(f"\n🔍 Family {name}: ell={list(sig.ell)}")
            for suite in FamilyVerifier(name, sig, self.samples, self.seed).run():
                results['suites'].append(suite.to_dict())
                results['checks'] += suite.checks
                results['failures'] += len(suite.failures)
                if self.verbose:
                    if suite.passed:
                        print(f"    ✅ {suite.suite}: {suite.checks} checks")
                    else:
                        print(f"    ❌ {suite.suite}: {len(suite.failures)} of {suite.checks} checks failed")
                        for failure in suite.failures[:3]:
                            print(f"       {failure}")

        if self.verbose:
            self._print_summary(results)
        return results

    def _print_summary(self, results):
        """Print summary block"""
        print(f"\n{'=' * 60}")
        print(f"📊 SELFTEST SUMMARY")
        print(f"{'=' * 60}")
        print(f"Families:   {', '.join(results['families'])}")
        print(f"Samples:    {results['samples']} (seed {results['seed']})")
        print(f"Suites:     {len(results['suites'])}")
        print(f"  ✅ Checks: {results['checks']}")
        if results['failures']:
            print(f"  ❌ Failed: {results['failures']}")
        print(f"{'=' * 60}\n")
