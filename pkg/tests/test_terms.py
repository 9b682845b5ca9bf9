"""Summand expression evaluation."""

from fractions import Fraction

import pytest

from combident.affine import Affine, Bound
from combident.errors import PoleError, PreconditionError, UnboundParameterError
from combident.exact import binom_int
from combident.poly import Polynomial, RationalFunction, rf_equal
from combident.terms import (
    SumSpec,
    af,
    altpowsum,
    binom,
    collect_names,
    const,
    evaluate,
    evaluate_sum,
    evaluate_sum_symbolic,
    evaluate_symbolic,
    ibinom,
    power,
    prod,
    quot,
    sign,
    substitute_index,
)

K = Affine.var("k")
N = Affine.var("n")
R = Affine.var("r")
S = Affine.var("s")


def env(**values):
    return {name: Fraction(v) for name, v in values.items()}


class TestEvaluate:
    def test_frisch_summand(self):
        # (-1)^k C(n,k) binom(k+r,s)^-1 at k=1, n=1, r=1, s=1
        term = prod(sign(K), binom(N, K), ibinom(K + R, S))
        assert evaluate(term, env(k=1, n=1, r=1, s=1)) == Fraction(-1, 2)

    def test_constant(self):
        assert evaluate(const(1), env(k=17)) == 1

    def test_pole_propagates(self):
        term = prod(af(N), ibinom(Affine.of(1), Affine.of(2)))
        with pytest.raises(PoleError):
            evaluate(term, env(k=0, n=3))

    def test_rational_upper_index(self):
        term = binom(K + R, S)
        assert evaluate(term, env(k=1, r=Fraction(3, 2), s=2)) == Fraction(15, 8)

    def test_non_integer_lower_rejected(self):
        term = binom(N, K + R)
        with pytest.raises(PreconditionError):
            evaluate(term, env(k=0, n=4, r=Fraction(1, 2)))

    def test_negative_lower_on_counting_upper_is_zero(self):
        assert evaluate(binom(N, K - 2), env(k=0, n=3)) == 0

    def test_negative_lower_on_rational_upper_rejected(self):
        with pytest.raises(PreconditionError):
            evaluate(binom(R, K - 2), env(k=0, r=Fraction(1, 2)))

    def test_unbound_parameter(self):
        with pytest.raises(UnboundParameterError):
            evaluate(af(R), env(k=0))

    def test_quotient_pole(self):
        with pytest.raises(PoleError):
            evaluate(quot(S, S - 1), env(k=0, s=1))

    def test_power_zero_base(self):
        assert evaluate(power(K, Affine.var("m")), env(k=0, m=0)) == 1

    def test_altpowsum_truncates(self):
        # count > power makes the sum vanish
        for u in range(1, 6):
            for m in range(u):
                assert evaluate(altpowsum(Affine.of(u), 0, m), env(k=0)) == 0


class TestSums:
    def test_geometric_left_side(self):
        spec = SumSpec(Bound.of(0), Bound(N), af(K + 1))
        assert evaluate_sum(spec, env(n=3)) == 1 + 2 + 3 + 4

    def test_negative_lower_bound_clamps(self):
        spec = SumSpec(Bound(N - 2), Bound(N), const(1))
        assert evaluate_sum(spec, env(n=0)) == 1

    def test_capped_bound(self):
        spec = SumSpec(Bound.of(0), Bound(Affine.var("m"), cap=N), const(1))
        assert evaluate_sum(spec, env(n=2, m=5)) == 3

    def test_half_bound(self):
        spec = SumSpec(Bound.of(0), Bound(N, half=True), const(1))
        assert evaluate_sum(spec, env(n=5)) == 3


class TestSymbolic:
    def test_frisch_identity_symbolic_in_r(self):
        # Frisch with r symbolic: both sides equal as rational functions
        lhs_spec = SumSpec(Bound.of(0), Bound(N), prod(sign(K), binom(N, K), ibinom(K + R, S)))
        rhs_term = prod(quot(S, N + S), ibinom(N + R, N + S))
        for n in range(5):
            for s in (1, 2, 3):
                binding = env(n=n, s=s)
                lhs = evaluate_sum_symbolic(lhs_spec, binding, frozenset({"r"}))
                rhs = evaluate_symbolic(rhs_term, {**binding, "k": Fraction(0)}, frozenset({"r"}))
                assert rf_equal(lhs, rhs), (n, s)

    def test_inverse_binomial_denominator_degree(self):
        # binom(k+r, s)^-1 contributes a denominator of degree s in r
        value = evaluate_symbolic(ibinom(K + R, S), env(k=2, s=3), frozenset({"r"}))
        assert value.denominator.degree("r") == 3

    def test_symbolic_matches_numeric(self):
        term = prod(sign(K), binom(N, K), ibinom(K + R, S), quot(S, K + S))
        binding = env(k=1, n=3, s=2)
        symbolic = evaluate_symbolic(term, binding, frozenset({"r"}))
        for r in (Fraction(5), Fraction(7, 2)):
            numeric = evaluate(term, {**binding, "r": r})
            num = symbolic.numerator.evaluate({"r": r})
            den = symbolic.denominator.evaluate({"r": r})
            assert num / den == numeric

    def test_symbolic_lower_index_rejected(self):
        with pytest.raises(PreconditionError):
            evaluate_symbolic(binom(N, K + S), env(k=0, n=3), frozenset({"s"}))


class TestStructure:
    def test_substitute_index(self):
        term = prod(sign(K), binom(N, K))
        reflected = substitute_index(term, N - K)
        for n in range(5):
            for k in range(n + 1):
                a = evaluate(reflected, env(k=k, n=n))
                b = evaluate(term, env(k=n - k, n=n))
                assert a == b

    def test_collect_names(self):
        term = prod(sign(K), binom(N, K), ibinom(K + R, S))
        assert collect_names(term) == {"k", "n", "r", "s"}
