"""Derivation schemes: Beta integration forms, transforms, rewrites."""

from fractions import Fraction

import mpmath as mp
import pytest

from combident.affine import Affine, Bound
from combident.catalog import (
    FIXTURES,
    GEOM_SUM,
    GOULD,
    MACMAHON,
    SIMONS,
    get_entry,
    macmahon_doubled,
)
from combident.descriptors import (
    VERIFIED,
    check_two_sided,
    eval_side,
    rename_descriptor_parameters,
)
from combident.errors import NonIntegerExponentError, ShapeError, SingularExponentError
from combident.integrals import (
    PACKAGED_FORMS,
    BetaArgs,
    beta_integral_exact,
    beta_integral_quadrature,
)
from combident.terms import SumSpec, evaluate_blocks
from combident.transforms import (
    check_derived,
    frisch_transform,
    klamkin_transform,
    match_against_entry,
    moment_transform,
    rewrite_descriptor,
)


def binding(**values):
    return {name: Fraction(v) for name, v in values.items()}


class TestBetaIntegrals:
    def test_unit_interval(self):
        assert beta_integral_exact(BetaArgs.of(0, 0)) == 1

    def test_one_one(self):
        assert beta_integral_exact(BetaArgs.of(1, 1)) == Fraction(1, 6)

    def test_packaged_form_spot(self):
        # exponents (r+k-s, s-1) at r=3, k=2, s=2 give 1/20 both ways
        args, closed = PACKAGED_FORMS["upper-weight"](3, 2, 2, 0)
        assert closed() == Fraction(1, 20) == beta_integral_exact(args)

    def test_packaged_forms_agree_with_factorial_formula(self):
        checked = 0
        for name, form in PACKAGED_FORMS.items():
            n_values = range(5) if name == "reflected" else (0,)
            for r in range(12):
                for k in range(5):
                    for s in range(5):
                        for n in n_values:
                            args, closed = form(r, k, s, n)
                            if args.a < 0 or args.b < 0 or args.a > 20 or args.b > 20:
                                continue
                            assert closed() == beta_integral_exact(args), (name, r, k, s, n)
                            checked += 1
        assert checked > 500

    def test_exact_rejects_non_integer(self):
        with pytest.raises(NonIntegerExponentError):
            beta_integral_exact(BetaArgs.of(Fraction(1, 2), 0))

    def test_quadrature_guards_singular(self):
        with pytest.raises(SingularExponentError):
            beta_integral_quadrature(BetaArgs.of(Fraction(-1, 2), 0))

    def test_quadrature_tolerance_sweep(self):
        worst = mp.mpf(0)
        for a in range(0, 21, 4):
            for b in range(0, 21, 4):
                exact = beta_integral_exact(BetaArgs.of(a, b))
                estimate = beta_integral_quadrature(BetaArgs.of(a, b))
                worst = max(worst, abs(estimate - mp.mpf(exact.numerator) / exact.denominator))
        assert worst <= mp.mpf("1e-10")

    def test_quadrature_unit_case(self):
        estimate = beta_integral_quadrature(BetaArgs.of(0, 0))
        assert abs(estimate - 1) < mp.mpf("1e-30")


class TestWeightTransform:
    def test_gould_gives_generalized_frisch(self):
        plain = match_against_entry(frisch_transform(GOULD), "C05")
        assert plain.ok and plain.factors == (Fraction(1),)
        flipped = match_against_entry(frisch_transform(GOULD, direction="transposed"), "C06")
        assert flipped.ok and flipped.factors == (Fraction(1),)

    def test_simons_gives_frisch_type(self):
        report = match_against_entry(frisch_transform(SIMONS), "C10")
        assert report.ok and report.factors == (Fraction(1),)

    def test_geometric_gives_inverse_binomial_sum(self):
        report = match_against_entry(frisch_transform(GEOM_SUM), "C28")
        assert report.ok and report.factors == (Fraction(1),)

    def test_macmahon_gives_cubed_binomial_identity(self):
        report = match_against_entry(frisch_transform(MACMAHON), "C31")
        assert report.ok and report.factors == (Fraction(1),)

    def test_concrete_parameters(self):
        derived = frisch_transform(SIMONS, r=Fraction(7, 2), s=2)
        for n in range(7):
            assert check_derived(derived, binding(n=n)).status == VERIFIED

    def test_name_collision_rejected(self):
        with pytest.raises(ShapeError):
            frisch_transform(GOULD, r="u")


class TestReciprocalTransform:
    def test_gould_gives_generalized_klamkin(self):
        plain = match_against_entry(klamkin_transform(GOULD), "C18")
        assert plain.ok and plain.factors == (Fraction(1),)
        flipped = match_against_entry(klamkin_transform(GOULD, direction="transposed"), "C19")
        assert flipped.ok and flipped.factors == (Fraction(1),)

    def test_simons_gives_klamkin_type(self):
        report = match_against_entry(klamkin_transform(SIMONS), "C17")
        assert report.ok
        assert set(report.factors) <= {Fraction(1), Fraction(-1)}

    def test_reflected_seed_gives_two_denominator_identity(self):
        seed = rename_descriptor_parameters(get_entry("C02").descriptor, {"r": "t", "s": "u"})
        report = match_against_entry(klamkin_transform(seed), "C14")
        assert report.ok
        # both sides of the derivation carry the common factor t + 1
        assert all(f != 0 for f in report.factors)


class TestMomentTransform:
    def test_order_zero_collapses_to_x_equals_one(self):
        # at m = 0 only the k = 0 term of the right side survives
        derived = moment_transform(SIMONS, 0, "direct")
        for n in range(8):
            b = binding(n=n)
            result = check_derived(derived, b)
            assert result.status == VERIFIED
            right_at_one = eval_side(SIMONS, "right", b).evaluate({"x": Fraction(1)})
            assert result.lhs == right_at_one

    def test_direct_matches_family(self):
        for m in range(6):
            derived = moment_transform(SIMONS, m, "direct")
            report = match_against_entry(
                derived, "C37", {"n": [Fraction(v) for v in range(9)], "m": [Fraction(m)]}
            )
            assert report.ok and report.factors == (Fraction(1),), m

    def test_reflected_matches_family(self):
        for m in range(6):
            derived = moment_transform(SIMONS, m, "reflected")
            report = match_against_entry(
                derived, "C38", {"n": [Fraction(v) for v in range(9)], "m": [Fraction(m)]}
            )
            assert report.ok and set(report.factors) <= {Fraction(1), Fraction(-1)}, m

    def test_swapped_variants_verify(self):
        for variant in ("swapped", "swapped_reflected"):
            derived = moment_transform(SIMONS, 2, variant)
            for n in range(8):
                assert check_derived(derived, binding(n=n)).status == VERIFIED, variant

    def test_truncation_extending_range_changes_nothing(self):
        # summands beyond k = m vanish, so the capped and full ranges agree
        for m in range(5):
            derived = moment_transform(SIMONS, m, "direct")
            capped = derived.rhs[0]
            full = SumSpec(capped.lo, Bound(Affine.var("n")), capped.term)
            for n in range(9):
                b = binding(n=n)
                assert evaluate_blocks((capped,), b) == evaluate_blocks((full,), b)

    def test_dixon_complements_from_doubled_macmahon(self):
        doubled = macmahon_doubled()
        for m, entry in ((1, "C33"), (2, "C34")):
            derived = moment_transform(doubled, m, "direct")
            report = match_against_entry(derived, entry, {"n": [Fraction(v) for v in range(6)]})
            assert report.ok and report.factors == (Fraction(1),)

    def test_wrong_shape_rejected(self):
        with pytest.raises(ShapeError):
            moment_transform(GOULD, 1, "direct")  # left kernel is x^(n-k)
        with pytest.raises(ShapeError):
            moment_transform(macmahon_doubled(), 1, "reflected")  # mixed right side

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            moment_transform(SIMONS, -1, "direct")


class TestRewrites:
    def test_negate_restores_canonical_form(self):
        printed = get_entry("C01").descriptor
        canonical = rewrite_descriptor(printed, "negate_x")
        for n in range(6):
            b = binding(n=n, r=Fraction(7, 2), s=2)
            assert check_two_sided(canonical, b).status == VERIFIED
        # applying the rule twice restores the original
        assert rewrite_descriptor(canonical, "negate_x") == printed

    def test_reciprocal_form_verifies(self):
        printed = get_entry("C01").descriptor
        flipped = rewrite_descriptor(printed, "reciprocal_x")
        assert flipped.left.blocks[0].x_exp == Affine.var("n") - Affine.var("k")
        for n in range(6):
            b = binding(n=n, r=3, s=2)
            assert check_two_sided(flipped, b).status == VERIFIED

    def test_reflect_is_involution(self):
        for desc in FIXTURES.values():
            assert rewrite_descriptor(rewrite_descriptor(desc, "reflect_x"), "reflect_x") == desc

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            rewrite_descriptor(SIMONS, "conjugate_x")
