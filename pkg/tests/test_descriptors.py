"""Two-sided identity checking: sides, statuses, transposition."""

from fractions import Fraction

from combident.affine import Affine
from combident.catalog import FIXTURES, GEOM_SUM, SIMONS, get_entry
from combident.descriptors import (
    SKIPPED_POLE,
    SKIPPED_PRECONDITION,
    VERIFIED,
    check_two_sided,
    eval_side,
    eval_side_at,
    side_degree_bound,
    transpose_descriptor,
)
from combident.poly import Polynomial

X = Polynomial.variable("x")


def binding(**values):
    return {name: Fraction(v) for name, v in values.items()}


class TestEvalSide:
    def test_geometric_left(self):
        assert eval_side(GEOM_SUM, "left", binding(n=2)) == 1 + X + X**2

    def test_simons_order_zero(self):
        b = binding(n=0)
        assert eval_side(SIMONS, "left", b) == Polynomial.constant(1)
        assert eval_side(SIMONS, "right", b) == Polynomial.constant(1)

    def test_seed_identity_spot_value(self):
        # left side of the first seed identity at n=1, r=2, s=1 is 1/2 + x/3
        desc = get_entry("C01").descriptor
        left = eval_side(desc, "left", binding(n=1, r=2, s=1))
        assert left == Polynomial.constant(Fraction(1, 2)) + Fraction(1, 3) * X
        right = eval_side(desc, "right", binding(n=1, r=2, s=1))
        assert right.substitute("x", 0) == Polynomial.constant(Fraction(1, 2))

    def test_degree_bound(self):
        for name, desc in FIXTURES.items():
            for n in range(1, 7):
                b = binding(n=n) if name != "F03" else binding(n=n, u=3)
                for side in ("left", "right"):
                    degree = eval_side(desc, side, b).degree("x")
                    assert degree <= side_degree_bound(desc, side, b), (name, side, n)

    def test_numeric_matches_polynomial(self):
        probe = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-2)]
        desc = get_entry("C01").descriptor
        b = binding(n=3, r=Fraction(7, 2), s=2)
        for side in ("left", "right"):
            p = eval_side(desc, side, b)
            for x0 in probe:
                assert p.evaluate({"x": x0}) == eval_side_at(desc, side, b, x0)


class TestCheckTwoSided:
    def test_fixtures_verify(self):
        for name, desc in FIXTURES.items():
            for n in range(0 if name != "F04" else 1, 9):
                b = binding(n=n) if name != "F03" else binding(n=n, u=Fraction(7, 3))
                assert check_two_sided(desc, b).status == VERIFIED, (name, n)

    def test_pole_binding_skips(self):
        desc = get_entry("C01").descriptor
        # integer r < s puts a zero under an inverse binomial
        result = check_two_sided(desc, binding(n=2, r=1, s=3))
        assert result.status == SKIPPED_POLE

    def test_sort_violation_skips(self):
        desc = get_entry("C01").descriptor
        result = check_two_sided(desc, binding(n=2, r=2, s=Fraction(1, 2)))
        assert result.status == SKIPPED_PRECONDITION

    def test_transposition_preserves_status(self):
        cases = [
            (GEOM_SUM, [binding(n=n) for n in range(7)]),
            (SIMONS, [binding(n=n) for n in range(7)]),
            (
                get_entry("F03").descriptor,
                [binding(n=n, u=u) for n in range(5) for u in (0, 2, Fraction(7, 3))],
            ),
        ]
        for desc, bindings in cases:
            flipped = transpose_descriptor(desc)
            for b in bindings:
                assert check_two_sided(desc, b).status == check_two_sided(flipped, b).status

    def test_transposition_is_involution(self):
        assert transpose_descriptor(transpose_descriptor(SIMONS)) == SIMONS
