"""Two-sided polynomial identities in x, bindings, and exact checking.

An identity side is a list of kernel blocks; each block sums
``coef(k) * x^a(k) * (1-x)^b(k) * (1+x)^c(k)`` over an integer range.  The
classical descriptor shape (plain ``x^p(k)`` on the left, ``(1-x)^q(k)`` on
the right) is the single-block special case; the mixed-kernel generality is
what the Waring and MacMahon identities need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .affine import Affine, Bound
from .errors import PoleError, PreconditionError, ShapeError, UnboundParameterError
from .poly import Polynomial
from .terms import TermExpr, evaluate, rename_parameters as rename_term

Scalar = Union[int, Fraction]

VERIFIED = "verified"
FAILED = "failed"
SKIPPED_POLE = "skipped_pole"
SKIPPED_PRECONDITION = "skipped_precondition"

#: parameter sorts: non-negative integer, integer, rational
SORTS = ("nat", "int", "rat")

_ZERO = Affine.of(0)


@dataclass(frozen=True)
class KernelBlock:
    lo: Bound
    hi: Bound
    coef: TermExpr
    x_exp: Affine = _ZERO
    one_minus_exp: Affine = _ZERO
    one_plus_exp: Affine = _ZERO


@dataclass(frozen=True)
class Side:
    blocks: tuple[KernelBlock, ...]


@dataclass(frozen=True)
class IdentityDescriptor:
    """A two-sided polynomial identity in x with named rational parameters."""

    params: tuple[tuple[str, str], ...]  # (name, sort)
    left: Side
    right: Side
    name: str = field(default="", compare=False)

    def sort_of(self, name: str) -> str | None:
        for n, s in self.params:
            if n == name:
                return s
        return None


def pure_descriptor(
    params,
    f: TermExpr,
    p: Affine,
    l_bounds: tuple[Bound, Bound],
    g: TermExpr,
    q: Affine,
    n_bounds: tuple[Bound, Bound],
    name: str = "",
) -> IdentityDescriptor:
    """The classical shape: sum f(k) x^p(k) == sum g(k) (1-x)^q(k)."""
    return IdentityDescriptor(
        params=tuple(params),
        left=Side((KernelBlock(l_bounds[0], l_bounds[1], f, x_exp=p),)),
        right=Side((KernelBlock(n_bounds[0], n_bounds[1], g, one_minus_exp=q),)),
        name=name,
    )


# -- bindings ---------------------------------------------------------------

ParamBinding = dict[str, Fraction]


def make_binding(**values: Scalar) -> ParamBinding:
    return {name: Fraction(v) for name, v in values.items()}


def check_sorts(desc_params, binding: Mapping[str, Fraction]) -> str | None:
    """Return a violation message, or None when the binding fits the sorts."""
    for name, sort in desc_params:
        if name not in binding:
            raise UnboundParameterError(name)
        value = Fraction(binding[name])
        if sort in ("nat", "int") and value.denominator != 1:
            return f"{name} = {value} is not an integer"
        if sort == "nat" and value < 0:
            return f"{name} = {value} is negative"
    return None


# -- validity predicates ----------------------------------------------------

@dataclass(frozen=True)
class RangeConstraint:
    expr: Affine
    relation: str  # ">=", ">", "!="
    bound: int

    def holds(self, binding: Mapping[str, Fraction]) -> bool:
        value = Fraction(self.expr.evaluate(binding))
        if self.relation == ">=":
            return value >= self.bound
        if self.relation == ">":
            return value > self.bound
        if self.relation == "!=":
            return value != self.bound
        raise ValueError(f"unknown relation {self.relation!r}")

    def describe(self) -> str:
        return f"{self.expr} {self.relation} {self.bound}"


@dataclass(frozen=True)
class IntegerValued:
    expr: Affine

    def holds(self, binding: Mapping[str, Fraction]) -> bool:
        return Fraction(self.expr.evaluate(binding)).denominator == 1

    def describe(self) -> str:
        return f"{self.expr} integer"


@dataclass(frozen=True)
class NonzeroBinomial:
    """Documents a denominator binomial; vanishing is caught during evaluation."""

    upper: Affine
    lower: Affine

    def describe(self) -> str:
        return f"binom({self.upper}, {self.lower}) != 0"


Constraint = Union[RangeConstraint, IntegerValued]


@dataclass(frozen=True)
class ValidityPredicate:
    constraints: tuple[Constraint, ...] = ()

    def violation(self, binding: Mapping[str, Fraction]) -> str | None:
        for c in self.constraints:
            if not c.holds(binding):
                return c.describe()
        return None


# -- check results ----------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    identity: str
    binding: ParamBinding
    status: str
    lhs: object = None
    rhs: object = None
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAILED


def binding_key(binding: Mapping[str, Fraction]):
    return tuple(sorted((name, Fraction(v)) for name, v in binding.items()))


def format_binding(binding: Mapping[str, Fraction]) -> str:
    return ", ".join(f"{name}={value}" for name, value in sorted(binding.items()))


# -- evaluation -------------------------------------------------------------

_X = Polynomial.variable("x")
_ONE_MINUS_X = Polynomial.constant(1) - _X
_ONE_PLUS_X = Polynomial.constant(1) + _X


def _kernel_exponent(a: Affine, env, what: str) -> int:
    value = Fraction(a.evaluate(env))
    if value.denominator != 1:
        raise PreconditionError(f"{what} exponent {a} is not an integer")
    e = int(value)
    if e < 0:
        raise PreconditionError(f"{what} exponent {a} is negative ({e})")
    return e


def eval_side(desc: IdentityDescriptor, side: str, binding: Mapping[str, Fraction]) -> Polynomial:
    """Fully expanded canonical polynomial in x for one side."""
    blocks = (desc.left if side == "left" else desc.right).blocks
    result = Polynomial.constant(0)
    for block in blocks:
        lo = max(0, block.lo.evaluate(binding))
        hi = block.hi.evaluate(binding)
        for k in range(lo, hi + 1):
            env = dict(binding)
            env["k"] = Fraction(k)
            coef = evaluate(block.coef, env)
            piece = Polynomial.constant(coef)
            a = _kernel_exponent(block.x_exp, env, "x")
            b = _kernel_exponent(block.one_minus_exp, env, "(1-x)")
            c = _kernel_exponent(block.one_plus_exp, env, "(1+x)")
            if a:
                piece = piece * _X**a
            if b:
                piece = piece * _ONE_MINUS_X**b
            if c:
                piece = piece * _ONE_PLUS_X**c
            result = result + piece
    return result


def eval_side_at(
    desc: IdentityDescriptor, side: str, binding: Mapping[str, Fraction], x0: Scalar
) -> Fraction:
    """Direct rational summation of a side at a concrete x value."""
    x0 = Fraction(x0)
    blocks = (desc.left if side == "left" else desc.right).blocks
    total = Fraction(0)
    for block in blocks:
        lo = max(0, block.lo.evaluate(binding))
        hi = block.hi.evaluate(binding)
        for k in range(lo, hi + 1):
            env = dict(binding)
            env["k"] = Fraction(k)
            coef = evaluate(block.coef, env)
            a = _kernel_exponent(block.x_exp, env, "x")
            b = _kernel_exponent(block.one_minus_exp, env, "(1-x)")
            c = _kernel_exponent(block.one_plus_exp, env, "(1+x)")
            total += coef * x0**a * (1 - x0) ** b * (1 + x0) ** c
    return total


def side_degree_bound(desc: IdentityDescriptor, side: str, binding: Mapping[str, Fraction]) -> int:
    """Largest total kernel exponent over the summation ranges."""
    blocks = (desc.left if side == "left" else desc.right).blocks
    best = 0
    for block in blocks:
        lo = max(0, block.lo.evaluate(binding))
        hi = block.hi.evaluate(binding)
        total = block.x_exp + block.one_minus_exp + block.one_plus_exp
        for k in (lo, hi):
            env = dict(binding)
            env["k"] = Fraction(k)
            best = max(best, int(Fraction(total.evaluate(env))))
    return best


def first_mismatch(lhs: Polynomial, rhs: Polynomial) -> str:
    diff = lhs - rhs
    if diff.is_zero():
        return ""
    mono, _ = diff.terms[0]
    power = dict(mono).get("x", 0)
    return (
        f"coefficient of x^{power}: lhs has {lhs.coefficient(mono)}, rhs has {rhs.coefficient(mono)}"
    )


def check_two_sided(
    desc: IdentityDescriptor,
    binding: Mapping[str, Fraction],
    validity: ValidityPredicate | None = None,
) -> CheckResult:
    """Verify one binding; evaluation errors become skip statuses."""
    binding = {name: Fraction(v) for name, v in binding.items()}
    label = desc.name or "descriptor"
    sort_issue = check_sorts(desc.params, binding)
    if sort_issue is not None:
        return CheckResult(label, binding, SKIPPED_PRECONDITION, witness=sort_issue)
    if validity is not None:
        issue = validity.violation(binding)
        if issue is not None:
            return CheckResult(label, binding, SKIPPED_PRECONDITION, witness=issue)
    try:
        lhs = eval_side(desc, "left", binding)
        rhs = eval_side(desc, "right", binding)
    except PoleError as exc:
        return CheckResult(label, binding, SKIPPED_POLE, witness=str(exc))
    except (PreconditionError, UnboundParameterError) as exc:
        return CheckResult(label, binding, SKIPPED_PRECONDITION, witness=str(exc))
    if lhs == rhs:
        return CheckResult(label, binding, VERIFIED, lhs=lhs, rhs=rhs)
    return CheckResult(label, binding, FAILED, lhs=lhs, rhs=rhs, witness=first_mismatch(lhs, rhs))


# -- structural rewrites ----------------------------------------------------

def transpose_descriptor(desc: IdentityDescriptor) -> IdentityDescriptor:
    """Swap the sides and exchange the x / (1-x) kernels (x -> 1-x).

    Preserves the truth value at every admissible binding; requires every
    block to be free of (1+x) kernels.
    """

    def flip(side: Side) -> Side:
        blocks = []
        for b in side.blocks:
            if not b.one_plus_exp.is_zero():
                raise ShapeError("transposition requires blocks without (1+x) kernels")
            blocks.append(
                KernelBlock(b.lo, b.hi, b.coef, x_exp=b.one_minus_exp, one_minus_exp=b.x_exp)
            )
        return Side(tuple(blocks))

    return IdentityDescriptor(
        params=desc.params,
        left=flip(desc.right),
        right=flip(desc.left),
        name=f"{desc.name}-transposed" if desc.name else "transposed",
    )


def rename_descriptor_parameters(
    desc: IdentityDescriptor, mapping: Mapping[str, str]
) -> IdentityDescriptor:
    def rename_side(side: Side) -> Side:
        return Side(
            tuple(
                KernelBlock(
                    b.lo.rename(mapping),
                    b.hi.rename(mapping),
                    rename_term(b.coef, mapping),
                    b.x_exp.rename(mapping),
                    b.one_minus_exp.rename(mapping),
                    b.one_plus_exp.rename(mapping),
                )
                for b in side.blocks
            )
        )

    return IdentityDescriptor(
        params=tuple((mapping.get(n, n), s) for n, s in desc.params),
        left=rename_side(desc.left),
        right=rename_side(desc.right),
        name=desc.name,
    )
