"""Text format for two-sided identities: tokenizer, parser, printer.

Grammar (UTF-8, ``#`` line comments)::

    identity  := header side "==" side
    header    := "params" decl ("," decl)* ";" | "params" ";"
    decl      := name ":" ("nat" | "int" | "rat")
    side      := block ("+" block)*
    block     := "sum" "[" "k" "=" bound ".." bound "]" term "*" kernel
    kernel    := atom ("*" atom)*
    atom      := "x^" exp | "(1-x)^" exp | "(1+x)^" exp
    exp       := affine-atom            # a name, an integer, or "(" affine ")"
    term      := factor ("*" factor)*
    factor    := rational | "(-1)^" exp | "binom(" affine "," affine ")" ["^-1"]
               | "pow(" affine "," affine ")" | "altpowsum(" affine "," affine "," affine ")"
               | quotient | affine-atom | "(" term ")"
    quotient  := affine-atom "/" affine-atom
    bound     := affine | "floor(" affine "/2" ")" | "min(" affine "," affine ")"
    affine    := signed linear combination of names with integer coefficients
                 plus a rational constant, e.g. "n - 2k + 1"

Printing produces normalized source; ``parse(print(d)) == d`` for every
descriptor this package constructs.  Rationals serialize as ``p/q`` in lowest
terms with the denominator omitted when it is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .affine import Affine, Bound
from .descriptors import SORTS, IdentityDescriptor, KernelBlock, Side
from .errors import DslArityError, DslSyntaxError
from .terms import (
    AffineFactor,
    AltPowerSum,
    Binom,
    Const,
    Power,
    Product,
    Quot,
    SignPow,
    TermExpr,
    TermSum,
)

__all__ = ["parse_identity", "print_identity"]


# -- tokenizer ---------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "punct", "end"
    text: str
    line: int
    column: int


_PUNCT = ("..", "==", "^-1", "[", "]", "(", ")", ",", ";", ":", "^", "*", "/", "+", "-", "=")


def _tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, column = 1, 1
    i = 0
    while i < len(source):
        ch = source[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            column += 1
            continue
        if ch == "#":
            while i < len(source) and source[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(source) and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], line, column))
            column += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(source) and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], line, column))
            column += j - i
            i = j
            continue
        for punct in _PUNCT:
            if source.startswith(punct, i):
                tokens.append(Token("punct", punct, line, column))
                i += len(punct)
                column += len(punct)
                break
        else:
            raise DslSyntaxError(f"unexpected character {ch!r}", line, column)
    tokens.append(Token("end", "", line, column))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0
        self.params: list[tuple[str, str]] = []

    # basic machinery

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise DslSyntaxError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            found = repr(tok.text) if tok.text else "end of input"
            self.fail(f"expected {text!r}, found {found}", tok)
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    # grammar

    def identity(self) -> IdentityDescriptor:
        if self.peek().kind == "end":
            self.fail("empty identity source")
        self.header()
        left = self.side()
        self.expect("==")
        right = self.side()
        tok = self.next()
        if tok.kind != "end":
            self.fail(f"trailing input starting at {tok.text!r}", tok)
        return IdentityDescriptor(params=tuple(self.params), left=left, right=right)

    def header(self):
        tok = self.next()
        if tok.text != "params":
            self.fail("identity must start with a params header", tok)
        if self.accept(";"):
            return
        while True:
            name_tok = self.next()
            if name_tok.kind != "name":
                self.fail("expected parameter name", name_tok)
            if name_tok.text == "k":
                self.fail("k is the reserved summation index", name_tok)
            self.expect(":")
            sort_tok = self.next()
            if sort_tok.text not in SORTS:
                self.fail(f"unknown sort {sort_tok.text!r}", sort_tok)
            if any(name_tok.text == n for n, _ in self.params):
                self.fail(f"duplicate parameter {name_tok.text!r}", name_tok)
            self.params.append((name_tok.text, sort_tok.text))
            if self.accept(";"):
                return
            self.expect(",")

    def side(self) -> Side:
        blocks = [self.block()]
        while self.accept("+"):
            blocks.append(self.block())
        return Side(tuple(blocks))

    def block(self) -> KernelBlock:
        self.expect("sum")
        self.expect("[")
        index = self.next()
        if index.text != "k":
            self.fail("summation index must be k", index)
        self.expect("=")
        lo = self.bound()
        self.expect("..")
        hi = self.bound()
        self.expect("]")
        factors = [self.factor()]
        x_exp = one_minus = one_plus = Affine.of(0)
        saw_kernel = False
        while self.accept("*"):
            kind = self.try_kernel_atom()
            if kind is not None:
                name, exp = kind
                saw_kernel = True
                if name == "x":
                    x_exp = x_exp + exp
                elif name == "1-x":
                    one_minus = one_minus + exp
                else:
                    one_plus = one_plus + exp
                while self.accept("*"):
                    more = self.try_kernel_atom()
                    if more is None:
                        self.fail("only kernel atoms may follow the kernel")
                    name, exp = more
                    if name == "x":
                        x_exp = x_exp + exp
                    elif name == "1-x":
                        one_minus = one_minus + exp
                    else:
                        one_plus = one_plus + exp
                break
            factors.append(self.factor())
        if not saw_kernel:
            self.fail("block must end with a kernel such as x^k")
        coef = factors[0] if len(factors) == 1 else Product(tuple(factors))
        return KernelBlock(lo, hi, coef, x_exp, one_minus, one_plus)

    def try_kernel_atom(self) -> tuple[str, Affine] | None:
        # "x^e" | "(1-x)^e" | "(1+x)^e"
        if self.peek().text == "x" and self.peek(1).text == "^":
            self.next()
            self.next()
            return ("x", self.exponent_atom())
        if (
            self.peek().text == "("
            and self.peek(1).text == "1"
            and self.peek(2).text in ("-", "+")
            and self.peek(3).text == "x"
            and self.peek(4).text == ")"
            and self.peek(5).text == "^"
        ):
            op = self.peek(2).text
            for _ in range(6):
                self.next()
            return ("1-x" if op == "-" else "1+x", self.exponent_atom())
        return None

    def exponent_atom(self) -> Affine:
        if self.accept("("):
            a = self.affine()
            self.expect(")")
            return a
        tok = self.peek()
        if tok.kind == "int":
            self.next()
            return Affine.of(int(tok.text))
        if tok.kind == "name":
            self.next()
            return Affine.var(tok.text)
        self.fail("expected an exponent")

    def bound(self) -> Bound:
        if self.peek().text == "floor":
            self.next()
            self.expect("(")
            base = self.affine()
            self.expect("/")
            two = self.next()
            if two.text != "2":
                self.fail("only halving bounds are supported", two)
            self.expect(")")
            return Bound(base, half=True)
        if self.peek().text == "min":
            self.next()
            self.expect("(")
            base = self.affine()
            self.expect(",")
            cap = self.affine()
            self.expect(")")
            return Bound(base, cap=cap)
        return Bound(self.affine())

    def affine(self) -> Affine:
        total = Affine.of(0)
        negate = False
        if self.accept("-"):
            negate = True
        while True:
            total = total + self.affine_term(negate)
            if self.accept("+"):
                negate = False
            elif self.accept("-"):
                negate = True
            else:
                return total

    def affine_term(self, negate: bool) -> Affine:
        tok = self.next()
        sign = -1 if negate else 1
        if tok.kind == "int":
            value = int(tok.text)
            if self.peek().kind == "name":
                name = self.next().text
                return Affine.var(name, sign * value)
            if self.at("/") and self.peek(1).kind == "int":
                # rational constant inside an affine form
                self.next()
                den = int(self.next().text)
                return Affine.of(Fraction(sign * value, den))
            return Affine.of(sign * value)
        if tok.kind == "name":
            return Affine.var(tok.text, sign)
        self.fail("expected an affine term", tok)

    def factor(self) -> TermExpr:
        tok = self.peek()
        # (-1)^e
        if (
            tok.text == "("
            and self.peek(1).text == "-"
            and self.peek(2).text == "1"
            and self.peek(3).text == ")"
            and self.peek(4).text == "^"
        ):
            for _ in range(5):
                self.next()
            return SignPow(self.exponent_atom())
        if tok.text in ("binom", "pow", "altpowsum"):
            return self.call_factor()
        if tok.kind == "int":
            return self.number_or_quotient()
        if tok.text == "-" and self.peek(1).kind == "int":
            self.next()
            inner = self.number_or_quotient()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Quot(-inner.numer, inner.denom)
        if tok.text == "(":
            return self.paren_factor()
        if tok.kind == "name":
            self.next()
            left = Affine.var(tok.text)
            if self.accept("/"):
                return Quot(left, self.quotient_operand())
            return AffineFactor(left)
        self.fail("expected a factor")

    def call_factor(self) -> TermExpr:
        name_tok = self.next()
        self.expect("(")
        args = [self.affine()]
        while self.accept(","):
            args.append(self.affine())
        close = self.expect(")")
        arity = {"binom": 2, "pow": 2, "altpowsum": 3}[name_tok.text]
        if len(args) != arity:
            raise DslArityError(
                f"{name_tok.text} takes {arity} arguments, got {len(args)}",
                close.line,
                close.column,
            )
        if name_tok.text == "binom":
            inverted = False
            if self.accept("^-1"):
                inverted = True
            return Binom(args[0], args[1], inverted)
        if name_tok.text == "pow":
            return Power(args[0], args[1])
        return AltPowerSum(args[0], args[1], args[2])

    def number_or_quotient(self) -> TermExpr:
        first = int(self.next().text)
        if self.accept("/"):
            den_tok = self.peek()
            if den_tok.kind == "int":
                self.next()
                return Const(Fraction(first, int(den_tok.text)))
            return Quot(Affine.of(first), self.quotient_operand())
        return Const(Fraction(first))

    def quotient_operand(self) -> Affine:
        if self.accept("("):
            a = self.affine()
            self.expect(")")
            return a
        tok = self.next()
        if tok.kind == "name":
            return Affine.var(tok.text)
        if tok.kind == "int":
            return Affine.of(int(tok.text))
        self.fail("expected a quotient denominator", tok)

    def paren_factor(self) -> TermExpr:
        # "(" could open a parenthesized term, a term sum, or an affine factor
        start = self.pos
        self.expect("(")
        try:
            a = self.affine()
            self.expect(")")
        except DslSyntaxError:
            self.pos = start
            self.expect("(")
            terms = [self.term_inside_parens()]
            while self.accept("+"):
                terms.append(self.term_inside_parens())
            self.expect(")")
            return terms[0] if len(terms) == 1 else TermSum(tuple(terms))
        if self.accept("/"):
            return Quot(a, self.quotient_operand())
        return AffineFactor(a)

    def term_inside_parens(self) -> TermExpr:
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))


def parse_identity(source: str) -> IdentityDescriptor:
    """Parse identity source into a descriptor.

    Raises :class:`DslSyntaxError` (with line and column) on malformed input
    and :class:`DslArityError` for function factors with the wrong arity.
    """
    return _Parser(source).identity()


# -- printer -----------------------------------------------------------------

def _print_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _print_affine(a: Affine) -> str:
    return str(a)


def _print_exponent(a: Affine) -> str:
    if a.is_constant():
        return _print_fraction(a.const)
    if len(a.coeffs) == 1 and a.const == 0 and a.coeffs[0][1] == 1:
        return a.coeffs[0][0]
    return f"({_print_affine(a)})"


def _print_operand(a: Affine) -> str:
    # bare for single names and plain integers, parenthesized otherwise
    return _print_exponent(a)


def _print_factor(expr: TermExpr) -> str:
    if isinstance(expr, Const):
        return _print_fraction(expr.value)
    if isinstance(expr, AffineFactor):
        return _print_operand(expr.value)
    if isinstance(expr, SignPow):
        return f"(-1)^{_print_exponent(expr.exponent)}"
    if isinstance(expr, Power):
        return f"pow({_print_affine(expr.base)}, {_print_affine(expr.exponent)})"
    if isinstance(expr, Binom):
        text = f"binom({_print_affine(expr.upper)}, {_print_affine(expr.lower)})"
        return text + "^-1" if expr.inverted else text
    if isinstance(expr, Quot):
        return f"{_print_operand(expr.numer)} / {_print_operand(expr.denom)}"
    if isinstance(expr, AltPowerSum):
        args = ", ".join(_print_affine(a) for a in (expr.count, expr.shift, expr.power))
        return f"altpowsum({args})"
    if isinstance(expr, Product):
        return " * ".join(_print_factor(f) for f in expr.factors)
    if isinstance(expr, TermSum):
        return "(" + " + ".join(_print_factor(t) for t in expr.terms) + ")"
    raise TypeError(f"cannot print {expr!r}")


def _print_term(expr: TermExpr) -> str:
    return _print_factor(expr)


def _print_bound(b: Bound) -> str:
    if b.half and b.cap is not None:
        raise ValueError("bounds cannot combine floor and min in source form")
    if b.half:
        return f"floor({_print_affine(b.base)}/2)"
    if b.cap is not None:
        return f"min({_print_affine(b.base)}, {_print_affine(b.cap)})"
    return _print_affine(b.base)


def _print_block(block: KernelBlock) -> str:
    kernel_atoms = []
    if not block.x_exp.is_zero():
        kernel_atoms.append(f"x^{_print_exponent(block.x_exp)}")
    if not block.one_minus_exp.is_zero():
        kernel_atoms.append(f"(1-x)^{_print_exponent(block.one_minus_exp)}")
    if not block.one_plus_exp.is_zero():
        kernel_atoms.append(f"(1+x)^{_print_exponent(block.one_plus_exp)}")
    if not kernel_atoms:
        kernel_atoms.append("x^0")
    header = f"sum[k={_print_bound(block.lo)}..{_print_bound(block.hi)}]"
    return f"{header} {_print_term(block.coef)} * " + " * ".join(kernel_atoms)


def _print_side(side: Side) -> str:
    return " + ".join(_print_block(b) for b in side.blocks)


def print_identity(desc: IdentityDescriptor) -> str:
    decls = ", ".join(f"{name}:{sort}" for name, sort in desc.params)
    header = f"params {decls};" if decls else "params ;"
    return f"{header}\n{_print_side(desc.left)}\n  == {_print_side(desc.right)}\n"
