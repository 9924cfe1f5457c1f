"""Expression parser and evaluator for every algebra in the package.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ['^' exponent]
    exponent:= ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
    primary := INT | IDENT | '(' expr ')'

There is no implicit multiplication.  ``q``, ``a`` and ``b`` are scalar
atoms in every context; a divisor must evaluate to a scalar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .coeff import ALPHA, BETA, Q, Scalar
from .sparse import SparseElement

__all__ = [
    "ParseError",
    "ContextError",
    "parse",
    "evaluate",
    "eval_nf",
    "evaluate_scalar",
    "get_context",
    "parse_ideal",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ContextError(ValueError):
    """An atom or operation is not available in the chosen algebra."""


# -- AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Atom, Neg, Add, Sub, Mul, Div, Pow]

# -- tokenizer and parser -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'?)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}", tok[2])

    def is_op(self, chars):
        kind, value, _ = self.peek()
        return kind == "op" and value in chars

    def expr(self) -> Node:
        node = self.term()
        while self.is_op("+-"):
            op = self.take()[1]
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.is_op("*/"):
            op = self.take()[1]
            right = self.unary()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def unary(self) -> Node:
        if self.is_op("-"):
            self.take()
            return Neg(self.unary())
        if self.is_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.is_op("^"):
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        paren = self.is_op("(")
        if paren:
            self.take()
        sign = 1
        if self.is_op("+-"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, value, pos = self.take()
        if kind != "int":
            raise ParseError("exponent must be an integer", pos)
        if paren:
            self.expect(")")
        return sign * int(value)

    def primary(self) -> Node:
        kind, value, pos = self.take()
        if kind == "int":
            return Num(int(value))
        if kind == "ident":
            return Atom(value)
        if value == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError("expected a number, name or '('" if kind != "end" else "unexpected end", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos)
        return node


# -- contexts ------------------------------------------------------------------------

SCALAR_ATOMS = {"q": Q, "a": ALPHA, "b": BETA}


@dataclass
class Context:
    name: str
    atoms: dict
    invert: Optional[Callable] = None

    def atom(self, name: str):
        if name in SCALAR_ATOMS:
            return SCALAR_ATOMS[name]
        try:
            return self.atoms[name]
        except KeyError:
            raise ContextError(f"unknown atom {name!r} in context {self.name}") from None


def _split_args(text: str) -> list[str]:
    args, depth, cur = [], 0, ""
    for ch in text:
        if ch in ",;" and depth == 0:
            args.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    args.append(cur.strip())
    return [a for a in args if a]


def _u_context() -> Context:
    from .upbw import E1, E2, E3, E3BAR, Z, ZPRIME

    return Context("U", {"e1": E1, "e2": E2, "e3": E3, "e3bar": E3BAR, "z": Z, "z'": ZPRIME})


def _b_context(alpha: Scalar) -> Context:
    from .quotient import BElement, project_B
    from .upbw import E3BAR, ZPRIME

    atoms = dict(BElement.gens(alpha))
    atoms["e3bar"] = project_B(E3BAR, alpha)
    atoms["z"] = BElement.gens(alpha)["e1"].one().scale(alpha)
    atoms["z'"] = project_B(ZPRIME, alpha)
    return Context(f"B({alpha})", atoms)


def _a_context(alpha: Scalar, beta: Scalar) -> Context:
    from .quotient import AElement, project_A
    from .upbw import E3BAR, Z, ZPRIME

    atoms = dict(AElement.gens(alpha, beta))
    atoms["e3bar"] = project_A(E3BAR, alpha, beta)
    atoms["z"] = project_A(Z, alpha, beta)
    atoms["z'"] = project_A(ZPRIME, alpha, beta)
    return Context(f"A({alpha}, {beta})", atoms)


def _h_context() -> Context:
    from .quotient import HElement, omega

    atoms = dict(HElement.gens())
    atoms["Omega"] = omega()
    return Context("H", atoms)


def _torus_context() -> Context:
    from .gwa import TorusElement, torus_units_shape

    def invert(x):
        return x.inverse() if torus_units_shape(x) is not None else None

    return Context("Torus", {"x": TorusElement.monomial(1, 0), "y": TorusElement.monomial(0, 1)}, invert)


def _gwa_context(spec) -> Context:
    def invert(x):
        if len(x.terms) != 1:
            return None
        ((n, e), v), = x.terms.items()
        if n != 0:
            return None
        return spec.element({(0, -e): v.inv()})

    return Context("GWA", {"x": spec.x, "y": spec.y, "h": spec.h()}, invert)


def get_context(text: str) -> Context:
    """Build a context from ``U``, ``B(s)``, ``A(s, s)``, ``H``, ``Torus``,
    ``GWA0b(s)``, ``GWAa0(s)`` or ``GWA(s; r(h))``."""
    from .gwa import GwaAlgebraSpec, LaurentPoly, spec_0beta, spec_alpha0

    m = re.fullmatch(r"\s*([A-Za-z0-9]+)\s*(?:\((.*)\))?\s*", text)
    if not m:
        raise ContextError(f"malformed context {text!r}")
    name, raw = m.group(1), m.group(2)
    args = _split_args(raw) if raw is not None else []

    def arity(n):
        if len(args) != n:
            raise ContextError(f"context {name} takes {n} argument(s)")

    if name == "U":
        arity(0)
        return _u_context()
    if name == "H":
        arity(0)
        return _h_context()
    if name == "Torus":
        arity(0)
        return _torus_context()
    if name == "B":
        arity(1)
        return _b_context(evaluate_scalar(args[0]))
    if name == "A":
        arity(2)
        return _a_context(evaluate_scalar(args[0]), evaluate_scalar(args[1]))
    if name == "GWA0b":
        arity(1)
        return _gwa_context(spec_0beta(evaluate_scalar(args[0])))
    if name == "GWAa0":
        arity(1)
        return _gwa_context(spec_alpha0(evaluate_scalar(args[0])))
    if name == "GWA":
        arity(2)
        scale = evaluate_scalar(args[0])
        probe = GwaAlgebraSpec(scale, LaurentPoly.const(1))
        a_elem = _evaluate(parse(args[1]), _gwa_context(probe))
        if isinstance(a_elem, Scalar):
            a_elem = probe.element({(0, 0): a_elem})
        if any(n != 0 for n, _ in a_elem.terms):
            raise ContextError("a must be a Laurent polynomial in h")
        a = LaurentPoly({e: v for (_, e), v in a_elem.terms.items()})
        return _gwa_context(GwaAlgebraSpec(scale, a))
    raise ContextError(f"unknown context {name!r}")


# -- evaluation --------------------------------------------------------------------

def parse(text: str, context: Optional[Union[str, Context]] = None) -> Node:
    """Parse ``text``; with a context, also check atoms and exponents."""
    node = _Parser(text).parse()
    if context is not None:
        _evaluate(node, get_context(context) if isinstance(context, str) else context)
    return node


def _evaluate(node: Node, ctx: Context):
    if isinstance(node, Num):
        return Scalar(node.value)
    if isinstance(node, Atom):
        return ctx.atom(node.name)
    if isinstance(node, Neg):
        return -_evaluate(node.arg, ctx)
    if isinstance(node, (Add, Sub, Mul)):
        left, right = _evaluate(node.left, ctx), _evaluate(node.right, ctx)
        if isinstance(node, Add):
            return left + right
        if isinstance(node, Sub):
            return left - right
        return left * right
    if isinstance(node, Div):
        left, right = _evaluate(node.left, ctx), _evaluate(node.right, ctx)
        if not isinstance(right, Scalar):
            raise ContextError("only division by scalars is supported")
        if not right:
            raise ZeroDivisionError("division by zero")
        return left / right
    if isinstance(node, Pow):
        base = _evaluate(node.base, ctx)
        if isinstance(base, Scalar):
            return base**node.exp
        if node.exp >= 0:
            return base**node.exp
        inverse = ctx.invert(base) if ctx.invert else None
        if inverse is None:
            raise ContextError(f"negative exponent on a non-invertible element in {ctx.name}")
        return inverse ** (-node.exp)
    raise TypeError(f"unknown node {node!r}")


_SCALAR_CONTEXT = Context("scalar", {})


def evaluate(text: str, context: Union[str, Context]):
    """Value of ``text`` as an element of the context algebra (or a Scalar)."""
    ctx = get_context(context) if isinstance(context, str) else context
    return _evaluate(_Parser(text).parse(), ctx)


def evaluate_scalar(text: str) -> Scalar:
    value = _evaluate(_Parser(text).parse(), _SCALAR_CONTEXT)
    if not isinstance(value, Scalar):
        raise ContextError(f"{text!r} is not a scalar")
    return value


def eval_nf(text: str, context: Union[str, Context]) -> str:
    """Canonical rendering of ``text`` in the context algebra."""
    ctx = get_context(context) if isinstance(context, str) else context
    value = evaluate(text, ctx)
    if isinstance(value, Scalar):
        if not ctx.atoms:
            return str(value)
        sample = next(iter(ctx.atoms.values()))
        value = sample.one().scale(value) if isinstance(sample, SparseElement) else value
    return str(value)


def parse_ideal(text: str):
    """Read ``<g1, g2, ...>`` with generators written in U."""
    from .strata import SpecError, ideal_from_generators
    from .upbw import UElement

    body = text.strip()
    if not (body.startswith("<") and body.endswith(">")):
        raise SpecError(f"ideal must be written <...>: {text!r}")
    ctx = _u_context()
    gens = []
    for part in _split_args(body[1:-1]):
        value = evaluate(part, ctx)
        gens.append(UElement.scalar(value) if isinstance(value, Scalar) else value)
    return ideal_from_generators(gens)

