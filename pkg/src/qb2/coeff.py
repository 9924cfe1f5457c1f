"""Exact arithmetic in the rational function field Q(q, a, b).

``q`` is the deformation parameter, taken generic (transcendental over Q),
which is exactly the "not a root of unity" hypothesis.  ``a`` and ``b`` are
optional symbolic stand-ins for the quotient parameters alpha and beta, so
identities can be checked for all parameter values at once rather than at
sample points.

A :class:`Scalar` is stored as a reduced fraction of integer polynomials
(python-flint ``fmpz_mpoly``) whose denominator has a positive leading
coefficient; with that normal form, equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import flint

__all__ = [
    "Scalar",
    "EvaluationError",
    "Q",
    "ALPHA",
    "BETA",
    "ZERO",
    "ONE",
    "qpow",
    "c1",
    "c2",
    "c3",
    "as_scalar",
    "eval_at",
    "parse_scalar",
]

VARIABLES = ("q", "a", "b")
_CTX = flint.fmpz_mpoly_ctx.get(VARIABLES, "lex")
_POLY_ONE = _CTX.from_dict({(0, 0, 0): 1})
_POLY_ZERO = _CTX.from_dict({})


class EvaluationError(ArithmeticError):
    """Raised when a scalar cannot be evaluated at the requested point."""


def _int_poly(n: int):
    return _CTX.from_dict({(0, 0, 0): n}) if n else _POLY_ZERO


class Scalar:
    """An element of Q(q, a, b) in reduced-fraction normal form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
        elif isinstance(value, int):
            self.num, self.den = _int_poly(value), _POLY_ONE
        elif isinstance(value, Rational):
            value = Fraction(value)
            self.num = _int_poly(value.numerator)
            self.den = _int_poly(value.denominator)
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def from_polys(cls, num, den=None) -> "Scalar":
        """Build ``num/den`` from flint polynomials and normalize."""
        if den is None:
            return cls._raw(num, _POLY_ONE)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls._raw(_POLY_ZERO, _POLY_ONE)
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        return cls._raw(num, den)

    # -- field operations ------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            if self.den.is_one():
                return Scalar._raw(self.num + other.num, _POLY_ONE)
            return Scalar.from_polys(self.num + other.num, self.den)
        return Scalar.from_polys(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num * other.num, _POLY_ONE)
        # cross-cancel before multiplying to keep the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar._raw(num, den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return Scalar._raw(self.num**n, self.den**n)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    tuple(zip(self.num.monoms(), map(int, self.num.coeffs()))),
                    tuple(zip(self.den.monoms(), map(int, self.den.coeffs()))),
                )
            )
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- inspection ------------------------------------------------------
    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(int(self.num.coefficient(0)) if not self.num.is_zero() else 0,
                        int(self.den.coefficient(0)))

    def symbols(self) -> set[str]:
        """Names of the variables the scalar actually depends on."""
        used = set()
        for poly in (self.num, self.den):
            for mon in poly.monoms():
                used.update(v for v, e in zip(VARIABLES, mon) if e)
        return used

    def numerator_terms(self) -> int:
        return len(self.num)

    def sqrt(self) -> "Scalar | None":
        """Square root in Q(q, a, b), or ``None`` if there is none."""
        if not self:
            return ZERO
        try:
            return Scalar._raw(self.num.sqrt(), self.den.sqrt())
        except Exception:
            return None

    def subs(self, **values) -> "Scalar":
        """Substitute Scalars (or rationals) for some of ``q``, ``a``, ``b``."""
        vals = [as_scalar(values[v]) if v in values else _GENS[v] for v in VARIABLES]
        return _eval_poly(self.num, vals) / _eval_poly(self.den, vals)

    def eval_at(self, q0, **params) -> Fraction:
        """Evaluate exactly at ``q = q0`` (parameters must be given if used)."""
        point = {"q": Fraction(q0)}
        for name in ("a", "b"):
            if name in params:
                point[name] = Fraction(params[name])
        missing = self.symbols() - point.keys()
        if missing:
            raise EvaluationError(f"no value given for {sorted(missing)}")
        den = _eval_fraction(self.den, point)
        if den == 0:
            raise EvaluationError(f"pole of {self} at q = {q0}")
        return _eval_fraction(self.num, point) / den

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return render(self)


def _eval_fraction(poly, point) -> Fraction:
    total = Fraction(0)
    for mon, coeff in zip(poly.monoms(), poly.coeffs()):
        term = Fraction(int(coeff))
        for name, e in zip(VARIABLES, mon):
            if e:
                term *= point[name] ** int(e)
        total += term
    return total


def _eval_poly(poly, vals) -> Scalar:
    total = ZERO
    for mon, coeff in zip(poly.monoms(), poly.coeffs()):
        term = Scalar(int(coeff))
        for v, e in zip(vals, mon):
            if e:
                term = term * v ** int(e)
        total = total + term
    return total


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar(x)
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions and Scalars; strings are parsed."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"not a scalar: {x!r}")
    return s


def eval_at(s, q0, **params) -> Fraction:
    return as_scalar(s).eval_at(q0, **params)


def parse_scalar(text: str) -> Scalar:
    from .parsing import evaluate_scalar

    return evaluate_scalar(text)


# -- rendering -------------------------------------------------------------

def _render_monomial(exps) -> str:
    parts = []
    for name, e in zip(VARIABLES, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_terms(terms) -> str:
    """Render ``[(Fraction, exps)]`` as a signed sum, highest term first."""
    out = []
    for coeff, exps in terms:
        sign = "-" if coeff < 0 else "+"
        c = abs(coeff)
        mon = _render_monomial(exps)
        if not mon:
            body = str(c)
        elif c == 1:
            body = mon
        else:
            body = f"{c}*{mon}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _poly_terms(poly, scale=Fraction(1), shift=0):
    return [
        (Fraction(int(c)) / scale, (m[0] - shift, m[1], m[2]))
        for m, c in zip(poly.monoms(), poly.coeffs())
    ]


def render(s: Scalar) -> str:
    """Textual form that :func:`parse_scalar` reads back.

    Denominators that are a pure power of ``q`` (times a positive integer)
    are folded into negative exponents, so ``1/q^2`` prints as ``q^-2``.
    """
    if not s:
        return "0"
    den = s.den
    if den.is_one():
        return _render_terms(_poly_terms(s.num))
    if len(den) == 1:
        (mon,), (c,) = den.monoms(), den.coeffs()
        if mon[1] == 0 and mon[2] == 0:
            return _render_terms(_poly_terms(s.num, Fraction(int(c)), mon[0]))
    num_text = _render_terms(_poly_terms(s.num))
    den_text = _render_terms(_poly_terms(den))
    if len(s.num) > 1:
        num_text = f"({num_text})"
    if len(den) > 1 or "*" in den_text or "^" in den_text:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


def is_simple(s: Scalar) -> bool:
    """True if ``str(s)`` is a single signed product (no top-level sum)."""
    text = render(s).lstrip("-")
    depth = 0
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and prev != "^":
            return False
        prev = ch
    return True


def is_negative_simple(s: Scalar) -> bool:
    return is_simple(s) and render(s).startswith("-")


ZERO = Scalar(0)
ONE = Scalar(1)
Q = Scalar.from_polys(_CTX.gens()[0])
ALPHA = Scalar.from_polys(_CTX.gens()[1])
BETA = Scalar.from_polys(_CTX.gens()[2])
_GENS = {"q": Q, "a": ALPHA, "b": BETA}


@lru_cache(maxsize=None)
def qpow(n: int) -> Scalar:
    """``q**n`` for any integer ``n``."""
    return Q**n


# structure constants of the quartic relation in the simple quotients
c1 = qpow(4) - 1
c2 = qpow(2) * (qpow(2) + 1)
c3 = qpow(6) / (1 - qpow(2))
