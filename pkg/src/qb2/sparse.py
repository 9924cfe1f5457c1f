"""Finitely supported linear combinations of basis monomials.

Each algebra subclasses :class:`SparseElement`, supplying the product of two
basis keys and a rendering of one key.  Linear structure, equality and
scalar actions live here.
"""

from __future__ import annotations

from .coeff import ONE, ZERO, Scalar, _coerce, is_negative_simple, is_simple


class IncompatibleAlgebraError(ValueError):
    """Operands belong to quotients with different parameters."""


class SparseElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # subclasses with parameters override these three
    def params(self) -> tuple:
        return ()

    def _new(self, terms):
        obj = object.__new__(type(self))
        obj.terms = terms
        return obj

    def _mul_keys(self, k1, k2) -> dict:
        raise NotImplementedError

    def _render_key(self, key) -> str:
        raise NotImplementedError

    def _sort_key(self, key):
        return key

    # -- constructors --------------------------------------------------------
    def zero(self):
        return self._new({})

    def one(self):
        return self._new({self.unit_key(): ONE})

    def unit_key(self):
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.params() != self.params():
            raise IncompatibleAlgebraError(
                f"parameters differ: {self.params()} vs {other.params()}"
            )

    # -- linear structure ----------------------------------------------------
    def __add__(self, other):
        s = _coerce(other)
        if s is not None:
            other = self.one().scale(s)
        elif not isinstance(other, SparseElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            w = terms.get(k)
            w = v if w is None else w + v
            if w:
                terms[k] = w
            else:
                terms.pop(k, None)
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "SparseElement":
        s = _coerce(s)
        if not s:
            return self._new({})
        return self._new({k: v * s for k, v in self.terms.items()})

    def __mul__(self, other):
        s = _coerce(other)
        if s is not None:
            return self.scale(s)
        if not isinstance(other, SparseElement):
            return NotImplemented
        self._check(other)
        acc: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                c = v1 * v2
                for k, v in self._mul_keys(k1, k2).items():
                    w = acc.get(k)
                    acc[k] = v * c if w is None else w + v * c
        return self._new({k: v for k, v in acc.items() if v})

    def __rmul__(self, other):
        s = _coerce(other)
        if s is None:
            return NotImplemented
        return self.scale(s)

    def __truediv__(self, other):
        s = _coerce(other)
        if s is None:
            return NotImplemented
        return self.scale(s.inv())

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def commutator(self, other):
        return self * other - other * self

    # -- comparison / inspection ---------------------------------------------
    def __eq__(self, other):
        s = _coerce(other)
        if s is not None:
            other = self.one().scale(s)
        if not isinstance(other, SparseElement) or type(other) is not type(self):
            return NotImplemented
        return self.params() == other.params() and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.params(), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, ZERO)

    def support(self):
        return sorted(self.terms, key=self._sort_key)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for key in self.support():
            coeff = self.terms[key]
            mon = self._render_key(key)
            neg = is_negative_simple(coeff)
            c = -coeff if neg else coeff
            if mon == "1":
                body = str(c) if is_simple(c) else f"({c})"
            elif c == ONE:
                body = mon
            else:
                body = f"{c}*{mon}" if is_simple(c) else f"({c})*{mon}"
            pieces.append(("-" if neg else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


def power_text(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def monomial_text(pairs) -> str:
    parts = [power_text(n, e) for n, e in pairs if e]
    return "*".join(parts) if parts else "1"
