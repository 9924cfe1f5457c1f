"""Generalized Weyl algebras over Q(q,a,b)[h, 1/h] and the quantum torus.

A GWA ``R(sigma, a)`` has ``x r = sigma(r) x``, ``y r = sigma^-1(r) y``,
``x y = sigma(a)`` and ``y x = a``.  Elements are kept in ladder form: a sum
of ``r(h) X_n`` with ``X_n = x^n`` for ``n > 0`` and ``y^-n`` for ``n < 0``.
Internally a term is keyed by ``(n, e)`` for ``h^e X_n``.

The quantum torus has ``x y = q^2 y x``; ``x^m y^n`` is keyed by ``(m, n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .coeff import ONE, Scalar, as_scalar, c1, c2, c3, qpow
from .errors import ClaimViolation, DomainError
from .sparse import SparseElement, monomial_text, power_text

__all__ = [
    "LaurentPoly",
    "GwaAlgebraSpec",
    "GwaElement",
    "TorusElement",
    "gwa_mul",
    "torus_mul",
    "spec_0beta",
    "spec_alpha0",
    "check_theta_0beta",
    "check_theta_alpha0",
    "check_localization",
    "torus_units_shape",
]


class LaurentPoly(SparseElement):
    """Laurent polynomial in ``h``; keys are integer exponents."""

    __slots__ = ()

    def unit_key(self):
        return 0

    def _mul_keys(self, k1, k2):
        return {k1 + k2: ONE}

    def _render_key(self, key):
        return monomial_text((("h", key),))

    @classmethod
    def h(cls, e: int = 1, coeff=ONE) -> "LaurentPoly":
        return cls({e: as_scalar(coeff)})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls.h(0, c)

    def sigma(self, scale: Scalar, m: int = 1) -> "LaurentPoly":
        """Apply ``sigma^m`` where ``sigma(h) = scale * h``."""
        if m == 0:
            return self
        return LaurentPoly({e: v * scale ** (m * e) if e else v for e, v in self.terms.items()})


@dataclass(frozen=True)
class GwaAlgebraSpec:
    sigma_scale: Scalar
    a: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "sigma_scale", as_scalar(self.sigma_scale))
        if not self.sigma_scale:
            raise ValueError("sigma_scale must be non-zero")
        if not self.a:
            raise ValueError("a must be non-zero")

    def element(self, terms=None) -> "GwaElement":
        return GwaElement(terms, self)

    def laurent(self, r: LaurentPoly, n: int = 0) -> "GwaElement":
        return GwaElement({(n, e): v for e, v in r.terms.items()}, self)

    @property
    def x(self) -> "GwaElement":
        return GwaElement({(1, 0): ONE}, self)

    @property
    def y(self) -> "GwaElement":
        return GwaElement({(-1, 0): ONE}, self)

    def h(self, e: int = 1) -> "GwaElement":
        return GwaElement({(0, e): ONE}, self)


def _collapse(spec: GwaAlgebraSpec, n: int, m: int) -> tuple[LaurentPoly, int]:
    """``X_n X_m = r(h) X_(n+m)``; returns ``(r, n + m)``."""
    one = LaurentPoly.const(1)
    if n >= 0 and m >= 0 or n <= 0 and m <= 0:
        return one, n + m
    s, a = spec.sigma_scale, spec.a
    r = one
    if n > 0:
        # x^n y^t = sigma^n(a) x^(n-1) y^(t-1)
        t = min(n, -m)
        for i in range(t):
            r = r * a.sigma(s, n - i)
    else:
        # y^t x^m = sigma^-(t-1)(a) y^(t-1) x^(m-1)
        t = min(-n, m)
        for i in range(t):
            r = r * a.sigma(s, -(-n - 1 - i))
    return r, n + m


@lru_cache(maxsize=1 << 16)
def _gwa_mul_keys(spec: GwaAlgebraSpec, k1, k2) -> dict:
    (n, e), (m, f) = k1, k2
    # h^e X_n h^f X_m = scale^(n f) h^(e+f) X_n X_m
    lead = spec.sigma_scale ** (n * f) if n and f else ONE
    r, total = _collapse(spec, n, m)
    return {(total, e + f + g): lead * v for g, v in r.terms.items()}


class GwaElement(SparseElement):
    __slots__ = ("spec",)

    def __init__(self, terms=None, spec: Optional[GwaAlgebraSpec] = None):
        super().__init__(terms)
        self.spec = spec

    def params(self):
        return (self.spec,)

    def _new(self, terms):
        obj = object.__new__(GwaElement)
        obj.terms, obj.spec = terms, self.spec
        return obj

    def unit_key(self):
        return (0, 0)

    def _mul_keys(self, k1, k2):
        return _gwa_mul_keys(self.spec, k1, k2)

    def ladders(self) -> dict[int, LaurentPoly]:
        out: dict = {}
        for (n, e), v in self.terms.items():
            out.setdefault(n, {})[e] = v
        return {n: LaurentPoly(t) for n, t in sorted(out.items())}

    def _render_key(self, key):
        n, e = key
        ladder = power_text("x", n) if n > 0 else power_text("y", -n) if n < 0 else ""
        return monomial_text((("h", e),)) if not ladder else (
            ladder if not e else f"{power_text('h', e)}*{ladder}"
        )

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for n, r in self.ladders().items():
            ladder = power_text("x", n) if n > 0 else power_text("y", -n) if n < 0 else ""
            text = str(r)
            if not ladder:
                pieces.append(text)
            elif len(r) == 1:
                pieces.append(ladder if text == "1" else f"{text}*{ladder}")
            else:
                pieces.append(f"({text})*{ladder}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def gwa_mul(spec: GwaAlgebraSpec, u: GwaElement, v: GwaElement) -> GwaElement:
    if u.spec != spec or v.spec != spec:
        raise ValueError("operands do not belong to the given GWA")
    return u * v


# -- the two Theta maps -------------------------------------------------------

def spec_0beta(beta) -> GwaAlgebraSpec:
    """``sigma(h) = q^2 h``, ``a = h/(1-q^4) + beta q^6/((q^2-1)(q^4-1)) h^-1``."""
    beta = as_scalar(beta)
    q2, q4 = qpow(2), qpow(4)
    a = LaurentPoly({1: 1 / (1 - q4), -1: beta * qpow(6) / ((q2 - 1) * (q4 - 1))})
    return GwaAlgebraSpec(q2, a)


def spec_alpha0(alpha) -> GwaAlgebraSpec:
    """``sigma(h) = q^2 h``, ``a = h^-1/(1-q^4) - alpha/(q^2-1)``."""
    alpha = as_scalar(alpha)
    q2 = qpow(2)
    a = LaurentPoly({-1: 1 / (1 - qpow(4)), 0: -alpha / (q2 - 1)})
    return GwaAlgebraSpec(q2, a)


def _relation_residuals(e1, e2, e3, alpha: Scalar, beta: Scalar) -> dict:
    """The four defining relations of A_{alpha,beta} evaluated on given images."""
    q2, qm2 = qpow(2), qpow(-2)
    return {
        "e1e3": e1 * e3 - qm2 * (e3 * e1),
        "e2e3": e2 * e3 - q2 * (e3 * e2) - alpha,
        "e2e1": e2 * e1 - qm2 * (e1 * e2) + qm2 * e3,
        "quartic": e3 * e3 + c1 * (e3 * e1 * e2) + (alpha * c2) * e1 + beta * c3,
    }


def _report(residuals: dict, label: str) -> dict:
    ok = all(not r for r in residuals.values())
    if not ok:
        bad = {k: str(v) for k, v in residuals.items() if v}
        raise ClaimViolation(f"{label}: non-zero residuals {bad}")
    return {"residuals": residuals, "ok": ok}


def check_theta_0beta(beta) -> dict:
    """Images ``e1 -> y, e2 -> x, e3 -> h`` satisfy every relation of A_{0,beta}."""
    beta = as_scalar(beta)
    if not beta:
        raise DomainError("beta must be non-zero")
    spec = spec_0beta(beta)
    rep = _report(_relation_residuals(spec.y, spec.x, spec.h(), Scalar(0), beta), "theta_0beta")
    rep["spec"] = spec
    return rep


def check_theta_alpha0(alpha) -> dict:
    """Images ``e1 -> x^2 h, e2 -> y, e3 -> x`` satisfy every relation of A_{alpha,0}."""
    alpha = as_scalar(alpha)
    if not alpha:
        raise DomainError("alpha must be non-zero")
    spec = spec_alpha0(alpha)
    x = spec.x
    e1 = x * x * spec.h()
    rep = _report(_relation_residuals(e1, spec.y, x, alpha, Scalar(0)), "theta_alpha0")
    rep["spec"] = spec
    return rep


# -- quantum torus -------------------------------------------------------------

def _torus_mul_keys(k1, k2):
    (m, n), (p, r) = k1, k2
    # y^n x^p = q^(-2np) x^p y^n  since  x y = q^2 y x
    return {(m + p, n + r): qpow(-2 * n * p) if n and p else ONE}


class TorusElement(SparseElement):
    """Element of the quantum torus with ``x y = q^2 y x``."""

    __slots__ = ()

    def unit_key(self):
        return (0, 0)

    def _mul_keys(self, k1, k2):
        return _torus_mul_keys(k1, k2)

    def _render_key(self, key):
        m, n = key
        return monomial_text((("x", m), ("y", n)))

    @classmethod
    def monomial(cls, m: int, n: int, coeff=ONE) -> "TorusElement":
        return cls({(m, n): as_scalar(coeff)})

    def inverse(self) -> "TorusElement":
        shape = torus_units_shape(self)
        if shape is None:
            raise ZeroDivisionError(f"{self} is not a unit of the torus")
        lam, m, n = shape
        # (x^m y^n)^-1 = q^(-2mn) x^-m y^-n
        return TorusElement.monomial(-m, -n, lam.inv() * qpow(-2 * m * n))


def torus_mul(u: TorusElement, v: TorusElement) -> TorusElement:
    return u * v


def torus_units_shape(u: TorusElement) -> Optional[tuple[Scalar, int, int]]:
    """``(lam, m, n)`` if ``u = lam x^m y^n``, else ``None``."""
    if len(u.terms) != 1:
        return None
    ((m, n), lam), = u.terms.items()
    return lam, m, n


def localization_e2(alpha, beta) -> TorusElement:
    """The element of the torus forced on ``e2`` by the quartic relation.

    With ``x = e3`` and ``y = e1``, solving
    ``x^2 + c1 x y e2 + alpha c2 y + beta c3 = 0`` gives
    ``e2 = -(1/c1) (q^2 x y^-1 + q^-2 alpha c2 x^-1 + q^-2 beta c3 x^-1 y^-1)``.
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    return TorusElement(
        {
            (1, -1): -qpow(2) / c1,
            (-1, 0): -qpow(-2) * alpha * c2 / c1,
            (-1, -1): -qpow(-2) * beta * c3 / c1,
        }
    )


def printed_localization_e2(alpha, beta) -> TorusElement:
    """The same formula with ``q^2`` on the ``alpha`` term, as typeset in the source."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    return TorusElement(
        {
            (1, -1): -qpow(2) / c1,
            (-1, 0): -qpow(2) * alpha * c2 / c1,
            (-1, -1): -qpow(-2) * beta * c3 / c1,
        }
    )


def solve_localization_e2(alpha, beta) -> TorusElement:
    """Independent route: isolate ``e2`` from the quartic using torus inverses."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    x, y = TorusElement.monomial(1, 0), TorusElement.monomial(0, 1)
    xy_inv = (x * y).inverse()
    return (xy_inv * (x * x + (alpha * c2) * y + beta * c3)).scale(-c1.inv())


def check_localization(alpha, beta) -> dict:
    """``(y, e2~, x)`` satisfies the relations of A_{alpha,beta} inside the torus."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if not alpha and not beta:
        raise DomainError("(alpha, beta) must not both vanish")
    x, y = TorusElement.monomial(1, 0), TorusElement.monomial(0, 1)
    e2 = localization_e2(alpha, beta)
    solved = solve_localization_e2(alpha, beta)
    if solved != e2:
        raise ClaimViolation(f"closed form {e2} differs from solved {solved}")
    rep = _report(_relation_residuals(y, e2, x, alpha, beta), "localization")
    rep["e2"] = e2
    rep["printed_formula_agrees"] = printed_localization_e2(alpha, beta) == e2
    return rep
