"""PBW normal form for the positive part U+ of U_q(B2).

Elements are stored on the basis ``z^i e3^j e1^k e2^l`` keyed by the
exponent tuple ``(i, j, k, l)``.  Multiplication straightens with the
relation table

    e3 z = z e3,   e1 z = z e1,   e2 z = z e2,
    e1 e3 = q^-2 e3 e1,
    e2 e3 = q^2 e3 e2 + z,
    e2 e1 = q^-2 e1 e2 - q^-2 e3,

where ``e3 = e1 e2 - q^2 e2 e1`` and ``z = e2 e3 - q^2 e3 e2``.  The only
non-trivial reordering is moving ``e2^l`` past ``e3^j e1^k``; that block is
computed once per ``(l, j, k)`` and cached.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from . import linalg
from .coeff import ONE, Scalar, as_scalar, qpow
from .sparse import SparseElement, monomial_text

__all__ = [
    "UElement",
    "BiDegree",
    "InvalidAutomorphismError",
    "E1",
    "E2",
    "E3",
    "E3BAR",
    "Z",
    "ZPRIME",
    "UNIT",
    "from_word",
    "mul",
    "serre_relations",
    "serre_check",
    "zprime_expressions",
    "zprime_consistency",
    "is_central",
    "center_basis_up_to",
    "center_check",
    "power_commutation_check",
    "h_degree",
    "apply_psi",
    "psi_on_generators",
    "degree_bound",
]

DEFAULT_DEGREE_BOUND = 8


def degree_bound(default: int = DEFAULT_DEGREE_BOUND) -> int:
    """Truncation bound, overridable through ``QB2_DEGREE_BOUND``."""
    raw = os.environ.get("QB2_DEGREE_BOUND")
    return int(raw) if raw else default


class InvalidAutomorphismError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BiDegree:
    d1: int
    d2: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.d1 + other.d1, self.d2 + other.d2)

    def total(self) -> int:
        return self.d1 + self.d2


def _add_into(acc: dict, key, value: Scalar) -> None:
    w = acc.get(key)
    w = value if w is None else w + value
    if w:
        acc[key] = w
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def _e2_times(j: int, k: int) -> dict:
    """Normal form of ``e2 * e3^j e1^k``."""
    if j == 0 and k == 0:
        return {(0, 0, 0, 1): ONE}
    acc: dict = {}
    if j == 0:
        # e2 e1^k = q^-2 e1 (e2 e1^(k-1)) - q^-2 e3 e1^(k-1)
        for (a, b, c, d), v in _e2_times(0, k - 1).items():
            _add_into(acc, (a, b, c + 1, d), v * qpow(-2 - 2 * b))
        _add_into(acc, (0, 1, k - 1, 0), -qpow(-2))
        return acc
    # e2 e3^j e1^k = q^2 e3 (e2 e3^(j-1) e1^k) + z e3^(j-1) e1^k
    for (a, b, c, d), v in _e2_times(j - 1, k).items():
        _add_into(acc, (a, b + 1, c, d), v * qpow(2))
    _add_into(acc, (1, j - 1, k, 0), ONE)
    return acc


@lru_cache(maxsize=None)
def _e2_power_times(l: int, j: int, k: int) -> dict:
    """Normal form of ``e2^l * e3^j e1^k``."""
    if l == 0:
        return {(0, j, k, 0): ONE}
    acc: dict = {}
    for (a, b, c, d), v in _e2_power_times(l - 1, j, k).items():
        for (a2, b2, c2, d2), w in _e2_times(b, c).items():
            _add_into(acc, (a + a2, b2, c2, d + d2), v * w)
    return acc


@lru_cache(maxsize=1 << 16)
def _mul_monomials(m1: tuple, m2: tuple) -> dict:
    i, j, k, l = m1
    i2, j2, k2, l2 = m2
    acc: dict = {}
    for (a, b, c, d), v in _e2_power_times(l, j2, k2).items():
        # e1^k e3^b = q^(-2kb) e3^b e1^k
        coeff = v * qpow(-2 * k * b) if k and b else v
        _add_into(acc, (i + i2 + a, j + b, k + c, d + l2), coeff)
    return acc


class UElement(SparseElement):
    """An element of U+ in PBW normal form."""

    __slots__ = ()

    def unit_key(self):
        return (0, 0, 0, 0)

    def _mul_keys(self, k1, k2):
        return _mul_monomials(k1, k2)

    def _render_key(self, key):
        i, j, k, l = key
        return monomial_text((("z", i), ("e3", j), ("e1", k), ("e2", l)))

    @classmethod
    def monomial(cls, i=0, j=0, k=0, l=0, coeff=ONE) -> "UElement":
        return cls({(i, j, k, l): as_scalar(coeff)})

    @classmethod
    def scalar(cls, s) -> "UElement":
        return cls.monomial(coeff=s)


UNIT = UElement.monomial()
Z = UElement.monomial(i=1)
E3 = UElement.monomial(j=1)
E1 = UElement.monomial(k=1)
E2 = UElement.monomial(l=1)
E3BAR = E1 * E2 - qpow(-2) * (E2 * E1)
# z' = (1-q^-4)(1-q^-2) e3 e1 e2 + q^-4 (1-q^-2) e3^2 + (1-q^-4) z e1
ZPRIME = (
    ((1 - qpow(-4)) * (1 - qpow(-2))) * (E3 * E1 * E2)
    + (qpow(-4) * (1 - qpow(-2))) * (E3 * E3)
    + (1 - qpow(-4)) * (Z * E1)
)

GENERATORS = {"e1": E1, "e2": E2, "e3": E3, "z": Z}


def mul(a: UElement, b: UElement) -> UElement:
    return a * b


def from_word(word: Iterable[str], coeff=ONE, generators=None) -> UElement:
    """Product of the named generators in order, times ``coeff``."""
    gens = generators or GENERATORS
    result = UElement.scalar(coeff)
    for name in word:
        result = result * gens[name]
    return result


def serre_relations(e1: UElement = E1, e2: UElement = E2) -> tuple[UElement, UElement]:
    """Both quantum Serre expressions evaluated on the given images of e1, e2."""
    gens = {"e1": e1, "e2": e2}
    w = lambda s: from_word(s.split(), generators=gens)  # noqa: E731
    k2 = qpow(2) + qpow(-2)
    k3 = qpow(2) + 1 + qpow(-2)
    first = w("e1 e1 e2") - k2 * w("e1 e2 e1") + w("e2 e1 e1")
    second = (
        w("e2 e2 e2 e1")
        - k3 * w("e2 e2 e1 e2")
        + k3 * w("e2 e1 e2 e2")
        - w("e1 e2 e2 e2")
    )
    return first, second


def serre_check(e1: UElement = E1, e2: UElement = E2) -> dict:
    first, second = serre_relations(e1, e2)
    return {"first": first, "second": second, "ok": not first and not second}


def zprime_expressions() -> tuple[UElement, UElement]:
    """The two defining expressions of z', built from words in e1, e2."""
    e3 = from_word(["e1", "e2"]) - qpow(2) * from_word(["e2", "e1"])
    z = E2 * e3 - qpow(2) * (e3 * E2)
    e3bar = from_word(["e1", "e2"]) - qpow(-2) * from_word(["e2", "e1"])
    first = (
        ((1 - qpow(-4)) * (1 - qpow(-2))) * (e3 * E1 * E2)
        + (qpow(-4) * (1 - qpow(-2))) * (e3 * e3)
        + (1 - qpow(-4)) * (z * E1)
    )
    second = (1 - qpow(-2)) * (e3 * e3bar + (1 + qpow(-2)) * (z * E1))
    return first, second


def zprime_consistency() -> dict:
    first, second = zprime_expressions()
    return {
        "difference": first - second,
        "ok": first == second,
        "degree_zprime": h_degree(first),
        "degree_z": h_degree(Z),
    }


def is_central(x: UElement) -> bool:
    return x * E1 == E1 * x and x * E2 == E2 * x


def h_degree(x: UElement) -> Optional[BiDegree]:
    """The Z^2-degree of ``x`` if it is homogeneous, else ``None``.

    ``z^i e3^j e1^k e2^l`` has degree ``(i+j+k, 2i+j+l)``; the zero element
    has no degree.
    """
    degrees = {(i + j + k, 2 * i + j + l) for (i, j, k, l) in x.terms}
    if len(degrees) != 1:
        return None
    return BiDegree(*degrees.pop())


def graded_basis(d1: int, d2: int) -> list[tuple]:
    """PBW exponents of the degree-``(d1, d2)`` component."""
    out = []
    for i in range(min(d1, d2 // 2) + 1):
        for j in range(min(d1 - i, d2 - 2 * i) + 1):
            k = d1 - i - j
            l = d2 - 2 * i - j
            out.append((i, j, k, l))
    return out


def center_component(d1: int, d2: int) -> list[UElement]:
    """Basis of the central elements of degree ``(d1, d2)``.

    Solves ``[x, e1] = [x, e2] = 0`` on the graded component.
    """
    basis = graded_basis(d1, d2)
    columns = []
    for m in basis:
        x = UElement({m: ONE})
        eqs = {}
        for tag, g in (("e1", E1), ("e2", E2)):
            for key, v in x.commutator(g).terms.items():
                eqs[(tag, key)] = v
        columns.append(eqs)
    return [
        UElement({basis[c]: v for c, v in vec.items()})
        for vec in linalg.nullspace(columns)
    ]


def center_basis_up_to(total_degree: Optional[int] = None) -> list[UElement]:
    """Basis of the centre of U+ in total degree ``d1 + d2 <= total_degree``."""
    if total_degree is None:
        total_degree = degree_bound()
    out = []
    for t in range(1, total_degree + 1):
        for d1 in range(t + 1):
            out.extend(center_component(d1, t - d1))
    return out


def power_commutation_check(kmax: int) -> dict:
    """Check the four power-commutation formulas for ``k = 1..kmax``.

    Returns per-k residuals (left side minus closed form); all must vanish.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    residuals = {}
    for k in range(1, kmax + 1):
        e1k, e3k = E1**k, E3**k
        r1 = E3 * e1k - qpow(2 * k) * (e1k * E3)
        r2 = E1 * e3k - qpow(-2 * k) * (e3k * E1)
        r3 = E2 * e3k - (
            qpow(2 * k) * (e3k * E2)
            + ((qpow(2 * k) - 1) / (qpow(2) - 1)) * (E3 ** (k - 1) * Z)
        )
        r4 = E2 * e1k - (
            qpow(-2 * k) * (e1k * E2)
            - (qpow(-2) * (qpow(-4 * k) - 1) / (qpow(-4) - 1)) * (E3 * E1 ** (k - 1))
        )
        residuals[k] = (r1, r2, r3, r4)
    ok = all(not r for rs in residuals.values() for r in rs)
    return {"residuals": residuals, "ok": ok}


def _check_psi_params(alpha, beta) -> tuple[Scalar, Scalar]:
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if not alpha or not beta:
        raise InvalidAutomorphismError("psi needs non-zero parameters")
    return alpha, beta


def apply_psi(alpha, beta, x: UElement) -> UElement:
    """Apply the torus automorphism ``e1 -> alpha e1, e2 -> beta e2``."""
    alpha, beta = _check_psi_params(alpha, beta)
    out = {}
    for key, v in x.terms.items():
        i, j, k, l = key
        out[key] = v * alpha ** (i + j + k) * beta ** (2 * i + j + l)
    return UElement(out)


def psi_on_generators(alpha, beta) -> dict[str, UElement]:
    """Images of e1, e2, e3, z under psi, computed by substitution in words."""
    alpha, beta = _check_psi_params(alpha, beta)
    e1, e2 = E1.scale(alpha), E2.scale(beta)
    e3 = e1 * e2 - qpow(2) * (e2 * e1)
    z = e2 * e3 - qpow(2) * (e3 * e2)
    return {"e1": e1, "e2": e2, "e3": e3, "z": z}


def psi_by_substitution(alpha, beta, x: UElement) -> UElement:
    """Same map as :func:`apply_psi`, evaluated by substituting generator images."""
    gens = psi_on_generators(alpha, beta)
    total = x.zero()
    for (i, j, k, l), v in x.terms.items():
        term = gens["z"] ** i * gens["e3"] ** j * gens["e1"] ** k * gens["e2"] ** l
        total = total + term.scale(v)
    return total


def center_check(total_degree: Optional[int] = None) -> dict:
    """Compare the computed centre with the span of ``z^a z'^b`` degree by degree.

    ``z^a z'^b`` has degree ``(a + 2b, 2a + 2b)``; each graded piece of the
    centre must have exactly as many such monomials as its dimension, and
    they must lie in it.
    """
    if total_degree is None:
        total_degree = degree_bound()
    mismatches = []
    for t in range(1, total_degree + 1):
        for d1 in range(t + 1):
            d2 = t - d1
            found = center_component(d1, d2)
            expected = [
                Z**a * ZPRIME**b
                for b in range(d1 + 1)
                for a in [d1 - 2 * b]
                if a >= 0 and 2 * a + 2 * b == d2
            ]
            if len(found) != len(expected) or not all(is_central(x) for x in expected):
                mismatches.append((d1, d2, len(found), len(expected)))
                continue
            span = [x.terms for x in found]
            for x in expected:
                if linalg.rank(span + [x.terms]) != len(found):
                    mismatches.append((d1, d2, "not in span"))
    return {"mismatches": mismatches, "ok": not mismatches}
