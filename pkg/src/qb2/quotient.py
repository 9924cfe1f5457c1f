"""Quotients of U+ by central characters, and the quantum Heisenberg algebra.

``B_alpha = U+/<z - alpha>`` keeps the PBW basis ``e3^j e1^k e2^l`` (keys
``(j, k, l)``) and multiplies by lifting to U+ and substituting ``z = alpha``.

``A_{alpha,beta} = U+/<z - alpha, z' - beta>`` is spanned by
``e1^i e2^j`` and ``e3 e1^i e2^j`` (keys ``(eps, i, j)``, ``eps`` in {0, 1}).
In ``B_alpha`` the element ``z' - beta`` is a non-zero multiple of

    e3^2 + c1 e3 e1 e2 + alpha c2 e1 + beta c3,

so reduction onto that basis removes ``e3^2`` until every term has
``e3``-degree at most one.  Two independent reduction orders are provided
and compared in the tests.

The Heisenberg algebra ``H`` uses keys ``(a, b, c)`` for ``E1^a E3^b E2^c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import linalg
from .coeff import ONE, Scalar, as_scalar, c1, c2, c3, qpow
from .errors import ClaimViolation, DomainError
from .sparse import IncompatibleAlgebraError, SparseElement, monomial_text
from .upbw import E3 as U_E3
from .upbw import UElement, _add_into, _mul_monomials

__all__ = [
    "BElement",
    "AElement",
    "HElement",
    "project_B",
    "mul_B",
    "map_to_H",
    "map_from_H",
    "omega",
    "project_A",
    "reduce_to_F",
    "mul_A",
    "lift_A",
    "e3_power_expand",
    "verify_unit",
    "certify_non_unit",
    "center_A_up_to",
    "twist_A",
    "predicted_box",
    "f_basis",
    "NonUnitCertificate",
]


# -- B_alpha ------------------------------------------------------------------

class BElement(SparseElement):
    __slots__ = ("alpha",)

    def __init__(self, terms=None, alpha=0):
        super().__init__(terms)
        self.alpha = as_scalar(alpha)

    def params(self):
        return (self.alpha,)

    def _new(self, terms):
        obj = object.__new__(BElement)
        obj.terms, obj.alpha = terms, self.alpha
        return obj

    def unit_key(self):
        return (0, 0, 0)

    def _mul_keys(self, k1, k2):
        return _b_mul_keys(self.alpha, k1, k2)

    def _render_key(self, key):
        j, k, l = key
        return monomial_text((("e3", j), ("e1", k), ("e2", l)))

    @classmethod
    def gens(cls, alpha) -> dict[str, "BElement"]:
        return {
            "e1": cls({(0, 1, 0): ONE}, alpha),
            "e2": cls({(0, 0, 1): ONE}, alpha),
            "e3": cls({(1, 0, 0): ONE}, alpha),
        }


@lru_cache(maxsize=1 << 16)
def _b_mul_keys(alpha: Scalar, k1, k2) -> dict:
    acc: dict = {}
    for (i, j, k, l), v in _mul_monomials((0,) + k1, (0,) + k2).items():
        _add_into(acc, (j, k, l), v * alpha**i if i else v)
    return acc


def project_B(x: UElement, alpha) -> BElement:
    """Image of ``x`` in ``B_alpha`` (substitute ``z = alpha``)."""
    alpha = as_scalar(alpha)
    acc: dict = {}
    for (i, j, k, l), v in x.terms.items():
        _add_into(acc, (j, k, l), v * alpha**i if i else v)
    return BElement(acc, alpha)


def mul_B(a: BElement, b: BElement) -> BElement:
    return a * b


def lift_B(x: BElement) -> UElement:
    """The section of ``project_B`` with no ``z`` in any term."""
    return UElement({(0,) + key: v for key, v in x.terms.items()})


# -- quantum Heisenberg algebra ------------------------------------------------

@lru_cache(maxsize=None)
def _h_e2_times_e1_power(x: int) -> dict:
    """``E2 E1^x`` on the basis ``E1^a E3^b E2^c``."""
    if x == 0:
        return {(0, 0, 1): ONE}
    acc: dict = {}
    # E2 E1^x = q^-2 E1 (E2 E1^(x-1)) - q^-2 E3 E1^(x-1)
    for (a, b, c), v in _h_e2_times_e1_power(x - 1).items():
        _add_into(acc, (a + 1, b, c), v * qpow(-2))
    # E3 E1^(x-1) = q^(2(x-1)) E1^(x-1) E3
    _add_into(acc, (x - 1, 1, 0), -qpow(-2 + 2 * (x - 1)))
    return acc


@lru_cache(maxsize=None)
def _h_e2_power_times(c: int, x: int, y: int) -> dict:
    """``E2^c E1^x E3^y`` in normal form."""
    if c == 0:
        return {(x, y, 0): ONE}
    acc: dict = {}
    for (a, b, s), v in _h_e2_power_times(c - 1, x, y).items():
        # E2 * E1^a E3^b E2^s
        for (a2, b2, s2), w in _h_e2_times_e1_power(a).items():
            # E2^s2 E3^b = q^(2 s2 b) E3^b E2^s2
            _add_into(acc, (a2, b2 + b, s2 + s), v * w * qpow(2 * s2 * b))
    return acc


@lru_cache(maxsize=1 << 16)
def _h_mul_keys(k1, k2) -> dict:
    a, b, c = k1
    a2, b2, c2_ = k2
    acc: dict = {}
    for (x, y, s), v in _h_e2_power_times(c, a2, b2).items():
        # E3^b E1^x = q^(2bx) E1^x E3^b
        _add_into(acc, (a + x, b + y, s + c2_), v * qpow(2 * b * x) if b and x else v)
    return acc


class HElement(SparseElement):
    """Element of the quantum Heisenberg algebra on ``E1^a E3^b E2^c``."""

    __slots__ = ()

    def unit_key(self):
        return (0, 0, 0)

    def _mul_keys(self, k1, k2):
        return _h_mul_keys(k1, k2)

    def _render_key(self, key):
        a, b, c = key
        return monomial_text((("E1", a), ("E3", b), ("E2", c)))

    @classmethod
    def gens(cls) -> dict[str, "HElement"]:
        return {
            "E1": cls({(1, 0, 0): ONE}),
            "E3": cls({(0, 1, 0): ONE}),
            "E2": cls({(0, 0, 1): ONE}),
        }


def omega() -> HElement:
    """The quantum Casimir ``(1 - q^-4) E3 E1 E2 + q^-4 E3^2``."""
    g = HElement.gens()
    return (1 - qpow(-4)) * (g["E3"] * g["E1"] * g["E2"]) + qpow(-4) * (g["E3"] * g["E3"])


def map_to_H(x: BElement) -> HElement:
    """The isomorphism ``B_0 -> H`` sending ``e_i`` to ``E_i``.

    ``e3^j e1^k e2^l`` maps to ``E3^j E1^k E2^l = q^(2jk) E1^k E3^j E2^l``.
    """
    if x.alpha:
        raise DomainError("map_to_H is only defined on B_0")
    return HElement(
        {(k, j, l): v * qpow(2 * j * k) if j and k else v for (j, k, l), v in x.terms.items()}
    )


def map_from_H(x: HElement) -> BElement:
    return BElement(
        {(j, k, l): v * qpow(-2 * j * k) if j and k else v for (k, j, l), v in x.terms.items()},
        0,
    )


# -- A_{alpha,beta} -------------------------------------------------------------

class AElement(SparseElement):
    __slots__ = ("alpha", "beta")

    def __init__(self, terms=None, alpha=0, beta=0):
        super().__init__(terms)
        self.alpha = as_scalar(alpha)
        self.beta = as_scalar(beta)

    def params(self):
        return (self.alpha, self.beta)

    def _new(self, terms):
        obj = object.__new__(AElement)
        obj.terms, obj.alpha, obj.beta = terms, self.alpha, self.beta
        return obj

    def unit_key(self):
        return (0, 0, 0)

    def _sort_key(self, key):
        return key

    def _mul_keys(self, k1, k2):
        return _a_mul_keys(self.alpha, self.beta, k1, k2)

    def _render_key(self, key):
        eps, i, j = key
        return monomial_text((("e3", eps), ("e1", i), ("e2", j)))

    @classmethod
    def gens(cls, alpha, beta) -> dict[str, "AElement"]:
        return {
            "e1": cls({(0, 1, 0): ONE}, alpha, beta),
            "e2": cls({(0, 0, 1): ONE}, alpha, beta),
            "e3": cls({(1, 0, 0): ONE}, alpha, beta),
        }


@lru_cache(maxsize=None)
def _reduce_innermost(alpha: Scalar, beta: Scalar, key) -> dict:
    """Reduce ``e3^j e1^k e2^l`` onto the basis, moving ``e3^2`` next to ``e1^k``.

    ``e3^j e1^k e2^l = q^(4k) e3^(j-2) e1^k e3^2 e2^l``, then substitute the
    quartic relation and pull ``e3`` back left through ``e1^k``::

        -q^(2k) c1 e3^(j-1) e1^(k+1) e2^(l+1)
        -q^(4k) alpha c2 e3^(j-2) e1^(k+1) e2^l
        -q^(4k) beta c3 e3^(j-2) e1^k e2^l

    Each step lowers the ``e3``-degree, so the recursion terminates.
    """
    j, k, l = key
    if j <= 1:
        return {key: ONE}
    steps = (
        ((j - 1, k + 1, l + 1), -qpow(2 * k) * c1),
        ((j - 2, k + 1, l), -qpow(4 * k) * alpha * c2),
        ((j - 2, k, l), -qpow(4 * k) * beta * c3),
    )
    acc: dict = {}
    for sub, coeff in steps:
        if not coeff:
            continue
        for k2, v in _reduce_innermost(alpha, beta, sub).items():
            _add_into(acc, k2, coeff * v)
    return acc


def _quartic_rhs(alpha: Scalar, beta: Scalar) -> BElement:
    """``e3^2`` expressed through lower terms: ``-(c1 e3 e1 e2 + alpha c2 e1 + beta c3)``."""
    return BElement({(1, 1, 1): -c1, (0, 1, 0): -alpha * c2, (0, 0, 0): -beta * c3}, alpha)


@lru_cache(maxsize=None)
def _reduce_leftmost(alpha: Scalar, beta: Scalar, key) -> dict:
    """Reduce by replacing the leftmost ``e3^2`` and re-straightening in B.

    ``e3^j e1^k e2^l = e3^2 * (e3^(j-2) e1^k e2^l)``.  Straightening the
    substituted product reproduces the original monomial with some
    coefficient ``g`` (from ``e2 e1^k``), so ``x = g x + rest`` and
    ``x = rest / (1 - g)``; every monomial of ``rest`` has lower
    ``e3``-degree.
    """
    j, k, l = key
    if j <= 1:
        return {key: ONE}
    product = _quartic_rhs(alpha, beta) * BElement({(j - 2, k, l): ONE}, alpha)
    g = product.coefficient(key)
    rest = dict(product.terms)
    rest.pop(key, None)
    if any(kk[0] >= j for kk in rest):
        raise ClaimViolation(f"leftmost reduction of {key} did not lower the e3-degree")
    denom = 1 - g
    if not denom:
        raise ClaimViolation(f"singular self-reference while reducing {key}")
    inv = denom.inv()
    acc: dict = {}
    for sub, coeff in rest.items():
        for k2, v in _reduce_leftmost(alpha, beta, sub).items():
            _add_into(acc, k2, coeff * v * inv)
    return acc


_STRATEGIES = {"innermost": _reduce_innermost, "leftmost": _reduce_leftmost}


def reduce_to_F(x: BElement, beta, strategy: str = "innermost") -> AElement:
    """Image in ``A_{alpha,beta}`` of an element of ``B_alpha``."""
    beta = as_scalar(beta)
    reducer = _STRATEGIES[strategy]
    acc: dict = {}
    for key, v in x.terms.items():
        for k2, w in reducer(x.alpha, beta, key).items():
            _add_into(acc, k2, v * w)
    return AElement(acc, x.alpha, beta)


def project_A(x: UElement, alpha, beta, strategy: str = "innermost") -> AElement:
    """Image of ``x`` in ``A_{alpha,beta}``, expressed on the basis F."""
    return reduce_to_F(project_B(x, alpha), beta, strategy)


def lift_A(x: AElement) -> BElement:
    return BElement(dict(x.terms), x.alpha)


@lru_cache(maxsize=1 << 16)
def _a_mul_keys(alpha: Scalar, beta: Scalar, k1, k2) -> dict:
    acc: dict = {}
    for bkey, v in _b_mul_keys(alpha, k1, k2).items():
        for fkey, w in _reduce_innermost(alpha, beta, bkey).items():
            _add_into(acc, fkey, v * w)
    return acc


def mul_A(a: AElement, b: AElement) -> AElement:
    return a * b


def f_basis(max_total: int) -> list[tuple]:
    """Keys of F with ``i + j <= max_total``."""
    return [
        (eps, i, t - i)
        for eps in (0, 1)
        for t in range(max_total + 1)
        for i in range(t + 1)
    ]


def filtration_degree(key) -> tuple[int, int]:
    eps, i, j = key
    return (eps + i, eps + j)


def predicted_box(a: AElement, b: AElement) -> tuple[int, int]:
    """Componentwise bound on the filtration degree of ``a * b``.

    All U+ relations are Z^2-homogeneous and the quartic relation only
    trades ``e3^2`` (degree (2,2)) for terms of lower degree, so degrees
    are sub-additive.
    """
    def top(x):
        degs = [filtration_degree(k) for k in x.terms] or [(0, 0)]
        return max(d[0] for d in degs), max(d[1] for d in degs)

    (a1, a2), (b1, b2) = top(a), top(b)
    return a1 + b1, a2 + b2


def twist_A(x: AElement, lam, mu) -> AElement:
    """Transport ``x`` along the isomorphism induced by psi_{lam,mu}.

    psi maps ``<z - alpha, z' - beta>`` onto
    ``<z - alpha/(lam mu^2), z' - beta/(lam^2 mu^2)>``.
    """
    lam, mu = as_scalar(lam), as_scalar(mu)
    terms = {
        (eps, i, j): v * (lam * mu) ** eps * lam**i * mu**j
        for (eps, i, j), v in x.terms.items()
    }
    return AElement(terms, x.alpha / (lam * mu**2), x.beta / (lam**2 * mu**2))


# -- e3 powers -------------------------------------------------------------------

def e3_power_expand(p: int, alpha, beta) -> dict:
    """Expand ``e3^(2p)`` and ``e3^(2p+1)`` in A and check their shape.

    For ``beta != 0`` the constant term of ``e3^(2p)`` and the ``e3``
    coefficient of ``e3^(2p+1)`` must be ``(-beta c3)^p`` with every other
    term divisible by ``e1``.  For ``beta = 0`` every term has ``e1``-degree
    at least ``p`` and the ``e1^p`` (resp. ``e3 e1^p``) coefficients are
    non-zero.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    e3 = AElement.gens(alpha, beta)["e3"]
    even = e3 ** (2 * p)
    odd = even * e3
    via_u_even = project_A(U_E3 ** (2 * p), alpha, beta)
    via_u_odd = project_A(U_E3 ** (2 * p + 1), alpha, beta)
    checks = {"routes_agree": even == via_u_even and odd == via_u_odd}
    if beta:
        lead = (-beta * c3) ** p
        checks["even_constant"] = even.coefficient((0, 0, 0)) == lead
        checks["odd_e3"] = odd.coefficient((1, 0, 0)) == lead
        checks["even_rest_in_e1"] = all(k[1] >= 1 for k in even.terms if k != (0, 0, 0))
        checks["odd_rest_in_e1"] = all(k[1] >= 1 for k in odd.terms if k != (1, 0, 0))
    else:
        checks["even_index_bound"] = all(k[1] >= p for k in even.terms)
        checks["odd_index_bound"] = all(k[1] >= p for k in odd.terms)
        checks["even_lead_nonzero"] = bool(even.coefficient((0, p, 0)))
        checks["odd_lead_nonzero"] = bool(odd.coefficient((1, p, 0)))
    return {"even": even, "odd": odd, "checks": checks, "ok": all(checks.values())}


# -- units ------------------------------------------------------------------------

def verify_unit(u: AElement, v: AElement) -> bool:
    """True iff ``u v = v u = 1``."""
    if u.params() != v.params():
        raise IncompatibleAlgebraError("operands live in different quotients")
    one = u.one()
    return u * v == one and v * u == one


@dataclass
class NonUnitCertificate:
    element: str
    alpha: Scalar
    beta: Scalar
    bound: int
    unknowns: int
    equations: int
    rank: int
    augmented_rank: int
    feasible: bool
    unit: bool = False
    witness: Optional[AElement] = field(default=None, repr=False)

    @property
    def infeasible(self) -> bool:
        return not self.feasible


def certify_non_unit(g: AElement, bound: int) -> NonUnitCertificate:
    """Show that ``g a = 1`` has no solution with ``a`` supported on i, j <= bound.

    Every coefficient of ``g a`` gives an equation, so the linear system is
    closed without guessing a margin.  If a solution exists and ``g`` is in
    fact invertible (``e3`` in ``A_{0,beta}``) the certificate records the
    unit; a solution in any other case contradicts the expected result and
    raises :class:`ClaimViolation`.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    alpha, beta = g.alpha, g.beta
    gens = AElement.gens(alpha, beta)
    keys = [(eps, i, j) for eps in (0, 1) for i in range(bound + 1) for j in range(bound + 1)]
    columns = [(g * AElement({k: ONE}, alpha, beta)).terms for k in keys]
    sol, ech = linalg.solve(columns, {(0, 0, 0): ONE})
    name = str(g)
    cert = NonUnitCertificate(
        element=name,
        alpha=alpha,
        beta=beta,
        bound=bound,
        unknowns=len(keys),
        equations=ech.rows,
        rank=ech.rank,
        augmented_rank=ech.rank + (1 if ech.inconsistent else 0),
        feasible=sol is not None,
    )
    if sol is None:
        return cert
    witness = AElement({keys[c]: v for c, v in sol.items()}, alpha, beta)
    cert.witness = witness
    cert.unit = verify_unit(g, witness)
    expected_unit = g == gens["e3"] and not alpha and bool(beta)
    if not (cert.unit and expected_unit):
        raise ClaimViolation(f"{name} has a right inverse {witness} in A({alpha}, {beta})")
    return cert


def center_A_up_to(bound: int, alpha, beta) -> list[AElement]:
    """Central elements of ``A_{alpha,beta}`` supported on ``i, j <= bound``."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if not alpha and not beta:
        raise DomainError("A_{0,0} is not one of the simple quotients")
    gens = AElement.gens(alpha, beta)
    keys = [(eps, i, j) for eps in (0, 1) for i in range(bound + 1) for j in range(bound + 1)]
    columns = []
    for k in keys:
        x = AElement({k: ONE}, alpha, beta)
        eqs = {}
        for name, g in gens.items():
            for kk, v in x.commutator(g).terms.items():
                eqs[(name, kk)] = v
        columns.append(eqs)
    return [
        AElement({keys[c]: v for c, v in vec.items()}, alpha, beta)
        for vec in linalg.nullspace(columns)
    ]
