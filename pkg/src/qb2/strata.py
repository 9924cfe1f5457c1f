"""Catalog of the prime and primitive ideals of U+ and the torus action on them.

The classifier is a lookup table keyed by the shape of the ideal.  The
facts that can be computed (generator memberships, the action of psi on
generators, parameter transport between ideals) are checked against the
PBW engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .coeff import ONE, Scalar, as_scalar, render
from .errors import ClaimViolation, DomainError
from .sparse import SparseElement, monomial_text
from .upbw import (
    E1,
    E2,
    E3,
    E3BAR,
    Z,
    ZPRIME,
    InvalidAutomorphismError,
    UElement,
    apply_psi,
    graded_basis,
    h_degree,
)

__all__ = [
    "KINDS",
    "IdealSpec",
    "SpecError",
    "StratumRecord",
    "CentralPoly",
    "classify",
    "h_invariant_primes",
    "generator_membership_check",
    "poset_over_z",
    "psi_image",
    "orbit_of",
    "find_psi",
    "ideal_from_generators",
]


class SpecError(ValueError):
    """Malformed ideal description."""


class CentralPoly(SparseElement):
    """Polynomial in the commuting central elements ``z`` and ``z'``."""

    __slots__ = ()

    def unit_key(self):
        return (0, 0)

    def _mul_keys(self, k1, k2):
        return {(k1[0] + k2[0], k1[1] + k2[1]): ONE}

    def _render_key(self, key):
        return monomial_text((("z", key[0]), ("z'", key[1])))

    def to_u(self) -> UElement:
        total = UElement()
        for (i, j), v in self.terms.items():
            total = total + (Z**i * ZPRIME**j).scale(v)
        return total

    def leading_key(self):
        return max(self.terms, key=lambda k: (k[0] + k[1], k))

    def monic(self) -> "CentralPoly":
        return self.scale(self.terms[self.leading_key()].inv())


@dataclass(frozen=True)
class KindInfo:
    core: str
    height: int
    primitive: bool
    maximal: bool
    orbit: Optional[int]
    params: tuple  # names of required non-zero parameters


# core kinds are the 8 torus-invariant primes
KINDS: dict[str, KindInfo] = {
    "Zero": KindInfo("Zero", 0, False, False, None, ()),
    "ZPrime": KindInfo("ZPrime", 1, False, False, None, ()),
    "Z": KindInfo("Z", 1, False, False, None, ()),
    "E3": KindInfo("E3", 2, True, False, 4, ()),
    "E3bar": KindInfo("E3bar", 2, True, False, 5, ()),
    "E1": KindInfo("E1", 3, False, False, None, ()),
    "E2": KindInfo("E2", 3, False, False, None, ()),
    "Augmentation": KindInfo("Augmentation", 4, True, True, 8, ()),
    "ZalphaZprime": KindInfo("ZPrime", 2, True, True, 2, ("alpha",)),
    "ZZprimeBeta": KindInfo("Z", 2, True, True, 3, ("beta",)),
    "ZalphaZprimeBeta": KindInfo("Zero", 2, True, True, 1, ("alpha", "beta")),
    "IrreducibleCentral": KindInfo("Zero", 1, False, False, None, ()),
    "E1E2beta": KindInfo("E1", 4, True, True, 6, ("beta",)),
    "E1alphaE2": KindInfo("E2", 4, True, True, 7, ("alpha",)),
}

CORE_KINDS = ("Zero", "ZPrime", "Z", "E3", "E3bar", "E1", "E2", "Augmentation")


@dataclass(frozen=True)
class IdealSpec:
    kind: str
    alpha: Optional[Scalar] = None
    beta: Optional[Scalar] = None
    poly: Optional[CentralPoly] = None
    irreducible: bool = True

    def __post_init__(self):
        info = KINDS.get(self.kind)
        if info is None:
            raise SpecError(f"unknown kind {self.kind!r}")
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if name in info.params:
                if value is None:
                    raise SpecError(f"{self.kind} needs {name}")
                value = as_scalar(value)
                object.__setattr__(self, name, value)
                if not value:
                    raise SpecError(f"{self.kind} needs {name} != 0")
            elif value is not None:
                raise SpecError(f"{self.kind} takes no {name}")
        if self.kind == "IrreducibleCentral":
            self._check_poly()
        elif self.poly is not None:
            raise SpecError(f"{self.kind} takes no polynomial")

    def _check_poly(self):
        p = self.poly
        if not isinstance(p, CentralPoly) or not p:
            raise SpecError("IrreducibleCentral needs a non-zero polynomial in z, z'")
        if not self.irreducible:
            raise SpecError("IrreducibleCentral polynomial must be declared irreducible")
        if all(i == 0 and j == 0 for i, j in p.terms):
            raise SpecError("constant polynomial generates no proper ideal")
        p = p.monic()
        object.__setattr__(self, "poly", p)
        if p == CentralPoly({(1, 0): ONE}) or p == CentralPoly({(0, 1): ONE}):
            raise SpecError("use the Z or ZPrime kind for <z> and <z'>")
        if all(i >= 1 for i, _ in p.terms) or all(j >= 1 for _, j in p.terms):
            raise SpecError(f"{p} has a monomial factor and is not irreducible")

    def generators(self) -> list[UElement]:
        k, a, b = self.kind, self.alpha, self.beta
        table = {
            "Zero": [],
            "ZPrime": [ZPRIME],
            "Z": [Z],
            "E3": [E3],
            "E3bar": [E3BAR],
            "E1": [E1],
            "E2": [E2],
            "Augmentation": [E1, E2],
        }
        if k in table:
            return table[k]
        if k == "ZalphaZprime":
            return [Z - a, ZPRIME]
        if k == "ZZprimeBeta":
            return [Z, ZPRIME - b]
        if k == "ZalphaZprimeBeta":
            return [Z - a, ZPRIME - b]
        if k == "E1E2beta":
            return [E1, E2 - b]
        if k == "E1alphaE2":
            return [E1 - a, E2]
        return [self.poly.to_u()]

    def __str__(self):
        def minus(base, p):
            if p is None or not p:
                return base
            text = render(p)
            if text.startswith("-") and "+" not in text[1:] and " - " not in text[1:]:
                return f"{base} + {text[1:]}"
            if " " in text or "/" in text:
                text = f"({text})"
            return f"{base} - {text}"

        k, a, b = self.kind, self.alpha, self.beta
        parts = {
            "Zero": ["0"],
            "ZPrime": ["z'"],
            "Z": ["z"],
            "E3": ["e3"],
            "E3bar": ["e3bar"],
            "E1": ["e1"],
            "E2": ["e2"],
            "Augmentation": ["e1", "e2"],
            "ZalphaZprime": [minus("z", a), "z'"],
            "ZZprimeBeta": ["z", minus("z'", b)],
            "ZalphaZprimeBeta": [minus("z", a), minus("z'", b)],
            "E1E2beta": ["e1", minus("e2", b)],
            "E1alphaE2": [minus("e1", a), "e2"],
        }.get(k)
        if parts is None:
            parts = [str(self.poly)]
        return "<" + ", ".join(parts) + ">"


@dataclass(frozen=True)
class StratumRecord:
    kind: str
    h_invariant_core: str
    height: int
    is_primitive: bool
    is_maximal: bool
    gk_of_quotient: int
    orbit_id: Optional[int]

    def render(self) -> str:
        yes = lambda b: "yes" if b else "no"  # noqa: E731
        return "\n".join(
            [
                f"kind:      {self.kind}",
                f"core:      {CORE_NAMES[self.h_invariant_core]}",
                f"height:    {self.height}",
                f"primitive: {yes(self.is_primitive)}",
                f"maximal:   {yes(self.is_maximal)}",
                f"GK:        {self.gk_of_quotient}",
                f"orbit:     {self.orbit_id if self.orbit_id is not None else '-'}",
            ]
        )


CORE_NAMES = {
    "Zero": "<0>",
    "ZPrime": "<z'>",
    "Z": "<z>",
    "E3": "<e3>",
    "E3bar": "<e3bar>",
    "E1": "<e1>",
    "E2": "<e2>",
    "Augmentation": "<e1, e2>",
}


def classify(spec: IdealSpec) -> StratumRecord:
    info = KINDS[spec.kind]
    return StratumRecord(
        kind=spec.kind,
        h_invariant_core=info.core,
        height=info.height,
        is_primitive=info.primitive,
        is_maximal=info.maximal,
        gk_of_quotient=4 - info.height,
        orbit_id=info.orbit,
    )


# -- torus-invariant primes and their generators ------------------------------

@dataclass
class HInvariantPrime:
    kind: str
    generators: dict  # name -> UElement, principal ones first
    principal: tuple
    height: int


def h_invariant_primes() -> list[HInvariantPrime]:
    g = {"e1": E1, "e2": E2, "e3": E3, "e3bar": E3BAR, "z": Z, "z'": ZPRIME}
    rows = [
        ("Zero", (), ()),
        ("ZPrime", ("z'",), ("z'",)),
        ("Z", ("z",), ("z",)),
        ("E3", ("e3",), ("e3", "z", "z'")),
        ("E3bar", ("e3bar",), ("e3bar", "z", "z'")),
        ("E1", ("e1",), ("e1", "e3", "e3bar", "z", "z'")),
        ("E2", ("e2",), ("e2", "e3", "e3bar", "z", "z'")),
        ("Augmentation", ("e1", "e2"), ("e1", "e2", "e3", "e3bar", "z", "z'")),
    ]
    return [
        HInvariantPrime(kind, {n: g[n] for n in full}, principal, KINDS[kind].height)
        for kind, principal, full in rows
    ]


def _split_degrees(total, part):
    """All ``(u, v)`` degree pairs with ``u + v + part = total``."""
    r1, r2 = total[0] - part[0], total[1] - part[1]
    if r1 < 0 or r2 < 0:
        return []
    return [((a, b), (r1 - a, r2 - b)) for a in range(r1 + 1) for b in range(r2 + 1)]


def _monomials(d):
    return [UElement({m: ONE}) for m in graded_basis(*d)]


def membership_witness(target: UElement, gens: dict) -> Optional[list]:
    """Write homogeneous ``target`` as ``sum c u g v`` with ``g`` in ``gens``.

    ``u`` and ``v`` run over PBW monomials whose degrees complete the degree
    of ``target``; returns ``[(c, u, name, v)]`` or ``None``.
    """
    deg = h_degree(target)
    if deg is None:
        raise ValueError("target must be homogeneous")
    triples = []
    for name, g in gens.items():
        gd = h_degree(g)
        for du, dv in _split_degrees((deg.d1, deg.d2), (gd.d1, gd.d2)):
            for u in _monomials(du):
                for v in _monomials(dv):
                    triples.append((u, name, v))
    columns = [(u * gens[n] * v).terms for u, n, v in triples]
    sol, _ = linalg.solve(columns, target.terms)
    if sol is None:
        return None
    return [(c, *triples[i]) for i, c in sorted(sol.items())]


def generator_membership_check() -> dict:
    """Every enlarged generator lies in the ideal of the principal ones."""
    results = {}
    for prime in h_invariant_primes():
        principal = {n: prime.generators[n] for n in prime.principal}
        for name, target in prime.generators.items():
            if name in prime.principal:
                continue
            witness = membership_witness(target, principal)
            if witness is None:
                raise ClaimViolation(f"{name} not found in the ideal <{', '.join(principal)}>")
            total = UElement()
            for c, u, n, v in witness:
                total = total + (u * principal[n] * v).scale(c)
            if total != target:
                raise ClaimViolation(f"witness for {name} in {prime.kind} does not reproduce it")
            results[(prime.kind, name)] = witness
    return {"witnesses": results, "ok": True}


def poset_over_z() -> list[tuple[str, str]]:
    """Covering relations among the primes containing ``z``."""
    return [
        ("<z>", "<e3>"),
        ("<z>", "<z, z'-g>"),
        ("<z>", "<e3bar>"),
        ("<e3>", "<e1>"),
        ("<e3>", "<e2>"),
        ("<e3bar>", "<e1>"),
        ("<e3bar>", "<e2>"),
        ("<e1>", "<e1, e2-b>"),
        ("<e1>", "<e1, e2>"),
        ("<e2>", "<e1, e2>"),
        ("<e2>", "<e1-a, e2>"),
    ]


# -- torus action --------------------------------------------------------------

def _psi_factor(alpha, beta, base: UElement) -> Scalar:
    """``lam`` with ``psi(base) = lam * base``, computed by applying psi."""
    image = apply_psi(alpha, beta, base)
    key = next(iter(base.terms))
    lam = image.coefficient(key) / base.coefficient(key)
    if image != base.scale(lam):
        raise ClaimViolation(f"{base} is not an eigenvector of psi")
    return lam


def psi_image(spec: IdealSpec, alpha, beta) -> IdealSpec:
    """The image ideal under psi_{alpha,beta}; the kind is unchanged.

    ``psi(B - p) = lam (B - p/lam)`` for each eigenvector generator ``B``.
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if not alpha or not beta:
        raise InvalidAutomorphismError("psi needs non-zero parameters")
    k = spec.kind
    if k == "IrreducibleCentral":
        lz = _psi_factor(alpha, beta, Z)
        lzp = _psi_factor(alpha, beta, ZPRIME)
        image = CentralPoly(
            {(i, j): v * lz**i * lzp**j for (i, j), v in spec.poly.terms.items()}
        )
        return IdealSpec(k, poly=image)
    new_alpha = new_beta = None
    if spec.alpha is not None:
        base = Z if k in ("ZalphaZprime", "ZalphaZprimeBeta") else E1
        new_alpha = spec.alpha / _psi_factor(alpha, beta, base)
    if spec.beta is not None:
        base = ZPRIME if k in ("ZZprimeBeta", "ZalphaZprimeBeta") else E2
        new_beta = spec.beta / _psi_factor(alpha, beta, base)
    return IdealSpec(k, alpha=new_alpha, beta=new_beta)


def orbit_of(spec: IdealSpec) -> int:
    orbit = KINDS[spec.kind].orbit
    if orbit is None:
        raise DomainError(f"{spec} is not primitive")
    return orbit


def find_psi(source: IdealSpec, target: IdealSpec) -> Optional[tuple[Scalar, Scalar]]:
    """``(alpha, beta)`` with ``psi_image(source) = target``, if one is rational.

    Returns ``None`` when the needed square root does not exist in Q(q, a, b).
    """
    if source.kind != target.kind:
        raise DomainError("the torus action preserves the kind")
    orbit_of(source)
    k = source.kind
    one = Scalar(1)
    if k == "ZalphaZprimeBeta":
        s = source.alpha / target.alpha  # alpha beta^2
        t = source.beta / target.beta  # alpha^2 beta^2
        a = t / s
        b = (s * s / t).sqrt()
        if b is None:
            return None
        found = (a, b)
    elif k == "ZalphaZprime":
        found = (source.alpha / target.alpha, one)
    elif k == "ZZprimeBeta":
        r = (source.beta / target.beta).sqrt()
        if r is None:
            return None
        found = (r, one)
    elif k == "E1E2beta":
        found = (one, source.beta / target.beta)
    elif k == "E1alphaE2":
        found = (source.alpha / target.alpha, one)
    else:
        found = (one, one)
    if psi_image(source, *found) != target:
        raise ClaimViolation(f"psi{found} does not carry {source} to {target}")
    return found


# -- recognising an ideal from generators --------------------------------------

_BASES = {"z": Z, "z'": ZPRIME, "e1": E1, "e2": E2, "e3": E3, "e3bar": E3BAR}


def _as_central(g: UElement) -> Optional[CentralPoly]:
    """Write ``g`` as a polynomial in ``z, z'`` if possible."""
    degs = [(i + j + k, 2 * i + j + l) for (i, j, k, l) in g.terms]
    top = max(d[0] + d[1] for d in degs)
    keys = [(i, j) for i in range(top + 1) for j in range(top + 1) if 3 * i + 4 * j <= top]
    columns = [(Z**i * ZPRIME**j).terms for i, j in keys]
    sol, _ = linalg.solve(columns, g.terms)
    if sol is None:
        return None
    return CentralPoly({keys[c]: v for c, v in sol.items()})


def _match_base(g: UElement) -> Optional[tuple[str, Scalar]]:
    """``(name, p)`` if ``g`` is a non-zero multiple of ``base - p``."""
    const = g.coefficient((0, 0, 0, 0))
    rest = g - const
    for name, base in _BASES.items():
        key = next(iter(base.terms))
        lam = rest.coefficient(key) / base.coefficient(key)
        if lam and rest == base.scale(lam):
            return name, -const / lam
    return None


def ideal_from_generators(gens: list[UElement]) -> IdealSpec:
    """Recognise a catalog ideal from a list of generators."""
    gens = [g for g in gens if g]
    if not gens:
        return IdealSpec("Zero")
    matched = []
    for g in gens:
        m = _match_base(g)
        if m is None:
            central = _as_central(g)
            if central is None or len(gens) != 1:
                raise SpecError(f"generator {g} does not match any catalog ideal")
            return IdealSpec("IrreducibleCentral", poly=central)
        matched.append(m)
    params = dict(matched)
    if len(params) != len(matched):
        raise SpecError("repeated generator")
    shape = tuple(sorted(params))
    zero = lambda n: not params[n]  # noqa: E731
    if len(shape) == 1:
        (name,) = shape
        p = params[name]
        if zero(name):
            return IdealSpec({"z": "Z", "z'": "ZPrime", "e1": "E1", "e2": "E2",
                              "e3": "E3", "e3bar": "E3bar"}[name])
        if name == "z":
            return IdealSpec("IrreducibleCentral", poly=CentralPoly({(1, 0): ONE, (0, 0): -p}))
        if name == "z'":
            return IdealSpec("IrreducibleCentral", poly=CentralPoly({(0, 1): ONE, (0, 0): -p}))
        raise SpecError(f"<{name} - {render(p)}> is not in the catalog")
    if shape == ("z", "z'"):
        a, b = params["z"], params["z'"]
        if a and b:
            return IdealSpec("ZalphaZprimeBeta", alpha=a, beta=b)
        if a:
            return IdealSpec("ZalphaZprime", alpha=a)
        if b:
            return IdealSpec("ZZprimeBeta", beta=b)
        raise SpecError("<z, z'> is not prime")
    if shape == ("e1", "e2"):
        a, b = params["e1"], params["e2"]
        if a and b:
            raise SpecError("<e1 - a, e2 - b> with a, b != 0 is the whole algebra")
        if a:
            return IdealSpec("E1alphaE2", alpha=a)
        if b:
            return IdealSpec("E1E2beta", beta=b)
        return IdealSpec("Augmentation")
    raise SpecError(f"generator set {shape} is not in the catalog")
