"""Registry of checkable results, each a pure function returning a residual.

A check returns ``None`` when it passes and a short rendering of what went
wrong otherwise.  Random suites use fixed seeds so reports are reproducible.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

from . import gwa, quotient, sampling, strata, upbw
from .coeff import ALPHA, BETA, Scalar, c1, c2, c3, qpow
from .errors import ClaimViolation, DomainError

SEED = 20240601


@dataclass(frozen=True)
class ClaimReport:
    claim_id: str
    status: str
    residual: str
    elapsed_ms: float

    def to_json(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        text = f"{self.status.upper():4} {self.claim_id} ({self.elapsed_ms:.0f} ms)"
        if self.status != "pass":
            text += f"\n     residual: {self.residual}"
        return text


def _first_nonzero(pairs) -> Optional[str]:
    for label, r in pairs:
        if r:
            return f"{label}: {r}"
    return None


# -- PBW engine ------------------------------------------------------------------------

def check_serre() -> Optional[str]:
    rep = upbw.serre_check()
    return _first_nonzero([("first", rep["first"]), ("second", rep["second"])])


def check_zprime() -> Optional[str]:
    rep = upbw.zprime_consistency()
    if not rep["ok"]:
        return str(rep["difference"])
    for x in (upbw.Z, upbw.ZPRIME):
        if not upbw.is_central(x):
            return f"{x} is not central"
    if rep["degree_zprime"] != upbw.BiDegree(2, 2) or rep["degree_z"] != upbw.BiDegree(1, 2):
        return f"degrees {rep['degree_z']}, {rep['degree_zprime']}"
    return None


def check_power_commutation() -> Optional[str]:
    rep = upbw.power_commutation_check(6)
    for k, rs in rep["residuals"].items():
        bad = _first_nonzero((f"k={k} formula {n + 1}", r) for n, r in enumerate(rs))
        if bad:
            return bad
    return None


def check_center_u() -> Optional[str]:
    rep = upbw.center_check(upbw.degree_bound())
    return None if rep["ok"] else str(rep["mismatches"])


# -- quotients ---------------------------------------------------------------------

PARAM_GRID = [(a, b) for a in (0, 1, 2) for b in (0, 1, 2) if (a, b) != (0, 0)]


def check_heisenberg(n_pairs: int = 100) -> Optional[str]:
    image = quotient.map_to_H(quotient.project_B(upbw.ZPRIME, 0))
    target = (1 - qpow(-2)) * quotient.omega()
    if image != target:
        return f"f(z') - (1 - q^-2) Omega = {image - target}"
    rng = random.Random(SEED)
    for _ in range(n_pairs):
        x, y = sampling.b_element(rng, 0, max_e3=2), sampling.b_element(rng, 0, max_e3=2)
        lhs = quotient.map_to_H(x * y)
        rhs = quotient.map_to_H(x) * quotient.map_to_H(y)
        if lhs != rhs:
            return f"f({x} * {y}) differs by {lhs - rhs}"
        if quotient.map_from_H(quotient.map_to_H(x)) != x:
            return f"map_to_H is not invertible on {x}"
    return None


def check_confluence(n_inputs: int = 200, n_triples: int = 100) -> Optional[str]:
    rng = random.Random(SEED)
    for i in range(n_inputs):
        alpha, beta = PARAM_GRID[i % len(PARAM_GRID)]
        x = sampling.b_element(rng, alpha, max_e3=5)
        inner = quotient.reduce_to_F(x, beta, "innermost")
        left = quotient.reduce_to_F(x, beta, "leftmost")
        if inner != left:
            return f"strategies disagree on {x} in A({alpha},{beta}): {inner - left}"
    for i in range(n_triples):
        alpha, beta = PARAM_GRID[i % len(PARAM_GRID)]
        a, b, c = (sampling.a_element(rng, alpha, beta) for _ in range(3))
        diff = (a * b) * c - a * (b * c)
        if diff:
            return f"associator of {a}, {b}, {c} in A({alpha},{beta}) is {diff}"
    return None


def check_e3_powers() -> Optional[str]:
    for alpha, beta in ((1, 1), (0, 1), (1, 0)):
        for p in range(1, 5):
            rep = quotient.e3_power_expand(p, alpha, beta)
            if not rep["ok"]:
                bad = [k for k, v in rep["checks"].items() if not v]
                return f"p={p}, ({alpha},{beta}): {bad}"
    return None


def unit_pair_0beta(beta: Scalar = BETA) -> tuple:
    """``e3`` and its inverse in A_{0,beta}."""
    g = quotient.AElement.gens(0, beta)
    return g["e3"], (-(1 / (beta * c3))) * (g["e3"] + c1 * (g["e1"] * g["e2"]))


def unit_pair_alpha0(alpha: Scalar = ALPHA) -> tuple:
    """The image of ``e1^-1 e3^2`` in A_{alpha,0} and its inverse."""
    g = quotient.AElement.gens(alpha, 0)
    e1, e2, e3 = g["e1"], g["e2"], g["e3"]
    u = (-qpow(2) * c1) * (e3 * e2) - alpha * c2
    v = (1 / (alpha**2 * c2**2)) * (-alpha * c2 + c1**2 * (e1 * e2 * e2) + c1 * (e3 * e2))
    return u, v


def unit_pairs(alpha: Scalar = ALPHA, beta: Scalar = BETA) -> dict:
    return {"A(0,beta)": unit_pair_0beta(beta), "A(alpha,0)": unit_pair_alpha0(alpha)}


def check_units() -> Optional[str]:
    for label, (u, v) in unit_pairs().items():
        if not quotient.verify_unit(u, v):
            return f"{label}: {u} * {v} = {u * v}"
    # u1 = e1^-1 e3^2 means e1 u1 = e3^2
    u1 = unit_pairs()["A(alpha,0)"][0]
    g = quotient.AElement.gens(ALPHA, 0)
    if g["e1"] * u1 != g["e3"] * g["e3"]:
        return f"e1 * u - e3^2 = {g['e1'] * u1 - g['e3'] * g['e3']}"
    return None


NONUNIT_REGIMES = {"e1": [(1, 1), (0, 1), (1, 0)], "e3": [(1, 1), (1, 0)]}


def check_nonunits(bounds=(2, 4, 6)) -> Optional[str]:
    for name, regimes in NONUNIT_REGIMES.items():
        for alpha, beta in regimes:
            g = quotient.AElement.gens(alpha, beta)[name]
            for bound in bounds:
                cert = quotient.certify_non_unit(g, bound)
                if cert.feasible:
                    return f"{name} invertible in A({alpha},{beta}) at bound {bound}"
    cert = quotient.certify_non_unit(quotient.AElement.gens(0, 1)["e3"], 2)
    if not cert.unit:
        return "e3 should be a unit in A(0,1)"
    return None


def check_center_a(bound: int = 3) -> Optional[str]:
    for alpha, beta in ((1, 1), (0, 1), (1, 0), (ALPHA, BETA)):
        basis = quotient.center_A_up_to(bound, alpha, beta)
        if len(basis) != 1 or len(basis[0]) != 1 or (0, 0, 0) not in basis[0].terms:
            return f"A({alpha},{beta}) centre: {[str(x) for x in basis]}"
    return None


# -- generalized Weyl algebras ------------------------------------------------------

def check_gwa_0beta() -> Optional[str]:
    rep = gwa.check_theta_0beta(BETA)
    return _first_nonzero(rep["residuals"].items())


def check_gwa_alpha0() -> Optional[str]:
    rep = gwa.check_theta_alpha0(ALPHA)
    return _first_nonzero(rep["residuals"].items())


def check_torus_units(n_cases: int = 50) -> Optional[str]:
    for alpha, beta in ((ALPHA, BETA), (ALPHA, 0), (0, BETA), (1, 2)):
        rep = gwa.check_localization(alpha, beta)
        bad = _first_nonzero(rep["residuals"].items())
        if bad:
            return bad
    rng = random.Random(SEED)
    for i in range(n_cases):
        if i % 2:
            u = gwa.TorusElement.monomial(rng.randint(-3, 3), rng.randint(-3, 3), sampling.scalar(rng))
            shape = gwa.torus_units_shape(u)
            if shape is None or u * u.inverse() != u.one():
                return f"monomial {u} rejected"
        else:
            u = sampling.torus_element(rng, n_terms=rng.randint(2, 4))
            if len(u) > 1 and gwa.torus_units_shape(u) is not None:
                return f"{u} accepted as a unit"
    return None


# -- strata and automorphisms ------------------------------------------------------

def check_h_invariant_generators() -> Optional[str]:
    primes = strata.h_invariant_primes()
    heights = sorted(p.height for p in primes)
    if heights != [0, 1, 1, 2, 2, 3, 3, 4]:
        return f"heights {heights}"
    try:
        strata.generator_membership_check()
    except ClaimViolation as exc:
        return str(exc)
    for p in primes:
        rec = strata.classify(strata.IdealSpec(p.kind))
        if rec.height != p.height or rec.h_invariant_core != p.kind:
            return f"catalog disagrees on {p.kind}"
    return None


def sample_specs(rng: random.Random) -> list:
    """One instance of every kind, with random non-zero parameters."""
    s = lambda: sampling.scalar(rng)  # noqa: E731
    P = strata.CentralPoly({(1, 1): Scalar(1), (0, 0): s()})
    return [
        strata.IdealSpec("Zero"),
        strata.IdealSpec("ZPrime"),
        strata.IdealSpec("Z"),
        strata.IdealSpec("E3"),
        strata.IdealSpec("E3bar"),
        strata.IdealSpec("E1"),
        strata.IdealSpec("E2"),
        strata.IdealSpec("Augmentation"),
        strata.IdealSpec("ZalphaZprime", alpha=s()),
        strata.IdealSpec("ZZprimeBeta", beta=s()),
        strata.IdealSpec("ZalphaZprimeBeta", alpha=s(), beta=s()),
        strata.IdealSpec("IrreducibleCentral", poly=P),
        strata.IdealSpec("E1E2beta", beta=s()),
        strata.IdealSpec("E1alphaE2", alpha=s()),
    ]


# expected (height, primitive, maximal, orbit) per kind
STRATA_TABLE = {
    "Zero": (0, False, False, None),
    "ZPrime": (1, False, False, None),
    "Z": (1, False, False, None),
    "E3": (2, True, False, 4),
    "E3bar": (2, True, False, 5),
    "E1": (3, False, False, None),
    "E2": (3, False, False, None),
    "Augmentation": (4, True, True, 8),
    "ZalphaZprime": (2, True, True, 2),
    "ZZprimeBeta": (2, True, True, 3),
    "ZalphaZprimeBeta": (2, True, True, 1),
    "IrreducibleCentral": (1, False, False, None),
    "E1E2beta": (4, True, True, 6),
    "E1alphaE2": (4, True, True, 7),
}


def check_strata() -> Optional[str]:
    records = [strata.classify(s) for s in sample_specs(random.Random(SEED))]
    for r in records:
        if r.gk_of_quotient + r.height != 4:
            return f"{r.kind}: GK + height != 4"
        if r.is_maximal and not r.is_primitive:
            return f"{r.kind}: maximal but not primitive"
        if (r.height, r.is_primitive, r.is_maximal, r.orbit_id) != STRATA_TABLE[r.kind]:
            return f"{r.kind}: {r}"
    prim_not_max = sorted(r.kind for r in records if r.is_primitive and not r.is_maximal)
    if prim_not_max != ["E3", "E3bar"]:
        return f"primitive non-maximal kinds {prim_not_max}"
    if sum(r.is_maximal for r in records) != 6:
        return "Max(U+) should have 6 kinds"
    orbits = sorted(r.orbit_id for r in records if r.orbit_id is not None)
    if orbits != list(range(1, 9)):
        return f"orbits {orbits}"
    edges = strata.poset_over_z()
    if len(edges) != 11 or ("<e3>", "<e3bar>") in edges:
        return "poset over z"
    return None


def check_primitive_quotients() -> Optional[str]:
    spec = strata.IdealSpec("ZZprimeBeta", beta=3)
    image = strata.psi_image(spec, ALPHA, BETA)
    expected = strata.IdealSpec("ZZprimeBeta", beta=Scalar(3) / (ALPHA**2 * BETA**2))
    if image != expected:
        return f"psi<z, z'-3> = {image}"
    return None


def check_psi_classification() -> Optional[str]:
    gens = upbw.psi_on_generators(ALPHA, BETA)
    rep = upbw.serre_check(gens["e1"], gens["e2"])
    if not rep["ok"]:
        return f"Serre relations fail on psi images: {rep['first']}, {rep['second']}"
    if upbw.apply_psi(ALPHA, BETA, upbw.Z) != upbw.Z.scale(ALPHA * BETA**2):
        return "psi(z) != a b^2 z"
    if upbw.apply_psi(ALPHA, BETA, upbw.ZPRIME) != upbw.ZPRIME.scale(ALPHA**2 * BETA**2):
        return "psi(z') != a^2 b^2 z'"
    rng = random.Random(SEED)
    for _ in range(10):
        x = sampling.u_element(rng)
        if upbw.apply_psi(ALPHA, BETA, x) != upbw.psi_by_substitution(ALPHA, BETA, x):
            return f"psi disagrees on {x}"
    return None


def check_psi_orbits(n_cases: int = 50) -> Optional[str]:
    rng = random.Random(SEED)
    primitive = [s for s in sample_specs(rng) if strata.classify(s).is_primitive]
    for i in range(n_cases):
        spec = primitive[i % len(primitive)]
        a, b = sampling.scalar(rng), sampling.scalar(rng)
        image = strata.psi_image(spec, a, b)
        if image.kind != spec.kind or strata.orbit_of(image) != strata.orbit_of(spec):
            return f"psi({a},{b}) moves {spec} to {image}"
        found = strata.find_psi(spec, image)
        if found is not None and strata.psi_image(spec, *found) != image:
            return f"transitivity witness fails for {spec}"
    for s in sample_specs(rng):
        if not strata.classify(s).is_primitive:
            try:
                strata.orbit_of(s)
                return f"{s} given an orbit"
            except DomainError:
                pass
    return None


CLAIMS: dict[str, Callable[[], Optional[str]]] = {
    "serre": check_serre,
    "zprime": check_zprime,
    "lemma1.1": check_power_commutation,
    "center.U": check_center_u,
    "heisenberg.f": check_heisenberg,
    "prop3.2": check_confluence,
    "lemma3.4": check_e3_powers,
    "prop3.5.units": check_units,
    "prop3.5.nonunits": check_nonunits,
    "center.A": check_center_a,
    "lemma3.3": check_torus_units,
    "prop3.8": check_gwa_0beta,
    "prop3.9": check_gwa_alpha0,
    "prop2.2": check_h_invariant_generators,
    "strata": check_strata,
    "prop4.1": check_primitive_quotients,
    "thm4.4": check_psi_classification,
    "cor4.5": check_psi_orbits,
}


def run_claim(claim_id: str) -> ClaimReport:
    fn = CLAIMS[claim_id]
    start = time.perf_counter()
    try:
        residual = fn()
    except (ClaimViolation, ArithmeticError) as exc:
        residual = f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1000
    status = "pass" if residual is None else "fail"
    return ClaimReport(claim_id, status, "0" if residual is None else residual, round(elapsed, 1))


def select(selector: str) -> list[str]:
    if selector == "all":
        return sorted(CLAIMS)
    if selector in CLAIMS:
        return [selector]
    prefixed = sorted(c for c in CLAIMS if c.startswith(selector + "."))
    if prefixed:
        return prefixed
    raise KeyError(selector)


def verify(selector: str, jobs: int = 1) -> list[ClaimReport]:
    ids = select(selector)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_claim, ids))
    else:
        reports = [run_claim(c) for c in ids]
    return sorted(reports, key=lambda r: r.claim_id)
