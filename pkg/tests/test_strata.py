import pytest
from hypothesis import given, strategies as st

from qb2.claims import STRATA_TABLE, sample_specs
from qb2.coeff import ALPHA, BETA, ONE, Q, Scalar, qpow
from qb2.errors import DomainError
from qb2.parsing import parse_ideal
from qb2.strata import (
    CORE_KINDS,
    KINDS,
    CentralPoly,
    IdealSpec,
    SpecError,
    classify,
    find_psi,
    generator_membership_check,
    h_invariant_primes,
    ideal_from_generators,
    membership_witness,
    orbit_of,
    poset_over_z,
    psi_image,
)
from qb2.upbw import E1, E2, E3, E3BAR, Z, ZPRIME, InvalidAutomorphismError, UElement
from strategies import scalars

import random

SPECS = sample_specs(random.Random(7))


def test_examples():
    rec = classify(IdealSpec("ZalphaZprimeBeta", alpha=2, beta=5))
    assert (rec.h_invariant_core, rec.height, rec.is_primitive, rec.is_maximal,
            rec.gk_of_quotient, rec.orbit_id) == ("Zero", 2, True, True, 2, 1)
    rec = classify(IdealSpec("E3"))
    assert (rec.h_invariant_core, rec.height, rec.is_primitive, rec.is_maximal,
            rec.gk_of_quotient, rec.orbit_id) == ("E3", 2, True, False, 2, 4)
    rec = classify(IdealSpec("Augmentation"))
    assert (rec.height, rec.is_maximal, rec.gk_of_quotient, rec.orbit_id) == (4, True, 0, 8)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_catalog_entry(spec):
    rec = classify(spec)
    assert rec.gk_of_quotient + rec.height == 4
    assert not rec.is_maximal or rec.is_primitive
    assert (rec.height, rec.is_primitive, rec.is_maximal, rec.orbit_id) == STRATA_TABLE[spec.kind]
    assert rec.h_invariant_core in CORE_KINDS


def test_counts():
    recs = [classify(s) for s in SPECS]
    assert len(recs) == len(KINDS) == 14
    assert sorted(r.kind for r in recs if r.is_primitive and not r.is_maximal) == ["E3", "E3bar"]
    assert sum(r.is_maximal for r in recs) == 6
    assert sorted(r.orbit_id for r in recs if r.orbit_id) == list(range(1, 9))


def test_h_invariant_primes():
    primes = h_invariant_primes()
    assert len(primes) == 8
    assert sorted(p.height for p in primes) == [0, 1, 1, 2, 2, 3, 3, 4]
    e1 = next(p for p in primes if p.kind == "E1")
    assert set(e1.generators) == {"e1", "e3", "e3bar", "z", "z'"}
    assert e1.height == 3
    for p in primes:
        assert classify(IdealSpec(p.kind)).height == p.height


def test_generator_membership():
    rep = generator_membership_check()
    assert rep["ok"]
    assert ("E3", "z") in rep["witnesses"] and ("E2", "z'") in rep["witnesses"]


def test_membership_witness_reproduces_target():
    w = membership_witness(Z, {"e3": E3})
    total = sum(((u * E3 * v).scale(c) for c, u, _, v in w), UElement())
    assert total == Z
    assert membership_witness(E1, {"e3": E3}) is None


def test_zprime_in_e3_z():
    # z' = (1 - q^-2)(e3 e3bar + (1 + q^-2) z e1)
    assert ZPRIME == (1 - qpow(-2)) * (E3 * E3BAR + (1 + qpow(-2)) * (Z * E1))
    assert membership_witness(ZPRIME, {"e3": E3, "z": Z}) is not None


def test_poset():
    edges = poset_over_z()
    assert ("<z>", "<e3>") in edges
    assert ("<e1>", "<e1, e2>") in edges
    assert ("<e3>", "<e3bar>") not in edges
    assert len(edges) == 11


def test_psi_image_examples():
    s = IdealSpec("ZZprimeBeta", beta=7)
    assert psi_image(s, ALPHA, BETA) == IdealSpec("ZZprimeBeta", beta=Scalar(7) / (ALPHA**2 * BETA**2))
    assert psi_image(s, 1, 1) == s
    s = IdealSpec("E1E2beta", beta=Q)
    assert psi_image(s, ALPHA, BETA) == IdealSpec("E1E2beta", beta=Q / BETA)
    s = IdealSpec("ZalphaZprimeBeta", alpha=2, beta=3)
    assert psi_image(s, ALPHA, BETA) == IdealSpec(
        "ZalphaZprimeBeta", alpha=2 / (ALPHA * BETA**2), beta=3 / (ALPHA**2 * BETA**2))
    with pytest.raises(InvalidAutomorphismError):
        psi_image(s, 0, 1)


def test_psi_image_of_central_polynomial():
    p = CentralPoly({(1, 1): ONE, (0, 0): -ONE})
    image = psi_image(IdealSpec("IrreducibleCentral", poly=p), 2, 1)
    # z z' - 1 maps to 2 * 4 z z' - 1, normalized to z z' - 1/8
    assert image.poly == CentralPoly({(1, 1): ONE, (0, 0): -ONE / 8})


@given(st.sampled_from([s for s in SPECS]), scalars(), scalars())
def test_psi_preserves_kind_and_orbit(spec, a, b):
    image = psi_image(spec, a, b)
    assert image.kind == spec.kind
    assert classify(image) == classify(spec)
    if classify(spec).is_primitive:
        assert orbit_of(image) == orbit_of(spec)


@given(st.sampled_from([s for s in SPECS if classify(s).is_primitive]), scalars(), scalars())
def test_find_psi_recovers_an_automorphism(spec, a, b):
    image = psi_image(spec, a, b)
    found = find_psi(spec, image)
    if found is not None:
        assert psi_image(spec, *found) == image


def test_find_psi_needs_square_root():
    s = IdealSpec("ZZprimeBeta", beta=1)
    assert find_psi(s, IdealSpec("ZZprimeBeta", beta=Q)) is None
    assert find_psi(s, IdealSpec("ZZprimeBeta", beta=Q**2)) is not None


def test_orbit_examples():
    assert orbit_of(IdealSpec("ZalphaZprimeBeta", alpha=1, beta=1)) == 1
    assert orbit_of(IdealSpec("E3bar")) == 5
    assert orbit_of(IdealSpec("E1alphaE2", alpha=3)) == 7
    with pytest.raises(DomainError):
        orbit_of(IdealSpec("Z"))


def test_parameter_constraints():
    with pytest.raises(SpecError):
        IdealSpec("ZalphaZprime", alpha=0)
    with pytest.raises(SpecError):
        IdealSpec("E1E2beta")
    with pytest.raises(SpecError):
        IdealSpec("E3", alpha=1)
    with pytest.raises(SpecError):
        IdealSpec("Nope")
    with pytest.raises(SpecError):
        IdealSpec("IrreducibleCentral", poly=CentralPoly({(1, 0): ONE}))
    with pytest.raises(SpecError):
        IdealSpec("IrreducibleCentral", poly=CentralPoly({(1, 1): ONE, (1, 0): ONE}))


SHAPES = [
    ("z", "z'"), ("e1", "e2"), ("z",), ("z'",), ("e1",), ("e2",), ("e3",), ("e3bar",),
]
BASES = {"z": Z, "z'": ZPRIME, "e1": E1, "e2": E2, "e3": E3, "e3bar": E3BAR}


@given(st.sampled_from(SHAPES), st.lists(st.sampled_from([0, 1, ALPHA]), min_size=2, max_size=2))
def test_recognition_is_unambiguous(shape, values):
    gens = [BASES[n] - v for n, v in zip(shape, values)]
    try:
        spec = ideal_from_generators(gens)
    except SpecError:
        return
    # the recognised kind reproduces the generators it was read from
    again = ideal_from_generators(spec.generators())
    assert again == spec


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.kind)
def test_render_round_trip(spec):
    assert parse_ideal(str(spec)) == spec
