import pytest
from hypothesis import given, settings, strategies as st

import oracle
from qb2.coeff import ALPHA, BETA, c1, c2, c3, qpow
from qb2.errors import ClaimViolation, DomainError
from qb2.parsing import evaluate
from qb2.quotient import (
    AElement,
    HElement,
    center_A_up_to,
    certify_non_unit,
    e3_power_expand,
    f_basis,
    filtration_degree,
    lift_B,
    map_from_H,
    map_to_H,
    omega,
    predicted_box,
    project_A,
    project_B,
    reduce_to_F,
    twist_A,
    verify_unit,
)
from qb2.sparse import IncompatibleAlgebraError
from qb2.upbw import E1, E2, E3, Z, ZPRIME, apply_psi
from strategies import a_elements, b_elements, h_elements, scalars, u_elements

PARAMS = [(a, b) for a in (0, 1, 2) for b in (0, 1, 2) if (a, b) != (0, 0)]
params = st.sampled_from(PARAMS)


def a_words(x):
    out = {}
    for (eps, i, j), v in x.terms.items():
        oracle.add_to(out, ("e3",) * eps + ("e1",) * i + ("e2",) * j, oracle.scalar_to_sympy(v))
    return out


def test_central_characters():
    assert project_B(Z, 3) == 3
    assert project_A(Z, ALPHA, BETA) == ALPHA
    assert project_A(ZPRIME, ALPHA, BETA) == BETA


@given(u_elements(), u_elements(), st.sampled_from([0, 1, ALPHA]))
def test_project_B_is_multiplicative(x, y, alpha):
    assert project_B(x * y, alpha) == project_B(x, alpha) * project_B(y, alpha)


@given(b_elements(ALPHA))
def test_lift_B_is_a_section(x):
    assert project_B(lift_B(x), ALPHA) == x


# -- Heisenberg ----------------------------------------------------------------------

def test_heisenberg_relations():
    g = HElement.gens()
    E1_, E2_, E3_ = g["E1"], g["E2"], g["E3"]
    assert E3_ * E1_ == qpow(2) * (E1_ * E3_)
    assert E2_ * E3_ == qpow(2) * (E3_ * E2_)
    assert E2_ * E1_ == qpow(-2) * (E1_ * E2_) - qpow(-2) * E3_


@settings(max_examples=20)
@given(h_elements(hi=1), h_elements(hi=1))
def test_heisenberg_product_matches_oracle(x, y):
    def words(h):
        out = {}
        for (a, b, c), v in h.terms.items():
            oracle.add_to(out, ("E1",) * a + ("E3",) * b + ("E2",) * c, oracle.scalar_to_sympy(v))
        return out

    expected = oracle.mul(words(x), words(y), rules=oracle.H_RULES, order=oracle.H_ORDER)
    assert oracle.same(words(x * y), expected)


def test_casimir():
    assert map_to_H(project_B(ZPRIME, 0)) == (1 - qpow(-2)) * omega()
    om = omega()
    for g in HElement.gens().values():
        assert om * g == g * om


@given(b_elements(0, max_e3=2), b_elements(0, max_e3=2))
def test_map_to_H_multiplicative(x, y):
    assert map_to_H(x * y) == map_to_H(x) * map_to_H(y)
    assert map_from_H(map_to_H(x)) == x


def test_map_to_H_domain():
    with pytest.raises(DomainError):
        map_to_H(project_B(E1, 1))


# -- A_{alpha,beta} -------------------------------------------------------------------

def test_quartic_in_A11():
    expected = evaluate("-(q^4-1)*e3*e1*e2 - q^2*(q^2+1)*e1 - q^6/(1-q^2)", "A(1,1)")
    assert project_A(E3 * E3, 1, 1) == expected


# values frozen from the word-rewriting oracle in tests/oracle.py
FROZEN = [
    ("e3^3", (1, 1),
     "q^6*(q^2-1)*(q^2+1)^2*e1^2*e2 - q^10*(q^2+1)*e1*e2 + q^6/(q^2-1)*e3"
     " - q^2*(q^2+1)*e3*e1 + q^2*(q^2-1)^2*(q^2+1)^2*e3*e1^2*e2^2"),
    ("e3^4", (0, 1),
     "q^12/(q^2-1)^2 + q^16*(q^2-1)*(q^2+1)^2*e1^2*e2^2"
     " - q^6*(q^2-1)^3*(q^2+1)^3*e3*e1^3*e2^3 - q^6*(q^2+1)*(q^4+1)*e3*e1*e2"),
    ("e2*e3^2", (1, 0),
     "-q^6*(q^2+1)*e1*e2 + (q^2+1)*e3 - q^4*(q^2-1)*(q^2+1)*e3*e1*e2^2"),
]


@pytest.mark.parametrize("expr,ab,expected", FROZEN)
def test_frozen_reductions(expr, ab, expected):
    ctx = f"A({ab[0]},{ab[1]})"
    assert evaluate(expr, ctx) == evaluate(expected, ctx)


@settings(max_examples=20)
@given(u_elements(hi=2, max_terms=2), params)
def test_project_A_matches_oracle(x, ab):
    alpha, beta = ab
    expected = oracle.a_normal_form(oracle.u_to_words(x), alpha, beta)
    assert oracle.same(a_words(project_A(x, alpha, beta)), expected)


@given(st.data(), params)
def test_reduction_strategies_agree(data, ab):
    alpha, beta = ab
    x = data.draw(b_elements(alpha, max_e3=5))
    assert reduce_to_F(x, beta, "innermost") == reduce_to_F(x, beta, "leftmost")


@given(st.data())
def test_strategies_agree_symbolically(data):
    x = data.draw(b_elements(ALPHA, max_e3=4))
    assert reduce_to_F(x, BETA, "innermost") == reduce_to_F(x, BETA, "leftmost")


@given(st.data(), params)
def test_mul_A_associative(data, ab):
    x, y, w = (data.draw(a_elements(*ab)) for _ in range(3))
    assert (x * y) * w == x * (y * w)


@given(st.data(), params)
def test_project_A_is_multiplicative(data, ab):
    x, y = data.draw(u_elements()), data.draw(u_elements())
    assert project_A(x * y, *ab) == project_A(x, *ab) * project_A(y, *ab)


@given(st.data(), params)
def test_support_stays_in_predicted_box(data, ab):
    x, y = data.draw(a_elements(*ab)), data.draw(a_elements(*ab))
    d1, d2 = predicted_box(x, y)
    for key in (x * y).terms:
        f1, f2 = filtration_degree(key)
        assert f1 <= d1 and f2 <= d2


@pytest.mark.parametrize("d", range(6))
def test_f_basis_count(d):
    assert len(f_basis(d)) == (d + 1) * (d + 2)


def test_incompatible_parameters():
    with pytest.raises(IncompatibleAlgebraError):
        AElement.gens(1, 1)["e1"] * AElement.gens(1, 2)["e1"]


@settings(max_examples=20)
@given(st.data(), scalars(), scalars())
def test_twist_is_homomorphism(data, lam, mu):
    x, y = data.draw(a_elements(1, 1)), data.draw(a_elements(1, 1))
    assert twist_A(x * y, lam, mu) == twist_A(x, lam, mu) * twist_A(y, lam, mu)


def test_twist_matches_psi():
    x = E3 * E3 * E1 + E2
    lam, mu = qpow(1), 3
    lhs = twist_A(project_A(x, 2, 5), lam, mu)
    rhs = project_A(apply_psi(lam, mu, x), lhs.alpha, lhs.beta)
    assert lhs == rhs


# -- e3 powers, units, centre ------------------------------------------------------------

@pytest.mark.parametrize("p", [1, 2, 3, 4])
@pytest.mark.parametrize("ab", [(1, 1), (0, 1), (1, 0), (ALPHA, BETA), (ALPHA, 0)])
def test_e3_powers(p, ab):
    rep = e3_power_expand(p, *ab)
    assert rep["ok"], rep["checks"]


def test_e3_power_lead_constant():
    rep = e3_power_expand(2, 0, BETA)
    assert rep["even"].coefficient((0, 0, 0)) == (BETA * c3) ** 2


def test_unit_in_A0beta():
    g = AElement.gens(0, BETA)
    v = (-(1 / (BETA * c3))) * (g["e3"] + c1 * (g["e1"] * g["e2"]))
    assert verify_unit(g["e3"], v)


def test_unit_in_Aalpha0():
    g = AElement.gens(ALPHA, 0)
    e1, e2, e3 = g["e1"], g["e2"], g["e3"]
    u = (-qpow(2) * c1) * (e3 * e2) - ALPHA * c2
    v = (1 / (ALPHA**2 * c2**2)) * (-ALPHA * c2 + c1**2 * (e1 * e2 * e2) + c1 * (e3 * e2))
    assert verify_unit(u, v)
    assert e1 * u == e3 * e3


@pytest.mark.parametrize("bound", [2, 4])
@pytest.mark.parametrize("name,ab", [("e1", (1, 1)), ("e1", (0, 1)), ("e1", (1, 0)),
                                     ("e3", (1, 1)), ("e3", (1, 0))])
def test_non_units(name, ab, bound):
    cert = certify_non_unit(AElement.gens(*ab)[name], bound)
    assert cert.infeasible
    assert cert.augmented_rank == cert.rank + 1


def test_e3_unit_is_found():
    cert = certify_non_unit(AElement.gens(0, 1)["e3"], 2)
    assert cert.feasible and cert.unit


def test_unexpected_inverse_is_a_violation():
    with pytest.raises(ClaimViolation):
        certify_non_unit(AElement.gens(1, 1)["e1"].one(), 1)


@pytest.mark.parametrize("ab", [(1, 1), (0, 1), (1, 0)])
def test_center_of_A(ab):
    basis = center_A_up_to(3, *ab)
    assert basis == [AElement.gens(*ab)["e1"].one()]


def test_center_of_A00_rejected():
    with pytest.raises(DomainError):
        center_A_up_to(2, 0, 0)
