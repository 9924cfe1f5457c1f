"""Seeded random elements for property checks."""

from __future__ import annotations

import random

from .coeff import Scalar, qpow
from .gwa import GwaAlgebraSpec, GwaElement, LaurentPoly, TorusElement
from .quotient import AElement, BElement, HElement
from .upbw import UElement


def scalar(rng: random.Random) -> Scalar:
    """A small non-zero coefficient like ``-3 q^2`` or ``1 + q^-1``."""
    c = rng.choice([-3, -2, -1, 1, 2, 3]) * qpow(rng.randint(-2, 2))
    if rng.random() < 0.3:
        c = c + rng.choice([-1, 1])
    return c if c else Scalar(1)


def _terms(rng, keys, n_terms):
    return {rng.choice(keys): scalar(rng) for _ in range(n_terms)}


def u_element(rng, max_exp=2, n_terms=3) -> UElement:
    r = range(max_exp + 1)
    keys = [(i, j, k, l) for i in r for j in r for k in r for l in r]
    return UElement(_terms(rng, keys, n_terms))


def b_element(rng, alpha, max_e3=5, max_exp=2, n_terms=3) -> BElement:
    keys = [(j, k, l) for j in range(max_e3 + 1) for k in range(max_exp + 1) for l in range(max_exp + 1)]
    return BElement(_terms(rng, keys, n_terms), alpha)


def a_element(rng, alpha, beta, max_exp=2, n_terms=3) -> AElement:
    keys = [(e, i, j) for e in (0, 1) for i in range(max_exp + 1) for j in range(max_exp + 1)]
    return AElement(_terms(rng, keys, n_terms), alpha, beta)


def h_element(rng, max_exp=2, n_terms=3) -> HElement:
    r = range(max_exp + 1)
    return HElement(_terms(rng, [(a, b, c) for a in r for b in r for c in r], n_terms))


def torus_element(rng, max_exp=2, n_terms=3) -> TorusElement:
    r = range(-max_exp, max_exp + 1)
    return TorusElement(_terms(rng, [(m, n) for m in r for n in r], n_terms))


def laurent(rng, max_exp=1, n_terms=2) -> LaurentPoly:
    return LaurentPoly(_terms(rng, list(range(-max_exp, max_exp + 1)), n_terms)) or LaurentPoly.const(1)


def gwa_spec(rng) -> GwaAlgebraSpec:
    return GwaAlgebraSpec(scalar(rng), laurent(rng))


def gwa_element(rng, spec, max_ladder=2, max_exp=1, n_terms=3) -> GwaElement:
    keys = [(n, e) for n in range(-max_ladder, max_ladder + 1) for e in range(-max_exp, max_exp + 1)]
    return GwaElement(_terms(rng, keys, n_terms), spec)
