from __future__ import annotations

import cmath
import random
from fractions import Fraction

import pytest

from toric_hecke.cosets import CosetIndex, TorusConfig
from toric_hecke.errors import PoleError, PreconditionError
from toric_hecke.ring import HeckeRing, SatakeData, TorusKind, denominator_bound, involute, specialize
from toric_hecke.scalar import Scalar
from toric_hecke.shintani import (
    l_at_half,
    l_value,
    lfactor_poly,
    mu_poly,
    sch_circ,
    schur_coefficients,
    schur_value,
    shintani_local,
    shintani_universal_closed,
    shintani_universal_engine,
    torus_character,
)

NS, SP = TorusKind.NONSPLIT, TorusKind.SPLIT


def test_schur_coefficients_against_quotient():
    for n in range(9):
        for x, y in [(Fraction(2), Fraction(3)), (Fraction(-1, 2), Fraction(5, 7))]:
            quotient = (x ** (n + 1) - y ** (n + 1)) / (x - y)
            expanded = sum(c * (x + y) ** (n - 2 * j) * (x * y) ** j for j, c in enumerate(schur_coefficients(n)))
            assert quotient == expanded
            assert schur_value(n, x, y) == quotient


def test_sch_circ_examples(prime):
    p = prime
    r = HeckeRing(p, NS)
    assert sch_circ(0, r) == r.one
    assert sch_circ(1, r) == r.T / p
    assert sch_circ(2, r) == (r.T ** 2 / p - r.S) / p
    assert sch_circ(-1, r) == r.zero
    assert all(denominator_bound(sch_circ(m, r), 1) for m in range(8))


def test_sch_circ_specializes():
    p = 7
    data = SatakeData.nonsplit(0.4 + 0.9j, 1.3 - 0.2j)
    for m in range(7):
        expected = p ** (-m / 2) * schur_value(m, data.alpha, data.beta)
        assert abs(specialize(sch_circ(m, HeckeRing(p, NS)), data) - expected) < 1e-12


def test_mu_examples(prime):
    p = prime
    for lam in range(2, 6):
        assert mu_poly(lam - 2, lam, p).coeffs == (Fraction(-p), Fraction(-1))
    assert mu_poly(-1, 1, p).coeffs == (Fraction(-p), Fraction(-1))
    with pytest.raises(PreconditionError):
        mu_poly(3, 4, p)


def test_lfactor(prime):
    p = prime
    ns = HeckeRing(p, NS)
    assert l_at_half(ns) == ns.one - ns.T / p + ns.S / p
    sp = HeckeRing(p, SP)
    assert l_at_half(sp) == sp.one - sp.T * sp.A ** -1 / p + sp.S * sp.A ** -2 / p
    poly = lfactor_poly(ns)
    assert poly.c1 == ns.T * Scalar.sqrt_p(p) / p
    data = SatakeData.split(0.5j, 1.2, 0.8 + 0.1j)
    x = 1 / (p ** 0.5 * data.chi_a)
    assert abs(specialize(l_at_half(sp), data) - (1 - data.alpha * x) * (1 - data.beta * x)) < 1e-12


def test_pole():
    p = 5
    data = SatakeData.nonsplit(p ** 0.5, 0.3)
    with pytest.raises(PoleError):
        l_value(p, data)
    # the Shintani value only needs 1/L and stays finite
    assert cmath.isfinite(shintani_local(CosetIndex(2, 0), data, p))


def test_lambda_one_values(prime):
    p = prime
    ns = HeckeRing(p, NS)
    assert shintani_universal_closed(1, ns) == ns.T / (p + 1)
    sp = HeckeRing(p, SP)
    assert shintani_universal_closed(1, sp) == sp.A - sp.A * l_at_half(sp) * Fraction(p, p - 1)
    assert shintani_universal_closed(0, sp) == sp.one


@pytest.mark.parametrize("kind", [NS, SP])
def test_closed_form_equals_engine(kind, prime):
    cfg = TorusConfig.make(prime, kind)
    for lam in range(5):
        idx = CosetIndex(lam, 0) if kind is NS else CosetIndex(lam, 0, 0)
        assert shintani_universal_engine(idx, cfg) == shintani_universal_closed(lam, cfg.ring)


def _opposite_sign_variant(lam, ring):
    # the closed form with the opposite sign on the sum over m
    h, p, P = ring.torus_order, ring.p, l_at_half(ring)
    if ring.kind is SP:
        A = ring.A
        corr = A * sch_circ(lam - 1, ring) * Fraction(p, h)
        for m in range(lam - 1):
            corr = corr - A ** (lam - m) * sch_circ(m, ring)
        return A ** lam - corr * P
    corr = sch_circ(lam - 1, ring) * p
    for m in range(lam - 1):
        corr = corr + mu_poly(m, lam, p).at_hecke(ring.S) * sch_circ(m, ring)
    return (-mu_poly(-1, lam, p).at_hecke(ring.S) - corr * P) / h


@pytest.mark.parametrize("kind", [NS, SP])
def test_opposite_sum_sign_disagrees_with_engine(kind):
    cfg = TorusConfig.make(5, kind)
    idx = CosetIndex(2, 0) if kind is NS else CosetIndex(2, 0, 0)
    engine = shintani_universal_engine(idx, cfg)
    assert _opposite_sign_variant(2, cfg.ring) != engine


def test_nonsplit_engine_is_scaled_cartan(prime):
    from toric_hecke.cosets import cartan_polynomial

    cfg = TorusConfig.make(prime, NS)
    for lam in range(1, 5):
        scale = (prime + 1) * prime ** (lam - 1)
        assert shintani_universal_engine(CosetIndex(lam, 0), cfg) == cartan_polynomial(lam, cfg.ring) / scale


@pytest.mark.parametrize("kind", [NS, SP])
def test_denominator_optimality(kind, prime):
    cfg = TorusConfig.make(prime, kind)
    h = cfg.ring.torus_order
    for lam in range(4):
        for a in (-2, 1):
            idx = CosetIndex(lam, a) if kind is NS else CosetIndex(lam, a, 1)
            assert denominator_bound(shintani_universal_engine(idx, cfg), h)


@pytest.mark.parametrize("kind", [NS, SP])
def test_torus_character_factor(kind):
    p = 3
    cfg = TorusConfig.make(p, kind)
    rng = random.Random(4)
    for _ in range(5):
        rc = lambda: cmath.rect(rng.uniform(0.5, 2), rng.uniform(0, 6.3))
        data = SatakeData.nonsplit(rc(), rc()) if kind is NS else SatakeData.split(rc(), rc(), rc())
        for lam in range(3):
            base_idx = CosetIndex(lam, 0) if kind is NS else CosetIndex(lam, 0, 0)
            idx = CosetIndex(lam, 2) if kind is NS else CosetIndex(lam, 2, -1)
            base = specialize(shintani_universal_engine(base_idx, cfg), data)
            moved = specialize(shintani_universal_engine(idx, cfg), data)
            assert abs(moved - base * torus_character(idx, data)) < 1e-9


def test_schur_family():
    from toric_hecke.shintani import schur_family

    ring = TorusConfig.make(3, TorusKind.NONSPLIT).ring
    coeffs, circ = schur_family(0, ring)
    assert coeffs == (1,) and circ == ring.one
    coeffs, circ = schur_family(2, ring)
    assert coeffs == (1, -1)
    assert all(c.sqrtp == 0 for c in circ.terms.values())
    with pytest.raises(PreconditionError):
        schur_family(-1, ring)
