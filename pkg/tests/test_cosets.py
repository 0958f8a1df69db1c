from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from strategies import integral_units, matrices
from toric_hecke.cosets import (
    GL2,
    IDENTITY,
    N0,
    CosetIndex,
    TorusConfig,
    cartan_cosets,
    cartan_polynomial,
    classify_g,
    classify_pair,
    diag,
    hecke_cosets,
    hecke_polynomial,
    hermite_key,
    is_integral_unit,
    iwasawa_decompose,
    min_val,
    representative,
    s_mat,
    torus_coset_reps,
)
from toric_hecke.errors import ConfigurationError, PreconditionError
from toric_hecke.module import imap_scale
from toric_hecke.ring import HeckeRing, TorusKind
from toric_hecke.scalar import vp

NS, SP = TorusKind.NONSPLIT, TorusKind.SPLIT


def reassemble(iw, p):
    P = Fraction(p)
    return diag(P ** (iw.z + iw.r), P ** iw.z) @ GL2.of(1, iw.n, 0, 1) @ iw.k


def test_torus_config_D():
    assert TorusConfig.make(3, NS).D == 1
    assert TorusConfig.make(5, NS).D == 2
    assert TorusConfig.make(7, NS).D == 1
    assert TorusConfig.make(13, NS).D == 2
    with pytest.raises(PreconditionError):
        TorusConfig(5, NS, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_iwasawa_reassembles(p):
    @settings(max_examples=60, deadline=None)
    @given(matrices(p))
    def check(g):
        iw = iwasawa_decompose(g, p)
        assert reassemble(iw, p) == g
        assert is_integral_unit(iw.k, p)

    check()


def test_iwasawa_examples(prime):
    p = prime
    assert iwasawa_decompose(IDENTITY, p)[:3] == (0, 0, 0)
    iw = iwasawa_decompose(diag(p * p, 1), p)
    assert (iw.z, iw.r, iw.n) == (0, 2, 0) and iw.k == IDENTITY
    D = TorusConfig.make(p, NS).D
    for lam in range(4):
        g = GL2.of(0, 1, -D, 0) @ s_mat(lam, p)
        iw = iwasawa_decompose(g, p)
        # g lies in diag(1, p^lam) GL2(Zp)
        assert (iw.z, iw.r, iw.n) == (lam, -lam, 0)
        assert is_integral_unit(diag(1, Fraction(p) ** -lam) @ g, p)


@pytest.mark.parametrize("p", [3, 5])
def test_nonsplit_classification_matches_cartan_invariant(p):
    # H is contained in center * GL2(Zp), so the orbit is detected by
    # the elementary divisors: lambda = v(det) - 2 * (min entry valuation).
    cfg = TorusConfig.make(p, NS)

    @settings(max_examples=80, deadline=None)
    @given(matrices(p))
    def check(g):
        assert classify_g(g, cfg) == int(vp(g.det(), p)) - 2 * int(min_val(g, p))

    check()


@pytest.mark.parametrize("kind", [NS, SP])
def test_classification_invariance(kind):
    p = 5
    cfg = TorusConfig.make(p, kind)
    nonzero = st.integers(-6, 6).filter(bool)
    unit = cfg.torus_element(1, p) if kind is NS else diag(2, 3)

    @settings(max_examples=60, deadline=None)
    @given(matrices(p), nonzero, nonzero, integral_units(p), st.integers(-2, 2), st.integers(-2, 2))
    def check(g, t1, t2, k, e1, e2):
        # (g, y) -> (h g k, h^-1 y u) with h in the torus, k in GL2(Zp), u an integral torus unit
        h = cfg.torus_element(t1, t2) if kind is NS else diag(t1, Fraction(t2, p))
        y = diag(Fraction(p) ** e1, Fraction(p) ** e1) if kind is NS else diag(Fraction(p) ** e1, Fraction(p) ** e2)
        base = classify_pair(g, y, cfg)
        assert classify_pair(h @ g @ k, h.inverse() @ y @ unit, cfg) == base
        assert classify_g(h @ g @ k, cfg) == base.lam

    check()


@pytest.mark.parametrize("kind", [NS, SP])
def test_representatives_round_trip(kind, prime):
    cfg = TorusConfig.make(prime, kind)
    for lam, a, b in product(range(5), range(-3, 4), range(-2, 3)):
        idx = CosetIndex(lam, a) if kind is NS else CosetIndex(lam, a, b)
        g, h = representative(idx, cfg)
        assert classify_pair(g, h, cfg) == idx


def test_split_classification_example():
    p = 5
    cfg = TorusConfig.make(p, SP)
    tau = diag(Fraction(7, 25), 3)
    k1, k2 = GL2.of(2, 1, 1, 1), diag(3, 2)
    g = tau @ N0 @ s_mat(1, p) @ k1
    h = tau.inverse() @ diag(p * p, 1) @ diag(Fraction(1, p), Fraction(1, p)) @ k2
    assert classify_pair(g, h, cfg) == CosetIndex(1, 2, -1)


def test_classify_pair_rejects_non_torus():
    cfg = TorusConfig.make(3, SP)
    with pytest.raises(PreconditionError):
        classify_pair(IDENTITY, GL2.of(1, 1, 0, 1), cfg)


def _torus_quotient_key(g: GL2, cfg: TorusConfig, lam: int) -> tuple[int, int]:
    # x + y sqrt(-D) modulo units of Z_p + p^lam O_E, as a point of P^1(Z/p^lam)
    q = cfg.p ** lam
    x, y = int(g.a) % q, int(g.c) % q
    if y % cfg.p:
        return (x * pow(y, -1, q) % q, 1)
    return (1, y * pow(x, -1, q) % q)


@pytest.mark.parametrize("lam", [0, 1, 2, 3])
def test_torus_coset_reps(prime, lam):
    cfg = TorusConfig.make(prime, NS)
    reps = torus_coset_reps(lam, cfg)
    assert len(reps) == imap_scale(lam, cfg)
    transposed = lambda g: g.a == g.d and g.b == -cfg.D * g.c
    assert all(transposed(g) and is_integral_unit(g, prime) for g in reps)
    if lam:
        assert len({_torus_quotient_key(g, cfg, lam) for g in reps}) == len(reps)
    # the stabilizer of level lam fixes s(lam) GL2(Zp)
    stab = GL2.of(1, -cfg.D * prime ** lam, prime ** lam, 1)
    assert is_integral_unit(s_mat(lam, prime).inverse() @ stab @ s_mat(lam, prime), prime)


def test_torus_coset_reps_split_rejected():
    with pytest.raises(ConfigurationError):
        torus_coset_reps(1, TorusConfig.make(3, SP))


def _brute_unit_index(p: int, lam: int, kind: TorusKind, D: int) -> int:
    q = p ** lam
    units = lambda x: x % p != 0
    if kind is SP:
        total = sum(1 for a in range(q) for b in range(q) if units(a) and units(b))
        sub = sum(1 for a in range(q) for b in range(q) if units(a) and units(b) and (a - b) % q == 0)
    else:
        total = sum(1 for x in range(q) for y in range(q) if units(x * x + D * y * y))
        sub = sum(1 for x in range(q) if units(x))
    return total // sub


@pytest.mark.parametrize("kind", [NS, SP])
def test_imap_scale_brute_force(kind):
    for p, lam in [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3), (7, 1)]:
        cfg = TorusConfig.make(p, kind)
        assert imap_scale(lam, cfg) == _brute_unit_index(p, lam, kind, cfg.D)
    assert imap_scale(3, TorusConfig.make(5, SP)) == 100
    assert imap_scale(0, TorusConfig.make(5, NS)) == 1


@pytest.mark.parametrize("lam", [0, 1, 2, 3, 4])
def test_cartan_cosets(prime, lam):
    p = prime
    cosets = cartan_cosets(lam, p)
    assert len(cosets) == (p ** lam + p ** (lam - 1) if lam else 1)
    assert len({hermite_key(g, p) for g in cosets}) == len(cosets)
    assert all(vp(g.det(), p) == lam and min_val(g, p) == 0 for g in cosets)
    if p ** lam <= 125:
        # completeness: every Hermite form of determinant p^lam with
        # coprime entries is listed
        allforms = {hermite_key(g, p) for g in hecke_cosets(lam, p) if min_val(g, p) == 0}
        assert allforms == {hermite_key(g, p) for g in cosets}


def test_hermite_key_detects_cosets():
    p = 3
    g = GL2.of(9, 4, 0, 1)
    assert hermite_key(g @ GL2.of(1, 5, 0, 1), p) == hermite_key(g, p)
    assert hermite_key(g @ GL2.of(2, 1, 1, 1), p) == hermite_key(g, p)
    assert hermite_key(GL2.of(9, 5, 0, 1), p) != hermite_key(g, p)


def test_cartan_polynomial_values(prime):
    p = prime
    r = HeckeRing(p, NS)
    T, S = r.T, r.S
    assert cartan_polynomial(0, r) == r.one
    assert cartan_polynomial(1, r) == T
    assert cartan_polynomial(2, r) == T ** 2 - S * (p + 1)
    assert cartan_polynomial(3, r) == T ** 3 - S * T * (2 * p + 1)


def test_cartan_polynomial_decomposes_hecke_polynomial(prime):
    r = HeckeRing(prime, SP)
    for k in range(7):
        total = sum((r.S ** j * cartan_polynomial(k - 2 * j, r) for j in range(k // 2 + 1)), r.zero)
        assert total == hecke_polynomial(k, r)
        assert all(c.is_p_integral() and c.rat.denominator == 1 for c in cartan_polynomial(k, r).terms.values())


def test_parse_matrix():
    assert GL2.parse("1,1/9;0,3") == GL2.of(1, Fraction(1, 9), 0, 3)
    from toric_hecke.errors import ParseError
    with pytest.raises(ParseError):
        GL2.parse("1,2;2,4")
    with pytest.raises(ParseError):
        GL2.parse("1,2,3")
