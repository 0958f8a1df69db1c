"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from toric_hecke.cosets import GL2
from toric_hecke.ring import HeckeElement, TorusKind


def p_adic_rationals(p: int, max_exp: int = 3) -> st.SearchStrategy[Fraction]:
    return st.builds(
        lambda n, e, u: Fraction(n) * Fraction(p) ** e / u,
        st.integers(-30, 30),
        st.integers(-max_exp, max_exp),
        st.sampled_from([1, 1, 1, 2, 7, 11]).filter(lambda u: u % p),
    )


def matrices(p: int) -> st.SearchStrategy[GL2]:
    q = p_adic_rationals(p)
    return st.builds(GL2, q, q, q, q).filter(lambda g: g.det() != 0)


def integral_units(p: int) -> st.SearchStrategy[GL2]:
    ints = st.integers(-20, 20)
    return st.builds(GL2.of, ints, ints, ints, ints).filter(lambda g: g.det() % p != 0)


def hecke_elements(p: int, kind: TorusKind, max_terms: int = 4, max_t: int = 3) -> st.SearchStrategy[HeckeElement]:
    a_exp = st.integers(-2, 2) if kind is TorusKind.SPLIT else st.just(0)
    mono = st.tuples(st.integers(0, max_t), st.integers(-2, 2), a_exp)
    coeff = st.builds(lambda n, e: Fraction(n) * Fraction(p) ** e, st.integers(-9, 9), st.integers(-2, 1))
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: HeckeElement(p, kind, d))
