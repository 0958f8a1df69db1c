"""Explicit ideal-membership certificates for universal operators.

The relevant ideals of the Hecke ring are

* non-split: <p+1, T>;
* split: <p-1, P'(p^-1/2)>, the involuted inverse L-factor at 1/2.

A certificate is a pair (u, v) with u*g1 + v*g2 equal to the target
exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .cosets import CosetIndex, TorusConfig, cartan_polynomial, hecke_polynomial
from .errors import ConfigurationError, PreconditionError
from .module import SphericalFunction, lattice_class, universal_operator
from .ring import HeckeElement, HeckeRing, TorusKind, involute
from .shintani import l_at_half, sch_circ

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    u: HeckeElement
    v: HeckeElement
    g1: int
    g2: HeckeElement
    target: HeckeElement

    def residual(self) -> HeckeElement:
        return self.u * self.g1 + self.v * self.g2 - self.target

    def verify(self) -> bool:
        integral = all(c.is_p_integral() for x in (self.u, self.v) for c in x.terms.values())
        return integral and not self.residual()

    def to_json(self) -> dict:
        return {
            "u": self.u.to_json(), "v": self.v.to_json(), "g1": self.g1,
            "g2": self.g2.to_json(), "target": self.target.to_json(), "verified": self.verify(),
        }


def verify_certificate(c: Certificate) -> bool:
    return c.verify()


def ideal_generators(ring: HeckeRing) -> tuple[int, HeckeElement]:
    if ring.kind is TorusKind.NONSPLIT:
        return ring.p + 1, ring.T
    return ring.p - 1, involute(l_at_half(ring))


def cartan_certificate(lam: int, ring: HeckeRing) -> Certificate:
    """C_lam = u*(p+1) + v*T for lam >= 1.

    Summing the T(p^k) recursion gives
    C_lam = T*T(p^(lam-1)) - (p+1) * sum_{j>=1} S^j C_(lam-2j).
    """
    if lam < 1:
        raise PreconditionError("the Cartan certificate needs lambda >= 1")
    nonsplit = HeckeRing(ring.p, TorusKind.NONSPLIT)
    u = nonsplit.zero
    for j in range(1, lam // 2 + 1):
        u = u - nonsplit.S ** j * cartan_polynomial(lam - 2 * j, nonsplit)
    v = hecke_polynomial(lam - 1, nonsplit)
    return Certificate(u, v, ring.p + 1, nonsplit.T, cartan_polynomial(lam, nonsplit))


def _split_pieces(lam: int, ring: HeckeRing) -> tuple[HeckeElement, HeckeElement]:
    """(u, v) for the universal operator of xi_(lam,0,0), lam >= 1."""
    p = ring.p
    g2 = involute(l_at_half(ring))
    A_inv = ring.A ** -1
    scale = Fraction(p) ** (lam - 1)
    u = A_inv ** lam
    for m in range(lam - 1):
        u = u - A_inv ** (lam - m) * involute(sch_circ(m, ring)) * g2
    v = A_inv * involute(sch_circ(lam - 1, ring)) * (-p)
    return u * scale, v * scale


def universal_op_certificate(xi: SphericalFunction) -> Certificate:
    """Certificate that the universal operator of xi lies in the ideal (xi in L1)."""
    cfg = xi.cfg
    if lattice_class(xi) != "L1":
        raise PreconditionError("the function is not in the L1 lattice")
    ring = cfg.ring
    g1, g2 = ideal_generators(ring)
    u, v = ring.zero, ring.zero
    for idx, c in xi.values.items():
        if cfg.kind is TorusKind.NONSPLIT:
            shift = ring.monomial(s=-idx.a)
            if idx.lam == 0:
                u = u + shift * (c / g1)
                continue
            cert = cartan_certificate(idx.lam, ring)
            u = u + shift * involute(cert.u) * c
            v = v + shift * involute(cert.v) * ring.monomial(s=-1) * c
        else:
            shift = ring.monomial(s=-idx.b, a=-idx.a)
            if idx.lam == 0:
                u = u + shift * (c / g1)
                continue
            pu, pv = _split_pieces(idx.lam, ring)
            u = u + shift * pu * c
            v = v + shift * pv * c
    return Certificate(u, v, g1, g2, universal_operator(xi))


def decide_nonsplit_membership(x: HeckeElement) -> bool:
    """Whether x lies in <p+1, T>: reduce mod T and test divisibility by p+1."""
    if x.kind is not TorusKind.NONSPLIT:
        raise ConfigurationError("membership test is for the non-split ring")
    for (t, s, _a), c in x.terms.items():
        if not c.is_p_integral():
            log.debug("coefficient %r of T^%d S^%d is not in Z[1/p]", c, t, s)
            return False
        if t == 0 and not (c / (x.p + 1)).is_p_integral():
            log.debug("T-free coefficient %r of S^%d is not divisible by %d", c, s, x.p + 1)
            return False
    return True
