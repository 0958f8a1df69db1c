"""Universal and local Shintani functions.

The universal Shintani function of an orbit is an element of the Hecke
ring; specializing it at unramified data gives the local Shintani
function.  Two computations are provided: one from the module engine
(first principles) and one from the closed formula in terms of the
normalized Schur polynomials Sch°_m.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cosets import CosetIndex, TorusConfig
from .errors import PoleError, PreconditionError
from .module import SphericalFunction, imap_scale, universal_operator
from .ring import HeckeElement, HeckeRing, SatakeData, TorusKind, involute, specialize, torus_order_mod_p
from .scalar import Scalar


@lru_cache(maxsize=None)
def schur_coefficients(n: int) -> tuple[int, ...]:
    """c_j with Sch_n(x, y) = sum_j c_j (x+y)^(n-2j) (xy)^j."""
    if n < 0:
        return ()
    if n <= 1:
        return (1,)
    prev, prev2 = schur_coefficients(n - 1), schur_coefficients(n - 2)
    out = [0] * (n // 2 + 1)
    for j, c in enumerate(prev):
        out[j] += c
    for j, c in enumerate(prev2):
        out[j + 1] -= c
    return tuple(out)


def schur_value(n: int, x: complex, y: complex) -> complex:
    """Sch_n(x, y) = (x^(n+1) - y^(n+1)) / (x - y), evaluated stably."""
    if n < 0:
        return 0
    return sum(x ** k * y ** (n - k) for k in range(n + 1))


def sch_circ(m: int, ring: HeckeRing) -> HeckeElement:
    """p^(-m/2) Sch_m with x+y replaced by p^(-1/2) T and xy by S."""
    if m < 0:
        return ring.zero
    p = Fraction(ring.p)
    out = ring.zero
    for j, c in enumerate(schur_coefficients(m)):
        if c:
            out = out + ring.monomial(t=m - 2 * j, s=j, c=c * p ** (j - m))
    return out


def schur_family(m: int, ring: HeckeRing) -> tuple[tuple[int, ...], HeckeElement]:
    """(coefficients of Sch_m, Sch°_m in the ring)."""
    if m < 0:
        raise PreconditionError("m must be non-negative")
    return schur_coefficients(m), sch_circ(m, ring)


@dataclass(frozen=True)
class MuPoly:
    """A polynomial in one variable with rational coefficients (index = degree)."""

    coeffs: tuple[Fraction, ...]

    def at(self, x: complex) -> complex:
        return sum(complex(c) * x ** k for k, c in enumerate(self.coeffs))

    def at_hecke(self, var: HeckeElement) -> HeckeElement:
        out = var * 0
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + var ** k * c
        return out


def mu_poly(m: int, lam: int, p: int) -> MuPoly:
    """The weight attached to Sch_m in the non-split Shintani formula, -1 <= m <= lam-2."""
    if not -1 <= m <= lam - 2:
        raise PreconditionError(f"mu needs -1 <= m <= lam-2, got m={m}, lam={lam}")
    n = lam - m - 2
    P = Fraction(p)
    size = max(n, lam - m - 1) + 1
    coeffs = [Fraction(0)] * size
    # phi(p) * (1 - Sch_n(1, 1/p) - Sch_n(1, T/p))
    coeffs[0] += (p - 1) * (1 - sum(P ** -k for k in range(n + 1)))
    for k in range(n + 1):
        coeffs[k] -= (p - 1) * P ** -k
    # - p^(2+m-lam) (1 + T^(lam-m-1))
    tail = P ** (2 + m - lam)
    coeffs[0] -= tail
    coeffs[lam - m - 1] -= tail
    return MuPoly(tuple(coeffs))


@dataclass(frozen=True)
class LFactorPolynomial:
    """1 - c1 X + c2 X^2 with Hecke-ring coefficients."""

    c1: HeckeElement
    c2: HeckeElement

    def at(self, x: Scalar) -> HeckeElement:
        return self.c1.one() - self.c1 * x + self.c2 * (x * x)

    def at_inverse_sqrt_p(self) -> HeckeElement:
        p = self.c1.p
        return self.at(Scalar.sqrt_p(p) / p)


def lfactor_poly(ring: HeckeRing) -> LFactorPolynomial:
    """The inverse local L-factor as a polynomial in X over the Hecke ring."""
    inv_sqrt = Scalar.sqrt_p(ring.p) / ring.p
    if ring.kind is TorusKind.NONSPLIT:
        return LFactorPolynomial(ring.T * inv_sqrt, ring.S)
    return LFactorPolynomial(ring.T * ring.A ** -1 * inv_sqrt, ring.S * ring.A ** -2)


def l_at_half(ring: HeckeRing) -> HeckeElement:
    """The inverse L-factor at s = 1/2 (all coefficients in Z[1/p])."""
    return lfactor_poly(ring).at_inverse_sqrt_p()


def shintani_universal_closed(lam: int, ring: HeckeRing) -> HeckeElement:
    """Closed formula for the universal Shintani function at the lam-th orbit."""
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    if lam == 0:
        return ring.one
    h = ring.torus_order
    p = ring.p
    P = l_at_half(ring)
    if ring.kind is TorusKind.SPLIT:
        A = ring.A
        corr = A * sch_circ(lam - 1, ring) * Fraction(p, h)
        for m in range(lam - 1):
            corr = corr + A ** (lam - m) * sch_circ(m, ring)
        return A ** lam - corr * P
    S = ring.S
    corr = sch_circ(lam - 1, ring) * p
    for m in range(lam - 1):
        corr = corr - mu_poly(m, lam, p).at_hecke(S) * sch_circ(m, ring)
    return (-mu_poly(-1, lam, p).at_hecke(S) - corr * P) / h


def _index_for(lam: int, cfg: TorusConfig) -> CosetIndex:
    return CosetIndex(lam, 0) if cfg.kind is TorusKind.NONSPLIT else CosetIndex(lam, 0, 0)


def shintani_universal_engine(idx: CosetIndex, cfg: TorusConfig) -> HeckeElement:
    """involute(P) / #H_Z(Z/p^lam), where P * xi_0 = xi_idx."""
    idx = CosetIndex(*idx)
    xi = SphericalFunction.basis(idx, cfg)
    return involute(universal_operator(xi)) / imap_scale(idx.lam, cfg)


def torus_character(idx: CosetIndex, data: SatakeData) -> complex:
    """chi evaluated at the torus part of the orbit representative."""
    if data.kind is TorusKind.NONSPLIT:
        return complex(data.chi_center) ** idx.a
    return complex(data.chi_a) ** idx.a * (complex(data.chi_a) * complex(data.chi_b)) ** idx.b


def _l_inverse_value(p: int, data: SatakeData) -> complex:
    x = 1 / math.sqrt(p)
    if data.kind is TorusKind.SPLIT:
        x /= complex(data.chi_a)
    return (1 - complex(data.alpha) * x) * (1 - complex(data.beta) * x)


def l_value(p: int, data: SatakeData) -> complex:
    """L(1/2) of the twisted representation; PoleError at a pole."""
    inv = _l_inverse_value(p, data)
    if inv == 0:
        raise PoleError("the local L-factor has a pole at s = 1/2")
    return 1 / inv


def shintani_local(idx: CosetIndex, data: SatakeData, p: int) -> complex:
    """Local Shintani function at an orbit, from the explicit formula.

    The formula only involves 1/L(1/2), which is a polynomial in the
    Satake parameters, so it is defined for all data.
    """
    idx = CosetIndex(*idx)
    lam = idx.lam
    a, b = complex(data.alpha), complex(data.beta)
    ell = _l_inverse_value(p, data)
    w = lambda m: p ** (-m / 2) * schur_value(m, a, b)
    if lam == 0:
        base = 1.0 + 0j
    elif data.kind is TorusKind.SPLIT:
        d = complex(data.chi_a)
        base = d ** lam - p * d * w(lam - 1) * ell / (p - 1)
        base -= sum(d ** (lam - m) * w(m) * ell for m in range(lam - 1))
    else:
        c = a * b
        base = -mu_poly(-1, lam, p).at(c) - p * w(lam - 1) * ell
        base += sum(mu_poly(m, lam, p).at(c) * w(m) * ell for m in range(lam - 1))
        base /= p + 1
    return base * torus_character(idx, data)
