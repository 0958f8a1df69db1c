"""Zeta integrals of spherical Whittaker functions: an independent oracle.

Everything here is computed from the Whittaker values on the diagonal
(the Shintani/Casselman formula) and from the integrals of the additive
character over shells p^m Z_p^x.  Nothing depends on the Hecke-algebra
side, so these values can be used to test it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cosets import CosetIndex, TorusConfig, torus_coset_statistics
from .errors import PoleError, PreconditionError
from .module import imap_scale
from .ring import SatakeData, TorusKind


def whittaker_value(m: int, data: SatakeData, p: int) -> complex:
    """W(diag(p^m, 1)) for the normalized spherical Whittaker function."""
    if m < 0:
        return 0j
    a, b = complex(data.alpha), complex(data.beta)
    return p ** (-m / 2) * sum(a ** k * b ** (m - k) for k in range(m + 1))


def eps_value(m: int, i: int, p: int) -> Fraction:
    """The integral of psi(p^i x) - 1 over p^m Z_p^x (unit shell of volume one)."""
    if m + i >= 0:
        return Fraction(0)
    if m + i == -1:
        return Fraction(-p, p - 1)
    return Fraction(-1)


def _unit_root_average(k: int, p: int) -> complex:
    """Average of exp(2 pi i u / p^k) over units u mod p^k, summed numerically.

    Units are split as u0 + p^k0 t with u0 a unit mod p^k0 and t free mod
    p^(k-k0), so the work is about 2 p^(k/2) exponentials.
    """
    if k <= 0:
        return 1.0 + 0j
    q = p ** k
    k0 = (k + 1) // 2
    q0 = p ** k0
    u0 = np.arange(q0)
    u0 = u0[u0 % p != 0]
    outer = np.exp(2j * np.pi * u0 / q).sum()
    t = np.arange(p ** (k - k0))
    inner = np.exp(2j * np.pi * (q0 * t) / q).sum()
    return complex(outer * inner) / (q - q // p)


def eps_numeric(m: int, i: int, p: int) -> complex:
    """eps_value computed as an explicit character sum."""
    return _unit_root_average(-(m + i), p) - 1


@dataclass
class ZetaResult:
    """The normalized zeta value at s = 1/2.

    With Y = p^(-s), the normalized integral has the form
    leading + (sum_m s_polynomial[m] Y^m) * l_inverse(Y), so
    value_at_half = leading + s_polynomial(1) * l_inverse(1).
    """

    value_at_half: complex
    leading: complex
    s_polynomial: list[complex]
    l_inverse: list[complex]
    truncation_exact: bool = True
    terms: int = 0

    def check(self) -> float:
        recon = self.leading + sum(self.s_polynomial) * sum(self.l_inverse)
        return abs(recon - self.value_at_half)


def _l_inverse_coeffs(data: SatakeData, p: int) -> list[complex]:
    # (1 - alpha x Y)(1 - beta x Y) with x = p^(-1/2) (twisted by chi_a when split)
    x = 1 / math.sqrt(p)
    if data.kind is TorusKind.SPLIT:
        x /= complex(data.chi_a)
    a, b = complex(data.alpha), complex(data.beta)
    return [1 + 0j, -(a + b) * x, a * b * x * x]


def zeta_split(lam: int, data: SatakeData, p: int) -> ZetaResult:
    """Normalized zeta integral of (n_lam, diag(p^lam, 1)) . W (x) chi."""
    if data.kind is not TorusKind.SPLIT:
        raise PreconditionError("split data required")
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    d = complex(data.chi_a)
    lead = d ** lam
    corr = [lead * eps_value(m, -lam, p) * whittaker_value(m, data, p) * d ** (-m) for m in range(lam)]
    linv = _l_inverse_coeffs(data, p)
    value = lead + sum(corr) * sum(linv)
    return ZetaResult(value, lead, corr, linv, True, lam)


def zeta_avg_nonsplit(lam: int, data: SatakeData, cfg: TorusConfig) -> ZetaResult:
    """Average of the zeta integral of s(lam) . W over the integral torus."""
    if data.kind is not TorusKind.NONSPLIT or cfg.kind is not TorusKind.NONSPLIT:
        raise PreconditionError("non-split data required")
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    p = cfg.p
    stats = torus_coset_statistics(lam, cfg)
    count = sum(stats.values())
    vol = Fraction(1, imap_scale(lam, cfg))
    if count * vol != 1:
        raise AssertionError("torus coset count does not match the stabilizer index")
    c = complex(data.alpha) * complex(data.beta)
    lead = 0j
    corr = [0j] * max(lam, 0)
    for (z, v), mult in stats.items():
        weight = c ** z * float(vol) * mult
        lead += weight
        if v is None:
            continue
        for m in range(-v):
            corr[m] += weight * eps_value(m, v, p) * whittaker_value(m, data, p)
    linv = _l_inverse_coeffs(data, p)
    value = lead + sum(corr) * sum(linv)
    return ZetaResult(value, lead, corr, linv, True, count)


def normalized_period(idx: CosetIndex, data: SatakeData, cfg: TorusConfig) -> complex:
    """The normalized torus period of the translate of W (x) chi by the orbit representative."""
    idx = CosetIndex(*idx)
    if cfg.kind is TorusKind.SPLIT:
        base = zeta_split(idx.lam, data, cfg.p).value_at_half
        return base * complex(data.chi_a) ** idx.a * (complex(data.chi_a) * complex(data.chi_b)) ** idx.b
    base = zeta_avg_nonsplit(idx.lam, data, cfg).value_at_half
    return base * complex(data.chi_center) ** idx.a
