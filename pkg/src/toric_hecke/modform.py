"""Eigenform data, Satake parameters and period ideals."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, PreconditionError
from .ring import SatakeData, TorusKind
from .scalar import is_p_integral, prime_to_p_part


@dataclass(frozen=True)
class EigenformData:
    label: str
    N: int
    k: int
    ap: dict[int, Fraction]
    M: int
    eps: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.k % 2:
            raise PreconditionError(f"weight {self.k} is odd")
        if self.M <= 0 or self.N <= 0:
            raise PreconditionError("N and M must be positive")

    def a(self, p: int) -> Fraction:
        if p not in self.ap:
            raise PreconditionError(f"no Hecke eigenvalue at p={p} for {self.label}")
        return self.ap[p]

    def eps_at(self, p: int) -> int:
        return self.eps.get(p, 1)

    def check_prime(self, p: int) -> None:
        if p == 2 or (2 * self.N * self.M) % p == 0:
            raise PreconditionError(f"p={p} divides 2NM")

    def to_json(self) -> dict:
        out = {"label": self.label, "N": self.N, "k": self.k, "M": self.M,
               "ap": {str(p): str(v) for p, v in sorted(self.ap.items())}}
        if self.eps:
            out["eps"] = {str(p): v for p, v in sorted(self.eps.items())}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "EigenformData":
        try:
            ap = {int(p): Fraction(str(v)) for p, v in obj["ap"].items()}
            eps = {int(p): int(v) for p, v in obj.get("eps", {}).items()}
            return cls(str(obj["label"]), int(obj["N"]), int(obj["k"]), ap, int(obj["M"]), eps)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed eigenform data: {exc}") from exc


def load_eigenform(path: "str | Path") -> EigenformData:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return EigenformData.from_json(obj)


def delta_coefficients(n_max: int) -> list[int]:
    """tau(0..n_max) from the product q * prod (1 - q^n)^24."""
    series = [0] * (n_max + 1)
    series[0] = 1
    for n in range(1, n_max + 1):
        for _ in range(24):
            for i in range(n_max, n - 1, -1):
                series[i] -= series[i - n]
    return [0] + series[:n_max]


def _primes_upto(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if all(q % d for d in range(2, math.isqrt(q) + 1))]


def delta_eigenform(bound: int = 50) -> EigenformData:
    """The discriminant form with the torus Q(sqrt(-1))."""
    tau = delta_coefficients(bound)
    return EigenformData("Delta", 1, 12, {q: Fraction(tau[q]) for q in _primes_upto(bound)}, 1)


def split_type(M: int, p: int) -> TorusKind:
    """Split iff -M is a nonzero square mod p."""
    r = (-M) % p
    if r == 0:
        raise PreconditionError(f"p={p} ramifies in Q(sqrt(-{M}))")
    return TorusKind.SPLIT if pow(r, (p - 1) // 2, p) == 1 else TorusKind.NONSPLIT


def satake_params(f: EigenformData, p: int) -> tuple[complex, complex]:
    """Roots of X^2 - a_p X + eps(p) p^(k-1), scaled by p^((1-k)/2)."""
    f.check_prime(p)
    a = float(f.a(p))
    e = f.eps_at(p)
    disc = cmath.sqrt(a * a - 4 * e * p ** (f.k - 1))
    scale = p ** ((1 - f.k) / 2)
    return (a + disc) / 2 * scale, (a - disc) / 2 * scale


def hecke_eigenvalues_exact(f: EigenformData, p: int) -> tuple[Fraction, Fraction]:
    """Exact images of T and S: (a_p p^(1-k/2), eps(p))."""
    return f.a(p) * Fraction(p) ** (1 - f.k // 2), Fraction(f.eps_at(p))


def satake_data(f: EigenformData, p: int, chi_value: "Fraction | int" = 1) -> SatakeData:
    """Local data of f at p twisted by an unramified torus character.

    In the split case chi_value is the value whose inverse L-factor
    L_p(f, X)^-1 at X = chi_value is the image of the split generator;
    with the conventions here that is chi(diag(1, p))^-1.
    """
    alpha, beta = satake_params(f, p)
    kind = split_type(f.M, p)
    if kind is TorusKind.NONSPLIT:
        return SatakeData(kind, alpha, beta, chi_center=f.eps_at(p))
    cv = complex(Fraction(chi_value))
    return SatakeData(kind, alpha, beta, chi_a=f.eps_at(p) * cv, chi_b=1 / cv)


@dataclass(frozen=True)
class PeriodIdeal:
    p: int
    kind: TorusKind
    generator: int
    value: Fraction

    def to_json(self) -> dict:
        return {"p": self.p, "torus": self.kind.value, "generator": self.generator, "value": str(self.value)}


def l_inverse_at(f: EigenformData, p: int, x: Fraction) -> Fraction:
    """1 - a_p p^(-k/2) X + eps(p) p^(-1) X^2 at a rational X."""
    x = Fraction(x)
    return 1 - f.a(p) * Fraction(p) ** (-(f.k // 2)) * x + f.eps_at(p) * x * x / p


def period_ideal(f: EigenformData, p: int, chi_value: "Fraction | int | None" = None) -> PeriodIdeal:
    """The Z[1/p]-ideal of normalized periods, as a generator dividing p +- 1."""
    f.check_prime(p)
    kind = split_type(f.M, p)
    if kind is TorusKind.NONSPLIT:
        value = f.a(p)
        h = p + 1
    else:
        if chi_value is None:
            raise PreconditionError("split primes need the character value")
        if not is_p_integral(Fraction(chi_value), p) or Fraction(chi_value) == 0:
            raise PreconditionError("the character value must be a unit of Z[1/p]")
        value = l_inverse_at(f, p, Fraction(chi_value))
        h = p - 1
    if not is_p_integral(value, p):
        raise PreconditionError(f"value {value} is not in Z[1/p]")
    return PeriodIdeal(p, kind, math.gcd(h, prime_to_p_part(value.numerator, p)), value)
