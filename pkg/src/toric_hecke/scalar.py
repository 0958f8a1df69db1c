"""Exact scalars of the form a + b*sqrt(p) with rational a, b."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ConfigurationError, ParseError

Number = Union[int, Fraction]


def vp(x: Number, p: int) -> float:
    """p-adic valuation of a rational; math.inf for zero."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def is_p_integral(x: Number, p: int) -> bool:
    """True iff x lies in Z[1/p], i.e. its denominator is a power of p."""
    d = Fraction(x).denominator
    while d % p == 0:
        d //= p
    return d == 1


def prime_to_p_part(n: int, p: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    while n % p == 0:
        n //= p
    return n


def _frac_to_str(x: Fraction) -> str:
    return str(x)


def _frac_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


@dataclass(frozen=True, slots=True)
class Scalar:
    """The number rat + sqrtp * sqrt(p).

    Arithmetic with ints and Fractions coerces them; combining scalars
    for two different primes raises ConfigurationError.
    """

    rat: Fraction
    sqrtp: Fraction
    p: int

    @staticmethod
    def of(x: "Number | Scalar", p: int) -> "Scalar":
        if isinstance(x, Scalar):
            if x.p != p:
                raise ConfigurationError(f"scalar for p={x.p} used with p={p}")
            return x
        return Scalar(Fraction(x), Fraction(0), p)

    @staticmethod
    def sqrt_p(p: int) -> "Scalar":
        return Scalar(Fraction(0), Fraction(1), p)

    def _coerce(self, other: object) -> "Scalar":
        if isinstance(other, Scalar):
            if other.p != self.p:
                raise ConfigurationError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other), Fraction(0), self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.rat + o.rat, self.sqrtp + o.sqrtp, self.p)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.rat, -self.sqrtp, self.p)

    def __sub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.rat - o.rat, self.sqrtp - o.sqrtp, self.p)

    def __rsub__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.rat, self.sqrtp, o.rat, o.sqrtp
        return Scalar(a * c + b * d * self.p, a * d + b * c, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.rat * self.rat - self.sqrtp * self.sqrtp * self.p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar(self.rat / norm, -self.sqrtp / norm, self.p)

    def __truediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        base = self if n >= 0 else self.inverse()
        out = Scalar(Fraction(1), Fraction(0), self.p)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return (self.p, self.rat, self.sqrtp) == (other.p, other.rat, other.sqrtp)
        if isinstance(other, (int, Fraction)):
            return self.sqrtp == 0 and self.rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.sqrtp == 0:
            return hash(self.rat)
        return hash((self.rat, self.sqrtp, self.p))

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.sqrtp)

    def is_rational(self) -> bool:
        return self.sqrtp == 0

    def is_p_integral(self) -> bool:
        """Membership in Z[1/p] (no sqrt(p) part, p-power denominator)."""
        return self.sqrtp == 0 and is_p_integral(self.rat, self.p)

    def __complex__(self) -> complex:
        return complex(float(self.rat) + float(self.sqrtp) * math.sqrt(self.p))

    def __float__(self) -> float:
        return float(self.rat) + float(self.sqrtp) * math.sqrt(self.p)

    def to_json(self) -> dict[str, str]:
        return {"rat": _frac_to_str(self.rat), "sqrtp": _frac_to_str(self.sqrtp)}

    @staticmethod
    def from_json(obj: object, p: int) -> "Scalar":
        if isinstance(obj, (int, str)):
            return Scalar(_frac_from_str(str(obj)), Fraction(0), p)
        if not isinstance(obj, dict) or "rat" not in obj:
            raise ParseError(f"bad scalar {obj!r}")
        return Scalar(_frac_from_str(str(obj["rat"])), _frac_from_str(str(obj.get("sqrtp", "0"))), p)

    def __repr__(self) -> str:
        if self.sqrtp == 0:
            return str(self.rat)
        if self.rat == 0:
            return f"{self.sqrtp}*sqrt({self.p})"
        return f"({self.rat} + {self.sqrtp}*sqrt({self.p}))"
