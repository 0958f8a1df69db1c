"""The universal Hecke ring Z[1/p][T, S^{+-1}] (tensored with the torus part).

Elements are sparse Laurent polynomials.  The torus generators are
eliminated into a canonical form:

* non-split: X is identified with S, so monomials are T^i S^j;
* split: B is identified with S*A^{-1}, so monomials are T^i S^j A^k.

Internally a monomial is the exponent triple (i, j, k); k is always 0 in
the non-split ring.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import ConfigurationError, DomainError, ParseError, PreconditionError
from .scalar import Number, Scalar, is_p_integral

Monomial = tuple[int, int, int]


class TorusKind(str, Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"

    @staticmethod
    def parse(s: "str | TorusKind") -> "TorusKind":
        if isinstance(s, TorusKind):
            return s
        key = s.lower().replace("-", "").replace("_", "")
        if key == "split":
            return TorusKind.SPLIT
        if key in ("nonsplit", "inert"):
            return TorusKind.NONSPLIT
        raise ParseError(f"unknown torus kind {s!r}")


def torus_order_mod_p(p: int, kind: TorusKind) -> int:
    """#H_Z(F_p): p+1 for the non-split torus, p-1 for the split one."""
    return p + 1 if kind is TorusKind.NONSPLIT else p - 1


class HeckeElement:
    __slots__ = ("p", "kind", "terms")

    def __init__(self, p: int, kind: TorusKind, terms: Mapping[Monomial, "Scalar | Number"] | None = None):
        self.p = p
        self.kind = TorusKind.parse(kind)
        clean: dict[Monomial, Scalar] = {}
        for mono, c in (terms or {}).items():
            if mono[0] < 0:
                raise DomainError("negative power of T")
            if self.kind is TorusKind.NONSPLIT and mono[2] != 0:
                raise ConfigurationError("A does not exist in the non-split ring")
            s = Scalar.of(c, p)
            if s:
                clean[mono] = clean.get(mono, Scalar.of(0, p)) + s
        self.terms = {m: c for m, c in clean.items() if c}

    # construction -------------------------------------------------------

    @classmethod
    def from_exponents(cls, p: int, kind: TorusKind, terms: Mapping[tuple[int, int, int, int, int], "Scalar | Number"]) -> "HeckeElement":
        """Build from 5-tuples (T, S, A, B, X) and canonicalize."""
        kind = TorusKind.parse(kind)
        out: dict[Monomial, Scalar] = {}
        for (t, s, a, b, x), c in terms.items():
            if kind is TorusKind.NONSPLIT:
                if a or b:
                    raise ConfigurationError("A/B exponents in a non-split element")
                mono = (t, s + x, 0)
            else:
                if x:
                    raise ConfigurationError("X exponent in a split element")
                mono = (t, s + b, a - b)
            out[mono] = out.get(mono, Scalar.of(0, p)) + Scalar.of(c, p)
        return cls(p, kind, out)

    def _new(self, terms: Mapping[Monomial, Scalar]) -> "HeckeElement":
        return HeckeElement(self.p, self.kind, terms)

    def _check(self, other: "HeckeElement") -> None:
        if other.p != self.p or other.kind is not self.kind:
            raise ConfigurationError(
                f"ring mismatch: (p={self.p}, {self.kind.value}) vs (p={other.p}, {other.kind.value})"
            )

    def _lift(self, other: object) -> "HeckeElement | None":
        if isinstance(other, HeckeElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self._new({(0, 0, 0): Scalar.of(other, self.p)})
        return None

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: object) -> "HeckeElement":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self) -> "HeckeElement":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: object) -> "HeckeElement":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "HeckeElement":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "HeckeElement":
        if isinstance(other, (int, Fraction, Scalar)):
            s = Scalar.of(other, self.p)
            return self._new({m: c * s for m, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms: dict[Monomial, Scalar] = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in o.terms.items():
                m = (a1 + a2, b1 + b2, c1 + c2)
                terms[m] = terms[m] + x * y if m in terms else x * y
        return self._new(terms)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "HeckeElement":
        if isinstance(other, (int, Fraction, Scalar)):
            inv = Scalar.of(other, self.p).inverse()
            return self * inv
        return NotImplemented

    def __pow__(self, n: int) -> "HeckeElement":
        if n < 0:
            if len(self.terms) != 1:
                raise DomainError("only monomials in S and A are invertible")
            (mono, c), = self.terms.items()
            if mono[0] != 0:
                raise DomainError("T is not invertible")
            inv = self._new({(0, -mono[1], -mono[2]): c.inverse()})
            return inv ** (-n)
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        o = self._lift(other) if not isinstance(other, HeckeElement) else other
        if o is None:
            return NotImplemented
        return (self.p, self.kind, self.terms) == (o.p, o.kind, o.terms)

    def __hash__(self) -> int:
        return hash((self.p, self.kind, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def one(self) -> "HeckeElement":
        return self._new({(0, 0, 0): Scalar.of(1, self.p)})

    def __iter__(self) -> Iterator[tuple[Monomial, Scalar]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, Scalar.of(0, self.p))

    def degree_T(self) -> int:
        return max((m[0] for m in self.terms), default=-1)

    def map_coefficients(self, f) -> "HeckeElement":
        return self._new({m: f(c) for m, c in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (t, s, a), c in sorted(self.terms.items()):
            mono = "*".join(
                f"{name}^{e}" if e != 1 else name
                for name, e in (("T", t), ("S", s), ("A", a))
                if e
            )
            parts.append(f"{c!r}*{mono}" if mono else repr(c))
        return " + ".join(parts)

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "torus": self.kind.value,
            "terms": [
                {"T": t, "S": s, "A": a, "coeff": c.to_json()}
                for (t, s, a), c in sorted(self.terms.items())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict) -> "HeckeElement":
        try:
            p = int(obj["p"])
            kind = TorusKind.parse(obj["torus"])
            raw = obj["terms"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed Hecke element: {exc}") from exc
        terms: dict[tuple[int, int, int, int, int], Scalar] = {}
        for term in raw:
            key = (int(term.get("T", 0)), int(term.get("S", 0)), int(term.get("A", 0)),
                   int(term.get("B", 0)), int(term.get("X", 0)))
            terms[key] = terms.get(key, Scalar.of(0, p)) + Scalar.from_json(term["coeff"], p)
        return cls.from_exponents(p, kind, terms)

    @classmethod
    def loads(cls, s: str) -> "HeckeElement":
        try:
            return cls.from_json(json.loads(s))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class HeckeRing:
    """Generators of the universal Hecke ring for a fixed (p, torus kind)."""

    p: int
    kind: TorusKind

    def __post_init__(self) -> None:
        if self.p < 3 or any(self.p % q == 0 for q in range(2, math.isqrt(self.p) + 1)):
            raise PreconditionError(f"p={self.p} is not an odd prime")
        object.__setattr__(self, "kind", TorusKind.parse(self.kind))

    def monomial(self, t: int = 0, s: int = 0, a: int = 0, c: "Scalar | Number" = 1) -> HeckeElement:
        return HeckeElement(self.p, self.kind, {(t, s, a): c})

    def const(self, c: "Scalar | Number") -> HeckeElement:
        return self.monomial(c=c)

    @property
    def zero(self) -> HeckeElement:
        return HeckeElement(self.p, self.kind, {})

    @property
    def one(self) -> HeckeElement:
        return self.monomial()

    @property
    def T(self) -> HeckeElement:
        return self.monomial(t=1)

    @property
    def S(self) -> HeckeElement:
        return self.monomial(s=1)

    @property
    def X(self) -> HeckeElement:
        if self.kind is not TorusKind.NONSPLIT:
            raise ConfigurationError("X only exists in the non-split ring")
        return self.S

    @property
    def A(self) -> HeckeElement:
        if self.kind is not TorusKind.SPLIT:
            raise ConfigurationError("A only exists in the split ring")
        return self.monomial(a=1)

    @property
    def B(self) -> HeckeElement:
        if self.kind is not TorusKind.SPLIT:
            raise ConfigurationError("B only exists in the split ring")
        return self.monomial(s=1, a=-1)

    @property
    def sqrt_p(self) -> Scalar:
        return Scalar.sqrt_p(self.p)

    @property
    def torus_order(self) -> int:
        return torus_order_mod_p(self.p, self.kind)


def involute(x: HeckeElement) -> HeckeElement:
    """The involution: S, A (and B, X) go to their inverses, T goes to S^{-1}T."""
    return HeckeElement(x.p, x.kind, {(t, -s - t, -a): c for (t, s, a), c in x.terms.items()})


def denominator_bound(x: HeckeElement, m: int) -> bool:
    """True iff m*x has all coefficients in Z[1/p]."""
    if m == 0 or m % x.p == 0:
        raise PreconditionError(f"multiplier {m} must be nonzero and prime to p={x.p}")
    return all((c * m).is_p_integral() for c in x.terms.values())


@dataclass(frozen=True)
class SatakeData:
    """Unramified data: Satake parameters and torus character values.

    chi_center is chi(p) for the non-split torus.  In the split case
    chi_a = chi(diag(p,1)) and chi_b = chi(diag(1,p)).
    """

    kind: TorusKind
    alpha: complex
    beta: complex
    chi_center: complex | None = None
    chi_a: complex | None = None
    chi_b: complex | None = None
    rel_tol: float = 1e-9

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", TorusKind.parse(self.kind))
        ab = complex(self.alpha) * complex(self.beta)
        if self.kind is TorusKind.NONSPLIT:
            if self.chi_center is None:
                raise PreconditionError("non-split data needs chi_center")
            other = complex(self.chi_center)
        else:
            if self.chi_a is None or self.chi_b is None:
                raise PreconditionError("split data needs chi_a and chi_b")
            other = complex(self.chi_a) * complex(self.chi_b)
        if abs(ab - other) > self.rel_tol * max(1.0, abs(ab)):
            raise PreconditionError(f"central character mismatch: alpha*beta={ab} vs {other}")

    @classmethod
    def nonsplit(cls, alpha: complex, beta: complex) -> "SatakeData":
        return cls(TorusKind.NONSPLIT, alpha, beta, chi_center=complex(alpha) * complex(beta))

    @classmethod
    def split(cls, alpha: complex, beta: complex, chi_a: complex) -> "SatakeData":
        return cls(TorusKind.SPLIT, alpha, beta, chi_a=chi_a, chi_b=complex(alpha) * complex(beta) / complex(chi_a))


def specialize(x: HeckeElement, data: SatakeData) -> complex:
    """Evaluate x on the eigensystem attached to data."""
    if data.kind is not x.kind:
        raise ConfigurationError("Satake data and Hecke element disagree on the torus")
    sq = math.sqrt(x.p)
    t = sq * (complex(data.alpha) + complex(data.beta))
    s = complex(data.alpha) * complex(data.beta)
    a = complex(data.chi_a) if data.kind is TorusKind.SPLIT else 1.0
    total = 0j
    for (i, j, k), c in x.terms.items():
        total += complex(c) * t ** i * s ** j * a ** k
    return total


def evaluate_exact(x: HeckeElement, T: Fraction, S: Fraction, A: Fraction = Fraction(1)) -> Scalar:
    """Exact evaluation at rational values of T, S (and A); S and A must be nonzero."""
    total = Scalar.of(0, x.p)
    for (i, j, k), c in x.terms.items():
        total = total + c * (Fraction(T) ** i * Fraction(S) ** j * Fraction(A) ** k)
    return total


def sum_elements(items: Iterable[HeckeElement], ring: HeckeRing) -> HeckeElement:
    out = ring.zero
    for it in items:
        out = out + it
    return out
