"""Double cosets of GL2(Qp) modulo an unramified torus and GL2(Zp)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import ConfigurationError, ParseError, PreconditionError
from .ring import HeckeElement, HeckeRing, TorusKind
from .scalar import Number, vp


class GL2(NamedTuple):
    """A 2x2 matrix [[a, b], [c, d]] with rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def of(a: Number, b: Number, c: Number, d: Number) -> "GL2":
        return GL2(Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @staticmethod
    def parse(text: str) -> "GL2":
        """Parse 'a,b;c,d' (entries may be fractions like 1/9)."""
        try:
            rows = [r.split(",") for r in text.replace(" ", "").split(";")]
            (a, b), (c, d) = rows
            g = GL2.of(Fraction(a), Fraction(b), Fraction(c), Fraction(d))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse matrix {text!r}") from exc
        if g.det() == 0:
            raise ParseError("singular matrix")
        return g

    def __matmul__(self, o: "GL2") -> "GL2":  # type: ignore[override]
        return GL2(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d,
        )

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "GL2":
        dt = self.det()
        return GL2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def scale(self, s: Number) -> "GL2":
        s = Fraction(s)
        return GL2(self.a * s, self.b * s, self.c * s, self.d * s)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


IDENTITY = GL2.of(1, 0, 0, 1)


def diag(x: Number, y: Number) -> GL2:
    return GL2.of(x, 0, 0, y)


def unipotent(x: Number) -> GL2:
    return GL2.of(1, x, 0, 1)


def s_mat(lam: int, p: int) -> GL2:
    return diag(Fraction(p) ** lam, 1)


N0 = unipotent(1)


def is_integral_unit(g: GL2, p: int) -> bool:
    """Membership in GL2(Zp)."""
    return min(vp(x, p) for x in g) >= 0 and vp(g.det(), p) == 0


def min_val(g: GL2, p: int) -> float:
    return min(vp(x, p) for x in g)


def _legendre(a: int, p: int) -> int:
    return pow(a % p, (p - 1) // 2, p)


@dataclass(frozen=True)
class TorusConfig:
    """The prime, the torus kind and (non-split) the integer D.

    The non-split torus is embedded as a + b*sqrt(-D) -> [[a, b], [-b*D, a]];
    the split torus is the diagonal one.
    """

    p: int
    kind: TorusKind
    D: int = 0

    def __post_init__(self) -> None:
        HeckeRing(self.p, self.kind)  # validates p
        object.__setattr__(self, "kind", TorusKind.parse(self.kind))
        if self.kind is TorusKind.NONSPLIT:
            if self.D <= 0 or math.gcd(self.D, self.p) != 1 or _legendre(-self.D, self.p) != self.p - 1:
                raise PreconditionError(f"-{self.D} is not a nonresidue mod {self.p}")

    @classmethod
    def make(cls, p: int, kind: "TorusKind | str") -> "TorusConfig":
        kind = TorusKind.parse(kind)
        if kind is TorusKind.SPLIT:
            return cls(p, kind, 0)
        HeckeRing(p, kind)
        D = 1
        while math.gcd(D, p) != 1 or _legendre(-D, p) != p - 1:
            D += 1
        return cls(p, kind, D)

    @property
    def ring(self) -> HeckeRing:
        return HeckeRing(self.p, self.kind)

    def torus_element(self, a: Number, b: Number = 0) -> GL2:
        """Non-split: a + b*sqrt(-D).  Split: diag(a, b)."""
        if self.kind is TorusKind.NONSPLIT:
            return GL2.of(a, b, -Fraction(b) * self.D, a)
        return diag(a, b)

    def in_torus(self, h: GL2) -> bool:
        if h.det() == 0:
            return False
        if self.kind is TorusKind.NONSPLIT:
            return h.a == h.d and h.c == -self.D * h.b
        return h.b == 0 and h.c == 0


# ---------------------------------------------------------------------------
# Iwasawa decomposition


class Iwasawa(NamedTuple):
    """g = p^z * diag(p^r, 1) * [[1, n], [0, 1]] * k with k in GL2(Zp)."""

    z: int
    r: int
    n: Fraction
    k: GL2

    def n_valuation(self, p: int) -> Optional[int]:
        """v_p(n) when n is not p-integral, else None (n can be taken 0)."""
        v = vp(self.n, p)
        return int(v) if v < 0 else None


def _unit_part(x: Fraction, p: int) -> tuple[int, Fraction]:
    v = int(vp(x, p))
    return v, x / Fraction(p) ** v


def _upper_triangularize(g: GL2, p: int) -> tuple[GL2, GL2]:
    """Return (U, k0) with U = g k0 upper triangular and k0 in GL2(Zp)."""
    if g.det() == 0:
        raise PreconditionError("singular matrix")
    if g.c == 0:
        return g, IDENTITY
    if vp(g.d, p) <= vp(g.c, p):
        k0 = GL2.of(1, 0, -g.c / g.d, 1)
    else:
        w = GL2.of(0, 1, 1, 0)
        gw = g @ w
        k0 = w @ GL2.of(1, 0, -gw.c / gw.d, 1)
    u = g @ k0
    assert u.c == 0
    return u, k0


def _iwasawa_core(g: GL2, p: int) -> tuple[int, int, Fraction]:
    u, _ = _upper_triangularize(g, p)
    e1, _u1 = _unit_part(u.a, p)
    e2, u2 = _unit_part(u.d, p)
    return e2, e1 - e2, u.b / (Fraction(p) ** e1 * u2)


def iwasawa_decompose(g: GL2, p: int) -> Iwasawa:
    z, r, n = _iwasawa_core(g, p)
    front = (diag(Fraction(p) ** (z + r), Fraction(p) ** z)) @ unipotent(n)
    k = front.inverse() @ g
    return Iwasawa(z, r, n, k)


def _reduce_mod(beta: Fraction, e: int, p: int) -> Fraction:
    """Canonical representative of beta modulo p^e Z_p."""
    if beta == 0:
        return Fraction(0)
    v = vp(beta, p)
    k = max(0, -int(v))
    scaled = beta * Fraction(p) ** k
    modulus = p ** (e + k) if e + k > 0 else 1
    if e + k <= 0:
        return Fraction(0)
    m = scaled.numerator * pow(scaled.denominator, -1, modulus) % modulus
    return Fraction(m, p ** k)


def hermite_key(g: GL2, p: int) -> tuple[int, int, Fraction]:
    """Invariant of the coset g*GL2(Zp): (v(t1), v(t2), reduced upper entry)."""
    u, _ = _upper_triangularize(g, p)
    e1, _u1 = _unit_part(u.a, p)
    e2, u2 = _unit_part(u.d, p)
    return e1, e2, _reduce_mod(u.b / u2, e1, p)


# ---------------------------------------------------------------------------
# classification


def _classify_nonsplit(g: GL2, p: int) -> int:
    # Hermite form [[p^r1, u p^r2], [0, p^r3]] followed by the case analysis.
    r1, r3, beta = hermite_key(g, p)
    if beta == 0:
        return abs(r1 - r3)
    r2 = int(vp(beta, p))
    if r2 >= r1:
        return abs(r1 - r3)
    if r2 > r3:
        return r1 - r3
    return r1 + r3 - 2 * r2


def _classify_split(g: GL2, p: int) -> int:
    v = vp(_iwasawa_core(g, p)[2], p)
    return -int(v) if v < 0 else 0


def classify_g(g: GL2, cfg: TorusConfig) -> int:
    """The lambda with g in H * g_lambda * GL2(Zp)."""
    if cfg.kind is TorusKind.NONSPLIT:
        return _classify_nonsplit(g, cfg.p)
    return _classify_split(g, cfg.p)


class CosetIndex(NamedTuple):
    lam: int
    a: int
    b: Optional[int] = None

    def __str__(self) -> str:
        return f"({self.lam},{self.a})" if self.b is None else f"({self.lam},{self.a},{self.b})"


def classify_pair(g: GL2, h: GL2, cfg: TorusConfig) -> CosetIndex:
    """Index of the orbit of (g, h) under (g, h) -> (t g k, t^-1 h), t in the torus."""
    return _classify_pair_cached(g, h, cfg)


@lru_cache(maxsize=1 << 18)
def _classify_pair_cached(g: GL2, h: GL2, cfg: TorusConfig) -> CosetIndex:
    if not cfg.in_torus(h):
        raise PreconditionError(f"{h} is not in the {cfg.kind.value} torus")
    p = cfg.p
    if cfg.kind is TorusKind.NONSPLIT:
        lam = _classify_nonsplit(g, p)
        twice_a = int(vp(g.det(), p)) + int(vp(h.det(), p)) - lam
        assert twice_a % 2 == 0
        return CosetIndex(lam, twice_a // 2)
    z, r, n = _iwasawa_core(g, p)
    v = vp(n, p)
    lam = -int(v) if v < 0 else 0
    e1, e2 = int(vp(h.a, p)), int(vp(h.d, p))
    b = z + e2
    a = r - lam + e1 - e2
    return CosetIndex(lam, a, b)


def representative(idx: CosetIndex, cfg: TorusConfig) -> tuple[GL2, GL2]:
    """The chosen representative pair of an orbit."""
    p = Fraction(cfg.p)
    if cfg.kind is TorusKind.NONSPLIT:
        if idx.b is not None:
            raise ConfigurationError("non-split indices have two components")
        return s_mat(idx.lam, cfg.p), diag(p ** idx.a, p ** idx.a)
    if idx.b is None:
        raise ConfigurationError("split indices have three components")
    return N0 @ s_mat(idx.lam, cfg.p), diag(p ** (idx.a + idx.b), p ** idx.b)


# ---------------------------------------------------------------------------
# coset enumeration


def torus_coset_reps(lam: int, cfg: TorusConfig) -> list[GL2]:
    """Representatives of the integral torus modulo the stabilizer of level lam.

    They are written in the transposed embedding x + y*sqrt(-D) ->
    [[x, -y*D], [y, x]], which is conjugate to the standard one by the
    antidiagonal permutation (an element of GL2(Zp)).  The level-lam
    stabilizer there is {y = 0 mod p^lam}.
    """
    if cfg.kind is not TorusKind.NONSPLIT:
        raise ConfigurationError("torus coset representatives are for the non-split torus")
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    if lam == 0:
        return [IDENTITY]
    p, D = cfg.p, cfg.D
    q = p ** lam
    reps = [GL2.of(a, -D, 1, a) for a in range(q)]
    reps += [GL2.of(1, -b * D, b, 1) for b in range(0, q, p)]
    return reps


@lru_cache(maxsize=None)
def torus_coset_statistics(lam: int, cfg: TorusConfig) -> dict[tuple[int, Optional[int]], int]:
    """Counts of (z, v_p(n)) over the Iwasawa data of gamma * diag(p^lam, 1).

    gamma runs over torus_coset_reps(lam); v_p(n) is None when n is p-integral.
    """
    s = s_mat(lam, cfg.p)
    out: dict[tuple[int, Optional[int]], int] = {}
    for g in torus_coset_reps(lam, cfg):
        z, _r, n = _iwasawa_core(g @ s, cfg.p)
        v = vp(n, cfg.p)
        key = (z, int(v) if v < 0 else None)
        out[key] = out.get(key, 0) + 1
    return out


def cartan_cosets(lam: int, p: int) -> list[GL2]:
    """Left coset representatives g*GL2(Zp) of GL2(Zp) diag(p^lam, 1) GL2(Zp)."""
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    if lam == 0:
        return [IDENTITY]
    P = Fraction(p)
    out = [GL2.of(P ** lam, beta, 0, 1) for beta in range(p ** lam)]
    for i in range(1, lam):
        out += [GL2.of(P ** i, beta, 0, P ** (lam - i)) for beta in range(p ** i) if beta % p]
    out.append(GL2.of(1, 0, 0, P ** lam))
    return out


def hecke_cosets(k: int, p: int) -> list[GL2]:
    """Left coset representatives of the integral matrices of determinant p^k."""
    P = Fraction(p)
    return [GL2.of(P ** i, beta, 0, P ** (k - i)) for i in range(k + 1) for beta in range(p ** i)]


# ---------------------------------------------------------------------------
# Hecke polynomials


@lru_cache(maxsize=None)
def _hecke_T_power(k: int, ring: HeckeRing) -> HeckeElement:
    if k == 0:
        return ring.one
    if k == 1:
        return ring.T
    return ring.T * _hecke_T_power(k - 1, ring) - ring.S * ring.p * _hecke_T_power(k - 2, ring)


def hecke_polynomial(k: int, ring: HeckeRing) -> HeckeElement:
    """T(p^k), the characteristic function of integral matrices of det p^k."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    return _hecke_T_power(k, ring)


@lru_cache(maxsize=None)
def _cartan(lam: int, ring: HeckeRing) -> HeckeElement:
    if lam == 0:
        return ring.one
    out = hecke_polynomial(lam, ring)
    for j in range(1, lam // 2 + 1):
        i = lam - j
        if j <= i < lam:
            out = out - ring.S ** j * _cartan(i - j, ring)
    return out


def cartan_polynomial(lam: int, ring: HeckeRing) -> HeckeElement:
    """The characteristic function of GL2(Zp) diag(p^lam, 1) GL2(Zp) as a polynomial in T and S."""
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    return _cartan(lam, ring)
