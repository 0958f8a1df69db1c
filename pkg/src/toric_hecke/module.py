"""Functions on the orbit space and the convolution action of the Hecke ring.

A spherical function is finitely supported on orbit indices.  The action
of phi (x) f is

    ((phi (x) f) * xi)(x, y) = int phi(g) f(h) xi(x g, y h) dg dh,

computed here by summing xi over explicit coset representatives, with
GL2(Zp) and the integral torus both of volume one.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .cosets import (
    GL2,
    IDENTITY,
    CosetIndex,
    TorusConfig,
    cartan_cosets,
    classify_pair,
    diag,
    representative,
)
from .errors import ConfigurationError, DomainError, PreconditionError
from .ring import HeckeElement, TorusKind, involute, torus_order_mod_p
from .scalar import Number, Scalar, vp


class SphericalFunction:
    __slots__ = ("cfg", "values")

    def __init__(self, cfg: TorusConfig, values: Mapping[CosetIndex, "Scalar | Number"] | None = None):
        self.cfg = cfg
        split = cfg.kind is TorusKind.SPLIT
        clean: dict[CosetIndex, Scalar] = {}
        for idx, v in (values or {}).items():
            idx = CosetIndex(*idx)
            if (idx.b is not None) != split:
                raise ConfigurationError(f"index {idx} does not match the {cfg.kind.value} torus")
            if idx.lam < 0:
                raise PreconditionError("lambda must be nonnegative")
            s = Scalar.of(v, cfg.p)
            if s:
                clean[idx] = clean[idx] + s if idx in clean else s
        self.values = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, idx: Sequence[int], cfg: TorusConfig) -> "SphericalFunction":
        return cls(cfg, {CosetIndex(*idx): 1})

    @classmethod
    def unit(cls, cfg: TorusConfig) -> "SphericalFunction":
        return cls.basis(origin(cfg), cfg)

    def _check(self, other: "SphericalFunction") -> None:
        if other.cfg != self.cfg:
            raise ConfigurationError("spherical functions for different tori")

    def __add__(self, other: "SphericalFunction") -> "SphericalFunction":
        self._check(other)
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals[k] + v if k in vals else v
        return SphericalFunction(self.cfg, vals)

    def __neg__(self) -> "SphericalFunction":
        return SphericalFunction(self.cfg, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: "SphericalFunction") -> "SphericalFunction":
        return self + (-other)

    def __mul__(self, c: "Scalar | Number") -> "SphericalFunction":
        return SphericalFunction(self.cfg, {k: v * c for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SphericalFunction):
            return NotImplemented
        return self.cfg == other.cfg and self.values == other.values

    def __getitem__(self, idx: Sequence[int]) -> Scalar:
        return self.values.get(CosetIndex(*idx), Scalar.of(0, self.cfg.p))

    def __call__(self, g: GL2, h: GL2) -> Scalar:
        return self[classify_pair(g, h, self.cfg)]

    def support(self) -> list[CosetIndex]:
        return sorted(self.values)

    def max_lambda(self) -> int:
        return max((i.lam for i in self.values), default=-1)

    def __bool__(self) -> bool:
        return bool(self.values)

    def __repr__(self) -> str:
        inner = ", ".join(f"{i}: {v!r}" for i, v in sorted(self.values.items()))
        return f"SphericalFunction({{{inner}}})"

    def to_json(self) -> dict:
        return {
            "p": self.cfg.p,
            "torus": self.cfg.kind.value,
            "values": [
                {"index": [i.lam, i.a] + ([i.b] if i.b is not None else []), "value": v.to_json()}
                for i, v in sorted(self.values.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, cfg: TorusConfig) -> "SphericalFunction":
        return cls(cfg, {CosetIndex(*e["index"]): Scalar.from_json(e["value"], cfg.p) for e in obj["values"]})


def origin(cfg: TorusConfig) -> CosetIndex:
    return CosetIndex(0, 0) if cfg.kind is TorusKind.NONSPLIT else CosetIndex(0, 0, 0)


# ---------------------------------------------------------------------------
# convolution


def _inverse_cosets(cosets: Sequence[GL2], p: int) -> list[GL2]:
    # For a union of double cosets K diag(p^i, p^j) K with i + j fixed, the
    # inverse set is the same union scaled by p^{-(i+j)}.
    return [g.scale(Fraction(p) ** (-int(vp(g.det(), p)))) for g in cosets]


def convolve_cosets(cosets: Sequence[GL2], h0: GL2, xi: SphericalFunction) -> SphericalFunction:
    """Convolve with ch(union of g*GL2(Zp)) (x) ch(h0 * integral torus).

    The coset list must be a union of GL2(Zp)-double cosets of constant
    determinant valuation.
    """
    cfg = xi.cfg
    inv = _inverse_cosets(cosets, cfg.p)
    h0_inv = h0.inverse()
    candidates: set[CosetIndex] = set()
    for idx in xi.values:
        rx, ry = representative(idx, cfg)
        hy = ry @ h0_inv
        for d in inv:
            candidates.add(classify_pair(rx @ d, hy, cfg))
    out: dict[CosetIndex, Scalar] = {}
    for idx in candidates:
        x, y = representative(idx, cfg)
        yh = y @ h0
        acc = Scalar.of(0, cfg.p)
        for g in cosets:
            j = classify_pair(x @ g, yh, cfg)
            v = xi.values.get(j)
            if v is not None:
                acc = acc + v
        if acc:
            out[idx] = acc
    return SphericalFunction(cfg, out)


def _torus_shift(cfg: TorusConfig, a_exp: int, b_exp: int = 0) -> GL2:
    p = Fraction(cfg.p)
    if cfg.kind is TorusKind.NONSPLIT:
        return diag(p ** a_exp, p ** a_exp)
    return diag(p ** a_exp, p ** b_exp)


Generator = Union[str, tuple[str, int]]


def generator_cosets(gen: Generator, cfg: TorusConfig) -> tuple[list[GL2], GL2]:
    """(coset list, torus element) describing a generator of the Hecke ring.

    Accepted: 'T', 'S', 'S^-1', 'X', 'X^-1', 'A', 'A^-1', 'B', 'B^-1',
    ('C', lam) for the Cartan double coset, ("C'", lam) for its inverse.
    """
    p = cfg.p
    P = Fraction(p)
    if isinstance(gen, tuple):
        name, lam = gen
        if name == "C":
            return cartan_cosets(lam, p), IDENTITY
        if name == "C'":
            return [g.scale(P ** (-lam)) for g in cartan_cosets(lam, p)], IDENTITY
        raise PreconditionError(f"unknown generator {gen!r}")
    name, _, exp = gen.partition("^")
    e = int(exp) if exp else 1
    if e not in (1, -1):
        raise PreconditionError(f"unknown generator {gen!r}")
    if name == "T":
        if e != 1:
            raise DomainError("T is not invertible")
        return cartan_cosets(1, p), IDENTITY
    if name == "S":
        return [diag(P ** e, P ** e)], IDENTITY
    if name == "X":
        if cfg.kind is not TorusKind.NONSPLIT:
            raise ConfigurationError("X is a non-split generator")
        return [IDENTITY], _torus_shift(cfg, e)
    if name in ("A", "B"):
        if cfg.kind is not TorusKind.SPLIT:
            raise ConfigurationError(f"{name} is a split generator")
        return [IDENTITY], (_torus_shift(cfg, e, 0) if name == "A" else _torus_shift(cfg, 0, e))
    raise PreconditionError(f"unknown generator {gen!r}")


def convolve_generator(gen: Generator, xi: SphericalFunction) -> SphericalFunction:
    cosets, h0 = generator_cosets(gen, xi.cfg)
    return convolve_cosets(cosets, h0, xi)


def _apply_T(xi: SphericalFunction) -> SphericalFunction:
    return convolve_cosets(cartan_cosets(1, xi.cfg.p), IDENTITY, xi)


def apply_hecke(x: HeckeElement, xi: SphericalFunction) -> SphericalFunction:
    """x * xi, expanding x into T-powers and single-coset S, A translations."""
    cfg = xi.cfg
    if x.p != cfg.p or x.kind is not cfg.kind:
        raise ConfigurationError("Hecke element and spherical function disagree on (p, torus)")
    P = Fraction(cfg.p)
    powers = [xi]
    out = SphericalFunction(cfg)
    for (t, s, a), c in sorted(x.terms.items()):
        while len(powers) <= t:
            powers.append(_apply_T(powers[-1]))
        base = powers[t]
        if s or a:
            h0 = _torus_shift(cfg, a, 0) if cfg.kind is TorusKind.SPLIT else IDENTITY
            base = convolve_cosets([diag(P ** s, P ** s)], h0, base)
        out = out + base * c
    return out


# ---------------------------------------------------------------------------
# universal operators and lattices


def imap_scale(lam: int, cfg: TorusConfig) -> int:
    """#H_Z(Z/p^lam): the index of the level-lam stabilizer in the integral torus."""
    if lam < 0:
        raise PreconditionError("lambda must be nonnegative")
    if lam == 0:
        return 1
    return torus_order_mod_p(cfg.p, cfg.kind) * cfg.p ** (lam - 1)


@lru_cache(maxsize=None)
def _cartan_image(lam: int, cfg: TorusConfig) -> SphericalFunction:
    from .cosets import cartan_polynomial

    c = involute(cartan_polynomial(lam, cfg.ring))
    return apply_hecke(c, SphericalFunction.unit(cfg))


def cartan_image(lam: int, cfg: TorusConfig) -> SphericalFunction:
    """C_lam' * xi_0 computed by the engine."""
    return _cartan_image(lam, cfg)


def _shift_monomial(idx: CosetIndex, cfg: TorusConfig) -> HeckeElement:
    ring = cfg.ring
    if cfg.kind is TorusKind.NONSPLIT:
        return ring.monomial(s=-idx.a)
    return ring.monomial(s=-idx.b, a=-idx.a)


def universal_operator(xi: SphericalFunction) -> HeckeElement:
    """The unique P in the Hecke ring with P * xi_0 = xi.

    Solved top-down in lambda: the image of C_lam' * xi_0 has leading
    term at (lam, 0[, 0]) and everything else at smaller lambda.
    """
    from .cosets import cartan_polynomial

    cfg = xi.cfg
    ring = cfg.ring
    rest = xi
    result = ring.zero
    while rest:
        lam = rest.max_lambda()
        image = cartan_image(lam, cfg)
        lead = image[origin(cfg)._replace(lam=lam)]
        if not lead:
            raise DomainError(f"degenerate leading term at lambda={lam}")
        for idx in [i for i in rest.support() if i.lam == lam]:
            c = rest.values.get(idx)
            if c is None:
                continue
            shift = _shift_monomial(idx, cfg)
            coeff = c / lead
            result = result + shift * involute(cartan_polynomial(lam, ring)) * coeff
            rest = rest - apply_hecke(shift, image) * coeff
    return result


def lattice_class(xi: SphericalFunction) -> str:
    """'L1', 'L' or 'neither'."""
    if not all(v.is_p_integral() for v in xi.values.values()):
        return "neither"
    h = torus_order_mod_p(xi.cfg.p, xi.cfg.kind)
    if all((v / h).is_p_integral() for i, v in xi.values.items() if i.lam == 0):
        return "L1"
    return "L"


def l1_basis(cfg: TorusConfig, max_lambda: int, a_range: Iterable[int], b_range: Iterable[int] = (0,)) -> list[SphericalFunction]:
    """A finite piece of the Z[1/p]-basis of the L1 lattice."""
    h = torus_order_mod_p(cfg.p, cfg.kind)
    a_vals, b_vals = list(a_range), list(b_range)
    out = []
    for lam in range(max_lambda + 1):
        for a in a_vals:
            idxs = [CosetIndex(lam, a)] if cfg.kind is TorusKind.NONSPLIT else [CosetIndex(lam, a, b) for b in b_vals]
            for idx in idxs:
                out.append(SphericalFunction(cfg, {idx: h if lam == 0 else 1}))
    return out


def random_spherical(cfg: TorusConfig, rng: random.Random, max_lambda: int, terms: int = 4, span: int = 2) -> SphericalFunction:
    """A random Z-valued function with small support (for property tests)."""
    vals: dict[CosetIndex, int] = {}
    for _ in range(terms):
        lam = rng.randint(0, max_lambda)
        a = rng.randint(-span, span)
        idx = CosetIndex(lam, a) if cfg.kind is TorusKind.NONSPLIT else CosetIndex(lam, a, rng.randint(-span, span))
        vals[idx] = vals.get(idx, 0) + rng.randint(-5, 5)
    return SphericalFunction(cfg, vals)


def split_cartan_identity(lam: int, cfg: TorusConfig) -> SphericalFunction:
    """Expected value of C_lam' * xi_0 for the split torus.

    xi_(lam,0,0) + sum_{i<lam} (xi_(i, lam-i, 0) + xi_(i, i-lam, lam-i)); the two
    extra families have torus parts diag(p^(lam-i), 1) and diag(1, p^(lam-i)).
    """
    vals: dict[CosetIndex, int] = {CosetIndex(lam, 0, 0): 1}
    for i in range(lam):
        vals[CosetIndex(i, lam - i, 0)] = 1
        vals[CosetIndex(i, i - lam, lam - i)] = 1
    return SphericalFunction(cfg, vals)
