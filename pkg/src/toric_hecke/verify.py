"""Verification suites shared by the acceptance tests and the CLI."""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .certificates import cartan_certificate, decide_nonsplit_membership, universal_op_certificate
from .cosets import (
    CosetIndex,
    TorusConfig,
    cartan_polynomial,
    hecke_cosets,
    hecke_polynomial,
    torus_coset_statistics,
)
from .module import (
    SphericalFunction,
    apply_hecke,
    convolve_cosets,
    convolve_generator,
    imap_scale,
    l1_basis,
    lattice_class,
    random_spherical,
    split_cartan_identity,
    universal_operator,
)
from .cosets import (
    GL2,
    IDENTITY,
    classify_pair,
    diag,
    is_integral_unit,
    iwasawa_decompose,
    representative,
    unipotent,
)
from .modform import (
    delta_eigenform,
    hecke_eigenvalues_exact,
    period_ideal,
    satake_data,
    split_type,
)
from .ring import HeckeRing, SatakeData, TorusKind, denominator_bound, evaluate_exact, involute, specialize
from .shintani import shintani_local, shintani_universal_closed, shintani_universal_engine
from .zeta import eps_numeric, eps_value, normalized_period

KINDS = (TorusKind.NONSPLIT, TorusKind.SPLIT)


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    passed: bool = True
    max_error: float = 0.0
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, what: str = "", error: float = 0.0) -> None:
        self.instances += 1
        self.max_error = max(self.max_error, error)
        if not ok:
            self.passed = False
            if len(self.failures) < 20:
                self.failures.append(what)

    def to_json(self) -> dict:
        return {
            "suite": self.suite, "instances": self.instances, "passed": self.passed,
            "max_error": self.max_error, "wall_time": round(self.wall_time, 3),
            "notes": self.notes, "failures": self.failures,
        }


def _timed(name: str, body: Callable[[SuiteReport], None]) -> SuiteReport:
    rep = SuiteReport(name)
    t0 = time.perf_counter()
    body(rep)
    rep.wall_time = time.perf_counter() - t0
    return rep


def _origin(cfg: TorusConfig, lam: int = 0) -> CosetIndex:
    return CosetIndex(lam, 0) if cfg.kind is TorusKind.NONSPLIT else CosetIndex(lam, 0, 0)


# A1 / A2 ---------------------------------------------------------------------


def suite_convolution(kind: TorusKind, primes: Iterable[int] = (3, 5, 7, 11, 13), max_lambda: int = 6,
                      direct_limit: int = 2000) -> SuiteReport:
    """C_lam' * xi_0 against the expected orbit sum.

    Uses the polynomial in T, S and also, when the double coset has at
    most direct_limit cosets, the coset list of C_lam' itself.
    """
    def body(rep: SuiteReport) -> None:
        for p in primes:
            cfg = TorusConfig.make(p, kind)
            unit = SphericalFunction.unit(cfg)
            for lam in range(max_lambda + 1):
                if kind is TorusKind.NONSPLIT:
                    expected = SphericalFunction.basis(_origin(cfg, lam), cfg)
                else:
                    expected = split_cartan_identity(lam, cfg)
                got = apply_hecke(involute(cartan_polynomial(lam, cfg.ring)), unit)
                rep.record(got == expected, f"p={p} lam={lam}: {got}")
                if lam and p ** lam + p ** (lam - 1) <= direct_limit:
                    direct = convolve_generator(("C'", lam), unit)
                    rep.record(direct == expected, f"direct p={p} lam={lam}: {direct}")
    return _timed(f"convolution-{kind.value}", body)


# A3 --------------------------------------------------------------------------


def suite_shintani(primes: Iterable[int] = (3, 5, 7), max_lambda: int = 5) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        matched: set[str] = set()
        for kind in KINDS:
            for p in primes:
                cfg = TorusConfig.make(p, kind)
                for lam in range(max_lambda + 1):
                    engine = shintani_universal_engine(_origin(cfg, lam), cfg)
                    closed = shintani_universal_closed(lam, cfg.ring)
                    ok = engine == closed
                    rep.record(ok, f"{kind.value} p={p} lam={lam}")
                    if lam >= 2:
                        if ok:
                            matched.add("divide by #H_Z(F_p)")
                        if engine == closed / p ** (lam - 1):
                            matched.add("divide by p^(lam-1) #H_Z(F_p)")
        rep.notes.append("engine matches normalization: " + (", ".join(sorted(matched)) or "none"))
    return _timed("shintani", body)


# A4 --------------------------------------------------------------------------


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def suite_optimality(primes: Iterable[int] = (3, 5, 7, 11, 13), max_lambda: int = 4) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        for kind in KINDS:
            for p in primes:
                cfg = TorusConfig.make(p, kind)
                h = cfg.ring.torus_order
                gen = shintani_universal_engine(_origin(cfg, 1), cfg)
                rep.record(denominator_bound(gen, h), f"{kind.value} p={p}: bound fails at #H")
                for d in _proper_divisors(h):
                    rep.record(not denominator_bound(gen, d), f"{kind.value} p={p}: bound holds at {d}")
                for lam in range(max_lambda + 1):
                    for a in (-1, 0, 1):
                        idx = CosetIndex(lam, a) if kind is TorusKind.NONSPLIT else CosetIndex(lam, a, -a)
                        x = shintani_universal_engine(idx, cfg)
                        rep.record(denominator_bound(x, h), f"{kind.value} p={p} {idx}")
    return _timed("optimality", body)


# A5 --------------------------------------------------------------------------


def random_satake(kind: TorusKind, rng: random.Random) -> SatakeData:
    def rc() -> complex:
        return cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * cmath.pi))

    if kind is TorusKind.NONSPLIT:
        return SatakeData.nonsplit(rc(), rc())
    return SatakeData.split(rc(), rc(), rc())


def suite_commuting(primes: Iterable[int] = (3, 5, 7), samples: int = 50, max_lambda: int = 4,
                    seed: int = 20240601, tol: float = 1e-9) -> SuiteReport:
    rng = random.Random(seed)

    def body(rep: SuiteReport) -> None:
        for kind in KINDS:
            for p in primes:
                cfg = TorusConfig.make(p, kind)
                idxs = []
                for lam in range(max_lambda + 1):
                    for a in (-1, 0, 2):
                        idxs.append(CosetIndex(lam, a) if kind is TorusKind.NONSPLIT else CosetIndex(lam, a, 1 - a))
                engines = {i: shintani_universal_engine(i, cfg) for i in idxs}
                for _ in range(samples):
                    data = random_satake(kind, rng)
                    for idx, x in engines.items():
                        lhs = specialize(x, data)
                        oracle = normalized_period(idx, data, cfg)
                        formula = shintani_local(idx, data, p)
                        err = max(abs(lhs - oracle), abs(formula - oracle))
                        rep.record(err < tol, f"{kind.value} p={p} {idx}: err={err:.3g}", err)
    return _timed("commuting-diagram", body)


# A6 --------------------------------------------------------------------------


def suite_epsilon(primes: Iterable[int] = (3, 5, 7), span: int = 6, tol: float = 1e-10) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        for p in primes:
            for m in range(-span, span + 1):
                for i in range(-span, span + 1):
                    err = abs(eps_numeric(m, i, p) - float(eps_value(m, i, p)))
                    rep.record(err < tol, f"p={p} m={m} i={i}: err={err:.3g}", err)
    return _timed("epsilon", body)


# A7 --------------------------------------------------------------------------


def suite_certificates(primes: Iterable[int] = (3, 5, 7), max_cartan: int = 8, max_lambda: int = 5,
                       random_cases: int = 100, seed: int = 7) -> SuiteReport:
    rng = random.Random(seed)

    def body(rep: SuiteReport) -> None:
        plist = list(primes)
        for p in plist:
            ring = HeckeRing(p, TorusKind.NONSPLIT)
            for lam in range(1, max_cartan + 1):
                rep.record(cartan_certificate(lam, ring).verify(), f"cartan p={p} lam={lam}")
            for kind in KINDS:
                cfg = TorusConfig.make(p, kind)
                for xi in l1_basis(cfg, max_lambda, range(-1, 2), range(-1, 2)):
                    cert = universal_op_certificate(xi)
                    rep.record(cert.verify(), f"{kind.value} p={p} {xi}")
        for n in range(random_cases if plist else 0):
            p = plist[n % len(plist)]
            cfg = TorusConfig.make(p, TorusKind.NONSPLIT)
            xi = random_spherical(cfg, rng, max_lambda=4)
            member = decide_nonsplit_membership(universal_operator(xi))
            in_l1 = lattice_class(xi) == "L1"
            ok = member == in_l1
            if in_l1:
                ok = ok and universal_op_certificate(xi).verify()
            rep.record(ok, f"random p={p} {xi}")
    return _timed("certificates", body)


# A8 --------------------------------------------------------------------------


def expected_torus_statistics(lam: int, p: int) -> dict[tuple[int, Optional[int]], int]:
    """Counts of (z, v_p(n)) predicted for the level-lam torus cosets."""
    if lam == 0:
        return {(0, None): 1}
    phi = lambda k: p ** k - p ** (k - 1)
    out: dict[tuple[int, Optional[int]], int] = {(0, -lam): phi(lam), (lam, None): 1}
    out[(0, None)] = out.get((0, None), 0) + 1
    for i in range(1, lam):
        out[(i, i - lam)] = out.get((i, i - lam), 0) + phi(lam - i)
        out[(0, i - lam)] = out.get((0, i - lam), 0) + phi(lam - i)
    return out


def suite_partition(primes: Iterable[int] = (3, 5, 7, 11, 13), max_lambda: int = 4) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        for p in primes:
            cfg = TorusConfig.make(p, TorusKind.NONSPLIT)
            for lam in range(max_lambda + 1):
                got = torus_coset_statistics(lam, cfg)
                rep.record(got == expected_torus_statistics(lam, p), f"p={p} lam={lam}: {got}")
                rep.record(sum(got.values()) == imap_scale(lam, cfg), f"count p={p} lam={lam}")
    return _timed("partition", body)


# A9 --------------------------------------------------------------------------


def suite_recurrence(primes: Iterable[int] = (3, 5), max_k: int = 4, seed: int = 11) -> SuiteReport:
    rng = random.Random(seed)

    def body(rep: SuiteReport) -> None:
        for kind in KINDS:
            for p in primes:
                cfg = TorusConfig.make(p, kind)
                tests = [SphericalFunction.unit(cfg), random_spherical(cfg, rng, max_lambda=2, terms=3)]
                for xi in tests:
                    level = [convolve_cosets(hecke_cosets(k, p), IDENTITY, xi) for k in range(max_k + 1)]
                    for k in range(2, max_k + 1):
                        rhs = convolve_generator("T", level[k - 1]) - convolve_generator("S", level[k - 2]) * p
                        rep.record(level[k] == rhs, f"{kind.value} p={p} k={k}")
                    for k in range(max_k + 1):
                        poly = apply_hecke(hecke_polynomial(k, cfg.ring), xi)
                        rep.record(level[k] == poly, f"{kind.value} p={p} k={k} polynomial")
    return _timed("recurrence", body)


# A10 / A11 -------------------------------------------------------------------


def _odd_primes(bound: int) -> list[int]:
    return [q for q in range(3, bound + 1) if all(q % d for d in range(2, int(q ** 0.5) + 1))]


def suite_period_ideal(bound: int = 47, chi_value: int = 1) -> SuiteReport:
    def body(rep: SuiteReport) -> None:
        f = delta_eigenform(bound)
        for p in _odd_primes(bound):
            ideal = period_ideal(f, p, chi_value)
            h = p + 1 if ideal.kind is TorusKind.NONSPLIT else p - 1
            rep.record(h % ideal.generator == 0 and ideal.generator % p != 0, f"p={p}: {ideal}")
            rep.notes.append(f"p={p} {ideal.kind.value} generator={ideal.generator}")
        rep.record(period_ideal(f, 7).generator == 8, "p=7 generator")
        rep.record(period_ideal(f, 5, 1).generator == 4, "p=5 generator")
    return _timed("period-ideal", body)


def suite_multiplicity_one(primes: Iterable[int] = (3, 5, 7, 13), max_lambda: int = 4,
                           chi_value: int = 1, tol: float = 1e-9) -> SuiteReport:
    """Integrality of universal operators and scaled periods for the discriminant form."""
    def body(rep: SuiteReport) -> None:
        f = delta_eigenform(50)
        for p in primes:
            kind = split_type(f.M, p)
            cfg = TorusConfig.make(p, kind)
            t_val, s_val = hecke_eigenvalues_exact(f, p)
            data = satake_data(f, p, chi_value)
            a_val = Fraction(data.chi_a.real).limit_denominator(10 ** 6) if kind is TorusKind.SPLIT else Fraction(1)
            for lam in range(max_lambda + 1):
                for a in (-1, 0, 1):
                    idx = CosetIndex(lam, a) if kind is TorusKind.NONSPLIT else CosetIndex(lam, a, 0)
                    xi = SphericalFunction.basis(idx, cfg)
                    op = universal_operator(xi)
                    rep.record(denominator_bound(op, 1), f"p={p} {idx}: operator not integral")
                    scaled = evaluate_exact(involute(op), t_val, s_val, a_val)
                    rep.record(scaled.is_p_integral(), f"p={p} {idx}: period {scaled}")
                    numeric = normalized_period(idx, data, cfg) * imap_scale(lam, cfg)
                    err = abs(numeric - complex(scaled)) / max(1.0, abs(complex(scaled)))
                    rep.record(err < tol, f"p={p} {idx}: err={err:.3g}", err)
    return _timed("multiplicity-one", body)


# decomposition invariants (no acceptance criterion of its own) --------------


def _random_rational(rng: random.Random, p: int) -> Fraction:
    return Fraction(rng.randint(-30, 30), rng.choice([1, 2, 4, 7, 11, 13])) * Fraction(p) ** rng.randint(-3, 3)


def _random_unit(rng: random.Random, p: int) -> GL2:
    while True:
        k = GL2.of(*(rng.randint(-9, 9) for _ in range(4)))
        if k.det() % p:
            return k


def suite_decomposition(primes: Iterable[int] = (3, 5, 7), max_lambda: int = 4, samples: int = 100,
                        seed: int = 5) -> SuiteReport:
    """Iwasawa reassembly and orbit-index invariance under both group actions."""
    def body(rep: SuiteReport) -> None:
        rng = random.Random(seed)
        for p in primes:
            for _ in range(samples):
                g = GL2.of(*(_random_rational(rng, p) for _ in range(4)))
                if g.det() == 0:
                    continue
                z, r, n, k = iwasawa_decompose(g, p)
                front = diag(Fraction(p) ** (z + r), Fraction(p) ** z) @ unipotent(n)
                rep.record(front @ k == g and is_integral_unit(k, p), f"p={p} iwasawa {g}")
            for kind in KINDS:
                cfg = TorusConfig.make(p, kind)
                for lam in range(max_lambda + 1):
                    for a in (-1, 0, 2):
                        idx = CosetIndex(lam, a) if kind is TorusKind.NONSPLIT else CosetIndex(lam, a, 1 - a)
                        g, h = representative(idx, cfg)
                        rep.record(classify_pair(g, h, cfg) == idx, f"p={p} {idx} representative")
                        for _ in range(3):
                            k = _random_unit(rng, p)
                            x, y = rng.randint(1, 40), rng.randint(0, 40)
                            if kind is TorusKind.NONSPLIT:
                                t = cfg.torus_element(x * p ** rng.randint(-2, 2), y * p ** rng.randint(-2, 2))
                            else:
                                t = cfg.torus_element(Fraction(p) ** rng.randint(-2, 2), Fraction(p) ** rng.randint(-2, 2))
                            if t.det() == 0:
                                continue
                            got = classify_pair(t @ g @ k, t.inverse() @ h, cfg)
                            rep.record(got == idx, f"p={p} {idx} moved to {got}")
    return _timed("decomposition", body)


def _runner(fn: Callable[..., SuiteReport], lam_key: Optional[str] = "max_lambda",
            **fixed) -> Callable[..., SuiteReport]:
    def run(primes: Optional[list[int]] = None, lambda_max: Optional[int] = None) -> SuiteReport:
        kwargs = dict(fixed)
        if primes is not None:
            kwargs["primes"] = primes
        if lambda_max is not None and lam_key is not None:
            kwargs[lam_key] = lambda_max
        return fn(**kwargs)
    return run


def _period_ideal_runner(primes: Optional[list[int]] = None, lambda_max: Optional[int] = None) -> SuiteReport:
    if primes is None:
        return suite_period_ideal()
    if not primes:
        return _timed("period-ideal", lambda rep: None)
    return suite_period_ideal(bound=max(primes))


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "convolution-nonsplit": _runner(suite_convolution, kind=TorusKind.NONSPLIT),
    "convolution-split": _runner(suite_convolution, kind=TorusKind.SPLIT),
    "shintani": _runner(suite_shintani),
    "optimality": _runner(suite_optimality),
    "commuting-diagram": _runner(suite_commuting),
    "epsilon": _runner(suite_epsilon, "span"),
    "certificates": _runner(suite_certificates),
    "partition": _runner(suite_partition),
    "recurrence": _runner(suite_recurrence, "max_k"),
    "period-ideal": _period_ideal_runner,
    "multiplicity-one": _runner(suite_multiplicity_one),
    "decomposition": _runner(suite_decomposition),
}

CRITERIA = {
    "A1": "convolution-nonsplit", "A2": "convolution-split", "A3": "shintani", "A4": "optimality",
    "A5": "commuting-diagram", "A6": "epsilon", "A7": "certificates", "A8": "partition",
    "A9": "recurrence", "A10": "period-ideal", "A11": "multiplicity-one",
}


def run_verify(config: Optional[dict] = None) -> list[SuiteReport]:
    """Run suites named in config["suites"] (default: all) with optional
    "primes" and "lambda_max" overrides."""
    config = config or {}
    names = config.get("suites") or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}")
    return [SUITES[n](config.get("primes"), config.get("lambda_max")) for n in names]
