"""Command line interface: toric-hecke <subcommand> [options]."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from .certificates import cartan_certificate, universal_op_certificate
from .cosets import (
    GL2,
    CosetIndex,
    TorusConfig,
    cartan_cosets,
    classify_g,
    classify_pair,
    hermite_key,
    iwasawa_decompose,
    torus_coset_reps,
)
from .errors import ParseError, PoleError, PreconditionError
from .modform import delta_eigenform, load_eigenform, period_ideal
from .module import SphericalFunction, apply_hecke, convolve_generator, universal_operator
from .ring import HeckeElement, HeckeRing, SatakeData, TorusKind, specialize
from .shintani import shintani_local, shintani_universal_closed, shintani_universal_engine
from .verify import SUITES, run_verify
from .zeta import normalized_period, zeta_avg_nonsplit, zeta_split


def _mat_json(g: GL2) -> list[list[str]]:
    return [[str(g.a), str(g.b)], [str(g.c), str(g.d)]]


def _complex_json(z: complex) -> dict[str, float]:
    return {"re": z.real, "im": z.imag}


def _parse_index(text: str, cfg: TorusConfig) -> CosetIndex:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad index {text!r}") from exc
    want = 2 if cfg.kind is TorusKind.NONSPLIT else 3
    if len(parts) != want:
        raise ParseError(f"{cfg.kind.value} indices have {want} components")
    return CosetIndex(*parts)


def _load_json(text: str) -> Any:
    path = Path(text)
    raw = path.read_text() if path.exists() else text
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc


def _xi_from_args(args: argparse.Namespace, cfg: TorusConfig) -> SphericalFunction:
    if args.xi:
        return SphericalFunction.from_json(_load_json(args.xi), cfg)
    if args.index:
        return SphericalFunction.basis(_parse_index(args.index, cfg), cfg)
    return SphericalFunction.unit(cfg)


def _satake_from_args(args: argparse.Namespace, kind: TorusKind) -> Optional[SatakeData]:
    if args.alpha is None:
        return None
    alpha, beta = complex(args.alpha), complex(args.beta)
    if kind is TorusKind.NONSPLIT:
        return SatakeData.nonsplit(alpha, beta)
    if args.chi_a is None:
        raise PreconditionError("split data needs --chi-a")
    return SatakeData.split(alpha, beta, complex(args.chi_a))


def cmd_decompose(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    if args.cosets is not None:
        return {"lambda": args.cosets, "cosets": [_mat_json(g) for g in cartan_cosets(args.cosets, cfg.p)]}
    if args.torus_reps is not None:
        return {"lambda": args.torus_reps, "reps": [_mat_json(g) for g in torus_coset_reps(args.torus_reps, cfg)]}
    if not args.matrix:
        raise PreconditionError("decompose needs --matrix, --cosets or --torus-reps")
    g = GL2.parse(args.matrix)
    iw = iwasawa_decompose(g, cfg.p)
    out: dict[str, Any] = {
        "iwasawa": {"z": iw.z, "r": iw.r, "n": str(iw.n), "k": _mat_json(iw.k)},
        "hermite": [str(x) for x in hermite_key(g, cfg.p)],
        "lambda": classify_g(g, cfg),
    }
    if args.h:
        idx = classify_pair(g, GL2.parse(args.h), cfg)
        out["index"] = [x for x in idx if x is not None]
    return out


def cmd_convolve(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    xi = _xi_from_args(args, cfg)
    if args.element:
        x = HeckeElement.from_json(_load_json(args.element))
        return apply_hecke(x, xi).to_json()
    gen: Any = args.generator or "T"
    if gen.startswith("C"):
        name, _, lam = gen.partition(":")
        gen = (name, int(lam))
    return convolve_generator(gen, xi).to_json()


def cmd_universal_op(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    xi = _xi_from_args(args, cfg)
    return universal_operator(xi).to_json()


def cmd_shintani(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    idx = _parse_index(args.index, cfg) if args.index else CosetIndex(args.lam, 0, None if cfg.kind is TorusKind.NONSPLIT else 0)
    engine = shintani_universal_engine(idx, cfg)
    out: dict[str, Any] = {"index": [x for x in idx if x is not None], "universal": engine.to_json()}
    if idx.a == 0 and not idx.b:
        out["closed_form_matches"] = engine == shintani_universal_closed(idx.lam, cfg.ring)
    data = _satake_from_args(args, cfg.kind)
    if data is not None:
        out["specialized"] = _complex_json(specialize(engine, data))
        out["local"] = _complex_json(shintani_local(idx, data, cfg.p))
        out["zeta"] = _complex_json(normalized_period(idx, data, cfg))
    return out


def cmd_certify(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    if args.cartan is not None:
        return cartan_certificate(args.cartan, cfg.ring).to_json()
    return universal_op_certificate(_xi_from_args(args, cfg)).to_json()


def cmd_zeta(args: argparse.Namespace, cfg: TorusConfig) -> Any:
    data = _satake_from_args(args, cfg.kind)
    if data is None:
        raise PreconditionError("zeta needs --alpha and --beta")
    if cfg.kind is TorusKind.SPLIT:
        res = zeta_split(args.lam, data, cfg.p)
    else:
        res = zeta_avg_nonsplit(args.lam, data, cfg)
    return {
        "lambda": args.lam,
        "value_at_half": _complex_json(res.value_at_half),
        "leading": _complex_json(res.leading),
        "s_polynomial": [_complex_json(c) for c in res.s_polynomial],
        "l_inverse": [_complex_json(c) for c in res.l_inverse],
        "terms": res.terms,
    }


def cmd_period_ideal(args: argparse.Namespace, cfg: Optional[TorusConfig]) -> Any:
    f = delta_eigenform() if args.form in (None, "delta") else load_eigenform(args.form)
    chi = Fraction(args.chi_value) if args.chi_value is not None else None
    return period_ideal(f, args.p, chi).to_json()


def cmd_verify(args: argparse.Namespace, cfg: Optional[TorusConfig]) -> Any:
    text = args.primes if args.primes is not None else args.p_list
    primes = None if text is None else [int(x) for x in text.split(",") if x.strip()]
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [r.to_json() for r in run_verify({"suites": names, "primes": primes, "lambda_max": args.lambda_max})]
    return reports[0] if len(reports) == 1 else reports


COMMANDS = {
    "decompose": cmd_decompose,
    "convolve": cmd_convolve,
    "universal-op": cmd_universal_op,
    "shintani": cmd_shintani,
    "certify": cmd_certify,
    "zeta": cmd_zeta,
    "period-ideal": cmd_period_ideal,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", default=argparse.SUPPRESS, help="odd prime (default 3); verify takes a comma list")
    common.add_argument("--torus", default=argparse.SUPPRESS, help="split or nonsplit (default nonsplit)")
    common.add_argument("--json-out", default=argparse.SUPPRESS, help="also write the JSON result to this file")
    ap = argparse.ArgumentParser(prog="toric-hecke", description=__doc__, parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name: str, **kw: Any) -> argparse.ArgumentParser:
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser  # type: ignore[method-assign]

    def with_xi(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--index", help="orbit index, e.g. 2,0 or 2,0,1")
        sp.add_argument("--xi", help="spherical function as JSON text or file")

    def with_data(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--alpha")
        sp.add_argument("--beta")
        sp.add_argument("--chi-a", dest="chi_a")

    sp = sub.add_parser("decompose", help="Iwasawa data and orbit classification")
    sp.add_argument("--matrix", help="g as 'a,b;c,d'")
    sp.add_argument("--h", help="torus element as 'a,b;c,d'")
    sp.add_argument("--cosets", type=int, help="list the Cartan cosets of this level")
    sp.add_argument("--torus-reps", type=int, dest="torus_reps", help="list the torus coset representatives")

    sp = sub.add_parser("convolve", help="act on a spherical function")
    with_xi(sp)
    sp.add_argument("--generator", help="T, S, S^-1, A, A^-1, B, B^-1, X, X^-1, C:lam or C':lam")
    sp.add_argument("--element", help="Hecke element as JSON text or file")

    sp = sub.add_parser("universal-op", help="solve P * xi_0 = xi")
    with_xi(sp)

    sp = sub.add_parser("shintani", help="universal (and local) Shintani function")
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    sp.add_argument("--index")
    with_data(sp)

    sp = sub.add_parser("certify", help="ideal-membership certificates")
    with_xi(sp)
    sp.add_argument("--cartan", type=int, help="certificate for C_lam instead")

    sp = sub.add_parser("zeta", help="normalized zeta integral at s = 1/2")
    sp.add_argument("--lambda", dest="lam", type=int, default=1)
    with_data(sp)

    sp = sub.add_parser("period-ideal", help="period ideal of an eigenform")
    sp.add_argument("--form", help="eigenform JSON file (default: the discriminant form)")
    sp.add_argument("--chi-value", dest="chi_value")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", default="all", choices=["all", *SUITES])
    sp.add_argument("--primes", help="comma separated primes (empty for none)")
    sp.add_argument("--lambda-max", dest="lambda_max", type=int, help="override the level bound of each suite")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    # an explicit --p doubles as the prime list for verify
    args.p_list = getattr(args, "p", None)
    for name, default in (("p", "3"), ("torus", "nonsplit"), ("json_out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        args.p = int(str(args.p).split(",")[0])
        cfg = None if args.command in ("period-ideal", "verify") else TorusConfig.make(args.p, args.torus)
        result = COMMANDS[args.command](args, cfg)
    except (ParseError, PreconditionError, PoleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2, sort_keys=True)
    print(text)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n")
    if args.command == "verify":
        reports = result if isinstance(result, list) else [result]
        return 0 if all(r["passed"] for r in reports) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
