"""Hecke algebras of GL2(Qp) x torus, Shintani functions and period ideals."""

from .certificates import (
    Certificate,
    cartan_certificate,
    decide_nonsplit_membership,
    universal_op_certificate,
    verify_certificate,
)
from .cosets import (
    GL2,
    CosetIndex,
    TorusConfig,
    cartan_cosets,
    cartan_polynomial,
    classify_g,
    classify_pair,
    iwasawa_decompose,
    torus_coset_reps,
)
from .errors import ConfigurationError, DomainError, ParseError, PoleError, PreconditionError
from .modform import EigenformData, delta_eigenform, load_eigenform, period_ideal, satake_params, split_type
from .module import SphericalFunction, apply_hecke, convolve_generator, imap_scale, lattice_class, universal_operator
from .ring import HeckeElement, HeckeRing, SatakeData, TorusKind, denominator_bound, involute, specialize
from .scalar import Scalar
from .shintani import (
    lfactor_poly,
    mu_poly,
    schur_family,
    shintani_local,
    shintani_universal_closed,
    shintani_universal_engine,
)
from .verify import SUITES, run_verify
from .zeta import ZetaResult, eps_value, normalized_period, whittaker_value, zeta_avg_nonsplit, zeta_split

__all__ = [
    "Certificate", "cartan_certificate", "decide_nonsplit_membership", "universal_op_certificate",
    "verify_certificate", "GL2", "CosetIndex", "TorusConfig", "cartan_cosets", "cartan_polynomial",
    "classify_g", "classify_pair", "iwasawa_decompose", "torus_coset_reps", "ConfigurationError",
    "DomainError", "ParseError", "PoleError", "PreconditionError", "EigenformData", "delta_eigenform",
    "load_eigenform", "period_ideal", "satake_params", "split_type", "SphericalFunction", "apply_hecke",
    "convolve_generator", "imap_scale", "lattice_class", "universal_operator", "HeckeElement",
    "HeckeRing", "SatakeData", "TorusKind", "denominator_bound", "involute", "specialize", "Scalar",
    "lfactor_poly", "mu_poly", "schur_family", "shintani_local", "shintani_universal_closed",
    "shintani_universal_engine", "SUITES", "run_verify", "ZetaResult", "eps_value", "normalized_period",
    "whittaker_value", "zeta_avg_nonsplit", "zeta_split",
]
