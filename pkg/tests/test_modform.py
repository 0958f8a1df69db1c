from __future__ import annotations

import json
from fractions import Fraction

import pytest

from toric_hecke.certificates import universal_op_certificate
from toric_hecke.cosets import TorusConfig
from toric_hecke.errors import ParseError, PreconditionError
from toric_hecke.modform import (
    EigenformData,
    delta_coefficients,
    delta_eigenform,
    hecke_eigenvalues_exact,
    load_eigenform,
    period_ideal,
    satake_data,
    satake_params,
    split_type,
)
from toric_hecke.module import l1_basis
from toric_hecke.ring import TorusKind, evaluate_exact, specialize
from toric_hecke.scalar import prime_to_p_part

# tau(n) for n = 1..12, a standard table
TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]


def test_delta_coefficients():
    tau = delta_coefficients(30)
    assert tau[1:13] == TAU
    for m, n in [(2, 3), (3, 5), (4, 7), (5, 6)]:
        assert tau[m * n] == tau[m] * tau[n]
    for p in (2, 3, 5):
        assert tau[p * p] == tau[p] ** 2 - p ** 11


def test_satake_params_delta():
    f = delta_eigenform()
    for p in (3, 5, 7, 11, 13):
        a, b = satake_params(f, p)
        assert abs(abs(a) - 1) < 1e-9 and abs(abs(b) - 1) < 1e-9
        assert abs(a * b - 1) < 1e-9
        assert abs((a + b) * p ** 5.5 - int(f.ap[p])) < 1e-6


def test_split_type():
    assert split_type(1, 5) is TorusKind.SPLIT
    assert split_type(1, 7) is TorusKind.NONSPLIT
    assert split_type(2, 3) is TorusKind.SPLIT
    with pytest.raises(PreconditionError):
        split_type(3, 3)


def test_period_ideal_examples():
    f = delta_eigenform()
    ideal = period_ideal(f, 7)
    assert ideal.kind is TorusKind.NONSPLIT and ideal.generator == 8
    ideal = period_ideal(f, 5, 1)
    assert ideal.kind is TorusKind.SPLIT and ideal.value == Fraction(13920, 15625) and ideal.generator == 4
    with pytest.raises(PreconditionError):
        period_ideal(f, 5)
    with pytest.raises(PreconditionError):
        period_ideal(f, 2)


def test_period_generators_divide(prime):
    f = delta_eigenform()
    for p in [q for q in f.ap if q > 2]:
        g = period_ideal(f, p, 1).generator
        h = p + 1 if split_type(1, p) is TorusKind.NONSPLIT else p - 1
        assert h % g == 0 and g % p != 0


def test_eigenform_validation(tmp_path):
    with pytest.raises(PreconditionError):
        EigenformData("odd", 1, 3, {3: Fraction(1)}, 1)
    f = EigenformData("f", 11, 2, {3: Fraction(-1)}, 7, {3: 1})
    with pytest.raises(PreconditionError):
        f.a(5)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(f.to_json()))
    assert load_eigenform(path) == f
    path.write_text("{bad json")
    with pytest.raises(ParseError):
        load_eigenform(path)
    path.write_text(json.dumps({"label": "x"}))
    with pytest.raises(ParseError):
        load_eigenform(path)


def test_satake_data_matches_l_factor():
    # the image of the split generator is L_p(f, X)^-1 at X = chi_value
    from toric_hecke.certificates import ideal_generators
    from toric_hecke.modform import l_inverse_at

    f = delta_eigenform()
    p = 5
    for cv in (Fraction(1), Fraction(5), Fraction(-1, 25)):
        data = satake_data(f, p, cv)
        _, g2 = ideal_generators(TorusConfig.make(p, TorusKind.SPLIT).ring)
        assert abs(specialize(g2, data) - float(l_inverse_at(f, p, cv))) < 1e-12


@pytest.mark.parametrize("p,cv", [(3, 1), (7, 1), (5, 1), (5, 5), (13, -1)])
def test_certificates_specialize_into_period_ideal(p, cv):
    f = delta_eigenform()
    kind = split_type(f.M, p)
    cfg = TorusConfig.make(p, kind)
    ideal = period_ideal(f, p, cv)
    t_val, s_val = hecke_eigenvalues_exact(f, p)
    a_val = Fraction(f.eps_at(p)) * cv
    for xi in l1_basis(cfg, 3, range(-1, 2), range(-1, 2)):
        target = universal_op_certificate(xi).target
        value = evaluate_exact(target, t_val, s_val, a_val)
        assert value.is_p_integral()
        assert prime_to_p_part(value.rat.numerator, p) % ideal.generator == 0
