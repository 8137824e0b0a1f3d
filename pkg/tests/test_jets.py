import json
from fractions import Fraction as F

import pytest

from affine_homog.jets import Jet
from affine_homog.poly import Poly

X = Poly.var("x")
Y = Poly.var("y")
Z = Poly.var("z")


def jet(p, n):
    return Jet(p, n)


def test_truncation_on_construction():
    p = X * X * X + X
    j = jet(p, 2)
    assert j.poly == X


def test_product_truncates():
    a = jet(X + Y, 2)
    b = jet(X * Y + Z, 2)
    prod = a * b
    assert prod.order == 2
    # degree-3 parts of (x+y)(xy+z) are cut
    assert prod.poly == X * Z + Y * Z


def test_inverse_geometric_series():
    # 1/(1 - x) = 1 + x + x^2 + ... as a jet oracle
    one_minus = jet(Poly.const(F(1)) - X, 5)
    inv = one_minus.inverse()
    expect = Poly.zero()
    for k in range(6):
        expect = expect + Poly.monomial((k, 0, 0))
    assert inv.poly == expect


def test_inverse_requires_unit():
    with pytest.raises(Exception):
        jet(X, 3).inverse()


def test_sqrt_binomial_series():
    # sqrt(1 + u) with u = x: coefficients are the binomial(1/2, k) values
    j = jet(Poly.const(F(1)) + X, 4)
    s = j.sqrt()
    coeffs = [s.poly.coefficient((k, 0, 0)) for k in range(5)]
    assert coeffs == [F(1), F(1, 2), F(-1, 8), F(1, 16), F(-5, 128)]
    assert (s * s).poly == (Poly.const(F(1)) + X)


def test_substitute_chain_rule_consistency():
    f = jet(X * X + Y.scale(3), 4)
    g = f.substitute({"x": Y + Z, "y": X * X, "z": Poly.zero()})
    assert g.poly == (Y + Z) * (Y + Z) + (X * X).scale(3)


def test_homogeneous_part_and_truncate():
    f = jet((X + Y) * (X + Y) + Z, 3)
    assert f.homogeneous_part(1) == Z
    assert f.truncate(1).poly == Z


def test_json_roundtrip():
    f = jet(X * Y.scale(F(2, 3)) + Z * Z * Z, 5)
    data = json.loads(json.dumps(f.to_json()))
    g = Jet.from_json(data)
    assert g == f and g.order == 5


def test_equality_includes_order():
    assert jet(X, 3) != jet(X, 4)
    assert jet(X, 3) == jet(X, 3)
