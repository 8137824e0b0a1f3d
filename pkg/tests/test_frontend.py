from fractions import Fraction as F

import pytest
import sympy as sp

from affine_homog.frontend import (DomainError, ParseError, expand_graph,
                                   graph_residual, parse_surface,
                                   taylor_primitive)
from affine_homog.jets import Jet


def sympy_graph_jet(expr, order):
    """Taylor coefficients of a sympy expression in x, y, z about 0."""
    x, y, z = sp.symbols("x y z")
    e = sp.expand(expr.series(x, 0, order + 1).removeO()
                  .series(y, 0, order + 1).removeO()
                  .series(z, 0, order + 1).removeO())
    out = {}
    for term in sp.Add.make_args(e):
        c, monos = term.as_coeff_Mul()
        p = sp.Poly(monos, x, y, z)
        (m,) = p.monoms()
        if sum(m) <= order:
            out[m] = sp.Rational(sp.nsimplify(c * p.coeffs()[0]))
    return {m: F(int(c.p), int(c.q)) for m, c in out.items() if c != 0}


def jet_terms(j: Jet):
    return {m: c for m, c in j.poly.terms.items()}


def test_spec_example_sphere_two_jet():
    spec = parse_surface("W^2 = X*Y + Z^2 + 1", ("1", "0", "0", "0"))
    j = expand_graph(spec, 2)
    assert jet_terms(j) == {(1, 1, 0): F(1, 2), (0, 0, 2): F(1, 2)}


def test_exp_surface_matches_sympy():
    spec = parse_surface("W = X*Y + exp(Z)", ("1", "0", "0", "0"))
    j = expand_graph(spec, 6)
    x, y, z = sp.symbols("x y z")
    expect = sympy_graph_jet(x * y + sp.exp(z) - 1, 6)
    assert jet_terms(j) == expect


def test_log_surface_matches_sympy():
    spec = parse_surface("W = X*Y + log(Z)", ("0", "0", "0", "1"))
    j = expand_graph(spec, 6)
    x, y, z = sp.symbols("x y z")
    expect = sympy_graph_jet(x * y + sp.log(1 + z), 6)
    assert jet_terms(j) == expect


def test_rational_power_matches_sympy():
    spec = parse_surface("W = X*Y + Z^alpha", ("1", "0", "0", "1"),
                         alpha="12/5")
    j = expand_graph(spec, 5)
    x, y, z = sp.symbols("x y z")
    expect = sympy_graph_jet(x * y + (1 + z) ** sp.Rational(12, 5) - 1, 5)
    assert jet_terms(j) == expect


def test_implicit_w_matches_sympy():
    # W^2 = X*Y + exp(Z) about (1,0,0,0): w = sqrt(1 + xy + e^z - 1) - 1
    spec = parse_surface("W^2 = X*Y + exp(Z)", ("1", "0", "0", "0"))
    j = expand_graph(spec, 5)
    x, y, z = sp.symbols("x y z")
    expect = sympy_graph_jet(sp.sqrt(x * y + sp.exp(z)) - 1, 5)
    assert jet_terms(j) == expect


def test_negative_exponent_and_parenthesized():
    spec = parse_surface("W = (4*X*Y + 2*Z^2 - 5*X*Z^2)*(2 - X)^(-1)",
                         ("0", "0", "0", "0"))
    j = expand_graph(spec, 4)
    x, y, z = sp.symbols("x y z")
    expect = sympy_graph_jet((4 * x * y + 2 * z ** 2 - 5 * x * z ** 2)
                             / (2 - x), 4)
    assert jet_terms(j) == expect


def test_graph_residual_vanishes():
    spec = parse_surface("W*Z = X*Y + Z*log(Z)", ("0", "0", "0", "1"))
    j = expand_graph(spec, 6)
    assert graph_residual(spec, j).is_zero()


def test_taylor_primitive_oracles():
    # exp about 0, log about 1, rational power about 1
    e = taylor_primitive("exp", F(0), 4)
    assert [e.poly.coefficient((k,)) for k in range(5)] == \
        [F(1), F(1), F(1, 2), F(1, 6), F(1, 24)]
    l = taylor_primitive("log", F(1), 4)
    assert [l.poly.coefficient((k,)) for k in range(5)] == \
        [F(0), F(1), F(-1, 2), F(1, 3), F(-1, 4)]
    p = taylor_primitive("pow", F(4), 3, exponent=F(1, 2))
    assert [p.poly.coefficient((k,)) for k in range(4)] == \
        [F(2), F(1, 4), F(-1, 64), F(1, 512)]


def test_basepoint_validation():
    with pytest.raises(ValueError):
        parse_surface("W = X*Y + Z^2", ("1", "0", "0", "0"))
    with pytest.raises(ValueError):
        parse_surface("W = X*Y + Z^2", ("0", "0", "0"))


def test_alpha_required_when_used():
    with pytest.raises(ValueError):
        parse_surface("W = X*Y + Z^alpha", ("1", "0", "0", "1"))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_surface("W = X*Y +", ("0", "0", "0", "0"))
    with pytest.raises(ParseError):
        parse_surface("W ** 2 = X", ("0", "0", "0", "0"))


def test_log_domain_error():
    with pytest.raises((DomainError, ValueError)):
        spec = parse_surface("W = X*Y + log(Z)", ("0", "0", "0", "0"))
        expand_graph(spec, 3)
