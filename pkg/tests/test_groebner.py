from fractions import Fraction as F

import pytest
import sympy as sp

from affine_homog.groebner import (GroebnerError, buchberger, reduce,
                                   solve_zero_dim, s_poly)
from affine_homog.poly import GREVLEX, LEX, Poly
from affine_homog.scalars import RationalFunc

UV = ("u", "v")
UVW = ("u", "v", "w")


def P(terms, vars=UV):
    return Poly(vars, {m: F(c) for m, c in terms.items()})


def to_sympy(p, syms):
    out = 0
    for m, c in p.terms.items():
        t = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            t *= s ** e
        out += t
    return sp.expand(out)


def from_sympy(e, syms, vars):
    poly = sp.Poly(e, *syms)
    terms = {}
    for m, c in zip(poly.monoms(), poly.coeffs()):
        q = sp.Rational(c)
        terms[tuple(m)] = F(int(q.p), int(q.q))
    return Poly(vars, terms)


@pytest.mark.parametrize("gens", [
    [{(2, 0): 1, (0, 2): 1, (0, 0): -1}, {(1, 1): 1, (0, 0): -1}],
    [{(2, 1): 1, (0, 0): -1}, {(1, 2): 1, (1, 0): -1}],
    [{(3, 0): 1, (1, 1): -2}, {(2, 1): 1, (0, 2): -2, (1, 0): 1}],
])
def test_buchberger_matches_sympy_lex(gens):
    ours = buchberger([P(g) for g in gens], LEX)
    u, v = sp.symbols("u v")
    theirs = sp.groebner([to_sympy(P(g), (u, v)) for g in gens],
                         u, v, order="lex")
    expect = {from_sympy(e, (u, v), UV) for e in theirs.exprs}
    assert set(ours) == expect


def test_reduce_ideal_membership():
    gens = [P({(2, 0): 1, (0, 1): -1}), P({(0, 2): 1, (1, 0): -1})]
    gb = buchberger(gens, GREVLEX)
    inside = gens[0] * P({(1, 1): 3}) + gens[1] * P({(0, 0): -2, (1, 0): 5})
    assert reduce(inside, gb, GREVLEX).is_zero()
    outside = P({(1, 0): 1})
    assert not reduce(outside, gb, GREVLEX).is_zero()


def test_s_poly_reduces_in_basis():
    gens = [P({(2, 0): 1, (0, 2): 1, (0, 0): -1}), P({(1, 1): 1, (0, 0): -1})]
    gb = buchberger(gens, LEX)
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            assert reduce(s_poly(gb[i], gb[j], LEX), gb, LEX).is_zero()


def test_solve_two_rational_points():
    gens = [P({(2, 0): 1, (1, 0): -3, (0, 0): 2}), P({(0, 1): 1, (1, 0): -1})]
    sols = solve_zero_dim(gens, UV)
    assert not sols.families and not sols.residual
    pts = sorted((pt["u"], pt["v"]) for pt in sols.points)
    assert pts == [(F(1), F(1)), (F(2), F(2))]


def test_irrational_point_reported_residual():
    sols = solve_zero_dim([P({(2,): 1, (0,): -2}, ("u",))], ("u",))
    assert not sols.points and sols.residual


def test_one_parameter_family():
    sols = solve_zero_dim([P({(1, 0): 1, (0, 1): -1})], UV)
    assert len(sols.families) == 1
    fam = sols.families[0]
    gen = RationalFunc.gen(fam.free)
    assert fam.assignments["u"] == fam.assignments["v"] == gen


def test_parametric_quadratic_splits_into_branches():
    # v^2 = u^2 splits into two lines because the discriminant is a square
    sols = solve_zero_dim([P({(0, 2): 1, (2, 0): -1})], UV)
    assert not sols.residual and not sols.points
    assert len(sols.families) == 2
    seen = set()
    for f in sols.families:
        u, v = f.assignments["u"], f.assignments["v"]
        assert u * u == v * v
        seen.add((str(u), str(v)))
    assert len(seen) == 2


def test_rational_curve_gets_parametrized():
    # v^2 = u is a rational curve: u = v^2 with v free
    sols = solve_zero_dim([P({(0, 2): 1, (1, 0): -1})], UV)
    assert len(sols.families) == 1 and not sols.residual
    fam = sols.families[0]
    gen = RationalFunc.gen(fam.free)
    assert fam.assignments["u"] == gen * gen


def test_nonsquare_discriminant_reported_residual():
    # u^3 = v^2 - 1 resists rational parametrization by this solver
    sols = solve_zero_dim([P({(3, 0): 1, (0, 2): -1, (0, 0): 1})], UV)
    assert sols.residual and not sols.families and not sols.points


def test_too_many_free_directions():
    sols = solve_zero_dim([P({(1, 0, 0): 1}, UVW)], UVW)
    assert sols.residual  # v and w both free exceeds max_parameters=1


def test_inconsistent_system_no_solutions():
    gens = [P({(1, 0): 1}), P({(1, 0): 1, (0, 0): -1})]
    sols = solve_zero_dim(gens, UV)
    assert not sols.points and not sols.families and not sols.residual


def test_solutions_are_verified_exactly():
    # mixed system: line union point via factored generator
    gens = [P({(1, 1): 1, (1, 0): -1}),   # u(v - 1) = 0
            P({(2, 0): 1, (1, 0): -1})]   # u(u - 1) = 0
    sols = solve_zero_dim(gens, UV)
    for pt in sols.points:
        for g in gens:
            assert g.eval(pt) == 0
