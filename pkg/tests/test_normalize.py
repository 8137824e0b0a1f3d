from fractions import Fraction as F

import pytest

from affine_homog.frontend import expand_graph, parse_surface
from affine_homog.jets import Jet
from affine_homog.normalize import (HYPERBOLIC_GRAM, AffineMap,
                                    NormalizationError, QuadraticForm,
                                    cubic_basis, cubic_type, is_trace_free,
                                    normal_shear, normalize_jet,
                                    normalize_quadratic,
                                    partials_span_dimension, pick_invariant,
                                    remove_linear, trace_decompose,
                                    transform_graph)
from affine_homog.poly import Poly

X = Poly.var("x")
Y = Poly.var("y")
Z = Poly.var("z")
HYP = QuadraticForm(HYPERBOLIC_GRAM, "hyperbolic")


def jet(p, n=4):
    return Jet(p, n)


def test_remove_linear():
    f = jet(X.scale(3) + (X * Y).scale(2) + Z * Z)
    g, phi = remove_linear(f)
    assert not g.homogeneous_part(1)
    assert transform_graph(g, AffineMap.identity()) == g


def test_normalize_quadratic_complex_diagonal():
    f = jet(X * X + Y * Y + Z * Z)
    nq = normalize_quadratic(f)
    assert nq.jet.homogeneous_part(2) == (X * Y).scale(2) + Z * Z
    assert nq.form.signature == "complex"


def test_normalize_quadratic_real_definite_is_elliptic():
    f = jet(X * X + (Y * Y).scale(4) + Z * Z)
    nq = normalize_quadratic(f, fld="real")
    assert nq.form.signature == "elliptic"
    assert nq.jet.homogeneous_part(2) == X * X + Y * Y + Z * Z


def test_degenerate_quadratic_rejected():
    with pytest.raises(NormalizationError):
        normalize_quadratic(jet(X * Y))


def test_cubic_basis_trace_free():
    basis = cubic_basis()
    assert len(basis) == 7
    for b in basis:
        assert is_trace_free(b, HYP)


def test_trace_decompose_idempotent():
    c = X * X * X + (X * Y * Z).scale(2) + Y * Y * Y - (Z * Z * Z).scale(5)
    tf, lin = trace_decompose(c, HYP)
    assert is_trace_free(tf, HYP)
    q = (X * Y).scale(2) + Z * Z
    assert tf + q * lin == c
    tf2, lin2 = trace_decompose(tf, HYP)
    assert tf2 == tf and not lin2


def test_normal_shear_makes_cubic_trace_free():
    f = jet((X * Y).scale(2) + Z * Z + X * X * X + (X * Y * Y).scale(3))
    g, phi = normal_shear(f)
    assert is_trace_free(g.homogeneous_part(3), HYP)
    assert transform_graph(f, phi) == g


def test_pick_invariant_values():
    basis = cubic_basis()
    for b in basis[:3]:
        assert pick_invariant(b, HYP) == 0
    assert pick_invariant(basis[3], HYP) == F(5, 2)


def test_partials_span_dimensions():
    basis = cubic_basis()
    expected = {0: 1, 1: 2, 2: 3, 3: 3}
    for idx, dim in expected.items():
        assert partials_span_dimension(basis[idx]) == dim


def test_cubic_type_classification():
    basis = cubic_basis()
    assert cubic_type(Poly.zero(), HYP) == "Zero"
    assert cubic_type(basis[0], HYP) == "I3"
    assert cubic_type(basis[1], HYP) == "I2"
    assert cubic_type(basis[2], HYP) == "I1"
    assert cubic_type(basis[3], HYP) == "I0"


def test_normalize_jet_pipeline_on_catalog_surfaces():
    cases = [("W = X*Y + Z^2 + X^3", ("0", "0", "0", "0"), "I3"),
             ("W = X*Y + Z^2 + X*Z^2", ("0", "0", "0", "0"), "I1"),
             ("W = X*Y + exp(Z)", ("1", "0", "0", "0"), "I0")]
    for text, bp, expected in cases:
        f = expand_graph(parse_surface(text, bp), 4)
        rep = normalize_jet(f)
        assert rep.cubic_class == expected
        assert rep.jet.homogeneous_part(2) == (X * Y).scale(2) + Z * Z
        assert is_trace_free(rep.cubic, HYP)
        assert transform_graph(f, rep.change) == rep.jet


def test_transform_graph_inverse_composition():
    f = expand_graph(parse_surface("W = X*Y + Z^2 + X^3",
                                   ("0", "0", "0", "0")), 5)
    phi = AffineMap(((F(2), F(0), F(0), F(0)),
                     (F(0), F(1), F(1), F(0)),
                     (F(0), F(0), F(1), F(0)),
                     (F(0), F(0), F(0), F(3))))
    inv = AffineMap(((F(1, 2), F(0), F(0), F(0)),
                     (F(0), F(1), F(-1), F(0)),
                     (F(0), F(0), F(1), F(0)),
                     (F(0), F(0), F(0), F(1, 3))))
    g = transform_graph(f, phi)
    assert transform_graph(g, inv) == f
