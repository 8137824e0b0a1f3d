from fractions import Fraction as F
from functools import lru_cache

from hypothesis import given, settings, strategies as st

from affine_homog.groebner import buchberger, reduce, s_poly
from affine_homog.jets import Jet
from affine_homog.normalize import (HYPERBOLIC_GRAM, QuadraticForm,
                                    is_trace_free, trace_decompose)
from affine_homog.poly import GREVLEX, LEX, Poly
from affine_homog.symmetry import (AffineVectorField, bracket,
                                   complete_series, pqr_families,
                                   tangency_residual)

XYZ = ("x", "y", "z")
HYP = QuadraticForm(HYPERBOLIC_GRAM, "hyperbolic")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def monomials(max_degree):
    return st.tuples(st.integers(0, max_degree), st.integers(0, max_degree),
                     st.integers(0, max_degree)).filter(
        lambda m: sum(m) <= max_degree)


def polys(max_degree=4, max_terms=5):
    return st.dictionaries(monomials(max_degree), rationals,
                           max_size=max_terms).map(
        lambda d: Poly(XYZ, {m: c for m, c in d.items() if c}))


def cubics():
    return st.dictionaries(monomials(3).filter(lambda m: sum(m) == 3),
                           rationals, max_size=6).map(
        lambda d: Poly(XYZ, {m: c for m, c in d.items() if c}))


matrices = st.tuples(*[st.tuples(*[rationals] * 4)] * 4)
vectors = st.tuples(*[rationals] * 4)


# -- jet arithmetic is a ring homomorphism of truncations ------------------------

@settings(max_examples=200, deadline=None)
@given(polys(), polys(), st.integers(1, 6))
def test_jet_product_is_truncated_poly_product(p, q, n):
    assert (Jet(p, n) * Jet(q, n)).poly == (p * q).truncate(n)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys(), st.integers(1, 6))
def test_jet_ring_laws(p, q, r, n):
    a, b, c = Jet(p, n), Jet(q, n), Jet(r, n)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), st.integers(1, 6), st.integers(0, 5))
def test_jet_truncation_coherence(p, q, n, k):
    k = min(k, n)
    a, b = Jet(p, n), Jet(q, n)
    assert (a * b).truncate(k) == (a.truncate(k) * b.truncate(k)).truncate(k)


# -- vector-field bracket -----------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(matrices, vectors, matrices, vectors)
def test_bracket_antisymmetry(A1, v1, A2, v2):
    a = AffineVectorField(A1, v1)
    b = AffineVectorField(A2, v2)
    ab, ba = bracket(a, b), bracket(b, a)
    assert ab.A == tuple(tuple(-c for c in row) for row in ba.A)
    assert ab.v == tuple(-c for c in ba.v)


@settings(max_examples=200, deadline=None)
@given(matrices, matrices, matrices)
def test_bracket_jacobi(A1, A2, A3):
    a, b, c = (AffineVectorField(A) for A in (A1, A2, A3))
    total = bracket(a, bracket(b, c))
    for x, y, z in ((b, c, a), (c, a, b)):
        t = bracket(x, bracket(y, z))
        total = AffineVectorField(
            tuple(tuple(p + q for p, q in zip(r1, r2))
                  for r1, r2 in zip(total.A, t.A)),
            tuple(p + q for p, q in zip(total.v, t.v)))
    assert total.is_zero()


# -- tangency residual is linear in the field ----------------------------------------

@settings(max_examples=200, deadline=None)
@given(polys(max_degree=4), matrices, vectors, matrices, vectors,
       rationals, rationals)
def test_tangency_linearity(p, A1, v1, A2, v2, s, t):
    Fj = Jet(p.truncate(4) - p.homogeneous_part(0) - p.homogeneous_part(1), 4)
    a = AffineVectorField(A1, v1)
    b = AffineVectorField(A2, v2)
    comb = AffineVectorField(
        tuple(tuple(s * x + t * y for x, y in zip(r1, r2))
              for r1, r2 in zip(A1, A2)),
        tuple(s * x + t * y for x, y in zip(v1, v2)))
    lhs = tangency_residual(Fj, comb, 4)
    rhs = tangency_residual(Fj, a, 4) * s + tangency_residual(Fj, b, 4) * t
    assert lhs == rhs


# -- trace decomposition is an idempotent projection ---------------------------------

@settings(max_examples=200, deadline=None)
@given(cubics())
def test_trace_decomposition_idempotent(c):
    tf, lin = trace_decompose(c, HYP)
    assert is_trace_free(tf, HYP)
    q = Poly(XYZ, {(1, 1, 0): F(2), (0, 0, 2): F(1)})
    assert tf + q * lin == c
    tf2, lin2 = trace_decompose(tf, HYP)
    assert tf2 == tf and lin2.is_zero()


# -- Groebner bases: every S-polynomial reduces to zero ------------------------------

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), rationals,
    min_size=1, max_size=3).map(
    lambda d: Poly(("u", "v"), {m: c for m, c in d.items() if c}))


@settings(max_examples=200, deadline=None)
@given(st.lists(small_polys, min_size=1, max_size=3),
       st.sampled_from([LEX, GREVLEX]))
def test_groebner_s_polys_reduce_to_zero(gens, order):
    gens = [g for g in gens if g and not g.is_constant()]
    if not gens:
        return
    gb = buchberger(gens, order)
    if any(g.is_constant() for g in gb):
        return  # unit ideal
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            assert reduce(s_poly(gb[i], gb[j], order), gb, order).is_zero()
    for g in gens:
        assert reduce(g, gb, order).is_zero()


# -- series completion is truncation-coherent ----------------------------------------

@lru_cache(maxsize=None)
def _completion(nf, order):
    from affine_homog.catalog import base_jet
    f = base_jet(nf)
    case = "I1"
    fams = pqr_families(f, case=case)
    P, Q, R = (g.field().A for g in fams)
    jet, _ = complete_series(f, P, Q, R, order)
    return jet


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["I1.1", "I1.2"]), st.integers(4, 8), st.integers(4, 8))
def test_completion_truncation_coherence(nf, m, n):
    lo, hi = min(m, n), max(m, n)
    assert _completion(nf, hi).truncate(lo) == _completion(nf, lo)
