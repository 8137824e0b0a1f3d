from fractions import Fraction as F

from affine_homog.linalg import (LinearEquation, equations_from_poly,
                                 linear_solve, matrix_rank)
from affine_homog.poly import Poly


def eq(coeffs, rhs=0):
    return LinearEquation({k: F(v) for k, v in coeffs.items()}, F(rhs))


def test_unique_solution():
    fam = linear_solve([eq({"x": 2, "y": 1}, 5), eq({"x": 1, "y": -1}, 1)],
                       ("x", "y"))
    assert fam.is_unique()
    assert fam.particular == {"x": F(2), "y": F(1)}


def test_inconsistent_returns_none():
    fam = linear_solve([eq({"x": 1}, 1), eq({"x": 1}, 2)], ("x",))
    assert fam is None


def test_underdetermined_family():
    fam = linear_solve([eq({"x": 1, "y": 1, "z": 1}, 3)], ("x", "y", "z"))
    assert fam.dimension == 2
    m = fam.member({v: F(0) for v in fam.free})
    assert sum(m.values()) == 3
    m2 = fam.member({v: F(1) for v in fam.free})
    assert sum(m2.values()) == 3


def test_member_ignores_extra_keys():
    fam = linear_solve([eq({"x": 1, "y": 1}, 1)], ("x", "y"))
    m = fam.member({"y": F(2), "unused": F(9)})
    assert m["x"] + m["y"] == 1


def test_equations_from_poly_linear_in_unknowns():
    ring = ("a", "b")
    p = Poly(ring, {(1, 0): F(2), (0, 1): F(-3), (0, 0): F(6)})
    e = equations_from_poly(p)
    fam = linear_solve([e], ring)
    m = fam.member({v: F(0) for v in fam.free})
    assert 2 * m["a"] - 3 * m["b"] + 6 == 0


def test_matrix_rank():
    assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert matrix_rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert matrix_rank([[F(0), F(0)]]) == 0


def test_big_random_consistency():
    # fixed pseudo-random system solved and substituted back
    import random
    rng = random.Random(7)
    names = tuple(f"u{k}" for k in range(6))
    sol = {n: F(rng.randint(-5, 5), rng.randint(1, 4)) for n in names}
    eqs = []
    for _ in range(10):
        row = {n: F(rng.randint(-3, 3)) for n in names}
        rhs = sum(row[n] * sol[n] for n in names)
        eqs.append(LinearEquation(row, rhs))
    fam = linear_solve(eqs, names)
    assert fam is not None
    m = fam.member({v: sol[v] for v in fam.free})
    for e in eqs:
        assert sum(c * m[n] for n, c in e.coeffs.items()) == e.rhs
