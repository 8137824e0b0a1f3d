"""Normalization of graph jets.

Brings w = F(x,y,z) to the shape 2xy+z^2 + trace-free cubic + O(4),
classifies the cubic by exact invariants, and normalizes one-parameter
isotropy generators to their three standard shapes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .jets import Jet
from .linalg import LinearEquation, linear_solve, matrix_rank
from .poly import Poly
from .scalars import RationalFunc, Tower, rational_sqrt

XYZ = ("x", "y", "z")
XYZW = ("x", "y", "z", "w")


class NormalizationError(ValueError):
    pass


# -- affine maps of 4-space ----------------------------------------------------

@dataclass
class AffineMap:
    """old = linear . new + translation (rows of ``linear`` give old coords)."""
    linear: Tuple[Tuple[object, ...], ...]
    translation: Tuple[object, ...] = (Fraction(0),) * 4

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(tuple(tuple(Fraction(1 if i == j else 0) for j in range(4))
                         for i in range(4)))

    @classmethod
    def xyz_linear(cls, t3, w_scale=Fraction(1)) -> "AffineMap":
        """Block map: old xyz = t3 . new xyz, old w = w_scale * new w."""
        rows = []
        for i in range(3):
            rows.append(tuple(t3[i][j] for j in range(3)) + (Fraction(0),))
        rows.append((Fraction(0),) * 3 + (w_scale,))
        return cls(tuple(rows))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner in substitution order: old = self(inner(new))."""
        lin = tuple(tuple(sum(self.linear[i][k] * inner.linear[k][j]
                              for k in range(4)) for j in range(4))
                    for i in range(4))
        tr = tuple(sum(self.linear[i][k] * inner.translation[k] for k in range(4))
                   + self.translation[i] for i in range(4))
        return AffineMap(lin, tr)

    def component_polys(self):
        """Old coordinates as degree-1 polynomials in (x, y, z, w)."""
        out = []
        for i in range(4):
            p = Poly.const(self.translation[i], XYZW)
            for j, v in enumerate(XYZW):
                if self.linear[i][j]:
                    p = p + Poly.var(v, XYZW).scale(self.linear[i][j])
            out.append(p)
        return out

    def to_json(self):
        from .scalars import scalar_str
        return {"linear": [[scalar_str(c) for c in row] for row in self.linear],
                "translation": [scalar_str(c) for c in self.translation]}


def transform_graph(F: Jet, phi: AffineMap) -> Jet:
    """Defining jet of the graph w=F after the coordinate change ``phi``
    (old = phi(new)). Solved for the new w by Newton iteration on jets."""
    n = F.order
    comps = phi.component_polys()

    def plug(p4: Poly, w: Jet) -> Jet:
        images = {"x": Poly.var("x", XYZ), "y": Poly.var("y", XYZ),
                  "z": Poly.var("z", XYZ), "w": w.poly}
        return Jet(p4.substitute(images, max_degree=w.order), w.order)

    def G(w: Jet) -> Jet:
        xs = [plug(comps[i], w) for i in range(3)]
        wold = plug(comps[3], w)
        Fval = Jet(F.poly.substitute(
            {"x": xs[0].poly, "y": xs[1].poly, "z": xs[2].poly},
            max_degree=w.order), w.order)
        return wold - Fval

    def dG(w: Jet) -> Jet:
        # derivative of G with respect to the new w coordinate
        xs = [plug(comps[i], w) for i in range(3)]
        # component polys are degree 1, so their w-partials are constants
        out = Jet.const(comps[3].partial("w").constant_term(), w.order, XYZ)
        for i, v in enumerate(XYZ):
            di = comps[i].partial("w")
            if di:
                Fi = Jet(F.poly.partial(v).substitute(
                    {"x": xs[0].poly, "y": xs[1].poly, "z": xs[2].poly},
                    max_degree=w.order), w.order)
                coeff = di.constant_term()
                out = out - Fi * coeff
        return out

    w = Jet.zero(0, XYZ)
    if not G(w).is_zero():
        raise NormalizationError("coordinate change does not fix the basepoint")
    valid = 0
    while valid < n:
        valid = min(2 * valid + 1, n)
        w = Jet(w.poly, valid)
        w = w - G(w) * dG(w).inverse()
    return Jet(w.poly, n)


def remove_linear(F: Jet) -> Tuple[Jet, AffineMap]:
    """Absorb linear terms into the w coordinate (tangent plane to {w=0})."""
    lin = F.homogeneous_part(1)
    if not lin:
        return F, AffineMap.identity()
    # old w = new w + L(x,y,z)
    rows = [list(r) for r in AffineMap.identity().linear]
    for j, v in enumerate(XYZ):
        rows[3][j] = lin.coefficient(tuple(1 if k == j else 0 for k in range(3)))
    phi = AffineMap(tuple(tuple(r) for r in rows))
    return Jet(F.poly - lin, F.order), phi


# -- quadratic normal form ------------------------------------------------------

HYPERBOLIC_GRAM = ((Fraction(0), Fraction(1), Fraction(0)),
                   (Fraction(1), Fraction(0), Fraction(0)),
                   (Fraction(0), Fraction(0), Fraction(1)))


@dataclass
class QuadraticForm:
    gram: Tuple[Tuple[object, ...], ...]
    signature: str  # "hyperbolic", "elliptic", or "complex"

    def inverse_gram(self):
        return _invert3(self.gram)


def gram_matrix(F: Jet):
    q = F.homogeneous_part(2)
    H = [[Fraction(0)] * 3 for _ in range(3)]
    for m, c in q.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            H[i][i] = c
        else:
            H[i][j] = H[i][j] + c / 2
            H[j][i] = H[j][i] + c / 2
    return tuple(tuple(row) for row in H)


def _det3(H):
    return (H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
            - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
            + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]))


def _invert3(H):
    d = _det3(H)
    if not d:
        raise NormalizationError("singular quadratic form")
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [[H[r][c] for c in range(3) if c != j]
                   for r in range(3) if r != i]
            minor = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
            cof[j][i] = (minor if (i + j) % 2 == 0 else -minor) / d
    return tuple(tuple(row) for row in cof)


def _ip(H, u, v):
    return sum(u[i] * H[i][j] * v[j] for i in range(3) for j in range(3))


def _diagonalize(H):
    """Congruence diagonalization: basis vectors b with b_i^T H b_j diagonal."""
    basis = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]
    for k in range(3):
        if not _ip(H, basis[k], basis[k]):
            hit = None
            for l in range(k + 1, 3):
                if _ip(H, basis[l], basis[l]):
                    hit = l
                    break
            if hit is not None:
                basis[k], basis[hit] = basis[hit], basis[k]
            else:
                for l in range(k + 1, 3):
                    if _ip(H, basis[k], basis[l]):
                        basis[k] = [a + b for a, b in zip(basis[k], basis[l])]
                        break
        d = _ip(H, basis[k], basis[k])
        if not d:
            raise NormalizationError("degenerate quadratic part")
        for l in range(k + 1, 3):
            f = _ip(H, basis[k], basis[l]) / d
            if f:
                basis[l] = [a - f * b for a, b in zip(basis[l], basis[k])]
    return basis


@dataclass
class NormalizedQuadratic:
    jet: Jet
    change: AffineMap
    form: QuadraticForm
    tower: Optional[Tower] = None


def normalize_quadratic(F: Jet, fld: str = "complex") -> NormalizedQuadratic:
    """Linear change in (x,y,z) plus w-rescaling making the quadratic part
    2xy+z^2 (complex or real-hyperbolic) or x^2+y^2+z^2 (real-elliptic).

    At most two square roots are adjoined; most catalog inputs stay in Q.
    """
    if F.homogeneous_part(0) or F.homogeneous_part(1):
        raise NormalizationError("expected a jet without constant or linear terms")
    H = gram_matrix(F)
    if not _det3(H):
        raise NormalizationError("degenerate quadratic part (non-degeneracy fails)")
    basis = _diagonalize(H)
    d = [_ip(H, b, b) for b in basis]

    tower: Optional[Tower] = None

    if fld == "real" and all(x > 0 for x in d) or (
            fld == "real" and all(x < 0 for x in d)):
        # definite: elliptic target x^2+y^2+z^2, reference axis z
        mu = 1 / d[2]
        scales = []
        for i in range(3):
            val = d[2] / d[i]  # positive
            s = rational_sqrt(val)
            if s is None:
                tower = (tower or Tower()).extend(
                    f"s{(tower.depth if tower else 0) + 1}", val)
                s = tower.generator(tower.depth - 1)
            scales.append(s)
        if tower is not None:
            from .scalars import TowerElement
            scales = [tower.lift(s) if isinstance(s, TowerElement) else
                      tower.const(s) for s in scales]
        cols = [[basis[i][r] * scales[i] for r in range(3)] for i in range(3)]
        t3 = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
        phi = AffineMap.xyz_linear(t3, w_scale=1 / _promote(mu, tower))
        jet = _apply_quadratic_change(F, t3, mu, tower)
        form = QuadraticForm(
            tuple(tuple(Fraction(1 if i == j else 0) for j in range(3))
                  for i in range(3)), "elliptic")
        return NormalizedQuadratic(jet, phi, form, tower)

    # hyperbolic / complex target 2xy+z^2: find an isotropic vector
    iso = None
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            val = -d[i] / d[j]
            if val == 0:
                continue
            s = rational_sqrt(val) if val > 0 else None
            if s is not None:
                iso = [a + s * b for a, b in zip(basis[i], basis[j])]
                break
        if iso:
            break
    if iso is None:
        if fld == "real":
            found = False
            for i in range(3):
                for j in range(3):
                    if i != j and -d[i] / d[j] > 0:
                        val = -d[i] / d[j]
                        found = True
                        break
                if found:
                    break
            if not found:
                raise NormalizationError(
                    "definite real form cannot be made hyperbolic")
        else:
            val = -d[0] / d[1]
            i, j = 0, 1
        tower = (tower or Tower()).extend("s1", val)
        s = tower.generator(tower.depth - 1)
        iso = [a + s * b for a, b in zip(basis[i], basis[j])]

    Ht = _promote_matrix(H, tower)
    basis_t = [[_promote(c, tower) for c in b] for b in basis]
    iso = [_promote(c, tower) for c in iso]

    v0 = None
    for b in basis_t:
        if _ip(Ht, iso, b):
            v0 = b
            break
    beta0 = _ip(Ht, iso, v0)
    v = [a - (_ip(Ht, v0, v0) / (2 * beta0)) * b for a, b in zip(v0, iso)]
    beta = _ip(Ht, iso, v)
    e = None
    for b in basis_t:
        cand = [a - (_ip(Ht, b, v) / beta) * u_ - (_ip(Ht, b, iso) / beta) * v_
                for a, u_, v_ in zip(b, iso, v)]
        if any(cand) and _ip(Ht, cand, cand):
            e = cand
            break
    if e is None:
        raise NormalizationError("failed to complete a hyperbolic basis")
    gamma = _ip(Ht, e, e)
    mu = 1 / gamma
    u_scaled = [(gamma / beta) * c for c in iso]
    cols = [u_scaled, v, e]
    t3 = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    phi = AffineMap.xyz_linear(t3, w_scale=1 / mu)
    jet = _apply_quadratic_change(F, t3, mu, tower)
    sig = "complex" if fld == "complex" else "hyperbolic"
    form = QuadraticForm(HYPERBOLIC_GRAM, sig)
    return NormalizedQuadratic(jet, phi, form, tower)


def _promote(c, tower: Optional[Tower]):
    if tower is None or not isinstance(c, Fraction):
        return c
    return tower.const(c)


def _promote_matrix(H, tower):
    return tuple(tuple(_promote(c, tower) for c in row) for row in H)


def _apply_quadratic_change(F: Jet, t3, mu, tower: Optional[Tower]) -> Jet:
    poly = F.poly
    if tower is not None:
        poly = poly.map_coefficients(lambda c: _promote(c, tower))
    images = {}
    for j, v in enumerate(XYZ):
        p = Poly.zero(XYZ)
        for i, u in enumerate(XYZ):
            if t3[j][i]:
                p = p + Poly.var(u, XYZ).scale(t3[j][i])
        images[v] = p
    sub = poly.substitute(images, max_degree=F.order)
    return Jet(sub.scale(_promote(mu, tower)), F.order)


# -- trace decomposition and cubic classification --------------------------------

CUBIC_BASIS_POLYS = None


def cubic_basis() -> List[Poly]:
    """The seven trace-free basis cubics for the form 2xy+z^2."""
    global CUBIC_BASIS_POLYS
    if CUBIC_BASIS_POLYS is None:
        x, y, z = (Poly.var(v) for v in XYZ)
        CUBIC_BASIS_POLYS = [
            x ** 3,
            x * x * z,
            x * x * y - 2 * x * z * z,
            3 * x * y * z - z ** 3,
            x * y * y - 2 * y * z * z,
            y * y * z,
            y ** 3,
        ]
    return CUBIC_BASIS_POLYS


def cubic_tensor(c: Poly):
    """Fully symmetric 3-tensor C with c = sum C_ijk x_i x_j x_k."""
    from math import factorial
    C = {}
    for m, co in c.terms.items():
        if sum(m) != 3:
            raise ValueError("not a cubic form")
        mult = factorial(3)
        for e in m:
            mult //= factorial(e)
        idx = tuple(i for i, e in enumerate(m) for _ in range(e))
        C[idx] = co / mult
    return C


def _tensor_entry(C, i, j, k):
    return C.get(tuple(sorted((i, j, k))), Fraction(0))


def trace_vector(c: Poly, h: QuadraticForm):
    C = cubic_tensor(c)
    Hi = h.inverse_gram()
    return [sum(Hi[j][k] * _tensor_entry(C, i, j, k)
                for j in range(3) for k in range(3)) for i in range(3)]


def quadratic_poly(h: QuadraticForm) -> Poly:
    p = Poly.zero(XYZ)
    for i in range(3):
        for j in range(3):
            if h.gram[i][j]:
                p = p + (Poly.var(XYZ[i]) * Poly.var(XYZ[j])).scale(h.gram[i][j])
    return p


def trace_decompose(c: Poly, h: QuadraticForm) -> Tuple[Poly, Poly]:
    """Unique splitting c = c0 + q_h * l with c0 trace-free."""
    qh = quadratic_poly(h)
    # trace of q_h * (l1 x + l2 y + l3 z) is linear in l; match trace(c)
    tc = trace_vector(c, h)
    cols = []
    for j in range(3):
        tj = trace_vector(qh * Poly.var(XYZ[j]), h)
        cols.append(tj)
    eqs = [LinearEquation({f"l{j}": cols[j][i] for j in range(3)}, tc[i])
           for i in range(3)]
    fam = linear_solve(eqs, [f"l{j}" for j in range(3)])
    if fam is None or not fam.is_unique():
        raise NormalizationError("trace decomposition failed")
    l = Poly.zero(XYZ)
    for j in range(3):
        if fam.particular[f"l{j}"]:
            l = l + Poly.var(XYZ[j]).scale(fam.particular[f"l{j}"])
    c0 = c - qh * l
    return c0, l


def is_trace_free(c: Poly, h: QuadraticForm) -> bool:
    return not any(trace_vector(c, h))


def normal_shear(F: Jet) -> Tuple[Jet, AffineMap]:
    """Shear x_i -> x_i + a_i w making the cubic trace-free.

    The quadratic part must already be 2xy+z^2; it is unchanged and the
    jet changes only in degree three and higher.
    """
    h = QuadraticForm(HYPERBOLIC_GRAM, "complex")
    if gram_matrix(F) != HYPERBOLIC_GRAM:
        raise NormalizationError("quadratic part must be 2xy+z^2 before shearing")
    c = F.homogeneous_part(3)
    if not c:
        return F, AffineMap.identity()
    _, l = trace_decompose(c, h)
    if not l:
        return F, AffineMap.identity()
    Hi = h.inverse_gram()
    lv = [l.coefficient(tuple(1 if k == i else 0 for k in range(3)))
          for i in range(3)]
    a = [-sum(Hi[i][j] * lv[j] for j in range(3)) / 2 for i in range(3)]
    rows = [list(r) for r in AffineMap.identity().linear]
    for i in range(3):
        rows[i][3] = a[i]
    phi = AffineMap(tuple(tuple(r) for r in rows))
    out = transform_graph(F, phi)
    return out, phi


CUBIC_ZERO, CUBIC_I3, CUBIC_I2, CUBIC_I1, CUBIC_I0 = "Zero", "I3", "I2", "I1", "I0"


def pick_invariant(c0: Poly, h: QuadraticForm):
    """Full self-contraction of the trace-free cubic with the inverse form."""
    C = cubic_tensor(c0) if c0 else {}
    Hi = h.inverse_gram()
    total = Fraction(0)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                a = _tensor_entry(C, i, j, k)
                if not a:
                    continue
                for l in range(3):
                    for m in range(3):
                        for n in range(3):
                            b = _tensor_entry(C, l, m, n)
                            if b:
                                total = total + a * b * Hi[i][l] * Hi[j][m] * Hi[k][n]
    return total


def partials_span_dimension(c0: Poly) -> int:
    monos = sorted({m for v in XYZ for m in c0.partial(v).terms})
    rows = [[c0.partial(v).terms.get(m, Fraction(0)) for m in monos] for v in XYZ]
    return matrix_rank(rows)


def cubic_type(c0: Poly, h: QuadraticForm) -> str:
    if not is_trace_free(c0, h):
        raise NormalizationError("cubic is not trace-free")
    if c0.is_zero():
        return CUBIC_ZERO
    d = partials_span_dimension(c0)
    if d == 1:
        return CUBIC_I3
    if d == 2:
        return CUBIC_I2
    return CUBIC_I1 if not pick_invariant(c0, h) else CUBIC_I0


# -- isotropy generators -----------------------------------------------------------

@dataclass
class IsotropyGenerator:
    matrix: Tuple[Tuple[object, ...], ...]
    kind: str  # "pure-rescaling", "scaling", "null-rotation"
    p: object = Fraction(0)
    q: object = Fraction(0)
    r: object = Fraction(0)
    t: object = Fraction(0)
    norm: object = Fraction(0)  # 2pq + r^2 on the rotation component


def classify_isotropy_generator(M) -> IsotropyGenerator:
    """Normalize a one-parameter isotropy generator of the quadric jet.

    The matrix must have the rotation-plus-rescaling shape; the class is
    decided by the invariant length 2pq + r^2 of the rotation component.
    """
    M = tuple(tuple(c for c in row) for row in M)
    t2 = M[3][3]
    t = t2 / 2
    p, q, r = M[0][2], M[2][0], (M[1][1] - M[0][0]) / 2
    expected = ((t - r, 0, p, 0),
                (0, t + r, -q, 0),
                (q, -p, t, 0),
                (0, 0, 0, 2 * t))
    for i in range(4):
        for j in range(4):
            if M[i][j] != expected[i][j]:
                raise NormalizationError(
                    "matrix is not a rotation-plus-rescaling generator")
    n = 2 * p * q + r * r
    if not p and not q and not r:
        kind = "pure-rescaling"
    elif n:
        kind = "scaling"
    else:
        kind = "null-rotation"
    return IsotropyGenerator(M, kind, p, q, r, t, n)


def generator_vector_field_matrix(kind: str, t) -> Tuple[Tuple[object, ...], ...]:
    """The standard generator of the given kind with parameter t."""
    if kind == "pure-rescaling":
        return ((Fraction(1), 0, 0, 0), (0, Fraction(1), 0, 0),
                (0, 0, Fraction(1), 0), (0, 0, 0, Fraction(2)))
    if kind == "scaling":
        return ((t - 1, 0, 0, 0), (0, t + 1, 0, 0), (0, 0, t, 0), (0, 0, 0, 2 * t))
    if kind == "null-rotation":
        return ((t, 0, 0, 0), (0, t, Fraction(-1), 0),
                (Fraction(1), 0, t, 0), (0, 0, 0, 2 * t))
    raise ValueError(f"unknown generator kind {kind!r}")


def cubic_action_matrix(kind: str, t):
    """Matrix of (vector field action - 2t) on the trace-free cubic basis."""
    gen = generator_vector_field_matrix(kind, t)
    basis = cubic_basis()
    images = []
    for b in basis:
        img = Poly.zero(XYZ)
        for i in range(3):
            lin = Poly.zero(XYZ)
            for j in range(3):
                if gen[i][j]:
                    lin = lin + Poly.var(XYZ[j]).scale(gen[i][j])
            if lin:
                img = img + lin * b.partial(XYZ[i])
        img = img - b.scale(2 * t)
        images.append(img)
    # express each image in the basis (the action preserves the span)
    monos = sorted({m for b in basis for m in b.terms} |
                   {m for im in images for m in im.terms})
    mat = []
    for row_m in range(7):
        mat.append([Fraction(0)] * 7)
    for col, img in enumerate(images):
        eqs = []
        for m in monos:
            coeffs = {f"c{k}": basis[k].terms.get(m, Fraction(0)) for k in range(7)}
            eqs.append(LinearEquation(coeffs, img.terms.get(m, Fraction(0))))
        fam = linear_solve(eqs, [f"c{k}" for k in range(7)])
        if fam is None or not fam.is_unique():
            raise NormalizationError("generator action leaves the cubic span")
        for row in range(7):
            mat[row][col] = fam.particular[f"c{row}"]
    return tuple(tuple(r) for r in mat)


def cubic_action_kernel(kind: str, t) -> List[Poly]:
    """Kernel of the action matrix at a concrete t, as cubics."""
    mat = cubic_action_matrix(kind, t)
    eqs = [LinearEquation({f"c{k}": mat[i][k] for k in range(7)}, Fraction(0))
           for i in range(7)]
    fam = linear_solve(eqs, [f"c{k}" for k in range(7)])
    out = []
    basis = cubic_basis()
    for vec in fam.basis:
        p = Poly.zero(XYZ)
        for k in range(7):
            if vec[f"c{k}"]:
                p = p + basis[k].scale(vec[f"c{k}"])
        out.append(p)
    return out


def constrained_cubics(kind: str):
    """Admissible (t, cubic ray) pairs for a scaling or null-rotation
    isotropy generator."""
    if kind == "scaling":
        out = []
        for t in range(-3, 4):
            ker = cubic_action_kernel("scaling", Fraction(t))
            if ker:
                out.append((Fraction(t), ker[0]))
        return out
    if kind == "null-rotation":
        ker = cubic_action_kernel("null-rotation", Fraction(0))
        return [(Fraction(0), ker[0])] if ker else []
    raise ValueError("constrained cubics exist for scaling or null-rotation only")


def action_determinant_poly(kind: str) -> RationalFunc:
    """det of the cubic action matrix as a rational function of t."""
    t = RationalFunc.gen("t")
    mat = [list(r) for r in cubic_action_matrix(kind, t)]
    det = RationalFunc.const(1, "t")
    n = 7
    rows = [[RationalFunc.const(c, "t") if isinstance(c, Fraction) else c
             for c in row] for row in mat]
    for k in range(n):
        piv = None
        for i in range(k, n):
            if rows[i][k]:
                piv = i
                break
        if piv is None:
            return RationalFunc.const(0, "t")
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        det = det * rows[k][k]
        for i in range(k + 1, n):
            f = rows[i][k] / rows[k][k]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return det


# -- full normalization pipeline ----------------------------------------------------

@dataclass
class NormalizationReport:
    jet: Jet
    change: AffineMap
    form: QuadraticForm
    cubic: Poly
    cubic_class: str
    pick: object
    tower: Optional[Tower] = None

    def to_json(self):
        from .scalars import scalar_str
        return {
            "jet": self.jet.to_json(),
            "change": self.change.to_json(),
            "signature": self.form.signature,
            "cubic_class": self.cubic_class,
            "pick_invariant": scalar_str(self.pick),
            "tower": list(self.tower.names) if self.tower else [],
        }


def normalize_jet(F: Jet, fld: str = "complex") -> NormalizationReport:
    """remove linear terms, normalize the quadratic, shear the cubic
    trace-free, classify."""
    F1, phi1 = remove_linear(F)
    nq = normalize_quadratic(F1, fld)
    if nq.form.signature == "elliptic":
        change = phi1.compose(nq.change)
        c = nq.jet.homogeneous_part(3)
        return NormalizationReport(nq.jet, change, nq.form, c,
                                   "unclassified-elliptic",
                                   pick_invariant(c, nq.form) if c else Fraction(0),
                                   nq.tower)
    F2, phi3 = normal_shear(nq.jet)
    change = phi1.compose(nq.change).compose(phi3)
    h = QuadraticForm(HYPERBOLIC_GRAM, nq.form.signature)
    c0 = F2.homogeneous_part(3)
    kind = cubic_type(c0, h)
    return NormalizationReport(F2, change, h, c0, kind,
                               pick_invariant(c0, h), nq.tower)
