"""Exact polynomial system solving for the closure constraints.

Buchberger's algorithm (normal/sugar selection, Gebauer-Moller useless
pair elimination, reduced monic output) plus a zero-dimensional solver:
linear elimination first, then lexicographic elimination with rational
root extraction and back-substitution. After a free parameter has been
designated, quadratics over its function field are split whenever the
discriminant is a perfect square. Irrational roots are reported as
residual components with their defining polynomials, never approximated.

Deterministic throughout: variables are ordered lexically by name and
all tie-breaking is by fixed term-order keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import GREVLEX, LEX, Mono, Poly, TermOrder
from .scalars import RationalFunc, scalar_str


class GroebnerError(ValueError):
    pass


def _monic(p: Poly, order: TermOrder) -> Poly:
    c = p.leading_term(order)[1]
    if c == 1:
        return p
    return p.map_coefficients(lambda a: a / c)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _msub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def reduce(p: Poly, basis: Sequence[Poly], order: TermOrder = GREVLEX) -> Poly:
    """Normal form of p modulo the basis (full multivariate division)."""
    if not basis:
        return p
    lts = [g.leading_term(order) for g in basis]
    rem = Poly.zero(p.vars)
    work = p
    while work:
        m, c = work.leading_term(order)
        hit = None
        for i, (gm, gc) in enumerate(lts):
            if _divides(gm, m):
                hit = i
                break
        if hit is None:
            t = Poly.monomial(m, c, work.vars)
            rem = rem + t
            work = work - t
        else:
            gm, gc = lts[hit]
            factor = Poly.monomial(_msub(m, gm), c / gc, work.vars)
            work = work - factor * basis[hit]
    return rem


def s_poly(f: Poly, g: Poly, order: TermOrder = GREVLEX) -> Poly:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    l = _lcm(mf, mg)
    return (Poly.monomial(_msub(l, mf), 1 / cf, f.vars) * f
            - Poly.monomial(_msub(l, mg), 1 / cg, g.vars) * g)


def buchberger(gens: Sequence[Poly], order: TermOrder = GREVLEX) -> List[Poly]:
    """Reduced monic Groebner basis of the ideal generated by gens."""
    G: List[Poly] = []
    for g in gens:
        if g:
            G.append(_monic(g, order))
    if not G:
        return []
    lt = [g.leading_term(order)[0] for g in G]

    pairs: List[Tuple[int, int]] = []

    def useless(i: int, j: int) -> bool:
        # Buchberger's first criterion: coprime leading terms
        l = _lcm(lt[i], lt[j])
        if l == tuple(a + b for a, b in zip(lt[i], lt[j])):
            return True
        # chain criterion
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(lt[k], l):
                p1 = (min(i, k), max(i, k))
                p2 = (min(j, k), max(j, k))
                if p1 not in pair_set and p2 not in pair_set:
                    return True
        return False

    pair_set = set()
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            pairs.append((i, j))
            pair_set.add((i, j))

    def sel_key(pr):
        i, j = pr
        l = _lcm(lt[i], lt[j])
        return (sum(l), order.key(l), i, j)

    while pairs:
        pairs.sort(key=sel_key)
        i, j = pairs.pop(0)
        pair_set.discard((i, j))
        if useless(i, j):
            continue
        r = reduce(s_poly(G[i], G[j], order), G, order)
        if r:
            r = _monic(r, order)
            k = len(G)
            G.append(r)
            lt.append(r.leading_term(order)[0])
            for a in range(k):
                pairs.append((a, k))
                pair_set.add((a, k))

    # minimalize: drop generators whose leading term another one divides
    minimal = []
    for i in range(len(G)):
        dominated = False
        for j in range(len(G)):
            if j != i and _divides(lt[j], lt[i]) and (lt[j] != lt[i] or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(G[i])
    # inter-reduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = [h for j, h in enumerate(minimal) if j != i]
        r = reduce(g, others, order)
        if r:
            reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    # safety: the pair-elimination criteria must not have lost anything
    for i in range(len(reduced)):
        for j in range(i + 1, len(reduced)):
            if reduce(s_poly(reduced[i], reduced[j], order), reduced, order):
                raise GroebnerError("basis failed the S-polynomial criterion")
    return reduced


# -- solution extraction ----------------------------------------------------------

@dataclass
class ParametricFamily:
    free: str
    assignments: Dict[str, RationalFunc]
    degeneracies: List[RationalFunc] = field(default_factory=list)


@dataclass
class ResidualComponent:
    basis: List[Poly]
    assignments: Dict[str, object] = field(default_factory=dict)


@dataclass
class SolutionSet:
    unknowns: List[str]
    points: List[Dict[str, Fraction]] = field(default_factory=list)
    families: List[ParametricFamily] = field(default_factory=list)
    residual: List[ResidualComponent] = field(default_factory=list)

    def to_json(self):
        return {
            "points": [{u: scalar_str(v) for u, v in sorted(pt.items())}
                       for pt in self.points],
            "families": [{"free": f.free,
                          "assignments": {u: scalar_str(v)
                                          for u, v in sorted(f.assignments.items())}}
                         for f in self.families],
            "residual": [{"basis": [str(p) for p in r.basis],
                          "assignments": {u: scalar_str(v)
                                          for u, v in sorted(r.assignments.items())}}
                         for r in self.residual],
        }


def _restrict(p: Poly, vars: Tuple[str, ...]) -> Poly:
    """Re-express p in a sub-ring containing all variables it uses."""
    pos = [p.vars.index(v) for v in vars]
    terms = {}
    for m, c in p.terms.items():
        for i, e in enumerate(m):
            if e and p.vars[i] not in vars:
                raise GroebnerError("variable lost in restriction")
        terms[tuple(m[i] for i in pos)] = c
    return Poly(vars, terms)


def _substitute_scalar(p: Poly, v: str, value) -> Poly:
    """Set variable v to a scalar; result lives in the ring without v."""
    i = p.vars.index(v)
    new_vars = p.vars[:i] + p.vars[i + 1:]
    out: Dict[Mono, object] = {}
    for m, c in p.terms.items():
        c2 = c * value ** m[i] if m[i] else c
        m2 = m[:i] + m[i + 1:]
        if m2 in out:
            s = out[m2] + c2
            if s:
                out[m2] = s
            else:
                del out[m2]
        elif c2:
            out[m2] = c2
    return Poly(new_vars, out)


def _substitute_poly(p: Poly, v: str, expr: Poly) -> Poly:
    """Replace variable v by a polynomial in the remaining variables."""
    i = p.vars.index(v)
    new_vars = p.vars[:i] + p.vars[i + 1:]
    out = Poly.zero(new_vars)
    powers = [Poly.const(Fraction(1), new_vars)]
    for m, c in p.terms.items():
        e = m[i]
        while len(powers) <= e:
            powers.append(powers[-1] * expr)
        m2 = m[:i] + m[i + 1:]
        out = out + Poly.monomial(m2, c, new_vars) * powers[e]
    return out


def _linear_coefficient(p: Poly, v: str):
    """(c, rest) with p = c*v + rest, when p is linear in v with scalar c."""
    i = p.vars.index(v)
    c = None
    rest_terms = {}
    for m, co in p.terms.items():
        if m[i] == 0:
            rest_terms[m] = co
        elif m[i] == 1 and sum(m) == 1:
            c = co
        else:
            return None
    if c is None or not c:
        return None
    return c, Poly(p.vars, rest_terms)


def _univariate_in(p: Poly) -> Optional[str]:
    used = set()
    for m in p.terms:
        for v, e in zip(p.vars, m):
            if e:
                used.add(v)
    if len(used) == 1:
        return used.pop()
    return None


def _rational_roots(p: Poly, v: str):
    """(roots, deflated) for a univariate polynomial with Fraction
    coefficients; deflated is the root-free cofactor (or None)."""
    i = p.vars.index(v)
    deg = max(m[i] for m in p.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        if not isinstance(c, Fraction):
            return [], p  # parametric coefficients: report residual
        coeffs[m[i]] = c
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    content = 0
    for c in ints:
        content = gcd(content, abs(c))
    if content:
        ints = [c // content for c in ints]

    def eval_at(cs, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    def deflate(cs, x: Fraction):
        out = [Fraction(0)] * (len(cs) - 1)
        acc = Fraction(0)
        for k in range(len(cs) - 1, 0, -1):
            acc = acc * x + cs[k]
            out[k - 1] = acc
        return out

    roots = []
    cur = [Fraction(c) for c in ints]
    # strip zero roots
    while len(cur) > 1 and not cur[0]:
        roots.append(Fraction(0))
        cur = cur[1:]
    changed = True
    while changed and len(cur) > 1:
        changed = False
        dl = _den_lcm(cur)
        ic = [int(c * dl) for c in cur]
        g = 0
        for c in ic:
            g = gcd(g, abs(c))
        if g:
            ic = [c // g for c in ic]
        for pn in _divisors(abs(ic[0])):
            for qn in _divisors(abs(ic[-1])):
                for cand in (Fraction(pn, qn), Fraction(-pn, qn)):
                    if eval_at(cur, cand) == 0:
                        roots.append(cand)
                        cur = deflate(cur, cand)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    # multiplicities matter for deflation but branches must not repeat
    roots = list(dict.fromkeys(roots))
    deflated = None
    if len(cur) > 1:
        terms = {}
        for k, c in enumerate(cur):
            if c:
                m = tuple(k if p.vars[j] == v else 0 for j in range(len(p.vars)))
                terms[m] = c
        deflated = Poly(p.vars, terms)
    return roots, deflated


def _fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn = isqrt(q.numerator)
    rd = isqrt(q.denominator)
    if rn * rn != q.numerator or rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)


def _poly_sqrt(coeffs) -> Optional[Tuple[Fraction, ...]]:
    """Square root of a univariate polynomial (ascending coefficients)."""
    cs = [Fraction(c) for c in coeffs]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        return ()
    d = len(cs) - 1
    if d % 2:
        return None
    lead = _fraction_sqrt(cs[-1])
    if lead is None:
        return None
    h = d // 2
    q = [Fraction(0)] * (h + 1)
    q[h] = lead
    for k in range(d - 1, h - 1, -1):
        s = sum((q[i] * q[k - i] for i in range(k - h + 1, h)
                 if 0 <= k - i <= h), Fraction(0))
        q[k - h] = (cs[k] - s) / (2 * lead)
    prod = [Fraction(0)] * (d + 1)
    for i, a in enumerate(q):
        for j, b in enumerate(q):
            prod[i + j] += a * b
    if prod != cs + [Fraction(0)] * (d + 1 - len(cs)):
        return None
    return tuple(q)


def _ratfunc_sqrt(rf: RationalFunc) -> Optional[RationalFunc]:
    n = _poly_sqrt(rf.num)
    d = _poly_sqrt(rf.den)
    if n is None or d is None:
        return None
    return RationalFunc(n, d, var=rf.var)


def _parametric_roots(p: Poly, v: str):
    """Roots of p in v over the field of an already designated parameter.

    Handles degree <= 2 via the discriminant: solvable exactly when the
    discriminant is the square of a rational function. Returns
    (roots, solved); roots are RationalFunc values in the parameter."""
    i = p.vars.index(v)
    deg = max(m[i] for m in p.terms)
    if deg < 1 or deg > 2:
        return [], False
    var = None
    for c in p.terms.values():
        if isinstance(c, RationalFunc):
            var = c.var
            break
    if var is None:
        return [], False  # plain rational coefficients: already handled
    cs = [RationalFunc.const(0, var=var) for _ in range(deg + 1)]
    for m, c in p.terms.items():
        cs[m[i]] = c if isinstance(c, RationalFunc) else RationalFunc.const(c, var=var)
    if deg == 1:
        return [-cs[0] / cs[1]], True
    a, b, c = cs[2], cs[1], cs[0]
    s = _ratfunc_sqrt(b * b - 4 * a * c)
    if s is None:
        return [], False
    r1 = (-b + s) / (2 * a)
    r2 = (-b - s) / (2 * a)
    return ([r1] if r1 == r2 else [r1, r2]), True


def _den_lcm(cs) -> int:
    out = 1
    for c in cs:
        out = out * c.denominator // gcd(out, c.denominator)
    return out


def _divisors(n: int):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def solve_zero_dim(gens: Sequence[Poly], unknowns: Optional[Sequence[str]] = None,
                   max_parameters: int = 1) -> SolutionSet:
    """All solutions of a polynomial system over the rationals.

    Strategy: eliminate unknowns that occur linearly with scalar
    coefficients; run a lexicographic Groebner basis on what remains;
    branch over rational roots of univariate basis elements; designate a
    free parameter for positive-dimensional components. Components that
    resist this shape (irrational roots, > max_parameters free unknowns)
    are reported as residual with their bases.
    """
    if unknowns is None:
        names = set()
        for g in gens:
            for m, c in g.terms.items():
                for v, e in zip(g.vars, m):
                    if e:
                        names.add(v)
        unknowns = sorted(names)
    unknowns = tuple(sorted(unknowns))
    ring = unknowns
    sys0 = [_restrict(g, ring) if g.vars != ring else g for g in gens]
    out = SolutionSet(list(unknowns))
    _solve_rec(sys0, ring, {}, [], [], max_parameters, out)
    _dedupe(out)
    _verify_solutions(gens, out)
    return out


def _dedupe(out: SolutionSet):
    """Drop components reached identically along distinct branches."""
    seen = set()
    points = []
    for pt in out.points:
        key = tuple(sorted((u, v) for u, v in pt.items()))
        if key not in seen:
            seen.add(key)
            points.append(pt)
    out.points = points
    seen = set()
    families = []
    for fam in out.families:
        key = (fam.free, tuple(sorted((u, str(v))
                                      for u, v in fam.assignments.items())))
        if key not in seen:
            seen.add(key)
            families.append(fam)
    out.families = families


def _solve_rec(system: List[Poly], ring: Tuple[str, ...],
               fixed: Dict[str, object], stack: List[Tuple[str, Poly]],
               params: List[str], max_parameters: int, out: SolutionSet):
    system = [p for p in system if p]
    if any(p.is_constant() for p in system):
        return  # inconsistent branch

    # linear elimination with scalar pivots
    progress = True
    while progress:
        progress = False
        system = [p for p in system if p]
        if any(p.is_constant() for p in system):
            return
        best = None
        for p in sorted(system, key=lambda q: (len(q.terms), q.total_degree(),
                                               str(q))):
            for v in ring:
                lin = _linear_coefficient(p, v)
                if lin is not None:
                    best = (p, v, lin)
                    break
            if best:
                break
        if best:
            p, v, (c, rest) = best
            expr = rest.map_coefficients(lambda a: -a / c)
            i = ring.index(v)
            expr = Poly(ring[:i] + ring[i + 1:],
                        {m[:i] + m[i + 1:]: co for m, co in expr.terms.items()})
            stack.append((v, expr))
            ring = ring[:i] + ring[i + 1:]
            system = [_substitute_poly(q, v, expr) for q in system if q is not p]
            progress = True

    system = [p for p in system if p]
    if any(p.is_constant() for p in system):
        return

    if not system:
        free_vars = list(ring)
        if not free_vars:
            _emit(fixed, stack, {}, params, out)
        elif len(free_vars) == 1 and len(params) == 0 and max_parameters >= 1:
            v = free_vars[0]
            _emit(fixed, stack, {v: RationalFunc.gen(v)}, [v], out)
        else:
            # too many free directions to parametrize: report residual
            vals = _assemble(fixed, stack, {v: Poly.var(v, tuple(free_vars))
                                            for v in free_vars})
            out.residual.append(ResidualComponent([], vals))
        return

    gb = buchberger(system, LEX)
    if any(g.is_constant() for g in gb):
        return

    # branch on a univariate element, preferring the lex-last variable
    univars = [(g, _univariate_in(g)) for g in gb]
    univars = [(g, v) for g, v in univars if v is not None]
    if univars:
        univars.sort(key=lambda t: (ring[::-1].index(t[1])
                                    if t[1] in ring else 0, str(t[0])))
        g, v = univars[0]
        roots, deflated = _rational_roots(g, v)
        if deflated is not None:
            proots, solved = _parametric_roots(deflated, v)
            if solved:
                roots = roots + proots
                deflated = None
            else:
                out.residual.append(ResidualComponent(
                    [deflated], _assemble(fixed, stack,
                                          {u: Poly.var(u, ring) for u in ring})))
        i = ring.index(v)
        sub_ring = ring[:i] + ring[i + 1:]
        for root in roots:
            sub = [_substitute_scalar(q, v, root) for q in gb]
            nf = dict(fixed)
            nf[v] = root
            _solve_rec(sub, sub_ring, nf, list(stack), params,
                       max_parameters, out)
        return

    # positive-dimensional: pick a parameter not leading any basis element
    leading_vars = set()
    for g in gb:
        m = g.leading_term(LEX)[0]
        for v, e in zip(g.vars, m):
            if e:
                leading_vars.add(v)
                break
    candidates = [v for v in ring if v not in leading_vars]
    if not candidates or len(params) >= max_parameters:
        out.residual.append(ResidualComponent(
            gb, _assemble(fixed, stack, {u: Poly.var(u, ring) for u in ring})))
        return
    v = candidates[-1]
    i = ring.index(v)
    sub_ring = ring[:i] + ring[i + 1:]
    param = RationalFunc.gen(v)
    sub = [_substitute_scalar(q, v, param) for q in gb]
    nf = dict(fixed)
    nf[v] = param
    _solve_rec(sub, sub_ring, nf, list(stack), params + [v],
               max_parameters, out)


def _assemble(fixed: Dict[str, object], stack: List[Tuple[str, Poly]],
              tail: Dict[str, object]) -> Dict[str, object]:
    vals = dict(fixed)
    vals.update(tail)
    for v, expr in reversed(stack):
        vals[v] = expr.eval(vals) if expr else Fraction(0)
    return vals


def _emit(fixed, stack, tail, params, out: SolutionSet):
    vals = _assemble(fixed, stack, tail)
    if not params:
        out.points.append({u: v for u, v in vals.items()})
    else:
        free = params[0]
        assignments = {u: (v if isinstance(v, RationalFunc)
                           else RationalFunc.const(v, var=free))
                       for u, v in vals.items()}
        out.families.append(ParametricFamily(free, assignments))


def _verify_solutions(gens: Sequence[Poly], sols: SolutionSet):
    for pt in sols.points:
        for g in gens:
            if g.eval(pt):
                raise GroebnerError(f"spurious point {pt}")
    for fam in sols.families:
        for g in gens:
            val = g.eval(fam.assignments)
            if val:
                raise GroebnerError(f"spurious family over {fam.free}")
