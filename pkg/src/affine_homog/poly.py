"""Sparse multivariate polynomials over an exact coefficient domain.

Exponent vectors are tuples aligned with an explicit ambient variable
list. Stored terms never carry zero coefficients; canonical iteration is
graded reverse lexicographic. Coefficients may be Fractions, rational
functions, tower elements, or (for constraint bookkeeping) other Polys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Mono = Tuple[int, ...]

XYZ = ("x", "y", "z")


class VariableMismatch(ValueError):
    pass


def grevlex_key(m: Mono):
    """Sort key: ascending order ends at the grevlex-largest monomial."""
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Mono):
    return m


class TermOrder:
    def __init__(self, name: str, key):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"TermOrder({self.name})"


GREVLEX = TermOrder("grevlex", grevlex_key)
LEX = TermOrder("lex", lex_key)


def _is_scalar(c) -> bool:
    return not isinstance(c, Poly)


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Mono, object] = ()):
        self.vars = tuple(vars)
        d: Dict[Mono, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            if len(m) != len(self.vars):
                raise VariableMismatch("exponent arity mismatch")
            if c:
                m = tuple(m)
                if m in d:
                    c = d[m] + c
                    if c:
                        d[m] = c
                    else:
                        del d[m]
                else:
                    d[m] = c
        self.terms = d

    # -- constructors

    @classmethod
    def zero(cls, vars: Sequence[str] = XYZ) -> "Poly":
        return cls(vars)

    @classmethod
    def const(cls, c, vars: Sequence[str] = XYZ) -> "Poly":
        if isinstance(c, int):
            c = Fraction(c)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Sequence[str] = XYZ) -> "Poly":
        vars = tuple(vars)
        i = vars.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {m: Fraction(1)})

    @classmethod
    def monomial(cls, expo: Mono, c=Fraction(1), vars: Sequence[str] = XYZ) -> "Poly":
        return cls(vars, {tuple(expo): c})

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, expo: Mono):
        return self.terms.get(tuple(expo), Fraction(0))

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def sorted_terms(self, order: TermOrder = GREVLEX):
        """Terms in descending order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                      reverse=True)

    def leading_term(self, order: TermOrder = GREVLEX):
        if not self.terms:
            raise ValueError("leading term of zero polynomial")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # -- arithmetic

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            other = Fraction(other)
        return Poly.const(other, self.vars)

    def __add__(self, other):
        o = self._coerce(other)
        d = dict(self.terms)
        for m, c in o.terms.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            elif m in d:
                del d[m]
        return Poly(self.vars, d)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly) and other.vars == self.vars:
            return self._mul_poly(other, None)
        if isinstance(other, Poly):
            raise VariableMismatch(f"{self.vars} vs {other.vars}")
        return self.scale(other)

    __rmul__ = __mul__

    def _mul_poly(self, other: "Poly", max_degree) -> "Poly":
        d: Dict[Mono, object] = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for m2, c2 in other.terms.items():
                if max_degree is not None and d1 + sum(m2) > max_degree:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                if m in d:
                    s = d[m] + c
                    if s:
                        d[m] = s
                    else:
                        del d[m]
                elif c:
                    d[m] = c
        return Poly(self.vars, d)

    def mul_truncated(self, other: "Poly", max_degree: int) -> "Poly":
        self._check(other)
        return self._mul_poly(other, max_degree)

    def scale(self, c) -> "Poly":
        if isinstance(c, int):
            c = Fraction(c)
        if not c:
            return Poly(self.vars)
        return Poly(self.vars, {m: co * c for m, co in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(Fraction(1), self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or _is_scalar(other):
            return self.terms == Poly.const(other, self.vars).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- calculus / structure

    def partial(self, name: str) -> "Poly":
        i = self.vars.index(name)
        d = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
                d[m2] = d.get(m2, 0) + c * m[i]
        return Poly(self.vars, d)

    def truncate(self, max_degree: int) -> "Poly":
        return Poly(self.vars,
                    {m: c for m, c in self.terms.items() if sum(m) <= max_degree})

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.vars,
                    {m: c for m, c in self.terms.items() if sum(m) == degree})

    def substitute(self, images: Mapping[str, "Poly"], max_degree=None) -> "Poly":
        """Ring homomorphism sending each variable to its image.

        Unlisted variables map to the same-named variable of the image
        ring. All images must share one ambient ring.
        """
        some = next(iter(images.values()), None)
        tgt_vars = some.vars if some is not None else self.vars
        imgs = {}
        for v in self.vars:
            if v in images:
                imgs[v] = images[v]
            else:
                imgs[v] = Poly.var(v, tgt_vars)
        out = Poly(tgt_vars)
        one = Poly.const(Fraction(1), tgt_vars)
        pow_cache = {v: [one] for v in self.vars}
        for m, c in self.terms.items():
            acc = Poly.const(c, tgt_vars)
            for v, e in zip(self.vars, m):
                cache = pow_cache[v]
                while len(cache) <= e:
                    nxt = cache[-1]._mul_poly(imgs[v], max_degree)
                    cache.append(nxt)
                acc = acc._mul_poly(cache[e], max_degree)
                if not acc:
                    break
            out = out + acc
        if max_degree is not None:
            out = out.truncate(max_degree)
        return out

    def eval(self, values: Mapping[str, object]):
        """Full evaluation at scalar values (all variables bound)."""
        acc = None
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t = t * values[v] ** e
            acc = t if acc is None else acc + t
        return acc if acc is not None else Fraction(0)

    def map_coefficients(self, fn, vars=None) -> "Poly":
        return Poly(vars if vars is not None else self.vars,
                    {m: fn(c) for m, c in self.terms.items()})

    # -- display

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}")
                for v, e in zip(self.vars, m) if e)
            cs = str(c)
            if isinstance(c, Poly) or ("+" in cs or ("-" in cs[1:])):
                cs = f"({cs})"
            if mono:
                parts.append(mono if cs == "1" else
                             f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    __repr__ = __str__


def poly_from_terms(vars, pairs: Iterable):
    return Poly(vars, dict(pairs))
