"""Truncated power series (jets): a polynomial plus an inclusive
truncation order. Arithmetic auto-truncates to the minimum order of the
operands."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .poly import GREVLEX, Poly, XYZ
from .scalars import parse_rational, scalar_str


class Jet:
    __slots__ = ("poly", "order")

    def __init__(self, poly: Poly, order: int):
        if order < 0:
            raise ValueError("negative truncation order")
        self.poly = poly.truncate(order)
        self.order = order

    @classmethod
    def zero(cls, order: int, vars: Sequence[str] = XYZ) -> "Jet":
        return cls(Poly.zero(vars), order)

    @classmethod
    def const(cls, c, order: int, vars: Sequence[str] = XYZ) -> "Jet":
        return cls(Poly.const(c, vars), order)

    @property
    def vars(self):
        return self.poly.vars

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return bool(self.poly)

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        return Jet(self.poly._coerce(other), self.order)

    def __add__(self, other):
        o = self._coerce(other)
        return Jet(self.poly + o.poly, min(self.order, o.order))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.poly, self.order)

    def __sub__(self, other):
        o = self._coerce(other)
        return Jet(self.poly - o.poly, min(self.order, o.order))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet(self.poly.mul_truncated(other.poly, n), n)
        return Jet(self.poly * other, self.order)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Jet.const(Fraction(1), self.order, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        return Jet(self.poly.map_coefficients(lambda c: c / other), self.order)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.order == other.order and self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash((self.poly, self.order))

    def inverse(self) -> "Jet":
        """Multiplicative inverse; the constant term must be invertible."""
        c0 = self.poly.constant_term()
        if not c0:
            raise ZeroDivisionError("jet with zero constant term")
        one = Fraction(1)
        inv = Jet.const(one / c0, self.order, self.vars)
        # Newton: x -> x*(2 - a*x), doubles correct order each step
        k = 0
        while k < self.order:
            k = 2 * k + 1
            inv = inv * (2 - self * inv)
        return inv

    def sqrt(self) -> "Jet":
        """Square root with constant term 1 (used by series checks)."""
        if self.poly.constant_term() != 1:
            raise ValueError("jet sqrt requires constant term 1")
        r = Jet.const(Fraction(1), self.order, self.vars)
        k = 0
        while k < self.order:
            k = 2 * k + 1
            r = (r + self * r.inverse()) / Fraction(2)
        return r

    def partial(self, name: str) -> "Jet":
        return Jet(self.poly.partial(name), max(self.order - 1, 0))

    def truncate(self, order: int) -> "Jet":
        return Jet(self.poly, min(self.order, order))

    def homogeneous_part(self, degree: int) -> Poly:
        return self.poly.homogeneous_part(degree)

    def substitute(self, images: Mapping[str, Poly], order=None) -> "Jet":
        """Compose with polynomial images of the variables.

        Images with zero constant term keep truncation exact; the result
        order defaults to this jet's order.
        """
        n = self.order if order is None else order
        return Jet(self.poly.substitute(images, max_degree=n), n)

    # -- serialization (order, grevlex-sorted terms, exact strings)

    def to_json(self):
        terms = []
        for m, c in sorted(self.poly.terms.items(),
                           key=lambda t: GREVLEX.key(t[0])):
            if hasattr(c, "to_json"):
                cs = c.to_json()
            else:
                cs = scalar_str(c)
            terms.append({"m": list(m), "c": cs})
        return {"order": self.order, "vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data, tower=None) -> "Jet":
        vars = tuple(data.get("vars", XYZ))
        terms = {}
        for t in data["terms"]:
            c = t["c"]
            if isinstance(c, dict):
                if tower is None:
                    raise ValueError("tower element without a tower")
                c = tower.element([parse_rational(s) for s in c["coords"]])
            else:
                c = parse_rational(c)
            terms[tuple(t["m"])] = c
        return cls(Poly(vars, terms), data["order"])

    def __str__(self):
        return f"{self.poly} + O({self.order + 1})"

    __repr__ = __str__
