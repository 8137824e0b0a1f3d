"""Exact coefficient domains: rationals, rational functions in one
parameter, and quadratic extension towers of depth at most 2.

All three kinds interoperate with ``int`` and ``fractions.Fraction``
through the usual arithmetic operators, so polynomial and linear-algebra
code can stay generic over the coefficient type.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Rat = Fraction

ScalarLike = Union[int, Fraction, "RationalFunc", "TowerElement"]


class ScalarError(ArithmeticError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarError(f"not a rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" with optional sign, exactly."""
    return Fraction(text.strip())


def scalar_str(x) -> str:
    """Canonical exact string form ("-3/4", "(b+1)/(b-2)", ...)."""
    if isinstance(x, int):
        return str(x)
    return str(x)


# ---------------------------------------------------------------------------
# univariate polynomials over Q, used as numerator/denominator of RationalFunc
# (coefficient tuples, constant term first, no trailing zeros)

def _utrim(c: Sequence[Fraction]) -> tuple:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _uadd(a, b):
    n = max(len(a), len(b))
    return _utrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(n)])


def _uneg(a):
    return tuple(-x for x in a)


def _umul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _utrim(out)


def _udivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and _utrim(a):
        a = list(_utrim(a))
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
    return _utrim(q), _utrim(a)


def _ugcd(a, b):
    while b:
        a, b = b, _udivmod(a, b)[1]
    if a:
        a = tuple(x / a[-1] for x in a)  # monic
    return a


def _ueval(a, v):
    acc = 0
    for c in reversed(a):
        acc = acc * v + c
    return acc


def _ustr(a, var):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            xs = var if k == 1 else f"{var}^{k}"
            if c == 1:
                parts.append(xs)
            elif c == -1:
                parts.append(f"-{xs}")
            else:
                parts.append(f"{c}*{xs}")
    out = parts[0]
    for p in parts[1:]:
        out += f"+{p}" if not p.startswith("-") else p
    return out


class RationalFunc:
    """Exact rational function in one named parameter over Q.

    Stored in lowest terms with monic denominator; equality is exact.
    """

    __slots__ = ("var", "num", "den")

    def __init__(self, num, den=(Fraction(1),), var="b"):
        num = _utrim([as_fraction(c) for c in num])
        den = _utrim([as_fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = _ugcd(num, den)
        if g and len(g) > 1:
            num = _udivmod(num, g)[0]
            den = _udivmod(den, g)[0]
        if den:
            lc = den[-1]
            if lc != 1:
                num = tuple(c / lc for c in num)
                den = tuple(c / lc for c in den)
        self.var = var
        self.num = num
        self.den = den

    @classmethod
    def const(cls, q, var="b") -> "RationalFunc":
        return cls((as_fraction(q),), var=var)

    @classmethod
    def gen(cls, var="b") -> "RationalFunc":
        return cls((Fraction(0), Fraction(1)), var=var)

    # -- predicates

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"not constant: {self}")
        return self.num[0] / self.den[0] if self.num else Fraction(0)

    # -- coercion

    def _coerce(self, other):
        if isinstance(other, RationalFunc):
            if other.var != self.var:
                raise ScalarError("parameter name mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunc.const(other, var=self.var)
        return None

    # -- arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunc(_uadd(_umul(self.num, o.den), _umul(o.num, self.den)),
                            _umul(self.den, o.den), var=self.var)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(_uneg(self.num), self.den, var=self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunc(_umul(self.num, o.num), _umul(self.den, o.den),
                            var=self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunc(_umul(self.num, o.den), _umul(self.den, o.num),
                            var=self.var)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (RationalFunc.const(1, var=self.var) / self) ** (-k)
        out = RationalFunc.const(1, var=self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.var, self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __call__(self, value):
        """Evaluate at an exact value (Fraction or another RationalFunc)."""
        n = _ueval(self.num, value) if self.num else (
            value * 0 if isinstance(value, RationalFunc) else Fraction(0))
        d = _ueval(self.den, value)
        if isinstance(value, (int, Fraction)):
            if d == 0:
                raise ZeroDivisionError(f"pole of {self} at {value}")
            return as_fraction(n) / as_fraction(d)
        return n / d

    def __str__(self):
        ns = _ustr(self.num, self.var)
        if self.den == (Fraction(1),):
            return ns
        return f"({ns})/({_ustr(self.den, self.var)})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# quadratic extension towers

class Tower:
    """A tower Q(g1, g2, ...) with each generator a declared square root.

    ``squares[i]`` is the square of generator ``i``, an element of the
    sub-tower of depth ``i`` (a Fraction at depth 0). Depth is capped at 2.
    """

    def __init__(self, names: Sequence[str] = (), squares: Sequence = ()):
        if len(names) != len(squares):
            raise ScalarError("names/squares length mismatch")
        if len(names) > 2:
            raise ScalarError("extension tower deeper than 2 not supported")
        self.names = tuple(names)
        self.squares = []
        for i, s in enumerate(squares):
            if isinstance(s, TowerElement):
                s = s.vec
            elif isinstance(s, (int, Fraction)):
                s = (as_fraction(s),)
            self.squares.append(_resize(s, 1 << i))

    @property
    def depth(self) -> int:
        return len(self.names)

    @property
    def dim(self) -> int:
        return 1 << self.depth

    def basis_labels(self):
        labels = ["1"]
        for name in self.names:
            labels = labels + [lb + "*" + name if lb != "1" else name
                               for lb in labels]
        return labels

    def element(self, coords) -> "TowerElement":
        return TowerElement(self, coords)

    def const(self, q) -> "TowerElement":
        return TowerElement(self, [as_fraction(q)] + [Fraction(0)] * (self.dim - 1))

    def generator(self, i: int) -> "TowerElement":
        v = [Fraction(0)] * self.dim
        v[1 << i] = Fraction(1)
        return TowerElement(self, v)

    def extend(self, name: str, square) -> "Tower":
        sq = square.vec if isinstance(square, TowerElement) else as_fraction(square)
        return Tower(self.names + (name,), list(self.squares) + [sq])

    def lift(self, elem: "TowerElement") -> "TowerElement":
        """Re-express an element of a sub-tower in this tower."""
        return TowerElement(self, _resize(elem.vec, self.dim))

    def compatible(self, other: "Tower") -> bool:
        d = min(self.depth, other.depth)
        return (self.names[:d] == other.names[:d]
                and self.squares[:d] == other.squares[:d])


def _resize(vec, n):
    vec = list(vec)
    if len(vec) > n:
        if any(vec[n:]):
            raise ScalarError("element does not fit in sub-tower")
        vec = vec[:n]
    return tuple(vec) + (Fraction(0),) * (n - len(vec))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _vmul(squares, a, b):
    """Multiply two coordinate vectors of length 2**d recursively."""
    n = len(a)
    if n == 1:
        return (a[0] * b[0],)
    h = n // 2
    s = squares[-1]  # square of the top generator, vector of length h
    sq = _resize(s, h)
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    sub = squares[:-1]
    lo = _vadd(_vmul(sub, a0, b0), _vmul(sub, _vmul(sub, a1, b1), sq))
    hi = _vadd(_vmul(sub, a0, b1), _vmul(sub, a1, b0))
    return lo + hi


def _vinv(squares, a):
    n = len(a)
    if n == 1:
        if not a[0]:
            raise ZeroDivisionError("division by zero tower element")
        return (1 / a[0],)
    h = n // 2
    sq = _resize(squares[-1], h)
    a0, a1 = a[:h], a[h:]
    sub = squares[:-1]
    norm = _vadd(_vmul(sub, a0, a0), _vneg(_vmul(sub, _vmul(sub, a1, a1), sq)))
    ninv = _vinv(sub, norm)
    return _vmul(sub, a0, ninv) + _vneg(_vmul(sub, a1, ninv))


class TowerElement:
    """Element of a quadratic extension tower, coordinates on the
    multiplicative basis of the declared generators."""

    __slots__ = ("tower", "vec")

    def __init__(self, tower: Tower, coords):
        self.tower = tower
        vec = [as_fraction(c) for c in coords]
        if len(vec) != tower.dim:
            raise ScalarError("coordinate length mismatch")
        self.vec = tuple(vec)

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            if other.tower is self.tower or (
                    other.tower.names == self.tower.names
                    and other.tower.squares == self.tower.squares):
                return other
            raise ScalarError("tower mismatch")
        if isinstance(other, (int, Fraction)):
            return self.tower.const(other)
        return None

    def _squares(self):
        return [self.tower.squares[i] for i in range(self.tower.depth)]

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, _vadd(self.vec, o.vec))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, _vneg(self.vec))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElement(self.tower, _vmul(self._squares(), self.vec, o.vec))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * TowerElement(self.tower, _vinv(self._squares(), o.vec))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        out = self.tower.const(1)
        base = self
        if k < 0:
            base = self.tower.const(1) / self
            k = -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.vec == o.vec

    def __hash__(self):
        return hash((self.tower.names, self.vec))

    def __bool__(self):
        return any(self.vec)

    def is_rational(self) -> bool:
        return not any(self.vec[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"not rational: {self}")
        return self.vec[0]

    def to_json(self):
        return {"basis": self.tower.basis_labels(),
                "coords": [str(c) for c in self.vec]}

    def __str__(self):
        labels = self.tower.basis_labels()
        parts = [f"{c}*{lb}" if lb != "1" else str(c)
                 for c, lb in zip(self.vec, labels) if c]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def rational_sqrt(q: Fraction):
    """Exact square root of a non-negative rational, or None."""
    q = as_fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    n, d = q.numerator, q.denominator
    rn = _isqrt_exact(n)
    rd = _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


def rational_nth_root(q: Fraction, n: int):
    """Exact n-th root of a positive rational, or None."""
    q = as_fraction(q)
    if q <= 0 or n <= 0:
        return None
    num, den = q.numerator, q.denominator
    rn = _iroot_exact(num, n)
    rd = _iroot_exact(den, n)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _iroot_exact(m: int, n: int):
    if m == 1:
        return 1
    lo, hi = 1, m
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** n
        if p == m:
            return mid
        if p < m:
            lo = mid + 1
        else:
            hi = mid - 1
    return None
