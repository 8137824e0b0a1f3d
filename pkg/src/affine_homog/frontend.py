"""Surface equation front end.

Parses implicit defining equations over W,X,Y,Z (explicit '*', '^' with
rational or 'alpha' exponents, exp and log), and Taylor-expands them at a
basepoint into a graph-form jet w = F(x,y,z) by Newton iteration on jets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .jets import Jet
from .poly import Poly
from .scalars import RationalFunc, parse_rational, rational_nth_root

AMBIENT = ("W", "X", "Y", "Z")
GRAPH_VARS = ("x", "y", "z")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


class DomainError(ValueError):
    pass


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Const(Node):
    value: Fraction


@dataclass(frozen=True)
class Param(Node):
    name: str = "alpha"


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Node  # Const or Param


@dataclass(frozen=True)
class Exp(Node):
    arg: Node


@dataclass(frozen=True)
class Log(Node):
    arg: Node


# -- tokenizer / recursive descent -------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(alpha|exp|log)|([WXYZ])|([-+*^()=]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ParseError(f"unexpected character {text[pos]!r}", pos)
                break
            kind = ("num" if m.group(1) else "word" if m.group(2)
                    else "var" if m.group(3) else "op")
            self.tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self, value=None):
        kind, tok, pos = self.peek()
        if tok is None or (value is not None and tok != value):
            raise ParseError(f"expected {value!r}" if value else "unexpected end",
                             pos)
        self.i += 1
        return kind, tok, pos

    def parse_equation(self) -> Tuple[Node, Node]:
        lhs = self.parse_expr()
        self.take("=")
        rhs = self.parse_expr()
        kind, tok, pos = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok!r}", pos)
        return lhs, rhs

    def parse_expr(self) -> Node:
        kind, tok, pos = self.peek()
        negate = False
        if tok == "-":
            self.take()
            negate = True
        elif tok == "+":
            self.take()
        node = self.parse_term()
        if negate:
            node = Sub(Const(Fraction(0)), node)
        while True:
            kind, tok, pos = self.peek()
            if tok == "+":
                self.take()
                node = Add(node, self.parse_term())
            elif tok == "-":
                self.take()
                node = Sub(node, self.parse_term())
            else:
                return node

    def parse_term(self) -> Node:
        node = self.parse_factor()
        while True:
            kind, tok, pos = self.peek()
            if tok == "*":
                self.take()
                node = Mul(node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> Node:
        node = self.parse_atom()
        kind, tok, pos = self.peek()
        if tok == "^":
            self.take()
            node = Pow(node, self.parse_exponent())
        return node

    def parse_exponent(self) -> Node:
        kind, tok, pos = self.peek()
        if tok == "(":
            self.take()
            e = self.parse_exponent()
            self.take(")")
            return e
        neg = False
        if tok == "-":
            self.take()
            neg = True
            kind, tok, pos = self.peek()
        if kind == "num":
            self.take()
            num = parse_rational(tok)
            kind2, tok2, _ = self.peek()
            if tok2 == "/":
                raise ParseError("malformed rational exponent", pos)
            return Const(-num if neg else num)
        if tok == "alpha":
            self.take()
            if neg:
                raise ParseError("negated parameter exponent not supported", pos)
            return Param()
        raise ParseError("expected rational or alpha exponent", pos)

    def parse_atom(self) -> Node:
        kind, tok, pos = self.peek()
        if kind == "var":
            self.take()
            return Var(tok)
        if kind == "num":
            self.take()
            node = Const(parse_rational(tok))
            return node
        if tok == "alpha":
            self.take()
            return Param()
        if tok in ("exp", "log"):
            self.take()
            self.take("(")
            arg = self.parse_expr()
            self.take(")")
            return Exp(arg) if tok == "exp" else Log(arg)
        if tok == "(":
            self.take()
            node = self.parse_expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected token {tok!r}" if tok else "unexpected end",
                         pos)


def parse_expression(text: str) -> Node:
    p = _Parser(text)
    node = p.parse_expr()
    kind, tok, pos = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok!r}", pos)
    return node


# -- SurfaceSpec --------------------------------------------------------------

@dataclass
class SurfaceSpec:
    lhs: Node
    rhs: Node
    basepoint: Tuple[Fraction, Fraction, Fraction, Fraction]  # (W,X,Y,Z)
    alpha: Optional[Fraction] = None
    text: str = ""

    def residual_node(self) -> Node:
        return Sub(self.lhs, self.rhs)


def parse_surface(text: str, basepoint, alpha=None) -> SurfaceSpec:
    """Parse an implicit equation and validate the basepoint on it."""
    lhs, rhs = _Parser(text).parse_equation()
    bp = tuple(parse_rational(str(c)) if not isinstance(c, Fraction) else c
               for c in basepoint)
    if len(bp) != 4:
        raise ValueError("basepoint must have four components (W,X,Y,Z)")
    if alpha is not None and not isinstance(alpha, (Fraction, RationalFunc)):
        alpha = parse_rational(str(alpha))
    if _uses_param(lhs) or _uses_param(rhs):
        if alpha is None:
            raise ValueError("equation uses alpha but no binding was given")
    spec = SurfaceSpec(lhs, rhs, bp, alpha, text)
    val = eval_at_point(spec.residual_node(), dict(zip(AMBIENT, bp)), alpha)
    if val != 0:
        raise ValueError(f"basepoint does not satisfy the equation (residual {val})")
    return spec


def _uses_param(node: Node) -> bool:
    if isinstance(node, Param):
        return True
    for f in getattr(node, "__dataclass_fields__", {}):
        v = getattr(node, f)
        if isinstance(v, Node) and _uses_param(v):
            return True
    return False


# -- exact pointwise evaluation ------------------------------------------------

def eval_at_point(node: Node, values: Dict[str, Fraction], alpha=None) -> Fraction:
    if isinstance(node, Var):
        return values[node.name]
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Param):
        if alpha is None:
            raise ValueError("unbound parameter alpha")
        return alpha
    if isinstance(node, Add):
        return eval_at_point(node.left, values, alpha) + eval_at_point(node.right, values, alpha)
    if isinstance(node, Sub):
        return eval_at_point(node.left, values, alpha) - eval_at_point(node.right, values, alpha)
    if isinstance(node, Mul):
        return eval_at_point(node.left, values, alpha) * eval_at_point(node.right, values, alpha)
    if isinstance(node, Pow):
        base = eval_at_point(node.base, values, alpha)
        e = _exponent_value(node.exponent, alpha)
        if e is None:
            raise ValueError("unbound parameter alpha")
        return _rational_pow(base, e)
    if isinstance(node, Exp):
        a = eval_at_point(node.arg, values, alpha)
        if a != 0:
            raise DomainError("exp only has an exact value at 0")
        return Fraction(1)
    if isinstance(node, Log):
        a = eval_at_point(node.arg, values, alpha)
        if a != 1:
            raise DomainError("log only has an exact value at 1")
        return Fraction(0)
    raise TypeError(f"unknown node {node!r}")


def _rational_pow(base: Fraction, e: Fraction) -> Fraction:
    if e.denominator == 1:
        k = e.numerator
        if k < 0 and base == 0:
            raise DomainError("zero to a negative power")
        return base ** k
    if base <= 0:
        raise DomainError(f"non-integer power of non-positive base {base}")
    root = rational_nth_root(base, e.denominator)
    if root is None:
        raise DomainError(f"{base}^(1/{e.denominator}) is irrational")
    return root ** e.numerator


# -- Taylor primitives ----------------------------------------------------------

def taylor_primitive(fn: str, center: Fraction, order: int,
                     exponent: Optional[Fraction] = None) -> Jet:
    """Univariate jet of fn(center + u) in the variable u.

    exp requires center 0 and log requires center 1 so the coefficients
    stay rational; pow requires an exact rational value at the center.
    """
    u = Poly.var("u", ("u",))
    if fn == "exp":
        if center != 0:
            raise DomainError("exp expansion needs center 0 for exact coefficients")
        terms = {}
        fact = Fraction(1)
        for k in range(order + 1):
            terms[(k,)] = Fraction(1) / fact
            fact *= k + 1
        return Jet(Poly(("u",), terms), order)
    if fn == "log":
        if center <= 0:
            raise DomainError("log expansion needs a positive center")
        if center != 1:
            raise DomainError("log expansion needs center 1 for exact coefficients")
        terms = {}
        for k in range(1, order + 1):
            terms[(k,)] = Fraction((-1) ** (k + 1), k)
        return Jet(Poly(("u",), terms), order)
    if fn == "pow":
        if exponent is None:
            raise ValueError("pow requires an exponent")
        if exponent.denominator == 1:
            if exponent.numerator >= 0:
                base = Jet(Poly.const(center, ("u",)) + u, order)
                return base ** exponent.numerator
            if center == 0:
                raise DomainError("negative power at center 0")
        elif center <= 0:
            raise DomainError("non-integer power needs a positive center")
        c_pow = _rational_pow(center, exponent)
        # binomial series: sum_k binom(e,k) center^(e-k) u^k
        terms = {(0,): c_pow}
        coeff = c_pow
        for k in range(1, order + 1):
            coeff = coeff * (exponent - (k - 1)) / k / center
            terms[(k,)] = coeff
        return Jet(Poly(("u",), terms), order)
    raise ValueError(f"unknown primitive {fn!r}")


# -- jet evaluation of an AST -----------------------------------------------------

def _compose_primitive(fn: str, arg: Jet, order: int,
                       exponent: Optional[Fraction] = None) -> Jet:
    center = arg.poly.constant_term()
    if not isinstance(center, Fraction):
        raise DomainError("primitive center must be rational")
    series = taylor_primitive(fn, center, order, exponent)
    delta = arg - Jet.const(center, arg.order, arg.vars)
    # delta has zero constant term, so powers gain degree and the sum is finite
    out = Jet.const(series.poly.coefficient((0,)), order, arg.vars)
    p = Jet.const(Fraction(1), order, arg.vars)
    for k in range(1, order + 1):
        p = p * delta
        if p.is_zero():
            break
        c = series.poly.coefficient((k,))
        if c:
            out = out + p * c
    return out


# -- AST derivative (for Newton) ---------------------------------------------------

def ast_partial(node: Node, var: str) -> Node:
    zero = Const(Fraction(0))
    if isinstance(node, Var):
        return Const(Fraction(1)) if node.name == var else zero
    if isinstance(node, (Const, Param)):
        return zero
    if isinstance(node, Add):
        return Add(ast_partial(node.left, var), ast_partial(node.right, var))
    if isinstance(node, Sub):
        return Sub(ast_partial(node.left, var), ast_partial(node.right, var))
    if isinstance(node, Mul):
        return Add(Mul(ast_partial(node.left, var), node.right),
                   Mul(node.left, ast_partial(node.right, var)))
    if isinstance(node, Pow):
        e = node.exponent
        em1 = (Const(e.value - 1) if isinstance(e, Const)
               else Sub(Param(), Const(Fraction(1))))
        scale = Const(e.value) if isinstance(e, Const) else Param()
        return Mul(Mul(scale, Pow(node.base, em1)),
                   ast_partial(node.base, var))
    if isinstance(node, Exp):
        return Mul(node, ast_partial(node.arg, var))
    if isinstance(node, Log):
        return Mul(Pow(node.arg, Const(Fraction(-1))), ast_partial(node.arg, var))
    raise TypeError(f"unknown node {node!r}")


# A Param exponent minus one is not Const; eval handles Sub(Param, Const) only
# through generic evaluation, so patch Pow to accept such exponents lazily.

def _exponent_value(e: Node, alpha):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Param):
        return alpha
    if isinstance(e, Sub) and isinstance(e.left, Param) and isinstance(e.right, Const):
        return (alpha - e.right.value) if alpha is not None else None
    raise ValueError(f"unsupported exponent {e!r}")


# -- graph expansion -----------------------------------------------------------------

def expand_graph(spec: SurfaceSpec, order: int) -> Jet:
    """Solve the implicit equation for W near the basepoint.

    Returns the jet w(x,y,z) of the graph offset, zero constant term,
    where (x,y,z) are offsets of (X,Y,Z) and w the offset of W. Newton
    iteration on jets doubles the valid order each step.
    """
    g = spec.residual_node()
    gw = ast_partial(g, "W")
    w0, x0, y0, z0 = spec.basepoint
    slope = eval_at_point(gw, dict(zip(AMBIENT, spec.basepoint)), spec.alpha)
    if slope == 0:
        raise DomainError("cannot solve for W at the basepoint "
                          "(implicit function condition fails)")

    def images(w_jet: Jet, n: int) -> Dict[str, Jet]:
        return {
            "W": Jet(w_jet.poly + Poly.const(w0, GRAPH_VARS), n),
            "X": Jet(Poly.const(x0, GRAPH_VARS) + Poly.var("x", GRAPH_VARS), n),
            "Y": Jet(Poly.const(y0, GRAPH_VARS) + Poly.var("y", GRAPH_VARS), n),
            "Z": Jet(Poly.const(z0, GRAPH_VARS) + Poly.var("z", GRAPH_VARS), n),
        }

    w = Jet.zero(0, GRAPH_VARS)
    valid = 0
    while valid < order:
        valid = min(2 * valid + 1, order)
        w = Jet(w.poly, valid)
        res = eval_jet(g, images(w, valid), valid, spec.alpha)
        dres = eval_jet(gw, images(w, valid), valid, spec.alpha)
        w = w - res * dres.inverse()
    w = Jet(w.poly, order)
    assert not w.poly.constant_term()
    return w


def eval_jet(node: Node, images: Dict[str, Jet], order: int,
             alpha: Optional[Fraction] = None) -> Jet:
    """Evaluate an AST on jets. ``images`` sends each ambient variable to
    a jet whose constant term is that basepoint coordinate. Exponents of
    the form alpha-1 (from differentiation) are accepted."""
    some = next(iter(images.values()))
    vars = some.vars

    def ev(n: Node) -> Jet:
        if isinstance(n, Var):
            return images[n.name]
        if isinstance(n, Const):
            return Jet.const(n.value, order, vars)
        if isinstance(n, Param):
            if alpha is None:
                raise ValueError("unbound parameter alpha")
            return Jet.const(alpha, order, vars)
        if isinstance(n, Add):
            return ev(n.left) + ev(n.right)
        if isinstance(n, Sub):
            return ev(n.left) - ev(n.right)
        if isinstance(n, Mul):
            return ev(n.left) * ev(n.right)
        if isinstance(n, Pow):
            e = _exponent_value(n.exponent, alpha)
            if e is None:
                raise ValueError("unbound parameter alpha")
            base = ev(n.base)
            if e.denominator == 1:
                return base ** e.numerator
            return _compose_primitive("pow", base, order, e)
        if isinstance(n, Exp):
            return _compose_primitive("exp", ev(n.arg), order)
        if isinstance(n, Log):
            return _compose_primitive("log", ev(n.arg), order)
        raise TypeError(f"unknown node {n!r}")

    return ev(node)


def graph_residual(spec: SurfaceSpec, w: Jet) -> Jet:
    """Substitute a graph jet back into the defining equation."""
    n = w.order
    w0, x0, y0, z0 = spec.basepoint
    images = {
        "W": Jet(w.poly + Poly.const(w0, w.vars), n),
        "X": Jet(Poly.const(x0, w.vars) + Poly.var("x", w.vars), n),
        "Y": Jet(Poly.const(y0, w.vars) + Poly.var("y", w.vars), n),
        "Z": Jet(Poly.const(z0, w.vars) + Poly.var("z", w.vars), n),
    }
    return eval_jet(spec.residual_node(), images, n, spec.alpha)
