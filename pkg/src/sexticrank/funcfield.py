"""Univariate polynomials and rational functions over an exact field.

The coefficient field is passed as a class (``fractions.Fraction`` for
Q, :class:`~sexticrank.exactnum.QuadExt` for Q(sqrt(-3))); it only
needs exact ``+ - * /``, equality, and construction from small ints.
On top sit a text form ("(3/2)*t^2 - 1") and a parser for it, used by
the certificate files so that a saved point can be re-read and
re-checked from scratch.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exactnum import QuadExt

__all__ = [
    "Poly",
    "RatFunc",
    "poly_gcd",
    "parse_ratfunc",
    "parse_point",
    "lift_to_ext",
    "restrict_to_rational",
]


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` is the t^i coefficient."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs: Iterable, field=Fraction):
        cs = [self._conv(c, field) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def _conv(c, field):
        if isinstance(c, field):
            return c
        if isinstance(c, int) or (field is QuadExt and isinstance(c, Fraction)):
            return field(c)
        raise TypeError(f"cannot use {type(c).__name__} coefficient over {field.__name__}")

    @classmethod
    def constant(cls, c, field=Fraction) -> "Poly":
        return cls([c], field)

    @classmethod
    def variable(cls, field=Fraction) -> "Poly":
        return cls([0, 1], field)

    @classmethod
    def monomial(cls, c, k: int, field=Fraction) -> "Poly":
        return cls([0] * k + [c], field)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field(0)

    def root_multiplicity_at_zero(self) -> int:
        """Order of vanishing at t = 0 (0 for nonzero constant term)."""
        if not self.coeffs:
            raise ValueError("zero polynomial vanishes everywhere")
        k = 0
        while not self.coeffs[k]:
            k += 1
        return k

    # -- arithmetic ----------------------------------------------------------

    def _scalar(self, v):
        try:
            return self._conv(v, self.field)
        except TypeError:
            return None

    def __add__(self, other):
        if not isinstance(other, Poly):
            s = self._scalar(other)
            if s is None:
                return NotImplemented
            other = Poly.constant(s, self.field)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self + (-s)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self._scalar(other)
            if s is None:
                return NotImplemented
            return Poly([c * s for c in self.coeffs], self.field)
        if self.is_zero() or other.is_zero():
            return Poly([], self.field)
        out = [self.field(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = Poly([], self.field)
        r = self
        inv_lead = self.field(1) / other.leading()
        while not r.is_zero() and r.degree >= other.degree:
            k = r.degree - other.degree
            c = r.leading() * inv_lead
            term = Poly.monomial(c, k, self.field)
            q = q + term
            r = r - term * other
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation and substitution -----------------------------------------

    def evaluate(self, v):
        """Horner evaluation; v may live in any ring containing the field."""
        if not self.coeffs:
            return self.field(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * v + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        if not self.coeffs:
            return Poly([], self.field)
        acc = Poly.constant(self.coeffs[-1], self.field)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.field)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (self.field(1) / self.leading())

    def map_coeffs(self, fn, field=None) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], field or self.field)

    # -- plumbing --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self == Poly.constant(s, self.field)

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash((self.field.__name__, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if not c:
                continue
            sign, body = _coeff_term(c, k, var)
            if not parts:
                parts.append(body if sign > 0 else "-" + body)
            else:
                parts.append(("+ " if sign > 0 else "- ") + body)
        return " ".join(parts)


def _coeff_term(c, k: int, var: str):
    """Render one c*var^k term; returns (sign, body-without-sign)."""
    if isinstance(c, QuadExt) and not c.is_rational():
        # mixed element: keep its own signs inside parentheses
        s = str(c)
        if k == 0:
            return 1, f"({s})"
        return 1, f"({s})*{_varpow(var, k)}"
    cr = c.a if isinstance(c, QuadExt) else c
    sign = 1 if cr > 0 else -1
    a = abs(cr)
    if k == 0:
        return sign, str(a)
    vp = _varpow(var, k)
    if a == 1:
        return sign, vp
    if a.denominator == 1:
        return sign, f"{a}*{vp}"
    return sign, f"({a})*{vp}"


def _varpow(var: str, k: int) -> str:
    return var if k == 1 else f"{var}^{k}"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over the coefficient field."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


class RatFunc:
    """Quotient of two polynomials, kept in lowest terms with monic
    denominator so equality is literal equality."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        if den is None:
            den = Poly.constant(1, num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.field is not den.field:
            raise TypeError("numerator and denominator over different fields")
        g = poly_gcd(num, den)
        if not g.is_zero() and g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if lead != den.field(1):
            inv = den.field(1) / lead
            num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def constant(cls, c, field=Fraction) -> "RatFunc":
        return cls(Poly.constant(c, field))

    @classmethod
    def variable(cls, field=Fraction) -> "RatFunc":
        return cls(Poly.variable(field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        try:
            c = Poly._conv(other, self.field)
        except TypeError:
            return None
        return RatFunc.constant(c, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den, self.num) ** (-n)
        result = RatFunc.constant(1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and substitution -------------------------------------------

    def evaluate(self, v):
        """Value at a point; raises ZeroDivisionError at a pole."""
        dv = self.den.evaluate(v)
        if not dv:
            raise ZeroDivisionError(f"pole at {v}")
        return self.num.evaluate(v) / dv

    def substitute(self, inner: "RatFunc") -> "RatFunc":
        """The composite self(inner(t)), e.g. inner = 1/t or t^2."""
        n = _poly_at_ratfunc(self.num, inner)
        d = _poly_at_ratfunc(self.den, inner)
        return n / d

    # -- plumbing ----------------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        ns = self.num.to_str(var)
        ds = self.den.to_str(var)
        if " + " in ns or " - " in ns:  # multi-term numerator needs grouping
            ns = f"({ns})"
        return f"{ns}/({ds})"


def _poly_at_ratfunc(p: Poly, inner: RatFunc) -> RatFunc:
    acc = RatFunc.constant(0, inner.field)
    for c in reversed(p.coeffs):
        acc = acc * inner + _lift_value(c, inner.field)
    return acc


def _lift_value(c, field):
    if isinstance(c, field):
        return c
    if field is QuadExt:
        return QuadExt(c)
    if field is Fraction and isinstance(c, QuadExt):
        if not c.is_rational():
            raise TypeError(f"{c} is not rational")
        return c.a
    return field(c)


def lift_to_ext(f: RatFunc) -> RatFunc:
    """View a rational-coefficient function over Q(sqrt(-3))."""
    if f.field is QuadExt:
        return f
    return RatFunc(f.num.map_coeffs(QuadExt, QuadExt),
                   f.den.map_coeffs(QuadExt, QuadExt))


def restrict_to_rational(f: RatFunc) -> RatFunc:
    """Inverse of lift_to_ext; raises ValueError off the rational locus."""
    if f.field is Fraction:
        return f

    def down(c: QuadExt) -> Fraction:
        if not c.is_rational():
            raise ValueError(f"coefficient {c} is not rational")
        return c.a

    return RatFunc(f.num.map_coeffs(down, Fraction),
                   f.den.map_coeffs(down, Fraction))


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([-+*/^(),]))")


class _Parser:
    """Recursive descent over +, -, *, /, ^, parentheses, integers, one
    free variable, and the literal sqrt(-3)."""

    def __init__(self, text: str, var: Optional[str]):
        self.tokens = self._lex(text)
        self.pos = 0
        self.var = var

    @staticmethod
    def _lex(text: str):
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise ValueError(f"bad character at {text[pos:]!r}")
                break
            if m.group(1):
                tokens.append(("int", int(m.group(1))))
            elif m.group(2):
                tokens.append(("name", m.group(2)))
            else:
                tokens.append(("op", m.group(3)))
            pos = m.end()
        return tokens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ValueError(f"expected {op!r}, got {val!r}")

    def parse(self) -> RatFunc:
        v = self.expr()
        if self.pos != len(self.tokens):
            raise ValueError(f"trailing input from {self.tokens[self.pos]}")
        return v

    def expr(self) -> RatFunc:
        v = self.term()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "+-":
                self.pos += 1
                w = self.term()
                v = v + w if op == "+" else v - w
            else:
                return v

    def term(self) -> RatFunc:
        v = self.unary()
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "*/":
                self.pos += 1
                w = self.unary()
                v = v * w if op == "*" else v / w
            else:
                return v

    def unary(self) -> RatFunc:
        sign = 1
        while True:
            kind, op = self.peek()
            if kind == "op" and op in "+-":
                self.pos += 1
                if op == "-":
                    sign = -sign
            else:
                break
        v = self.power()
        return v if sign > 0 else -v

    def power(self) -> RatFunc:
        v = self.atom()
        kind, op = self.peek()
        if kind == "op" and op == "^":
            self.pos += 1
            n = self.exponent()
            v = v ** n
        return v

    def exponent(self) -> int:
        sign = 1
        kind, val = self.take()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val = self.take()
        if kind != "int":
            raise ValueError(f"expected integer exponent, got {val!r}")
        return sign * val

    def atom(self) -> RatFunc:
        kind, val = self.take()
        if kind == "int":
            return RatFunc.constant(QuadExt(val), QuadExt)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "name":
            if val == "sqrt":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                if not (arg.is_constant() and arg.constant_value() == QuadExt(-3)):
                    raise ValueError("only sqrt(-3) is supported")
                return RatFunc.constant(QuadExt(0, 1), QuadExt)
            if self.var is None:
                self.var = val
            if val != self.var:
                raise ValueError(f"unexpected name {val!r} (variable is {self.var!r})")
            return RatFunc.variable(QuadExt)
        raise ValueError(f"unexpected token {val!r}")


def parse_ratfunc(text: str, var: Optional[str] = None) -> RatFunc:
    """Parse the display form back into a RatFunc.

    The result is over Q when every coefficient is rational, otherwise
    over Q(sqrt(-3)).  The variable name is inferred from the first
    identifier unless pinned with ``var``.
    """
    f = _Parser(text, var).parse()
    try:
        return restrict_to_rational(f)
    except ValueError:
        return f


def parse_point(text: str, var: Optional[str] = None):
    """Parse "(x, y)" with x and y in the display grammar, or "O"."""
    s = text.strip()
    if s == "O":
        return None
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"point must look like (x, y), got {text!r}")
    body = s[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            x = parse_ratfunc(body[:i], var)
            y = parse_ratfunc(body[i + 1:], var)
            return x, y
    raise ValueError(f"no top-level comma in point {text!r}")
