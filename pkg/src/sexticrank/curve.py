"""Elliptic curves y^2 = x^3 + C(t) over Q(t) and Q(sqrt(-3))(t).

Covers the sextic-twist family C = A*t^6 + B, its subfamilies
C = s^k (A s^m + B), the chord-tangent group law, the order-6
automorphism coming from complex multiplication by cube roots of
unity, Galois conjugation over Q, and an exact Kodaira fiber analysis
feeding the Shioda-Tate bound on the geometric Mordell-Weil rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import OMEGA, QuadExt
from .funcfield import (
    Poly,
    RatFunc,
    lift_to_ext,
    poly_gcd,
    restrict_to_rational,
)

__all__ = [
    "CurvePoint",
    "FunctionFieldCurve",
    "FiberReport",
    "FiberSummary",
    "LEGAL_KM",
    "ZETA6",
]

#: primitive sixth root of unity -omega; substituting t -> ZETA6*t fixes
#: A*t^6 + B and generates the deck group of the degree-6 base change
ZETA6 = -OMEGA

#: the (k, m) pairs for which s^k (A s^m + B) gives a curve in the family
LEGAL_KM = frozenset(
    [(k, 1) for k in range(6)] + [(0, 2), (2, 2), (4, 2), (0, 3), (3, 3), (0, 6)]
)

_KODAIRA = {1: "II", 2: "IV", 3: "I0*", 4: "IV*", 5: "II*"}


class CurvePoint:
    """Affine point (x, y) with rational-function coordinates, or O."""

    __slots__ = ("x", "y")

    def __init__(self, x: Optional[RatFunc] = None, y: Optional[RatFunc] = None):
        if (x is None) != (y is None):
            raise ValueError("give both coordinates or neither")
        if x is not None:
            if isinstance(x, Poly):
                x = RatFunc(x)
            if isinstance(y, Poly):
                y = RatFunc(y)
            if x.field is not y.field:
                raise TypeError("coordinates over different fields")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("CurvePoint is immutable")

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "CurvePoint.infinity()"
        return f"CurvePoint({self.x!r}, {self.y!r})"

    def to_str(self, var: str = "t") -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x.to_str(var)}, {self.y.to_str(var)})"

    def __str__(self):
        return self.to_str()


O = CurvePoint.infinity()


@dataclass(frozen=True)
class FiberReport:
    """One Galois orbit of singular fibers."""

    place: str
    count: int
    v_C: int
    v_delta: int
    kodaira: str
    components_away: int  # fiber components not meeting the zero section


@dataclass(frozen=True)
class FiberSummary:
    fibers: tuple
    total_v_delta: int
    geometric_rank: int
    has_type_II: bool


class FunctionFieldCurve:
    """y^2 = x^3 + C(t) with C a nonzero rational function."""

    __slots__ = ("C", "var")

    def __init__(self, C: Union[Poly, RatFunc], var: str = "t"):
        if isinstance(C, Poly):
            C = RatFunc(C)
        if C.is_zero():
            raise ValueError("C must be nonzero")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("FunctionFieldCurve is immutable")

    @classmethod
    def sextic(cls, A, B) -> "FunctionFieldCurve":
        """The main family y^2 = x^3 + A*t^6 + B."""
        return cls.subfamily(A, B, 0, 6, var="t")

    @classmethod
    def subfamily(cls, A, B, k: int, m: int, var: str = "s") -> "FunctionFieldCurve":
        """y^2 = x^3 + s^k (A s^m + B) for a legal exponent pair."""
        A, B = Fraction(A), Fraction(B)
        if A == 0 or B == 0:
            raise ValueError("A and B must be nonzero")
        if (k, m) not in LEGAL_KM:
            raise ValueError(f"illegal exponent pair (k, m) = ({k}, {m})")
        coeffs = [Fraction(0)] * k + [B] + [Fraction(0)] * (m - 1) + [A]
        return cls(Poly(coeffs), var=var)

    # -- structure -----------------------------------------------------------

    @property
    def field(self):
        return self.C.field

    def __eq__(self, other):
        if not isinstance(other, FunctionFieldCurve):
            return NotImplemented
        return self.C == other.C

    def __hash__(self):
        return hash(self.C)

    def __repr__(self):
        return f"FunctionFieldCurve({self.C!r})"

    def __str__(self):
        v = self.var
        return f"y^2 = x^3 + {self.C.to_str(v)}"

    def discriminant(self) -> RatFunc:
        return -432 * self.C * self.C

    def lift(self) -> "FunctionFieldCurve":
        """The same curve viewed over Q(sqrt(-3))(t)."""
        if self.field is QuadExt:
            return self
        return FunctionFieldCurve(lift_to_ext(self.C), var=self.var)

    def lift_point(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(lift_to_ext(P.x), lift_to_ext(P.y))

    @staticmethod
    def restrict_point(P: CurvePoint) -> CurvePoint:
        """Rational form of a point; ValueError if truly irrational."""
        if P.is_infinity or P.x.field is Fraction:
            return P
        return CurvePoint(restrict_to_rational(P.x), restrict_to_rational(P.y))

    # -- membership and the group law ------------------------------------------

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        if P.x.field is not self.field:
            return False
        return P.y * P.y - P.x ** 3 - self.C == 0

    def require_on_curve(self, P: CurvePoint):
        if not self.contains(P):
            raise ValueError(f"point {P} is not on {self}")

    def negate(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 == -y2:
                return O
            # same point (y is determined by x up to sign), tangent line
            lam = (3 * x1 * x1) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return CurvePoint(x3, y3)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.negate(Q))

    def scalar_mul(self, n: int, P: CurvePoint) -> CurvePoint:
        if n < 0:
            return self.negate(self.scalar_mul(-n, P))
        acc = O
        base = P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    # -- extra structure: CM automorphism and Galois action ---------------------

    def tau(self, P: CurvePoint) -> CurvePoint:
        """The order-6 automorphism (x, y) -> (omega*x, -y).

        Needs the curve over Q(sqrt(-3)); tau^3 is negation and
        tau^2 is the CM action (x, y) -> (omega^2*x, y).
        """
        if self.field is not QuadExt:
            raise TypeError("tau lives over Q(sqrt(-3)); lift the curve first")
        if P.is_infinity:
            return P
        return CurvePoint(OMEGA * P.x, -P.y)

    def tau_power(self, j: int, P: CurvePoint) -> CurvePoint:
        for _ in range(j % 6):
            P = self.tau(P)
        return P

    def omega_point(self, P: CurvePoint) -> CurvePoint:
        """Multiplication by omega in the endomorphism ring: (x,y) -> (omega*x, y).

        Satisfies omega^2 + omega + 1 = 0, so P + omega(P) + omega^2(P) = O.
        """
        if self.field is not QuadExt:
            raise TypeError("omega_point lives over Q(sqrt(-3)); lift the curve first")
        if P.is_infinity:
            return P
        return CurvePoint(OMEGA * P.x, P.y)

    def galois_conj_point(self, P: CurvePoint) -> CurvePoint:
        """Coefficient-wise conjugation sqrt(-3) -> -sqrt(-3).

        Only meaningful when C itself has rational coefficients, which
        is checked.
        """
        if self.field is not QuadExt:
            raise TypeError("conjugation needs the curve over Q(sqrt(-3))")
        if _conj_ratfunc(self.C) != self.C:
            raise ValueError("curve is not defined over Q")
        if P.is_infinity:
            return P
        return CurvePoint(_conj_ratfunc(P.x), _conj_ratfunc(P.y))

    def point_substitute(self, P: CurvePoint, inner: RatFunc) -> CurvePoint:
        """Substitute the curve parameter in both coordinates.

        The result lies on this curve again whenever C(inner) = C, as
        for inner = ZETA6*t here; callers verify membership.
        """
        if P.is_infinity:
            return P
        return CurvePoint(P.x.substitute(inner), P.y.substitute(inner))

    # -- specialization at a fiber -----------------------------------------------

    def specialize(self, t0) -> "FunctionFieldCurve":
        """The fiber curve at t = t0, as a constant-C curve.

        Requires a smooth fiber (C(t0) nonzero and finite).  Evaluation
        of sections there is a group homomorphism, so nonvanishing of a
        specialized multiple proves nonvanishing upstairs.
        """
        c0 = self.C.evaluate(t0)
        if not c0:
            raise ValueError(f"fiber at {t0} is singular")
        return FunctionFieldCurve(Poly.constant(c0, self.field), var=self.var)

    def specialize_point(self, P: CurvePoint, t0) -> CurvePoint:
        """P evaluated at t = t0; ZeroDivisionError if a coordinate has
        a pole there (the section passes through O on that fiber)."""
        if P.is_infinity:
            return P
        x0 = P.x.evaluate(t0)
        y0 = P.y.evaluate(t0)
        return CurvePoint(RatFunc.constant(x0, self.field),
                          RatFunc.constant(y0, self.field))

    # -- fibers ---------------------------------------------------------------

    def fiber_report(self) -> FiberSummary:
        """Kodaira types of the singular fibers and the Shioda-Tate rank.

        Works for polynomial C of degree <= 6 whose roots have
        multiplicity <= 5 (all curves in the family).  Roots are never
        computed: only multiplicity counts matter, obtained from a gcd
        chain, so everything is exact over Q.
        """
        if not self.C.is_polynomial():
            raise ValueError("fiber analysis expects polynomial C")
        p = self.C.num
        if p.degree < 1:
            raise ValueError("constant C gives an isotrivial surface")
        if p.degree > 6:
            raise ValueError("degree of C exceeds 6")
        fibers = []
        k0 = p.root_multiplicity_at_zero()
        if k0:
            fibers.append(self._orbit(f"{self.var} = 0", 1, k0))
        profile = _multiplicity_profile(_strip_zero_root(p, k0))
        for mult in sorted(profile):
            count = profile[mult]
            desc = f"{count} root(s) of C/{self.var}^{k0}" if k0 else f"{count} root(s) of C"
            fibers.append(self._orbit(desc, count, mult))
        v_inf = 6 - p.degree
        if v_inf:
            fibers.append(self._orbit(f"{self.var} = infinity", 1, v_inf))
        total = sum(f.count * f.v_delta for f in fibers)
        drop = sum(f.count * f.components_away for f in fibers)
        return FiberSummary(
            fibers=tuple(fibers),
            total_v_delta=total,
            geometric_rank=8 - drop,
            has_type_II=any(f.kodaira == "II" for f in fibers),
        )

    @staticmethod
    def _orbit(place: str, count: int, v_C: int) -> FiberReport:
        if v_C not in _KODAIRA:
            raise ValueError(f"C vanishes to order {v_C}, outside the family")
        return FiberReport(
            place=place,
            count=count,
            v_C=v_C,
            v_delta=2 * v_C,
            kodaira=_KODAIRA[v_C],
            components_away=2 * (v_C - 1),
        )

    def expected_geometric_rank(self) -> int:
        return self.fiber_report().geometric_rank

    def format_point(self, P: CurvePoint) -> str:
        return P.to_str(self.var)


def _conj_ratfunc(f: RatFunc) -> RatFunc:
    conj = lambda c: c.conj()
    return RatFunc(f.num.map_coeffs(conj, QuadExt), f.den.map_coeffs(conj, QuadExt))


def _strip_zero_root(p: Poly, k0: int) -> Poly:
    if not k0:
        return p
    return Poly(p.coeffs[k0:], p.field)


def _multiplicity_profile(p: Poly) -> dict:
    """Distinct-root counts by multiplicity, over the algebraic closure.

    Uses the derivative gcd chain: deg g_j - deg g_{j+1} counts the
    distinct roots of multiplicity > j.
    """
    counts = []  # counts[j] = number of distinct roots of multiplicity >= j+1
    g = p.monic()
    while g.degree > 0:
        h = poly_gcd(g, g.derivative())
        counts.append(g.degree - h.degree)
        g = h
    profile = {}
    for j, c in enumerate(counts):
        exact = c - (counts[j + 1] if j + 1 < len(counts) else 0)
        if exact:
            profile[j + 1] = exact
    return profile
