from fractions import Fraction
from itertools import product

import pytest

from sexticrank.curve import (
    LEGAL_KM,
    ZETA6,
    CurvePoint,
    FunctionFieldCurve,
    O,
)
from sexticrank.exactnum import OMEGA, QuadExt
from sexticrank.funcfield import Poly, RatFunc, parse_point


def const_point(x, y, field=Fraction):
    return CurvePoint(RatFunc.constant(field(x), field),
                      RatFunc.constant(field(y), field))


def test_constructors():
    E = FunctionFieldCurve.sextic(1, 16)
    assert str(E) == "y^2 = x^3 + t^6 + 16"
    F = FunctionFieldCurve.subfamily(Fraction(3, 2), -5, 2, 1)
    assert str(F) == "y^2 = x^3 + (3/2)*s^3 - 5*s^2"
    with pytest.raises(ValueError):
        FunctionFieldCurve.subfamily(1, 1, 1, 2)
    with pytest.raises(ValueError):
        FunctionFieldCurve.subfamily(1, 1, 0, 4)
    with pytest.raises(ValueError):
        FunctionFieldCurve.subfamily(0, 1, 1, 1)
    assert (0, 6) in LEGAL_KM and len(LEGAL_KM) == 12


def test_membership():
    E = FunctionFieldCurve(Poly([0, 0, 1]))  # y^2 = x^3 + t^2
    P = CurvePoint(RatFunc.constant(0), RatFunc(Poly([0, 1])))
    assert E.contains(P)
    assert E.contains(O)
    Q = CurvePoint(RatFunc.constant(1), RatFunc(Poly([0, 1])))
    assert not E.contains(Q)
    with pytest.raises(ValueError):
        E.require_on_curve(Q)


# -- group law on a curve with known arithmetic -------------------------------

def test_group_law_frozen_values():
    # constant sections of y^2 = x^3 + 1: (2, 3) generates a cyclic group
    # of order 6 through (0, 1), (-1, 0), (0, -1), (2, -3)
    E = FunctionFieldCurve(Poly([1]))
    P = const_point(2, 3)
    assert E.contains(P)
    P2 = E.add(P, P)
    assert P2 == const_point(0, 1)
    P3 = E.add(P2, P)
    assert P3 == const_point(-1, 0)
    assert E.scalar_mul(4, P) == const_point(0, -1)
    assert E.scalar_mul(5, P) == const_point(2, -3)
    assert E.scalar_mul(6, P) == O
    for n in range(1, 6):
        assert E.scalar_mul(n, P) != O
    assert E.scalar_mul(-1, P) == E.negate(P)
    assert E.add(P, E.negate(P)) == O
    assert E.add(P, O) == P


def test_three_torsion_at_x_zero():
    # points with x = 0 are inflection points, hence 3-torsion
    E = FunctionFieldCurve(Poly([0, 0, 1]))
    P = CurvePoint(RatFunc.constant(0), RatFunc(Poly([0, 1])))
    assert E.add(P, P) == E.negate(P)
    assert E.scalar_mul(3, P) == O


def test_group_law_associativity_on_torsion():
    E = FunctionFieldCurve(Poly([1])).lift()
    P = const_point(2, 3, QuadExt)
    pts = [E.scalar_mul(n, P) for n in range(6)]
    pts += [E.tau(Q) for Q in pts if not Q.is_infinity]
    for a, b, c in product(pts[:7], repeat=3):
        assert E.add(E.add(a, b), c) == E.add(a, E.add(b, c))
    for a, b in product(pts, repeat=2):
        assert E.add(a, b) == E.add(b, a)


# -- CM automorphism and Galois action ----------------------------------------

def test_tau_structure():
    E = FunctionFieldCurve.sextic(1, 1).lift()
    # (-1, t^3) lies on y^2 = x^3 + t^6 + 1
    P = CurvePoint(RatFunc.constant(QuadExt(-1), QuadExt),
                   RatFunc(Poly([0, 0, 0, 1], QuadExt)))
    assert E.contains(P)
    assert E.contains(E.tau(P))
    assert E.tau_power(3, P) == E.negate(P)
    assert E.tau_power(6, P) == P
    # omega acts as an endomorphism killed by x^2 + x + 1
    W = E.omega_point(P)
    W2 = E.omega_point(W)
    assert E.add(E.add(P, W), W2) == O


def test_tau_needs_extension():
    E = FunctionFieldCurve.sextic(1, 1)
    P = CurvePoint(RatFunc.constant(Fraction(-1)), RatFunc(Poly([0, 0, 0, 1])))
    with pytest.raises(TypeError):
        E.tau(P)


def test_galois_conjugation():
    E = FunctionFieldCurve(Poly([1])).lift()
    P = const_point(2, 3, QuadExt)
    assert E.galois_conj_point(P) == P  # rational points are fixed
    Q = E.tau(P)
    assert E.galois_conj_point(Q) == E.tau_power(5, E.galois_conj_point(P))


def test_zeta6_substitution_fixes_sextic():
    E = FunctionFieldCurve.sextic(2, 3).lift()
    zt = RatFunc(Poly([QuadExt(0), ZETA6], QuadExt))
    assert E.C.substitute(zt) == E.C
    assert ZETA6 ** 6 == 1 and ZETA6 ** 2 == OMEGA ** 2 and ZETA6 ** 3 == -1


def test_point_substitute():
    E = FunctionFieldCurve(Poly([0, 0, 1]))  # y^2 = x^3 + t^2
    P = CurvePoint(RatFunc.constant(0), RatFunc(Poly([0, 1])))
    inv = RatFunc(Poly([1]), Poly([0, 1]))
    Q = E.point_substitute(P, inv)
    assert Q == CurvePoint(RatFunc.constant(0), inv)


# -- fiber analysis -------------------------------------------------------------

GENERIC_FIBERS = {
    # (k, m): (geometric rank, sorted Kodaira types with multiplicity)
    (0, 1): (0, ["II", "II*"]),
    (1, 1): (2, ["II", "II", "IV*"]),
    (2, 1): (2, ["I0*", "II", "IV"]),
    (3, 1): (2, ["I0*", "II", "IV"]),
    (4, 1): (2, ["II", "II", "IV*"]),
    (5, 1): (0, ["II", "II*"]),
    (0, 2): (2, ["II", "II", "IV*"]),
    (2, 2): (4, ["II", "II", "IV", "IV"]),
    (4, 2): (2, ["II", "II", "IV*"]),
    (0, 3): (4, ["I0*", "II", "II", "II"]),
    (3, 3): (4, ["I0*", "II", "II", "II"]),
    (0, 6): (8, ["II", "II", "II", "II", "II", "II"]),
}


@pytest.mark.parametrize("km", sorted(GENERIC_FIBERS))
def test_fiber_report_generic(km):
    k, m = km
    E = FunctionFieldCurve.subfamily(5, 7, k, m)
    rep = E.fiber_report()
    assert rep.total_v_delta == 12
    types = sorted(
        kod for f in rep.fibers for kod in [f.kodaira] * f.count)
    rank, expected_types = GENERIC_FIBERS[km]
    assert types == expected_types
    assert rep.geometric_rank == rank
    assert rep.has_type_II


def test_fiber_report_repeated_roots():
    # C = t^2 (t - 1): places of multiplicity 2, 1, and a pole order 3 at infinity
    E = FunctionFieldCurve(Poly([0, 0, -1, 1]))
    rep = E.fiber_report()
    assert rep.total_v_delta == 12
    assert sorted(f.kodaira for f in rep.fibers) == ["I0*", "II", "IV"]
    assert rep.geometric_rank == 2


def test_fiber_report_rejects_bad_input():
    with pytest.raises(ValueError):
        FunctionFieldCurve(Poly([1])).fiber_report()  # constant
    with pytest.raises(ValueError):
        FunctionFieldCurve(Poly([0] * 7 + [1])).fiber_report()  # degree 7
    with pytest.raises(ValueError):
        FunctionFieldCurve(Poly([0, 0, 0, 0, 0, 0, 1])).fiber_report()  # t^6: order 6 zero
    with pytest.raises(ValueError):
        FunctionFieldCurve(RatFunc(Poly([1]), Poly([0, 1]))).fiber_report()


def test_discriminant():
    E = FunctionFieldCurve.sextic(1, 1)
    assert E.discriminant() == -432 * (RatFunc(Poly([1, 0, 0, 0, 0, 0, 1])) ** 2)


# -- formatting -----------------------------------------------------------------

def test_point_formatting_round_trip():
    E = FunctionFieldCurve.subfamily(2, 1, 2, 1)
    P = CurvePoint(RatFunc(Poly([0, -3])), RatFunc(Poly([0, Fraction(1, 2), 1])))
    s = E.format_point(P)
    assert s == "(-3*s, s^2 + (1/2)*s)"
    x, y = parse_point(s)
    assert CurvePoint(x, y) == P
    assert E.format_point(O) == "O"
    assert parse_point("O") is None
