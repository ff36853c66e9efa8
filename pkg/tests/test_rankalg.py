import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sexticrank.rankalg import (
    CENSUS_TSV_HEADER,
    breakdown_to_json,
    census_rows,
    classification_consistency,
    classify,
    normalize_pair,
    rank_breakdown,
    sixth_power_free_values,
)

nonzero_rationals = st.fractions(
    min_value=-10**4, max_value=10**4, max_denominator=500
).filter(lambda x: x != 0)

small_nonzero = st.fractions(
    min_value=-60, max_value=60, max_denominator=20
).filter(lambda x: x != 0)


# -- frozen instances --------------------------------------------------------

KNOWN = [
    # (A, B, component tuple, rank, classify case)
    (1, 16, (1, 1, 0, 1), 3, "3"),
    (-27, 16, (1, 1, 0, 1), 3, "3"),
    (16, 1, (1, 0, 1, 1), 3, "3"),
    (1, -432, (1, 1, 0, 1), 3, "3"),
    (-27, -432, (1, 1, 0, 1), 3, "3"),
    (4, 4, (1, 0, 0, 1), 2, "2a"),
    (16, 27, (1, 0, 1, 0), 2, "2b"),
    (1, 1, (0, 1, 1, 0), 2, "2c"),
    (16, 8, (1, 0, 1, 0), 2, "2d"),
    (4, 1, (0, 0, 1, 0), 1, "1"),
    (2, 1, (0, 0, 0, 1), 1, "1"),
    (-3, 1, (0, 0, 1, 0), 1, "1"),
    (2, 3, (0, 0, 0, 0), 0, "0"),
    (-1, -1, (0, 0, 0, 0), 0, "0"),
    (Fraction(1, 64), Fraction(16, 729), (1, 1, 0, 1), 3, "3"),
]


@pytest.mark.parametrize("A,B,r,rank,case", KNOWN)
def test_known_pairs(A, B, r, rank, case):
    bd = rank_breakdown(A, B)
    assert bd.r == r
    assert bd.rank == rank
    cl = classify(A, B)
    assert cl.rank == rank
    assert cl.case == case


def test_reasons_carry_witnesses():
    bd = rank_breakdown(1, 16)
    c1 = bd.reasons[0]
    assert c1.k == 1 and c1.satisfied
    assert c1.cube_value == 64 and c1.cube_root == 4
    assert c1.square_value == 1 and c1.square_kind == "square" and c1.square_root == 1
    c3 = bd.reasons[2]
    assert not c3.satisfied and c3.cube_value == 16 and c3.cube_root is None


def test_descent_flavor_square_kind():
    # -3A a square but A not: the criterion holds through the twisted field
    bd = rank_breakdown(-3, 1)
    assert bd.r == (0, 0, 1, 0)
    assert bd.reasons[2].square_kind == "neg3_square"
    assert bd.reasons[2].square_root == 3


def test_rejects_zero():
    with pytest.raises(ValueError):
        rank_breakdown(0, 1)
    with pytest.raises(ValueError):
        classify(1, 0)


# -- normalization ------------------------------------------------------------

def test_normalize_pair_example():
    n = normalize_pair(16, 1)
    assert (n.first, n.second) == (1, 16)
    assert n.swapped
    assert n.A_bar == 16 and n.B_bar == 1


def test_normalize_pair_witnesses():
    n = normalize_pair(64, 11664)  # 11664 = 16 * 3^6
    assert n.A_bar == 1 and n.u == 2
    assert n.B_bar == 16 and n.v == 3
    assert 64 == n.A_bar * n.u ** 6
    assert 11664 == n.B_bar * n.v ** 6
    assert (n.first, n.second) == (1, 16) and not n.swapped


def test_normalize_pair_lex_tiebreak():
    assert (normalize_pair(7, 5).first, normalize_pair(7, 5).second) == (5, 7)
    assert not normalize_pair(5, 7).swapped
    n = normalize_pair(1, -27)  # both canonical classes are cube-and-squarish
    assert (n.first, n.second) == (-27, 1)


@given(nonzero_rationals, nonzero_rationals)
@settings(max_examples=40)
def test_normalize_pair_identities(A, B):
    n = normalize_pair(A, B)
    assert A == n.A_bar * n.u ** 6
    assert B == n.B_bar * n.v ** 6
    expected = (n.B_bar, n.A_bar) if n.swapped else (n.A_bar, n.B_bar)
    assert (n.first, n.second) == expected
    again = normalize_pair(n.first, n.second)
    assert (again.first, again.second) == (n.first, n.second)


# -- the two routes agree ------------------------------------------------------

@given(nonzero_rationals, nonzero_rationals)
@settings(max_examples=150)
def test_routes_agree_on_random_pairs(A, B):
    bd = rank_breakdown(A, B)
    cl = classify(A, B)
    assert bd.rank == cl.rank
    assert bd.rank <= 3
    assert sum(cl.components) == cl.rank


@given(nonzero_rationals, nonzero_rationals)
@settings(max_examples=100)
def test_swap_symmetry(A, B):
    fwd = rank_breakdown(A, B)
    rev = rank_breakdown(B, A)
    assert rev.r == fwd.r[::-1]
    assert rev.rank == fwd.rank


@given(small_nonzero, small_nonzero, small_nonzero, small_nonzero)
@settings(max_examples=60)
def test_sixth_power_invariance(A, B, u, v):
    base = rank_breakdown(A, B)
    scaled = rank_breakdown(A * u ** 6, B * v ** 6)
    assert scaled.r == base.r
    assert classify(A * u ** 6, B * v ** 6).rank == base.rank


# -- census ---------------------------------------------------------------------

def test_sixth_power_free_values():
    assert sixth_power_free_values(5) == [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]
    vals = sixth_power_free_values(100)
    assert 64 not in vals and -64 not in vals and 65 in vals
    assert len(vals) == 2 * (100 - 1)  # only 64 is excluded up to 100
    assert len(sixth_power_free_values(500)) == 986


def test_census_bound_1():
    res = classification_consistency(1)
    assert res.n_pairs == 4
    assert res.rank_histogram == {0: 1, 1: 2, 2: 1}
    assert res.disagreements == ()
    assert res.rank3_pairs == ()


def test_census_bound_30():
    res = classification_consistency(30)
    assert res.n_pairs == 3600
    assert res.rank_histogram == {0: 3481, 1: 102, 2: 13, 3: 4}
    assert res.disagreements == ()
    assert sorted(res.rank3_pairs) == [(-27, 16), (1, 16), (16, -27), (16, 1)]
    assert res.max_rank == 3


def test_census_rows_match_direct_calls():
    rows = list(census_rows(6))
    assert rows[0] == CENSUS_TSV_HEADER
    values = sixth_power_free_values(6)
    assert len(rows) == 1 + len(values) ** 2
    for line in rows[1:20]:
        cols = line.split("\t")
        A, B = int(cols[0]), int(cols[1])
        bd = rank_breakdown(A, B)
        cl = classify(A, B)
        assert cols[2] == str(A) and cols[3] == str(B)
        assert tuple(int(c) for c in cols[4:8]) == bd.r
        assert int(cols[8]) == bd.rank == cl.rank
        assert cols[9] == cl.case


def test_census_rows_deterministic_across_jobs():
    assert list(census_rows(8, jobs=1)) == list(census_rows(8, jobs=3))


def test_census_rows_full_route_equivalence():
    # every row of a small census, not just a prefix, against the slow route
    for line in list(census_rows(4))[1:]:
        cols = line.split("\t")
        A, B = int(cols[0]), int(cols[1])
        assert tuple(int(c) for c in cols[4:8]) == rank_breakdown(A, B).r
        assert cols[9] == classify(A, B).case


# -- JSON -------------------------------------------------------------------------

def test_breakdown_json_shape():
    d = breakdown_to_json(rank_breakdown(Fraction(1, 64), 16))
    assert json.dumps(d)  # serializable
    assert d["A"] == "1/64" and d["B"] == "16"
    assert d["A_class"] == 1 and d["B_class"] == 16
    assert d["r"] == [1, 1, 0, 1] and d["rank"] == 3
    assert len(d["reasons"]) == 4
    first = d["reasons"][0]
    assert first["k"] == 1 and first["satisfied"] is True
    assert first["cube"] == {"value": "1", "root": "1"}
    assert first["square"] == {"value": "1/64", "kind": "square", "root": "1/8"}
