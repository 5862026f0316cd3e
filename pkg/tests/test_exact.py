from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import QQ, QQ_I

from liepi.exact import (
    EchelonBasis,
    format_exact,
    lincomb,
    matrix,
    nullspace,
    solve_exact,
    to_exact,
    trace,
)


def test_to_exact_accepts_strings_pairs_and_complex():
    assert to_exact("3/2") == QQ_I(QQ(3, 2), 0)
    assert to_exact(("1", "-1/3")) == QQ_I(1, QQ(-1, 3))
    assert to_exact(2 + 1j) == QQ_I(2, 1)
    assert to_exact(Fraction(5, 7)) == QQ_I(QQ(5, 7), 0)


def test_inexact_float_is_refused():
    with pytest.raises(ValueError):
        to_exact(0.1)


def test_format_round_trip():
    z = QQ_I(QQ(-7, 3), QQ(1, 2))
    assert to_exact(format_exact(z)) == z


def test_matrix_picks_real_domain_when_possible():
    assert matrix([[1, 0], [0, 1]]).domain == QQ
    assert matrix([[1j, 0], [0, 1]]).domain == QQ_I


def test_trace_and_lincomb():
    A = matrix([[1, 2], [3, 4]])
    B = matrix([[0, 1], [1, 0]])
    assert trace(A) == 5
    C = lincomb(["1/2", 2], [A, B])
    assert C.to_Matrix().tolist() == [[Fraction(1, 2), 3], [Fraction(7, 2), 2]]


def test_solve_and_nullspace():
    A = [[to_exact(1), to_exact(1)], [to_exact(1), to_exact(-1)]]
    assert solve_exact(A, [to_exact(2), to_exact(0)], 2) == (to_exact(1), to_exact(1))
    assert solve_exact([[to_exact(1), to_exact(1)], [to_exact(2), to_exact(2)]], [to_exact(1), to_exact(3)], 2) is None
    ns = nullspace([[to_exact(1), to_exact(1), to_exact(0)]], 3)
    assert len(ns) == 2


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_rank_matches_sympy(rows):
    from sympy import Matrix

    eb = EchelonBasis(QQ)
    for r in rows:
        eb.add({i: QQ(x) for i, x in enumerate(r) if x})
    assert len(eb) == Matrix(rows).rank()
    for r in rows:
        assert eb.contains({i: QQ(x) for i, x in enumerate(r) if x})
