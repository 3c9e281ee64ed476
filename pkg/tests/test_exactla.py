from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import fraction_rank
from rbsystems.errors import InputError, PreconditionError
from rbsystems.exactla import (GF, QQ, Fp, array, format_scalar, identity, inverse, mat_rank,
                               mpq, nullspace, parse_rational, solve_affine, zeros)


small = st.integers(-4, 4)
rationals = st.builds(lambda n, d: mpq(n, d), st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, elems=rationals):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return np.array([[draw(elems) for _ in range(c)] for _ in range(r)], dtype=object)


def test_rank_examples():
    assert mat_rank(identity(2)) == 2
    assert mat_rank(zeros((2, 2))) == 0
    assert mat_rank(array([[1, 2], [2, 4]])) == 1


def test_solve_examples():
    sol = solve_affine(identity(2), array([3, 5]))
    assert list(sol.particular) == [3, 5]
    assert sol.kernel == []

    sol = solve_affine(zeros((2, 2)), array([0, 0]))
    assert list(sol.particular) == [0, 0]
    assert len(sol.kernel) == 2

    sol = solve_affine(array([[1, 1], [2, 2]]), array([1, 3]))
    assert not sol.consistent


def test_solve_dimension_mismatch():
    with pytest.raises(InputError):
        solve_affine(identity(2), array([1, 2, 3]))


def test_mixed_fields_rejected():
    M = np.array([[Fp(1, 3), mpq(1, 2)]], dtype=object)
    with pytest.raises(InputError):
        mat_rank(M)
    M = np.array([[Fp(1, 3), Fp(1, 5)]], dtype=object)
    with pytest.raises(InputError):
        mat_rank(M)


def test_parse_rational():
    assert parse_rational("3/6") == mpq(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(7) == 7
    for bad in ("1/0", "x", "1.5", 1.5, True, ""):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_format_scalar():
    assert format_scalar(mpq(2, 4)) == "1/2"
    assert format_scalar(mpq(-6, 3)) == "-2"
    assert format_scalar(mpq(0)) == "0"
    assert format_scalar(Fp(-1, 5)) == "4"


def test_prime_field():
    F = GF(7)
    assert F("1/2") * 2 == 1
    assert F(-1) == 6
    with pytest.raises(InputError):
        GF(6)
    with pytest.raises(InputError):
        GF(3)("1/3")
    # rank depends on the characteristic
    M = array([[1, 1], [1, -1]])
    assert mat_rank(M) == 2
    assert mat_rank(array([[1, 1], [1, -1]], GF(2))) == 1


def test_inverse():
    M = array([[2, 1], [1, 1]])
    assert np.all(M.dot(inverse(M)) == identity(2))
    with pytest.raises(PreconditionError):
        inverse(array([[1, 2], [2, 4]]))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_fraction_oracle(M):
    assert mat_rank(M) == fraction_rank(M.tolist())


@settings(max_examples=150, deadline=None)
@given(matrices(), st.data())
def test_solution_and_kernel(M, data):
    b = np.array([data.draw(rationals) for _ in range(M.shape[0])], dtype=object)
    sol = solve_affine(M, b)
    for k in sol.kernel:
        assert all(x == 0 for x in M.dot(k))
    assert mat_rank(M) + len(sol.kernel) == M.shape[1]
    if sol.consistent:
        assert all(x == 0 for x in M.dot(sol.particular) - b)
    else:
        # inconsistent exactly when b raises the rank
        assert mat_rank(np.column_stack([M, b])) == mat_rank(M) + 1


@settings(max_examples=100, deadline=None)
@given(matrices(elems=st.integers(0, 4)))
def test_prime_field_kernel(M):
    F = GF(5)
    M = np.vectorize(F, otypes=[object])(M)
    ker = nullspace(M)
    assert mat_rank(M) + len(ker) == M.shape[1]
    for k in ker:
        assert all(x == 0 for x in M.dot(k))


big = st.integers(-(2 ** 128), 2 ** 128)
big_rationals = st.builds(lambda n, d: mpq(n, d), big, st.integers(1, 2 ** 128))


@given(big_rationals, big_rationals)
def test_rational_arithmetic_exact(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a
    assert parse_rational(format_scalar(a)) == a


@given(st.integers(), st.integers(1, 10 ** 6))
def test_normalized(n, d):
    q = QQ(f"{n}/{d}")
    g = Fraction(n, d)
    assert (int(q.numerator), int(q.denominator)) == (g.numerator, g.denominator)
