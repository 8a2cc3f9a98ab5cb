import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cofactor_adjugate, leibniz_det
from parcubic.exactnum import (
    DimensionError,
    Matrix,
    format_rational,
    mat_adjugate_inverse,
    mat_det,
    mat_inverse,
    mat_kernel,
    parse_rational,
    random_invertible,
    rank,
    squarefree_part,
    sym_signature,
    to_rational,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def square_matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)
    )


# -- scalars -------------------------------------------------------------------


def test_parse_and_format_round_trip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("−2/4") == Fraction(-1, 2)
    assert parse_rational("-7") == -7
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("bad", ["", "1/0", "a/2", "1.5", "1/-2"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)


@given(rationals)
def test_format_parse_inverse(q):
    assert parse_rational(format_rational(q)) == q


# -- determinant -----------------------------------------------------------------


def test_det_examples():
    assert mat_det(Matrix.identity(3)) == 1
    assert mat_det(Matrix.antidiagonal(4)) == 1
    assert mat_det(Matrix.antidiagonal(5)) == 1
    # reversal permutation sign (-1)^{n(n-1)/2}
    for n in range(1, 8):
        assert mat_det(Matrix.antidiagonal(n)) == (-1) ** (n * (n - 1) // 2)


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        mat_det(Matrix([[1, 2, 3], [4, 5, 6]]))


@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_det_matches_permutation_expansion(rows):
    assert mat_det(Matrix(rows)) == leibniz_det(rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n),
)))
def test_det_multiplicative(pair):
    a, b = Matrix(pair[0]), Matrix(pair[1])
    assert mat_det(a @ b) == mat_det(a) * mat_det(b)


# -- adjugate / inverse ------------------------------------------------------------


def test_adjugate_examples():
    assert mat_adjugate_inverse(Matrix.identity(2)) == (Matrix.identity(2), 1)
    # the swap matrix is its own inverse, so adjugate = det * inverse = -swap
    swap = Matrix([[0, 1], [1, 0]])
    adj, d = mat_adjugate_inverse(swap)
    assert (adj, d) == (-swap, -1)
    assert adj * (1 / d) == swap
    assert mat_adjugate_inverse(Matrix([[1, 0], [2, 1]])) == (Matrix([[1, 0], [-2, 1]]), 1)


def test_adjugate_of_singular_matrix():
    m = Matrix([[1, 2], [2, 4]])
    adj, d = mat_adjugate_inverse(m)
    assert d == 0
    assert adj == Matrix([[4, -2], [-2, 1]])
    assert (adj @ m).is_zero()


@settings(max_examples=60, deadline=None)
@given(square_matrices(4))
def test_adjugate_identity_and_cofactor_oracle(rows):
    m = Matrix(rows)
    adj, d = mat_adjugate_inverse(m)
    assert adj @ m == Matrix.identity(m.rows) * d
    assert adj == Matrix(cofactor_adjugate(rows))


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        mat_inverse(Matrix([[1, 1], [1, 1]]))


# -- kernel --------------------------------------------------------------------------


def test_kernel_examples():
    assert mat_kernel(Matrix.zeros(2, 2)) == [(1, 0), (0, 1)]
    assert mat_kernel(Matrix.identity(3)) == []
    assert mat_kernel(Matrix([[1, 1]])) == [(-1, 1)]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_vectors_are_independent_null_vectors(r, c, data):
    rows = data.draw(st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r))
    m = Matrix(rows)
    ker = mat_kernel(m)
    for v in ker:
        assert all(x == 0 for x in m.apply(v))
    assert len(ker) == c - rank(m)
    if ker:
        assert rank(Matrix(ker)) == len(ker)


# -- signature --------------------------------------------------------------------------


def test_signature_examples():
    assert sym_signature(Matrix.identity(3)) == (3, 0, 0)
    assert sym_signature(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert sym_signature(Matrix.antidiagonal(5)) == (3, 2, 0)


def test_signature_rejects_non_symmetric():
    with pytest.raises(DimensionError):
        sym_signature(Matrix([[0, 1], [0, 0]]))


def _eig_signature(m):
    ev = np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in m]))
    tol = 1e-9
    return (int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum()))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_signature_matches_float_eigenvalues(rows):
    n = len(rows)
    sym = Matrix([[rows[i][j] + rows[j][i] for j in range(n)] for i in range(n)])
    assert sym_signature(sym) == _eig_signature(sym)


@pytest.mark.parametrize("seed", range(10))
def test_signature_congruence_invariant(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    base = Matrix.diagonal([rng.choice([-2, -1, 0, 1, 3]) for _ in range(n)])
    A = random_invertible(rng, n)
    assert sym_signature(A.T @ base @ A) == sym_signature(base)


def test_squarefree_part():
    assert squarefree_part(Fraction(12)) == (3, 2)
    assert squarefree_part(Fraction(-8, 9)) == (2, Fraction(2, 3))
    assert squarefree_part(Fraction(1, 4)) == (1, Fraction(1, 2))
    for q in [Fraction(18, 5), Fraction(-50), Fraction(7, 12)]:
        s, c = squarefree_part(q)
        assert s * c * c == abs(q)


def test_squarefree_part_large_argument_is_fast():
    p = 2 ** 61 - 1  # prime, far beyond the trial-division bound
    assert squarefree_part(Fraction(3 * p * p, 4)) == (3, Fraction(p, 2))
    s, c = squarefree_part(Fraction(p * 10 ** 6 + 7))
    assert s * c * c == p * 10 ** 6 + 7
