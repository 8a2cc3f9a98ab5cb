import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_multiply, jordan_at, jordan_symbolic_sympy, lower_series_nilpotent
from parcubic.algebra import (
    Algebra,
    NotQuasiRegularError,
    central_ascending_series,
    change_basis,
    is_associative,
    is_jordan,
    is_nilpotent,
    l_operator,
    multiply,
    power,
    quasi_inverse_neg,
    quasi_inverse_series,
    quasi_regular_certificate,
    u_operator,
)
from parcubic.catalog import builtin, cayley, instances
from parcubic.exactnum import DimensionError, Matrix, PreconditionError, mat_det, random_invertible, random_vector

C2 = cayley(2).algebra
C3 = cayley(3).algebra
IDEMPOTENT = Algebra(1, {(1, 1, 1): 1})
NON_JORDAN = Algebra(2, {(1, 1, 2): 1, (2, 2, 1): 1})
CATALOG = [(f"{k}@{a}" if a else k, M) for k, a, M in instances()]
CATALOG_IDS = [name for name, _ in CATALOG]

rat = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def e(n, i):
    return tuple(Fraction(int(j == i - 1)) for j in range(n))


def test_storage_rejects_bad_indices():
    with pytest.raises(ValueError):
        Algebra(2, {(2, 1, 1): 1})
    with pytest.raises(ValueError):
        Algebra(2, {(1, 3, 1): 1})
    with pytest.raises(ValueError):
        Algebra(2, {(0, 1, 1): 1})


def test_zero_constants_are_dropped():
    assert Algebra(2, {(1, 1, 2): 0}) == Algebra.zero(2)


# -- product, powers, operators --------------------------------------------------


def test_multiply_examples():
    assert multiply(C2, e(2, 1), e(2, 1)) == e(2, 2)
    assert multiply(C3, e(3, 1), e(3, 2)) == e(3, 3)
    assert multiply(C3, e(3, 2), e(3, 1)) == e(3, 3)
    assert multiply(Algebra.zero(3), (1, 2, 3), (4, 5, 6)) == (0, 0, 0)
    with pytest.raises(DimensionError):
        multiply(C2, (1, 2, 3), (1, 2))


def test_power_examples():
    a, b, c = Fraction(2), Fraction(-3), Fraction(5, 7)
    x = (a, b, c)
    assert power(C3, x, 1) == x
    assert power(C3, x, 2) == (0, a * a, 2 * a * b)
    assert power(C3, x, 3) == (0, 0, a ** 3)
    assert power(C3, x, 4) == (0, 0, 0)
    with pytest.raises(ValueError):
        power(C3, x, 0)


def test_l_and_u_operator_examples():
    a, b = Fraction(3), Fraction(-1, 2)
    assert l_operator(C2, (a, b)) == Matrix([[0, 0], [a, 0]])
    assert l_operator(Algebra.zero(3), (1, 2, 3)) == Matrix.zeros(3, 3)
    t = Fraction(4, 3)
    assert l_operator(IDEMPOTENT, (t,)) == Matrix([[t]])
    assert u_operator(IDEMPOTENT, (t,)) == Matrix([[t * t]])
    assert u_operator(Algebra.zero(2), (1, 1)) == Matrix.zeros(2, 2)
    assert u_operator(C2, (a, b)) == Matrix.zeros(2, 2)


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_product_matches_direct_summation(name, M):
    A = M.algebra
    rng = random.Random(name)
    for _ in range(10):
        x, y = random_vector(rng, A.dim), random_vector(rng, A.dim)
        assert multiply(A, x, y) == brute_multiply(A.structure, A.dim, x, y)
        assert multiply(A, x, y) == multiply(A, y, x)
        assert l_operator(A, x).apply(y) == multiply(A, x, y)


@settings(max_examples=40, deadline=None)
@given(st.lists(rat, min_size=5, max_size=5), st.lists(rat, min_size=5, max_size=5), rat)
def test_product_is_bilinear(x, y, c):
    A = builtin("algebras5.7").algebra
    z = tuple(c * v for v in x)
    assert multiply(A, z, y) == tuple(c * v for v in multiply(A, x, y))
    xy = multiply(A, x, y)
    xx = multiply(A, x, x)
    s = tuple(a + b for a, b in zip(x, y))
    lhs = multiply(A, s, x)
    assert lhs == tuple(p + q for p, q in zip(xx, xy))


# -- Jordan identity -------------------------------------------------------------


def test_jordan_examples():
    assert is_jordan(C3)
    assert is_jordan(Algebra.zero(3))
    assert not is_jordan(NON_JORDAN)
    assert not jordan_symbolic_sympy(NON_JORDAN.structure, 2)


def test_non_jordan_example_fails_at_basis_pair():
    # x = e1, y = e2: x•(x²•y) = e1•e1 = e2 while x²•(x•y) = e2•0 = 0
    assert not jordan_at(NON_JORDAN.structure, 2, e(2, 1), e(2, 2))
    assert multiply(NON_JORDAN, e(2, 1), multiply(NON_JORDAN, e(2, 2), e(2, 2))) == e(2, 2)


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_jordan_agrees_with_symbolic_expansion(name, M):
    A = M.algebra
    assert is_jordan(A) == jordan_symbolic_sympy(A.structure, A.dim)


def _random_structure(rng, n, density):
    s = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            for d in range(1, n + 1):
                if rng.random() < density:
                    s[(a, b, d)] = Fraction(rng.randint(-2, 2))
    return s


@pytest.mark.parametrize("seed", range(15))
def test_jordan_on_random_algebras_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    A = Algebra(n, _random_structure(rng, n, 0.25))
    assert is_jordan(A) == jordan_symbolic_sympy(A.structure, A.dim)


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_jordan_commutator_vanishes_at_random_points(name, M):
    A = M.algebra
    rng = random.Random(f"comm-{name}")
    for _ in range(50):
        x = random_vector(rng, A.dim)
        L = l_operator(A, x)
        L2 = l_operator(A, multiply(A, x, x))
        assert L @ L2 == L2 @ L


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_fundamental_formula(name, M):
    A = M.algebra
    rng = random.Random(f"fund-{name}")
    for _ in range(5):
        x, y = random_vector(rng, A.dim), random_vector(rng, A.dim)
        Ux, Uy = u_operator(A, x), u_operator(A, y)
        assert u_operator(A, Ux.apply(y)) == Ux @ Uy @ Ux


def test_fundamental_formula_fails_off_jordan():
    rng = random.Random(3)
    bad = False
    for _ in range(10):
        x, y = random_vector(rng, 2), random_vector(rng, 2)
        Ux, Uy = u_operator(NON_JORDAN, x), u_operator(NON_JORDAN, y)
        bad |= u_operator(NON_JORDAN, Ux.apply(y)) != Ux @ Uy @ Ux
    assert bad


# -- associativity ---------------------------------------------------------------


def test_associativity_examples():
    assert is_associative(builtin("algebras4.1").algebra)
    assert not is_associative(builtin("algebras5.2").algebra)
    assert is_associative(Algebra.zero(3))


def test_associativity_flags_across_algebras5():
    flags = [is_associative(builtin(f"algebras5.{k}", 1).algebra) for k in range(1, 8)]
    assert flags == [True, False, False, False, False, False, True]


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_associative_implies_jordan(name, M):
    if is_associative(M.algebra):
        assert is_jordan(M.algebra)


@pytest.mark.parametrize("seed", range(15))
def test_associativity_matches_triple_products(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 3)
    A = Algebra(n, _random_structure(rng, n, 0.3))
    basis = [e(n, i) for i in range(1, n + 1)]
    direct = all(
        multiply(A, multiply(A, x, y), z) == multiply(A, x, multiply(A, y, z))
        for x in basis for y in basis for z in basis
    )
    assert is_associative(A) == direct


# -- central series and nilpotency -----------------------------------------------------


def _span_dim(vectors):
    from parcubic.exactnum import rank

    return rank(Matrix(list(vectors))) if vectors else 0


def test_central_series_examples():
    s = central_ascending_series(C3)
    assert s.terminal
    assert s.dims == (0, 1, 2, 3)
    assert s.subspaces[1] == (e(3, 3),)
    assert _span_dim(s.subspaces[2] + (e(3, 2), e(3, 3))) == 2
    z = central_ascending_series(Algebra.zero(2))
    assert z.terminal and z.dims == (0, 2)
    i = central_ascending_series(IDEMPOTENT)
    assert not i.terminal and i.dims == (0,)


def test_nilpotent_examples():
    for n in range(1, 8):
        assert is_nilpotent(cayley(n).algebra)
    assert not is_nilpotent(IDEMPOTENT)
    assert is_nilpotent(Algebra.zero(4))


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_nilpotency_agrees_with_lower_series(name, M):
    A = M.algebra
    assert is_nilpotent(A) == lower_series_nilpotent(A.structure, A.dim)


@pytest.mark.parametrize("seed", range(20))
def test_nilpotency_on_random_algebras(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 4)
    # strictly "upper" products are always nilpotent; add noise to get both outcomes
    s = {(a, b, d): Fraction(rng.randint(-2, 2)) for a in range(1, n + 1) for b in range(a, n + 1) for d in range(b + 1, n + 1) if rng.random() < 0.5}
    if rng.random() < 0.5:
        a = rng.randint(1, n)
        s[(a, a, a)] = Fraction(1)
    A = Algebra(n, s)
    assert is_nilpotent(A) == lower_series_nilpotent(A.structure, A.dim)


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_nilpotent_traces_vanish(name, M):
    A = M.algebra
    rng = random.Random(f"trace-{name}")
    for _ in range(5):
        x = random_vector(rng, A.dim)
        for r in range(1, A.dim + 2):
            L = l_operator(A, power(A, x, r))
            assert sum(L[i, i] for i in range(A.dim)) == 0


def test_series_invariant_under_basis_change():
    rng = random.Random(7)
    for key in ("algebras5.7", "bivariate", "cayley.4"):
        A = builtin(key).algebra
        B = random_invertible(rng, A.dim)
        assert central_ascending_series(change_basis(A, B)).dims == central_ascending_series(A).dims


# -- quasi-inverse ---------------------------------------------------------------


def test_quasi_regular_certificate_examples():
    assert quasi_regular_certificate(Algebra.zero(3), (1, 2, 3))[0] == 1
    assert quasi_regular_certificate(C2, (5, -7))[0] == 1
    t = Fraction(2, 3)
    assert quasi_regular_certificate(IDEMPOTENT, (t,))[0] == (1 + t) ** 2


def test_quasi_inverse_examples():
    assert quasi_inverse_neg(Algebra.zero(2), (3, 4)) == (3, 4)
    a, b = Fraction(3), Fraction(-2, 5)
    assert quasi_inverse_neg(C2, (a, b)) == (a, b - a * a)
    t = Fraction(5, 3)
    assert quasi_inverse_neg(IDEMPOTENT, (t,)) == (t / (1 + t),)
    with pytest.raises(NotQuasiRegularError):
        quasi_inverse_neg(IDEMPOTENT, (-1,))


def test_series_refuses_non_nilpotent():
    with pytest.raises(PreconditionError):
        quasi_inverse_series(IDEMPOTENT, (Fraction(1, 2),))


@pytest.mark.parametrize("name,M", CATALOG, ids=CATALOG_IDS)
def test_quasi_inverse_law_and_series(name, M):
    A = M.algebra
    rng = random.Random(f"qinv-{name}")
    for _ in range(25):
        x = random_vector(rng, A.dim)
        y = quasi_inverse_neg(A, x)
        assert multiply(A, x, y) == tuple(p - q for p, q in zip(x, y))
        assert y == quasi_inverse_series(A, x)


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(lambda t: t != -1))
def test_quasi_inverse_on_idempotent_line(t):
    (y,) = quasi_inverse_neg(IDEMPOTENT, (t,))
    assert t * y == t - y


def test_change_basis_round_trip():
    rng = random.Random(11)
    A = builtin("algebras5.6", 2).algebra
    B = random_invertible(rng, 5)
    A2 = change_basis(A, B)
    x, y = random_vector(rng, 5), random_vector(rng, 5)
    # B maps new coordinates to old ones
    assert B.apply(multiply(A2, x, y)) == multiply(A, B.apply(x), B.apply(y))
    assert is_jordan(A2) and is_nilpotent(A2)
    assert mat_det(B) != 0
