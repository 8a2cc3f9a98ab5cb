from fractions import Fraction

import pytest
import sympy as sp

from oracles import cayley_polynomial_sympy, hatc_coefficient, nablak_coefficient, to_sympy
from reference_data import CLASS3, CLASS4, class5_polynomial
from parcubic.algebra import is_associative, is_jordan, is_nilpotent, multiply
from parcubic.catalog import (
    CatalogError,
    builtin,
    cayley,
    entry,
    instances,
    list_catalog,
    nilpotent_keys,
)
from parcubic.exactnum import Matrix
from parcubic.metrised import skew_derivation_dim, validate
from parcubic.poly import parse_poly
from parcubic.surface import generate_surface

@pytest.mark.parametrize("k", range(1, 8))
@pytest.mark.parametrize("alpha", [Fraction(1), Fraction(2), Fraction(3, 7)])
def test_algebras5_surfaces_match_published_list(k, alpha):
    key = f"algebras5.{k}"
    M = builtin(key, alpha if k in (3, 6) else None)
    assert generate_surface(M, "hatC").F == class5_polynomial(k, alpha)


@pytest.mark.parametrize("key", sorted(CLASS4))
def test_algebras4_surfaces_match_published_list_after_permutation(key):
    text, perm = CLASS4[key]
    xs = sp.symbols("x1:5")
    published = sp.sympify(text.replace("^", "**"), locals={str(x): x for x in xs})
    renamed = published.subs({xs[i]: xs[perm[i] - 1] for i in range(4)}, simultaneous=True)
    F = to_sympy(generate_surface(builtin(key)).F, xs)
    assert sp.expand(renamed - F) == 0


@pytest.mark.parametrize("key", sorted(CLASS3))
def test_class3_surfaces(key):
    assert generate_surface(builtin(key)).F == parse_poly(CLASS3[key], 3)


def test_bivariate_surface():
    assert generate_surface(builtin("bivariate")).F == parse_poly("x1*x2 + x3*x4 - x1*x3^2", 4)


def test_bivariate_products_from_monomials():
    # basis (ts, t², t, t²s); multiply monomials modulo t³ and s²
    monomials = [(1, 1), (2, 0), (1, 0), (2, 1)]
    M = builtin("bivariate")
    for i, (a1, b1) in enumerate(monomials):
        for j, (a2, b2) in enumerate(monomials):
            a, b = a1 + a2, b1 + b2
            expect = [0] * 4
            if a < 3 and b < 2:
                expect[monomials.index((a, b))] = 1
            ei = tuple(int(k == i) for k in range(4))
            ej = tuple(int(k == j) for k in range(4))
            assert multiply(M.algebra, ei, ej) == tuple(expect)
            # γ = coefficient of t³s in the product
            assert M.gamma[i, j] == int((a, b) == (3, 1))


# -- Cayley family -----------------------------------------------------------------------


def test_cayley_examples():
    assert cayley(2).algebra.structure == {(1, 1, 2): 1}
    assert cayley(2).gamma == Matrix([[0, 1], [1, 0]])
    assert cayley(3).algebra.structure == {(1, 1, 2): 1, (1, 2, 3): 1}
    assert cayley(1).algebra.structure == {}
    assert cayley(1).gamma == Matrix([[1]])
    with pytest.raises(CatalogError):
        cayley(0)


@pytest.mark.parametrize("n", range(2, 7))
def test_cayley_hatC_matches_expansion(n):
    expr, xs = cayley_polynomial_sympy(n, hatc_coefficient)
    assert sp.expand(to_sympy(generate_surface(cayley(n), "hatC").F, xs) - expr) == 0


@pytest.mark.parametrize("n", range(2, 6))
def test_cayley_nablaK_matches_expansion(n):
    expr, xs = cayley_polynomial_sympy(n, nablak_coefficient)
    assert sp.expand(to_sympy(generate_surface(cayley(n), "nablaK").F, xs) - expr) == 0


def test_cayley_is_truncated_polynomial_ring():
    n = 5
    M = cayley(n)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            ea = tuple(int(k == a - 1) for k in range(n))
            eb = tuple(int(k == b - 1) for k in range(n))
            expect = tuple(int(k == a + b - 1) for k in range(n))
            assert multiply(M.algebra, ea, eb) == expect
            # γ(t^a, t^b) = coefficient of t^{n+1}
            assert M.gamma[a - 1, b - 1] == int(a + b == n + 1)


# -- keys and metadata -------------------------------------------------------------------


def test_builtin_key_errors():
    with pytest.raises(CatalogError):
        builtin("algebras5.8")
    with pytest.raises(CatalogError):
        builtin("algebras4.0")
    with pytest.raises(CatalogError):
        builtin("nonsense")
    with pytest.raises(CatalogError):
        builtin("algebras5.3")
    with pytest.raises(CatalogError):
        builtin("algebras5.6", 0)
    with pytest.raises(CatalogError):
        builtin("algebras5.6", Fraction(-1, 2))


def test_builtin_examples():
    a1 = builtin("algebras5.1").algebra.structure
    # column 1 switches on b and g only
    assert a1 == {(4, 4, 3): 1, (3, 4, 2): 1, (5, 5, 2): 1, (4, 5, 1): 1}
    c31 = builtin("class3.1")
    assert c31.algebra.structure == {(2, 2, 1): 1}
    assert c31.gamma[2, 2] == 1 and c31.gamma[0, 2] == c31.gamma[1, 2] == 0


def test_list_catalog_contents():
    keys = {e.key: e for e in list_catalog()}
    assert keys["algebras5.7"].derivation_dim == 0
    assert "cayley.n" in keys
    assert keys["algebras4.1"].associative
    assert keys["algebras5.3"].parametric and keys["algebras5.6"].parametric
    assert not keys["class3.1"].irreducible
    assert entry("cayley.4").dim == 4


@pytest.mark.parametrize("key", [k for k in nilpotent_keys()])
def test_published_flags_hold(key):
    meta = entry(key)
    alphas = (1, 2) if meta.parametric else (None,)
    for a in alphas:
        M = builtin(key, a)
        r = validate(M, scan_splits=False)
        assert r.jordan == meta.jordan and r.nilpotent == meta.nilpotent
        assert r.associative == meta.associative
        assert r.trace_form and r.ok
        if meta.derivation_dim is not None and a in (None, 1):
            assert skew_derivation_dim(M) == meta.derivation_dim


def test_instances_cover_parametric_defaults():
    names = [(k, a) for k, a, _ in instances()]
    assert ("algebras5.3", 1) in names and ("algebras5.3", 2) in names
    assert ("algebras5.6", 1) in names and ("algebras5.6", 2) in names
    assert len([k for k, _ in names if k.startswith("cayley.")]) == 6


def test_catalog_is_jordan_and_nilpotent():
    for _, _, M in instances():
        assert is_jordan(M.algebra) and is_nilpotent(M.algebra)
    assert [is_associative(builtin(f"algebras4.{k}").algebra) for k in (1, 2, 3)] == [True, True, True]
