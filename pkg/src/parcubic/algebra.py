"""Commutative algebras over Q given by structure constants.

An element is a plain tuple of coordinates. Coordinates are normally
Fractions, but :func:`multiply` is written against any ring that supports
``+`` and ``*`` with Fractions, so it also runs on :class:`Polynomial`
coordinates; that is how the Jordan identity is decided symbolically.

Indices in the public structure map are 1-based; ``structure[(a, b, d)]``
is K^d_{ab} with ``a <= b``. Dense tables used internally are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Iterable, Mapping, Sequence

from .exactnum import (
    ONE,
    ZERO,
    DimensionError,
    Matrix,
    PreconditionError,
    mat_det,
    mat_inverse,
    mat_kernel,
    to_rational,
    unit_vector,
    vec,
    zero_vector,
)
from .poly import Polynomial


class NotQuasiRegularError(ArithmeticError):
    pass


class Algebra:
    """Finite-dimensional commutative algebra with structure constants K^d_{ab}."""

    def __init__(self, dim: int, structure: Mapping[tuple[int, int, int], object] | None = None):
        if not isinstance(dim, int) or dim < 0:
            raise ValueError(f"dimension must be a non-negative integer, got {dim!r}")
        clean: dict[tuple[int, int, int], Fraction] = {}
        for key, c in (structure or {}).items():
            a, b, d = key
            for idx in key:
                if not 1 <= idx <= dim:
                    raise DimensionError(f"index {idx} in {key} outside 1..{dim}")
            if a > b:
                raise ValueError(f"structure constant {key} must be stored with alpha <= beta")
            c = to_rational(c)
            if c:
                clean[(a, b, d)] = clean.get((a, b, d), ZERO) + c
        self.dim = dim
        self.structure = {k: v for k, v in sorted(clean.items()) if v}

    @classmethod
    def from_table(cls, table: Sequence[Sequence[Sequence]]) -> "Algebra":
        """Build from a dense 0-based table ``table[a][b][d]``; must be symmetric in a, b."""
        n = len(table)
        structure = {}
        for a in range(n):
            for b in range(n):
                for d in range(n):
                    c = to_rational(table[a][b][d])
                    if c != to_rational(table[b][a][d]):
                        raise ValueError("multiplication table is not commutative")
                    if a <= b and c:
                        structure[(a + 1, b + 1, d + 1)] = c
        return cls(n, structure)

    @classmethod
    def zero(cls, n: int) -> "Algebra":
        return cls(n, {})

    def constant(self, a: int, b: int, d: int) -> Fraction:
        """K^d_{ab} with 1-based indices in either order."""
        if a > b:
            a, b = b, a
        return self.structure.get((a, b, d), ZERO)

    @cached_property
    def table(self) -> tuple:
        n = self.dim
        t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (a, b, d), c in self.structure.items():
            t[a - 1][b - 1][d - 1] = c
            t[b - 1][a - 1][d - 1] = c
        return tuple(tuple(tuple(r) for r in plane) for plane in t)

    @cached_property
    def entries(self) -> tuple:
        """Non-zero (a, b, d, c) over both index orders, 0-based."""
        out = []
        for (a, b, d), c in self.structure.items():
            out.append((a - 1, b - 1, d - 1, c))
            if a != b:
                out.append((b - 1, a - 1, d - 1, c))
        return tuple(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.dim == other.dim and self.structure == other.structure

    def __hash__(self) -> int:
        return hash((self.dim, tuple(self.structure.items())))

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dim}, structure={self.structure!r})"


def _check_len(A: Algebra, x: Sequence) -> None:
    if len(x) != A.dim:
        raise DimensionError(f"element of length {len(x)} in an algebra of dimension {A.dim}")


def _zero_like(x: Sequence):
    for v in x:
        if isinstance(v, Polynomial):
            return Polynomial.zero(v.nvars)
    return ZERO


def multiply(A: Algebra, x: Sequence, y: Sequence) -> tuple:
    _check_len(A, x)
    _check_len(A, y)
    zero = _zero_like(tuple(x) + tuple(y))
    out = [zero] * A.dim
    for a, b, d, c in A.entries:
        xa = x[a]
        if not xa:
            continue
        yb = y[b]
        if not yb:
            continue
        out[d] = out[d] + xa * yb * c
    return tuple(out)


def power(A: Algebra, x: Sequence, k: int) -> tuple:
    """Right-nested power: x^1 = x, x^{k+1} = x • x^k."""
    if k < 1:
        raise ValueError("powers start at 1; the algebra has no unit")
    _check_len(A, x)
    p = tuple(x)
    for _ in range(k - 1):
        p = multiply(A, x, p)
    return p


def l_operator(A: Algebra, x: Sequence) -> Matrix:
    """Matrix of y -> x • y: (L_x)_{db} = sum_a K^d_{ab} x_a."""
    _check_len(A, x)
    x = vec(x)
    n = A.dim
    m = [[ZERO] * n for _ in range(n)]
    for a, b, d, c in A.entries:
        if x[a]:
            m[d][b] += c * x[a]
    return Matrix(m)


def u_operator(A: Algebra, x: Sequence) -> Matrix:
    """Quadratic operator U_x = 2 L_x^2 - L_{x^2}."""
    lx = l_operator(A, x)
    return (lx @ lx) * 2 - l_operator(A, multiply(A, x, x))


def is_jordan(A: Algebra) -> bool:
    """Decide x•(x²•y) = x²•(x•y) exactly.

    The identity is linear in y, so it says [L_x, L_{x²}] = 0 for all x. That
    commutator is a homogeneous cubic in x, and over the rationals it vanishes
    identically iff its full polarization
    [L_a, L_{b•c}] + [L_b, L_{c•a}] + [L_c, L_{a•b}] vanishes on all basis
    triples a <= b <= c.
    """
    return _is_jordan_cached(A)


@lru_cache(maxsize=512)
def _is_jordan_cached(A: Algebra) -> bool:
    n = A.dim
    if n == 0 or not A.structure:
        return True
    # each term is quadratic in the structure constants, so clearing one
    # common denominator keeps the identity and lets it run on integers
    den = 1
    for c in A.structure.values():
        den = lcm(den, c.denominator)
    t = [[[int(A.table[i][j][d] * den) for d in range(n)] for j in range(n)] for i in range(n)]
    # L[i][d][b] = K^d_{ib}; P[i][j] = L_{e_i • e_j}
    L = [[[t[i][b][d] for b in range(n)] for d in range(n)] for i in range(n)]

    def comb(i, j):
        m = [[0] * n for _ in range(n)]
        for r in range(n):
            c = t[i][j][r]
            if c:
                for d in range(n):
                    row, src = m[d], L[r][d]
                    for b in range(n):
                        row[b] += c * src[b]
        return m

    P = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            P[i][j] = P[j][i] = comb(i, j)

    def add_comm(out, X, Y):
        for d in range(n):
            xd, yd, od = X[d], Y[d], out[d]
            for r in range(n):
                xr, yr = xd[r], yd[r]
                if xr:
                    row = Y[r]
                    for b in range(n):
                        od[b] += xr * row[b]
                if yr:
                    row = X[r]
                    for b in range(n):
                        od[b] -= yr * row[b]

    zero_m = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                total = [[0] * n for _ in range(n)]
                add_comm(total, L[a], P[b][c])
                add_comm(total, L[b], P[c][a])
                add_comm(total, L[c], P[a][b])
                if total != zero_m:
                    return False
    return True


def is_associative(A: Algebra) -> bool:
    """e_b • (e_c • e_d) = e_c • (e_b • e_d) on all basis triples (associativity, given commutativity)."""
    n = A.dim
    den = 1
    for c in A.structure.values():
        den = lcm(den, c.denominator)
    # both sides are quadratic in the constants; compare them as integers
    t = [[[int(A.table[i][j][d] * den) for d in range(n)] for j in range(n)] for i in range(n)]
    for al in range(n):
        for b in range(n):
            for g in range(n):
                for d in range(n):
                    lhs = sum(t[b][r][al] * t[g][d][r] for r in range(n))
                    rhs = sum(t[g][r][al] * t[b][d][r] for r in range(n))
                    if lhs != rhs:
                        return False
    return True


@dataclass(frozen=True)
class CentralSeries:
    """C_0 = {0} ⊂ C_1 ⊂ ... as lists of basis vectors; ``terminal`` when the last is everything."""

    subspaces: tuple
    terminal: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.subspaces)


def _right_mult_matrices(A: Algebra) -> list[Matrix]:
    # R_j x = x • e_j, (R_j)_{da} = K^d_{aj}
    n = A.dim
    t = A.table
    return [Matrix([[t[a][j][d] for a in range(n)] for d in range(n)]) for j in range(n)]


def central_ascending_series(A: Algebra) -> CentralSeries:
    n = A.dim
    rights = _right_mult_matrices(A)
    current: list[tuple] = []
    subspaces = [tuple()]
    while True:
        # rows of q span the annihilator of the current subspace
        q = Matrix(mat_kernel(Matrix(current))) if current else Matrix.identity(n)
        if q.rows == 0:
            break
        stacked = []
        for r in rights:
            stacked.extend((q @ r).tolist())
        nxt = mat_kernel(Matrix(stacked)) if stacked else [unit_vector(n, i) for i in range(n)]
        if len(nxt) == len(current):
            break
        current = nxt
        subspaces.append(tuple(nxt))
    return CentralSeries(tuple(subspaces), terminal=len(current) == n)


def is_nilpotent(A: Algebra) -> bool:
    return central_ascending_series(A).terminal


def quasi_regular_certificate(A: Algebra, x: Sequence) -> tuple[Fraction, Matrix]:
    """Return (det M, M) with M = I + 2 L_x + U_x; -x is quasi-regular iff det M != 0."""
    m = Matrix.identity(A.dim) + l_operator(A, x) * 2 + u_operator(A, x)
    return mat_det(m), m


def quasi_inverse_neg(A: Algebra, x: Sequence) -> tuple:
    """(-x)^{(-1)} = M^{-1}(x + x²), checked against x • y = x - y."""
    x = vec(x)
    det, m = quasi_regular_certificate(A, x)
    if det == 0:
        raise NotQuasiRegularError(f"-x is not quasi-regular at x={x}")
    rhs = tuple(a + b for a, b in zip(x, multiply(A, x, x)))
    y = mat_inverse(m).apply(rhs)
    lhs = multiply(A, x, y)
    if any(l != a - b for l, a, b in zip(lhs, x, y)):
        raise ArithmeticError("quasi-inverse failed its defining identity")
    return y


def quasi_inverse_series(A: Algebra, x: Sequence) -> tuple:
    """-Σ_{k≥1} (-x)^k, which terminates on nilpotent algebras."""
    x = vec(x)
    n = A.dim
    total = list(zero_vector(n))
    p = x
    for k in range(1, n + 2):
        if not any(p):
            return tuple(total)
        sign = ONE if k % 2 else -ONE
        total = [t + sign * v for t, v in zip(total, p)]
        p = multiply(A, x, p)
    if any(p):
        raise PreconditionError("powers of x do not vanish; series does not terminate")
    return tuple(total)


def change_basis(A: Algebra, B: Matrix) -> Algebra:
    """Structure constants in the basis given by the columns of invertible ``B``."""
    n = A.dim
    if B.shape != (n, n):
        raise DimensionError(f"basis matrix must be {n}x{n}")
    binv = mat_inverse(B)
    cols = B.columns()
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            prod = binv.apply(multiply(A, cols[a], cols[b]))
            table[a][b] = table[b][a] = prod
    return Algebra.from_table(table)


def element(values: Iterable) -> tuple:
    return vec(values)
