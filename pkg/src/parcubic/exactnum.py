"""Exact rational scalars and dense linear algebra over Q.

Scalars are :class:`fractions.Fraction` throughout. :class:`Matrix` is a small
immutable dense matrix; the module-level functions implement the elimination
routines the rest of the package builds on.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple  # tuple of Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


class PreconditionError(ValueError):
    """An operation was called on an input outside its domain."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction.

    Floats are refused: they would silently introduce rounding.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, den = s.split("/", 1)
        if not _is_int_literal(num) or not den.strip().isdigit():
            raise ValueError(f"malformed rational {text!r}")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), d)
    if not _is_int_literal(s):
        raise ValueError(f"malformed rational {text!r}")
    return Fraction(int(s))


def _is_int_literal(s: str) -> bool:
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> tuple:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> tuple:
    """Standard basis vector e_i, 0-based index."""
    return tuple(ONE if k == i else ZERO for k in range(n))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), ZERO)


class Matrix:
    """Immutable dense matrix of Fractions (row-major)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(to_rational(x) for x in row) for row in data)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        self._data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def _raw(cls, rows: tuple, ncols: int | None = None) -> "Matrix":
        m = cls.__new__(cls)
        m._data = rows
        m.rows = len(rows)
        m.cols = len(rows[0]) if rows else (ncols or 0)
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        cols = [vec(c) for c in columns]
        if not cols:
            return cls._raw(())
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(len(cols[0]))))

    @classmethod
    def antidiagonal(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, n - 1 - i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        vals = vec(values)
        n = len(vals)
        return cls._raw(tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._data for x in row)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)), self.rows) if self._data else Matrix._raw(())

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def trace(self) -> Fraction:
        return sum((self._data[i][i] for i in range(min(self.rows, self.cols))), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} against {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._data)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if isinstance(other, Matrix):
            return self._data == other._data and self.shape == other.shape
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix._raw(tuple(tuple(a * c for a in r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.T._data if other._data else ()
            return Matrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols) for r in self._data),
                other.cols,
            )
        return self.apply(other)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self._data)
        return f"Matrix([{body}])"

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")


def _require_square(m: Matrix) -> None:
    if not m.is_square():
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def mat_det(m: Matrix) -> Fraction:
    """Determinant by Bareiss fraction-free elimination."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return ONE
    a = m.tolist()
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) / prev
            row_i[k] = ZERO
        prev = piv
    return sign * a[n - 1][n - 1]


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (pivots normalized to 1)."""
    a = m.tolist()
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(row) for row in a), cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1]) if m.rows and m.cols else 0


def mat_kernel(m: Matrix) -> list[tuple]:
    """Basis of the right null space.

    One vector per free column, in increasing column order; the free
    coordinate is 1 and the other free coordinates are 0.
    """
    cols = m.cols
    if m.rows == 0:
        return [unit_vector(cols, j) for j in range(cols)]
    r, pivots = rref(m)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def mat_inverse(m: Matrix) -> Matrix:
    _require_square(m)
    n = m.rows
    aug = Matrix._raw(tuple(r + unit_vector(n, i) for i, r in enumerate(m)), 2 * n)
    r, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


def mat_adjugate_inverse(m: Matrix) -> tuple[Matrix, Fraction]:
    """Return ``(adjugate, det)``; the inverse is adjugate/det when det != 0."""
    _require_square(m)
    n = m.rows
    d = mat_det(m)
    if n == 0:
        return Matrix._raw(()), ONE
    if d != 0:
        return mat_inverse(m) * d, d
    # singular: cofactors, adj[i][j] = (-1)^{i+j} det(minor_{j,i})
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = m.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            row.append(mat_det(minor) * (-1 if (i + j) % 2 else 1))
        adj.append(row)
    return Matrix(adj), d


def solve(m: Matrix, b: Sequence) -> tuple:
    """Solve ``m x = b`` for square non-singular ``m``."""
    return mat_inverse(m).apply(vec(b))


def sym_signature(g: Matrix) -> tuple[int, int, int]:
    """(positives, negatives, zeros) of a symmetric form by congruence diagonalization."""
    if not g.is_symmetric():
        raise DimensionError("signature needs a symmetric square matrix")
    a = g.tolist()
    n = g.rows
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal 2*a_ij != 0
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            p = i
        a[k], a[p] = a[p], a[k]
        for row in a:
            row[k], row[p] = row[p], row[k]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for t in range(k, n):
                    a[i][t] -= f * a[k][t]
        for i in range(k + 1, n):
            a[k][i] = ZERO
            a[i][k] = ZERO
        k += 1
    return pos, neg, n - pos - neg


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return all(x == 0 for x in v)
    return rank(Matrix(list(basis) + [list(v)])) == rank(Matrix(basis))


def random_rational(rng: random.Random, max_num: int = 10, max_den: int = 7) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_vector(rng: random.Random, n: int, max_num: int = 10, max_den: int = 7) -> tuple:
    return tuple(random_rational(rng, max_num, max_den) for _ in range(n))


def random_invertible(rng: random.Random, n: int, max_num: int = 3, max_den: int = 2) -> Matrix:
    while True:
        m = Matrix([[random_rational(rng, max_num, max_den) for _ in range(n)] for _ in range(n)])
        if mat_det(m) != 0:
            return m


def squarefree_part(q: Fraction, trial_bound: int = 10**5) -> tuple[Fraction, Fraction]:
    """Split ``|q| = s * c**2`` with ``s`` an integer and ``c`` rational.

    Returns ``(s, c)``; ``q`` must be non-zero. Primes up to ``trial_bound``
    are divided out and a square cofactor is absorbed, so ``s`` is exactly
    square-free whenever the leftover cofactor is below ``trial_bound**3``.
    """
    if q == 0:
        raise ValueError("zero has no square-free part")
    m = abs(q.numerator) * q.denominator
    s, r = 1, 1
    f = 2
    while f * f <= m and f <= trial_bound:
        while m % (f * f) == 0:
            m //= f * f
            r *= f
        if m % f == 0:
            m //= f
            s *= f
        f += 1 if f == 2 else 2
    root = isqrt(m)
    if root * root == m:
        r *= root
        m = 1
    s *= m
    # |q| = num/den = (num*den)/den^2 = s r^2 / den^2
    return Fraction(s), Fraction(r, q.denominator)
