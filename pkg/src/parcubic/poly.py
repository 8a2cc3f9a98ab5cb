"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` maps exponent tuples to non-zero Fractions. Variables are
named ``x1 .. xn`` when printed. Terms are ordered graded-lexicographically:
lower total degree first, and within a degree by descending exponent tuple,
so ``x1*x2 - 1/3*x1^3`` and ``x1*x5 + x2*x4 + 1/2*x3^2`` print the way they
are usually written.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exactnum import ONE, ZERO, DimensionError, Matrix, format_rational, parse_rational, to_rational


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean: dict[tuple, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionError(f"exponent vector {exps} does not have {nvars} entries")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_rational(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = to_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        """The coordinate function x_i, with 1-based ``i``."""
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} outside 1..{nvars}")
        return cls._raw(nvars, {tuple(1 if k == i - 1 else 0 for k in range(nvars)): ONE})

    @classmethod
    def variables(cls, nvars: int) -> tuple["Polynomial", ...]:
        return tuple(cls.variable(nvars, i) for i in range(1, nvars + 1))

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, ZERO)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=_grlex_key)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Polynomial":
        return self * (1 / to_rational(c))

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.is_constant() and self.constant_term() == to_rational(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _grlex_key(item):
    exps = item[0]
    return (sum(exps), tuple(-e for e in exps))


def differentiate(p: Polynomial, var: int) -> Polynomial:
    """Partial derivative with respect to x_var (1-based)."""
    if not 1 <= var <= p.nvars:
        raise IndexError(f"variable index {var} outside 1..{p.nvars}")
    i = var - 1
    out = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = c * e[i]
    return Polynomial._raw(p.nvars, out)


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    if len(point) != p.nvars:
        raise DimensionError(f"point of length {len(point)} for {p.nvars} variables")
    pt = [to_rational(v) for v in point]
    total = ZERO
    for e, c in p.terms.items():
        term = c
        for x, k in zip(pt, e):
            if k:
                term *= x ** k
                if not term:
                    break
        total += term
    return total


def substitute_linear(p: Polynomial, A: Matrix, b: Sequence | None = None) -> Polynomial:
    """Expand ``p(A x + b)`` where ``x`` has ``A.cols`` coordinates."""
    if A.rows != p.nvars:
        raise DimensionError(f"substitution matrix has {A.rows} rows, polynomial has {p.nvars} variables")
    m = A.cols
    b = [to_rational(v) for v in b] if b is not None else [ZERO] * A.rows
    if len(b) != A.rows:
        raise DimensionError("offset vector length mismatch")
    xs = Polynomial.variables(m)
    images = []
    for i in range(A.rows):
        img = Polynomial.constant(m, b[i])
        for j in range(m):
            if A[i, j]:
                img = img + xs[j] * A[i, j]
        images.append(img)
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(i: int, k: int) -> Polynomial:
        if (i, k) not in powers:
            powers[(i, k)] = images[i] ** k
        return powers[(i, k)]

    out = Polynomial.zero(m)
    for e, c in p.terms.items():
        term = Polynomial.constant(m, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


# -- matrices of polynomials ---------------------------------------------


class PolyMatrix:
    """Square matrix of polynomials sharing one variable count."""

    __slots__ = ("nvars", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(r) for r in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("PolyMatrix must be square")
        nv = {p.nvars for r in rows for p in r}
        if len(nv) > 1:
            raise DimensionError("inconsistent variable counts in PolyMatrix")
        self.entries = rows
        self.nvars = nv.pop() if nv else 0

    @classmethod
    def identity(cls, n: int, nvars: int) -> "PolyMatrix":
        return cls([[Polynomial.constant(nvars, 1 if i == j else 0) for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx) -> Polynomial:
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n = self.size
        return PolyMatrix(
            [
                [sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), Polynomial.zero(self.nvars)) for j in range(n)]
                for i in range(n)
            ]
        )

    def evaluate(self, point: Sequence) -> Matrix:
        return Matrix([[evaluate(p, point) for p in r] for r in self.entries])

    def __repr__(self) -> str:
        return "PolyMatrix([" + "; ".join(", ".join(str(p) for p in r) for r in self.entries) + "])"


def hessian(p: Polynomial) -> PolyMatrix:
    n = p.nvars
    first = [differentiate(p, i) for i in range(1, n + 1)]
    h = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            h[i][j] = h[j][i] = differentiate(first[i], j + 1)
    return PolyMatrix(h)


def poly_det(m: PolyMatrix) -> Polynomial:
    """Determinant by Laplace expansion, memoized over column subsets.

    Cost grows like 2^n polynomial products; intended for n <= ~8.
    """
    n = m.size
    nv = m.nvars
    rows = m.entries

    @lru_cache(maxsize=None)
    def minor(r: int, cols: tuple) -> Polynomial:
        if r == n:
            return Polynomial.constant(nv, 1)
        total = Polynomial.zero(nv)
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        return total

    return minor(0, tuple(range(n)))


def poly_adjugate(m: PolyMatrix) -> PolyMatrix:
    """Classical adjugate by cofactors: ``adj @ m == det * I``."""
    n = m.size
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = PolyMatrix([[m.entries[r][c] for c in range(n) if c != i] for r in range(n) if r != j])
            d = poly_det(sub) if n > 1 else Polynomial.constant(m.nvars, 1)
            adj[i][j] = -d if (i + j) % 2 else d
    return PolyMatrix(adj)


# -- text and JSON forms --------------------------------------------------


def _format_monomial(exps: tuple) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (exps, c) in enumerate(p.sorted_terms()):
        mono = _format_monomial(exps)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the text form produced by :func:`format_poly`.

    Accepts ``c*x1^a*x2 ...`` terms joined by ``+``/``-``. With ``nvars``
    omitted, the largest variable index seen is used.
    """
    s = text.strip().replace("−", "-")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)[1:]
    if len(pieces) % 2:
        raise ValueError(f"malformed polynomial {text!r}")
    raw_terms = []
    top = 0
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        powers: dict[int, int] = {}
        for factor in body.split("*"):
            factor = factor.strip()
            m = _VAR.match(factor)
            if m:
                idx, e = int(m.group(1)), int(m.group(2) or 1)
                if idx < 1:
                    raise ValueError(f"variable index must be >= 1 in {factor!r}")
                powers[idx] = powers.get(idx, 0) + e
                top = max(top, idx)
            else:
                coeff *= parse_rational(factor)
        raw_terms.append((powers, coeff))
    n = nvars if nvars is not None else top
    if top > n:
        raise ValueError(f"variable x{top} exceeds nvars={n}")
    terms: dict[tuple, Fraction] = {}
    for powers, c in raw_terms:
        e = tuple(powers.get(i, 0) for i in range(1, n + 1))
        terms[e] = terms.get(e, ZERO) + c
    return Polynomial(n, terms)


def poly_to_json(p: Polynomial) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [[list(e), format_rational(c)] for e, c in p.sorted_terms()],
    }


def poly_from_json(obj: Mapping) -> Polynomial:
    try:
        n = obj["nvars"]
        terms = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"polynomial object needs 'nvars' and 'terms': missing {exc}") from None
    if not isinstance(n, int) or n < 0:
        raise ValueError("'nvars' must be a non-negative integer")
    out: dict[tuple, Fraction] = {}
    for k, item in enumerate(terms):
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ValueError(f"terms[{k}] must be [exponents, coefficient]")
        e, c = item
        out_e = tuple(e)
        if len(out_e) != n or not all(isinstance(x, int) for x in out_e):
            raise ValueError(f"terms[{k}] exponent vector must hold {n} integers")
        out[out_e] = out.get(out_e, ZERO) + to_rational(c)
    return Polynomial(n, out)


def polys_from_iterable(items: Iterable[Polynomial], nvars: int) -> Polynomial:
    return sum(items, Polynomial.zero(nvars))
