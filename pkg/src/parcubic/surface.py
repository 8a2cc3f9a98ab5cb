"""Defining functions of graph hypersurfaces built from metrised algebras.

A surface is the graph of a polynomial F with F(0) = 0 and dF(0) = 0. Three
generators are provided, one per parallelism condition:

* ``hatC``:   F(x) = Σ_{k≥2} (-1)^k / k     · γ(x, x^{k-1})
* ``nablaK``: F(x) = Σ_{k≥2} (-2)^{k-2} / k! · γ(x, x^{k-1})
* ``nablaC``: F(x) = ½ γ(x, x) - ⅓ γ(x, x²)

The series stop by themselves on nilpotent algebras; otherwise a truncation
degree is required. The governing fourth-order PDEs are checked exactly at
seeded random rational points, or optionally as polynomial identities after
clearing the Hessian determinant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import (
    Algebra,
    NotQuasiRegularError,
    is_associative,
    is_jordan,
    is_nilpotent,
    multiply,
    quasi_regular_certificate,
)
from .exactnum import (
    ZERO,
    DimensionError,
    Matrix,
    PreconditionError,
    format_rational,
    mat_det,
    mat_inverse,
    random_vector,
    vec,
)
from .metrised import MetrisedAlgebra, is_trace_form
from .poly import Polynomial, PolyMatrix, differentiate, evaluate, hessian, poly_adjugate, poly_det

MODES = ("hatC", "nablaK", "nablaC")


@dataclass(frozen=True)
class Surface:
    F: Polynomial
    source: MetrisedAlgebra | None = None
    mode: str | None = None
    _derivs: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.mode is not None and self.mode not in MODES:
            raise ValueError(f"unknown surface mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.F.constant_term() != 0 or not self.F.homogeneous_part(1).is_zero():
            raise ValueError("defining function must vanish to second order at the origin")
        if self.source is not None and self.source.dim != self.F.nvars:
            raise DimensionError("source algebra and polynomial disagree on dimension")

    @property
    def nvars(self) -> int:
        return self.F.nvars

    def derivative(self, *indices: int) -> Polynomial:
        """Partial derivative by 1-based variable indices; order does not matter."""
        key = tuple(sorted(indices))
        if key not in self._derivs:
            if not key:
                self._derivs[key] = self.F
            else:
                # differentiate the cached derivative with one index fewer
                self._derivs[key] = differentiate(self.derivative(*key[:-1]), key[-1])
        return self._derivs[key]

    def hessian_at(self, point: Sequence) -> Matrix:
        n = self.nvars
        return Matrix([[evaluate(self.derivative(i, j), point) for j in range(1, n + 1)] for i in range(1, n + 1)])

    def __str__(self) -> str:
        return str(self.F)


def _gamma_pair(gamma: Matrix, x: Sequence, y: Sequence, nvars: int) -> Polynomial:
    total = Polynomial.zero(nvars)
    n = gamma.rows
    for i in range(n):
        for j in range(n):
            if gamma[i, j] and y[j]:
                total = total + x[i] * y[j] * gamma[i, j]
    return total


def _series_coefficient(mode: str, k: int) -> Fraction:
    if mode == "hatC":
        return Fraction((-1) ** k, k)
    return Fraction((-2) ** (k - 2), factorial(k))


def generate_surface(M: MetrisedAlgebra, mode: str = "hatC", max_degree: int | None = None) -> Surface:
    if mode not in MODES:
        raise ValueError(f"unknown surface mode {mode!r}; expected one of {', '.join(MODES)}")
    A = M.algebra
    missing = []
    if not is_trace_form(M):
        missing.append("trace_form")
    if mode == "hatC" and not is_jordan(A):
        missing.append("jordan")
    if mode == "nablaK" and not is_associative(A):
        missing.append("associative")
    if missing:
        raise PreconditionError(f"mode {mode} requires: {', '.join(missing)}")

    n = M.dim
    x = Polynomial.variables(n)
    if mode == "nablaC":
        x2 = multiply(A, x, x)
        F = _gamma_pair(M.gamma, x, x, n) * Fraction(1, 2) - _gamma_pair(M.gamma, x, x2, n) * Fraction(1, 3)
        return Surface(F, M, mode)

    if is_nilpotent(A):
        top = None
    else:
        if max_degree is None:
            raise PreconditionError("algebra is not nilpotent: the series does not terminate, pass max_degree")
        top = max_degree
    F = Polynomial.zero(n)
    p = x  # x^{k-1}
    k = 2
    while any(p) and (top is None or k <= top):
        F = F + _gamma_pair(M.gamma, x, p, n) * _series_coefficient(mode, k)
        p = multiply(A, x, p)
        k += 1
    return Surface(F, M, mode)


def is_improper_hypersphere(S: Surface) -> tuple[bool, Polynomial]:
    """(det F'' is a constant ±1, det F'')."""
    d = poly_det(hessian(S.F))
    ok = d.is_constant() and abs(d.constant_term()) == 1
    return ok, d


# -- PDE residuals ----------------------------------------------------------


class SingularHessianError(ArithmeticError):
    pass


def _third_and_fourth(S: Surface, point: Sequence):
    n = S.nvars
    pt = vec(point)
    if len(pt) != n:
        raise DimensionError(f"point of length {len(pt)} for {n} variables")
    H = S.hessian_at(pt)
    if mat_det(H) == 0:
        raise SingularHessianError(f"Hessian is singular at {pt}")
    Hinv = mat_inverse(H)
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    f3 = {}  # (a, b) -> [F_{abs} for s]
    for a, b in pairs:
        f3[(a, b)] = [evaluate(S.derivative(a + 1, b + 1, s + 1), pt) for s in range(n)]
    # t[(a, b)][s] = Σ_r F_{abr} (F'')^{-1}_{rs}
    t = {}
    for key, row in f3.items():
        nz = [(r, v) for r, v in enumerate(row) if v]
        t[key] = [sum((v * Hinv[r, s] for r, v in nz), ZERO) for s in range(n)]
    # P(ab, cd) = Σ_s t[ab][s] F_{cds}, symmetric under ab <-> cd
    table = {}
    for i, p in enumerate(pairs):
        tp = t[p]
        for q in pairs[i:]:
            v = sum((x * y for x, y in zip(tp, f3[q]) if x and y), ZERO)
            table[(p, q)] = table[(q, p)] = v

    def P(a, b, c, d):
        return table[((a, b) if a <= b else (b, a), (c, d) if c <= d else (d, c))]

    return pt, P


def _fourth(S: Surface, pt, a, b, c, d) -> Fraction:
    return evaluate(S.derivative(a + 1, b + 1, c + 1, d + 1), pt)


def pde_residual_hatC(S: Surface, point: Sequence) -> tuple:
    """F_{abcd} - ½ F^{rs}(F_{abr}F_{cds} + F_{acr}F_{bds} + F_{adr}F_{bcs}) at ``point``."""
    n = S.nvars
    pt, P = _third_and_fourth(S, point)
    half = Fraction(1, 2)
    R = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    cache: dict[tuple, Fraction] = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    key = tuple(sorted((a, b, c, d)))
                    if key not in cache:
                        i, j, k, l = key
                        rhs = half * (P(i, j, k, l) + P(i, k, j, l) + P(i, l, j, k))
                        cache[key] = _fourth(S, pt, i, j, k, l) - rhs
                    R[a][b][c][d] = cache[key]
    return _freeze(R)


def pde_residual_nablaK(S: Surface, point: Sequence) -> tuple:
    """F_{abcd} - F_{abr} F^{rs} F_{cds} at ``point``."""
    n = S.nvars
    pt, P = _third_and_fourth(S, point)
    fourth: dict[tuple, Fraction] = {}
    R = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    key = tuple(sorted((a, b, c, d)))
                    if key not in fourth:
                        fourth[key] = _fourth(S, pt, *key)
                    R[a][b][c][d] = fourth[key] - P(a, b, c, d)
    return _freeze(R)


def _freeze(t):
    if isinstance(t, list):
        return tuple(_freeze(v) for v in t)
    return t


def tensor_entries(t) -> list:
    if isinstance(t, tuple):
        return [v for sub in t for v in tensor_entries(sub)]
    return [t]


def max_abs(t) -> Fraction:
    return max((abs(v) for v in tensor_entries(t)), default=ZERO)


RESIDUALS = {"hatC": pde_residual_hatC, "nablaK": pde_residual_nablaK}


@dataclass(frozen=True)
class PointResult:
    index: int
    point: tuple
    max_abs_residual: Fraction

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "point": [format_rational(v) for v in self.point],
            "max_abs_residual": format_rational(self.max_abs_residual),
        }


@dataclass(frozen=True)
class VerificationReport:
    pde: str
    seed: int | None
    points: tuple
    skipped: int
    symbolic: bool = False
    symbolic_zero: bool | None = None

    @property
    def ok(self) -> bool:
        if self.symbolic:
            return bool(self.symbolic_zero)
        return bool(self.points) and all(p.max_abs_residual == 0 for p in self.points)

    def to_json(self) -> dict:
        return {
            "pde": self.pde,
            "seed": self.seed,
            "symbolic": self.symbolic,
            "symbolic_zero": self.symbolic_zero,
            "points": [p.to_json() for p in self.points],
            "skipped_singular": self.skipped,
            "ok": self.ok,
        }


def sample_points(S: Surface, count: int, seed: int, max_tries: int | None = None):
    """Seeded rational points (|p| <= 10, q <= 7) where the Hessian is invertible.

    Returns (points, number of singular draws skipped).
    """
    rng = random.Random(seed)
    n = S.nvars
    points = []
    skipped = 0
    limit = max_tries if max_tries is not None else 50 * max(count, 1)
    while len(points) < count:
        if skipped > limit:
            raise SingularHessianError(f"could not find {count} points with invertible Hessian")
        p = random_vector(rng, n)
        if mat_det(S.hessian_at(p)) == 0:
            skipped += 1
            continue
        points.append(p)
    return points, skipped


def verify_pde(S: Surface, pde: str = "hatC", points: int = 25, seed: int = 0, symbolic: bool = False) -> VerificationReport:
    if pde not in RESIDUALS:
        raise ValueError(f"unknown PDE {pde!r}; expected hatC or nablaK")
    if symbolic:
        zero = symbolic_residual_is_zero(S, pde)
        return VerificationReport(pde, None, (), 0, True, zero)
    pts, skipped = sample_points(S, points, seed)
    fn = RESIDUALS[pde]
    results = tuple(PointResult(i, p, max_abs(fn(S, p))) for i, p in enumerate(pts))
    return VerificationReport(pde, seed, results, skipped)


def symbolic_residual_is_zero(S: Surface, pde: str = "hatC") -> bool:
    """Check the PDE as a polynomial identity after multiplying through by det F''.

    With adj the classical adjugate of F'' and D = det F'', the hatC
    condition becomes D F_{abcd} = ½ Σ adj^{rs}(...) and similarly for
    nablaK. Exponential in the dimension through the cofactor determinants.
    """
    n = S.nvars
    H = PolyMatrix([[S.derivative(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    D = poly_det(H)
    if D.is_zero():
        raise SingularHessianError("Hessian determinant vanishes identically")
    adj = poly_adjugate(H)
    zero = Polynomial.zero(n)
    T = {}
    for a in range(n):
        for b in range(a, n):
            for s in range(n):
                T[(a, b, s)] = sum((S.derivative(a + 1, b + 1, r + 1) * adj[r, s] for r in range(n)), zero)

    def t(a, b, s):
        return T[(a, b, s)] if a <= b else T[(b, a, s)]

    def pair(a, b, c, d):
        return sum((t(a, b, s) * S.derivative(c + 1, d + 1, s + 1) for s in range(n)), zero)

    for a in range(n):
        for b in range(a, n):
            for c in range(b if pde == "hatC" else 0, n):
                for d in range(c if pde == "hatC" else 0, n):
                    lhs = D * S.derivative(a + 1, b + 1, c + 1, d + 1)
                    if pde == "hatC":
                        rhs = (pair(a, b, c, d) + pair(a, c, b, d) + pair(a, d, b, c)) * Fraction(1, 2)
                    else:
                        rhs = pair(a, b, c, d)
                    if lhs != rhs:
                        return False
    return True


# -- recovering the algebra ----------------------------------------------------


def algebra_at_point(F: Polynomial | Surface, y: Sequence) -> MetrisedAlgebra:
    """γ = F''(y) and K^d_{ab} = -½ Σ_r F_{abr}(y) (F''(y)^{-1})_{rd}."""
    S = F if isinstance(F, Surface) else _raw_surface(F)
    n = S.nvars
    pt = vec(y)
    if len(pt) != n:
        raise DimensionError(f"point of length {len(pt)} for {n} variables")
    H = S.hessian_at(pt)
    if mat_det(H) == 0:
        raise SingularHessianError(f"Hessian is singular at {pt}")
    Hinv = mat_inverse(H)
    structure = {}
    for a in range(n):
        for b in range(a, n):
            f3 = [evaluate(S.derivative(a + 1, b + 1, r + 1), pt) for r in range(n)]
            for d in range(n):
                c = -Fraction(1, 2) * sum((f3[r] * Hinv[r, d] for r in range(n)), ZERO)
                if c:
                    structure[(a + 1, b + 1, d + 1)] = c
    return MetrisedAlgebra(Algebra(n, structure), H)


def _raw_surface(F: Polynomial) -> Surface:
    # derivatives of order >= 2 ignore the affine part, so drop it for the cache
    return Surface(F - F.constant_term() - F.homogeneous_part(1))


def dzeta_matrix_at(M: MetrisedAlgebra, x: Sequence) -> Matrix:
    """γ (I + 2 L_x + U_x)^{-1}; symmetric wherever it is defined."""
    det, op = quasi_regular_certificate(M.algebra, vec(x))
    if det == 0:
        raise NotQuasiRegularError(f"-x is not quasi-regular at x={tuple(x)}")
    return M.gamma @ mat_inverse(op)


def surface_from_polynomial(F: Polynomial, mode: str | None = None) -> Surface:
    return Surface(F, None, mode)
