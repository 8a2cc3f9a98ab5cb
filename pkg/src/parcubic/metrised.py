"""Algebras paired with a non-degenerate symmetric form γ.

Covers the invariance check γ(u•v, w) = γ(u, v•w), the aggregate validation
report, orthogonal direct sums, sufficient tests for an orthogonal splitting
into ideals, the dimension of the Lie algebra of γ-skew derivations, and the
signature bounds that nilpotent metrised Jordan algebras must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (
    Algebra,
    central_ascending_series,
    change_basis as change_algebra_basis,
    is_associative,
    is_jordan,
    is_nilpotent,
    multiply,
)
from .exactnum import (
    ZERO,
    DimensionError,
    Matrix,
    PreconditionError,
    format_rational,
    mat_det,
    mat_kernel,
    rank,
    sym_signature,
    unit_vector,
    vec,
)


@dataclass(frozen=True)
class MetrisedAlgebra:
    algebra: Algebra
    gamma: Matrix

    def __post_init__(self):
        n = self.algebra.dim
        if self.gamma.shape != (n, n):
            raise DimensionError(f"gamma must be {n}x{n}, got {self.gamma.rows}x{self.gamma.cols}")
        if not self.gamma.is_symmetric():
            raise ValueError("gamma is not symmetric")
        if mat_det(self.gamma) == 0:
            raise ValueError("gamma is degenerate (det = 0)")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        g = self.gamma
        n = self.dim
        return sum((u[i] * g[i, j] * v[j] for i in range(n) if u[i] for j in range(n) if g[i, j]), ZERO)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        return multiply(self.algebra, x, y)


def change_basis(M: MetrisedAlgebra, B: Matrix) -> MetrisedAlgebra:
    """Express M in the basis formed by the columns of B."""
    return MetrisedAlgebra(change_algebra_basis(M.algebra, B), B.T @ M.gamma @ B)


def lowered_tensor(M: MetrisedAlgebra) -> list:
    """T[a][b][d] = Σ_r γ_{dr} K^r_{ab} (0-based)."""
    n = M.dim
    t = M.algebra.table
    g = M.gamma
    return [[[sum((g[d, r] * t[a][b][r] for r in range(n)), ZERO) for d in range(n)] for b in range(n)] for a in range(n)]


def is_trace_form(M: MetrisedAlgebra) -> bool:
    n = M.dim
    T = lowered_tensor(M)
    return all(T[a][b][d] == T[a][d][b] for a in range(n) for b in range(n) for d in range(b + 1, n))


@dataclass
class ValidationReport:
    jordan: bool
    associative: bool
    trace_form: bool
    nilpotent: bool
    signature: tuple[int, int]
    det_gamma: Fraction
    splits: dict | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def signature_negated(self) -> tuple[int, int]:
        # γ and -γ describe the same geometry up to orientation
        return (self.signature[1], self.signature[0])

    def to_json(self) -> dict:
        return {
            "jordan": self.jordan,
            "associative": self.associative,
            "trace_form": self.trace_form,
            "nilpotent": self.nilpotent,
            "signature": list(self.signature),
            "signature_negated": list(self.signature_negated),
            "det_gamma": format_rational(self.det_gamma),
            "splits": self.splits,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def validate(M: MetrisedAlgebra, scan_splits: bool = True) -> ValidationReport:
    """Collect the structural flags of M.

    ``failures`` names the properties a metrised Jordan algebra needs and M
    lacks (Jordan identity, invariant form); nilpotency and associativity are
    reported but not required.
    """
    jordan = is_jordan(M.algebra)
    trace = is_trace_form(M)
    pos, neg, _ = sym_signature(M.gamma)
    report = ValidationReport(
        jordan=jordan,
        associative=is_associative(M.algebra),
        trace_form=trace,
        nilpotent=is_nilpotent(M.algebra),
        signature=(pos, neg),
        det_gamma=mat_det(M.gamma),
    )
    if not jordan:
        report.failures.append("jordan")
    if not trace:
        report.failures.append("trace_form")
    if scan_splits:
        report.splits = orthogonal_split_scan(M).to_json()
    return report


def direct_sum(Ms: Sequence[MetrisedAlgebra]) -> MetrisedAlgebra:
    if not Ms:
        raise ValueError("direct sum of no summands")
    if len(Ms) == 1:
        return Ms[0]
    n = sum(M.dim for M in Ms)
    structure = {}
    g = [[ZERO] * n for _ in range(n)]
    off = 0
    for M in Ms:
        for (a, b, d), c in M.algebra.structure.items():
            structure[(a + off, b + off, d + off)] = c
        for i in range(M.dim):
            for j in range(M.dim):
                g[off + i][off + j] = M.gamma[i, j]
        off += M.dim
    return MetrisedAlgebra(Algebra(n, structure), Matrix(g))


# -- splitting ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitReport:
    """Outcome of the sufficient reducibility tests.

    Blocks are 1-based index sets in the basis given by the columns of
    ``basis_change`` (the identity when the split is visible in the input
    coordinates). ``found=False`` means no split was detected, not that M is
    irreducible.
    """

    found: bool
    method: str | None = None
    block_a: tuple[int, ...] = ()
    block_b: tuple[int, ...] = ()
    witness: tuple | None = None
    basis_change: Matrix | None = None

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "method": self.method,
            "block_a": list(self.block_a),
            "block_b": list(self.block_b),
            "witness": None if self.witness is None else [format_rational(v) for v in self.witness],
            "basis_change": None if self.basis_change is None else [[format_rational(v) for v in r] for r in self.basis_change],
        }


def coordinate_blocks(M: MetrisedAlgebra) -> list[tuple[int, ...]]:
    """Finest partition of coordinates into mutually γ-orthogonal ideals spanned by basis vectors.

    Indices are linked when γ pairs them or when they occur together in a
    non-zero structure constant; the connected components are the blocks.
    """
    n = M.dim
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i in range(n):
        for j in range(i + 1, n):
            if M.gamma[i, j]:
                union(i, j)
    for (a, b, d) in M.algebra.structure:
        union(a - 1, b - 1)
        union(a - 1, d - 1)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i + 1)
    return [tuple(b) for _, b in sorted(blocks.items())]


def annihilator_witness(M: MetrisedAlgebra) -> tuple | None:
    """A vector v with v • A = 0 and γ(v, v) != 0, or None when the annihilator is γ-isotropic."""
    series = central_ascending_series(M.algebra)
    if len(series.subspaces) < 2:
        return None
    ann = series.subspaces[1]
    for v in ann:
        if M.form(v, v):
            return v
    for u, v in combinations(ann, 2):
        if M.form(u, v):
            # γ(u,u) = γ(v,v) = 0 here, so γ(u+v, u+v) = 2γ(u,v)
            return tuple(a + b for a, b in zip(u, v))
    return None


def orthogonal_split_scan(M: MetrisedAlgebra) -> SplitReport:
    """Look for a decomposition of M into two γ-orthogonal ideals.

    Tried in order: a coordinate split in the given basis, the same test in a
    semi-canonical basis (nilpotent Jordan algebras with invariant form
    only), and an annihilator vector that is not γ-isotropic. The witness
    field is filled whenever the last test succeeds, even if an earlier test
    already produced the blocks.
    """
    n = M.dim
    trace = is_trace_form(M)
    witness = annihilator_witness(M) if trace else None

    blocks = coordinate_blocks(M)
    if len(blocks) > 1:
        return _coordinate_report(blocks, witness, Matrix.identity(n))

    if trace and is_jordan(M.algebra) and is_nilpotent(M.algebra):
        from .canonical import semi_canonicalize

        R = semi_canonicalize(M)
        blocks = coordinate_blocks(R.result)
        if len(blocks) > 1:
            return _coordinate_report(blocks, witness, R.basis_change)

    if witness is not None and n > 1:
        # span{v} and its γ-complement are both ideals
        g_v = M.gamma.apply(witness)
        complement = mat_kernel(Matrix([g_v]))
        B = Matrix.from_columns([witness] + complement)
        return SplitReport(True, "annihilator", (1,), tuple(range(2, n + 1)), witness, B)
    return SplitReport(False)


def _coordinate_report(blocks, witness, B) -> SplitReport:
    a = blocks[0]
    b = tuple(sorted(i for blk in blocks[1:] for i in blk))
    return SplitReport(True, "coordinate", a, b, witness, B)


# -- skew derivations --------------------------------------------------------


def skew_derivation_dim(M: MetrisedAlgebra) -> int:
    """Dimension of {D : D(x•y) = Dx•y + x•Dy, γ(Dx,y) + γ(x,Dy) = 0}.

    Unknown D_{ij} (D e_j = Σ_i D_{ij} e_i) is variable i*n + j; one linear
    equation per basis pair and output coordinate, one per pair for skewness.
    """
    n = M.dim
    t = M.algebra.table
    g = M.gamma
    rows = []
    for a in range(n):
        for b in range(a, n):
            for d in range(n):
                row = [ZERO] * (n * n)
                for r in range(n):
                    # D(e_a•e_b)_d = Σ_r K^r_{ab} D_{dr}
                    row[d * n + r] += t[a][b][r]
                for i in range(n):
                    # (De_a • e_b)_d and (e_a • De_b)_d
                    row[i * n + a] -= t[i][b][d]
                    row[i * n + b] -= t[a][i][d]
                if any(row):
                    rows.append(row)
            row = [ZERO] * (n * n)
            for i in range(n):
                row[i * n + a] += g[i, b]
                row[i * n + b] += g[a, i]
            if any(row):
                rows.append(row)
    return n * n - (rank(Matrix(rows)) if rows else 0)


# -- signature bounds --------------------------------------------------------


def signature_dimension_bound(n: int, k: int) -> bool:
    """n <= k(k+5)/2, the largest dimension allowed for signature index k."""
    return 2 * n <= k * (k + 5)


def two_block_threshold(m: int, n: int, k: int) -> bool:
    """m >= -3/2 + sqrt(9/4 + 2 max(k, n-k)), compared exactly after squaring."""
    return (2 * m + 3) ** 2 >= 9 + 8 * max(k, n - k)


@dataclass(frozen=True)
class BoundReport:
    n: int
    signature: tuple[int, int]
    k: int
    dimension_bound: int
    dimension_ok: bool
    two_blocks: int
    threshold_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "signature": list(self.signature),
            "k": self.k,
            "dimension_bound": format_rational(Fraction(self.k * (self.k + 5), 2)),
            "dimension_ok": self.dimension_ok,
            "two_blocks": self.two_blocks,
            "threshold_ok": self.threshold_ok,
        }


def dimension_bound_check(M: MetrisedAlgebra, partition=None) -> BoundReport:
    """Compare dim, signature and the number of 2-blocks against the bounds.

    ``partition`` is a semi-canonical partition of M; when omitted, M is
    semi-canonicalized to obtain one. A failed check predicts that M splits.
    """
    n = M.dim
    if n < 2:
        raise PreconditionError("bounds need dimension >= 2")
    if not is_nilpotent(M.algebra):
        raise PreconditionError("bounds apply to nilpotent algebras only")
    pos, neg, _ = sym_signature(M.gamma)
    k = min(pos, neg)
    if partition is None:
        from .canonical import semi_canonicalize

        partition = semi_canonicalize(M).partition
    m = sum(1 for blk in partition if len(blk) == 2)
    return BoundReport(
        n=n,
        signature=(pos, neg),
        k=k,
        dimension_bound=k * (k + 5) // 2,
        dimension_ok=signature_dimension_bound(n, k),
        two_blocks=m,
        threshold_ok=two_block_threshold(m, n, k),
    )


def basis_vector(n: int, i: int) -> tuple:
    """e_i with 1-based ``i``."""
    return unit_vector(n, i - 1)


def gamma_matrix(rows) -> Matrix:
    return Matrix([vec(r) for r in rows])
