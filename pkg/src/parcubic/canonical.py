"""Semi-canonical bases for nilpotent metrised Jordan algebras.

Pipeline: complete the central ascending series to a full flag of ideals,
build a γ-adapted basis along the flag (each new vector is either a
non-isotropic singleton or half of a hyperbolic pair), then permute basis
vectors by legal adjacent swaps until the hyperbolic pairs sit at the nested
outer positions {1,n}, {2,n-1}, ... and the remaining diagonal is sorted.

In the resulting basis, e_a • e_b only involves e_d with d < min(a, b).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, central_ascending_series, is_jordan, is_nilpotent, multiply
from .exactnum import (
    ZERO,
    Matrix,
    PreconditionError,
    format_rational,
    span_contains,
    squarefree_part,
    unit_vector,
)
from .metrised import MetrisedAlgebra, change_basis, is_trace_form

Partition = tuple  # tuple of sorted 1-based index tuples, each of size 1 or 2


@dataclass(frozen=True)
class Flag:
    """Complete flag V_1 ⊂ ... ⊂ V_n with V_k spanned by the first k vectors."""

    vectors: tuple

    @property
    def bases(self) -> list[tuple]:
        return [self.vectors[:k] for k in range(1, len(self.vectors) + 1)]

    def is_ideal_flag(self, A: Algebra) -> bool:
        """x • y ∈ V_{k-1} for every x ∈ V_k and every basis vector y."""
        n = A.dim
        ys = [unit_vector(n, j) for j in range(n)]
        for k, w in enumerate(self.vectors):
            below = self.vectors[:k]
            for y in ys:
                if not span_contains(below, multiply(A, w, y)):
                    return False
        return True


@dataclass(frozen=True)
class CanonicalResult:
    basis_change: Matrix
    result: MetrisedAlgebra
    partition: Partition
    non_unit_diagonal: bool = False

    @property
    def two_blocks(self) -> int:
        return sum(1 for b in self.partition if len(b) == 2)

    def to_json(self) -> dict:
        from .fileformat import metrised_to_json

        return {
            "basis_change": [[format_rational(v) for v in row] for row in self.basis_change],
            "algebra": metrised_to_json(self.result),
            "partition": [list(b) for b in self.partition],
            "non_unit_diagonal": self.non_unit_diagonal,
        }


def complete_flag(A: Algebra) -> Flag:
    """Refine the central ascending series to a complete flag.

    Inside each gap C_k ⊂ C_{k+1}, standard basis vectors lying in C_{k+1}
    are adjoined first (lowest index first), then the computed basis of
    C_{k+1}, skipping anything already in the span.
    """
    series = central_ascending_series(A)
    if not series.terminal:
        raise PreconditionError("algebra is not nilpotent; its central series does not reach the whole space")
    n = A.dim
    vectors: list[tuple] = []
    for sub in series.subspaces[1:]:
        candidates = [unit_vector(n, i) for i in range(n) if span_contains(sub, unit_vector(n, i))]
        candidates += list(sub)
        for c in candidates:
            if len(vectors) == len(sub):
                break
            if not span_contains(vectors, c):
                vectors.append(c)
    flag = Flag(tuple(vectors))
    if len(vectors) != n or not flag.is_ideal_flag(A):
        raise ArithmeticError("flag completion failed its ideal check")
    return flag


def _form(g: Matrix, u: Sequence, v: Sequence) -> Fraction:
    return sum((u[i] * g[i, j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if g[i, j]), ZERO)


def _axpy(c, x: Sequence, y: Sequence) -> tuple:
    """y + c x."""
    return tuple(b + c * a for a, b in zip(x, y))


def can_form_basis(gamma: Matrix, flag: Flag | Sequence) -> tuple[Matrix, Partition, bool]:
    """γ-adapted basis along a complete flag.

    Returns (B, partition, non_unit) where the columns of B are v_1..v_n,
    span{v_1..v_k} = V_k for every k, and γ in this basis is block-diagonal
    per the partition: singletons ±1 and pairs [[0,1],[1,0]]. When a
    singleton value has no rational square root it is left as ±s with s a
    square-free integer and ``non_unit`` is set.
    """
    ws = list(flag.vectors if isinstance(flag, Flag) else flag)
    n = len(ws)
    if gamma.shape != (n, n):
        raise ValueError("gamma and flag dimensions differ")
    out: list[tuple | None] = [None] * n
    blocks: list[tuple[int, ...]] = []
    non_unit = False
    # pending: list of (position, vector) still to be processed, in flag order
    pending = list(enumerate(ws))
    while pending:
        p1, w1 = pending[0]
        q = _form(gamma, w1, w1)
        if q:
            s, c = squarefree_part(q)
            if s != 1:
                non_unit = True
            v1 = tuple(x / c for x in w1)
            out[p1] = v1
            blocks.append((p1 + 1,))
            g11 = _form(gamma, v1, v1)
            pending = [(p, _axpy(-_form(gamma, w, v1) / g11, v1, w)) for p, w in pending[1:]]
            continue
        li = next((i for i in range(1, len(pending)) if _form(gamma, w1, pending[i][1])), None)
        if li is None:
            raise ValueError("gamma is degenerate on the flag")
        pl, wl = pending[li]
        vt = tuple(x / _form(gamma, w1, wl) for x in wl)
        vl = _axpy(-_form(gamma, vt, vt) / 2, w1, vt)
        out[p1] = w1
        out[pl] = vl
        blocks.append((p1 + 1, pl + 1))
        rest = []
        for i, (p, w) in enumerate(pending):
            if i in (0, li):
                continue
            w = _axpy(-_form(gamma, w, vl), w1, w)
            w = _axpy(-_form(gamma, w, w1), vl, w)
            rest.append((p, w))
        pending = rest
    B = Matrix.from_columns(out)
    return B, tuple(sorted(blocks)), non_unit


# -- verification ------------------------------------------------------------


def satisfies_flag_property(A: Algebra) -> bool:
    """K^d_{ab} = 0 whenever d >= min(a, b)."""
    return all(d < min(a, b) for (a, b, d) in A.structure)


def _valid_partition(partition, n: int) -> bool:
    seen = sorted(i for blk in partition for i in blk)
    return seen == list(range(1, n + 1)) and all(len(blk) in (1, 2) for blk in partition)


def verify_semi_canonical(M: MetrisedAlgebra, partition, strict_units: bool = False) -> bool:
    """Flag property on K and the block structure of γ for ``partition``.

    Singleton diagonal entries must be ±1; unless ``strict_units`` is set,
    ±s with s a square-free integer is also accepted, which is the best a
    rational change of basis can reach.
    """
    n = M.dim
    if not _valid_partition(partition, n):
        return False
    if not satisfies_flag_property(M.algebra):
        return False
    g = M.gamma
    where = {i: k for k, blk in enumerate(partition) for i in blk}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if where[i] != where[j] and g[i - 1, j - 1] != 0:
                return False
    for blk in partition:
        if len(blk) == 1:
            v = g[blk[0] - 1, blk[0] - 1]
            if v == 0:
                return False
            if abs(v) != 1:
                if strict_units or v.denominator != 1 or squarefree_part(v)[0] != abs(v):
                    return False
        else:
            i, j = blk[0] - 1, blk[1] - 1
            if g[i, i] != 0 or g[j, j] != 0 or g[i, j] != 1:
                return False
    return True


# -- partition normalization -------------------------------------------------


def _swap_matrix(n: int, i: int) -> Matrix:
    """Permutation exchanging basis positions i and i+1 (1-based)."""
    cols = [unit_vector(n, k) for k in range(n)]
    cols[i - 1], cols[i] = cols[i], cols[i - 1]
    return Matrix.from_columns(cols)


def _relabel(partition, i: int) -> Partition:
    swap = {i: i + 1, i + 1: i}
    return tuple(sorted(tuple(sorted(swap.get(x, x) for x in blk)) for blk in partition))


class _Normalizer:
    def __init__(self, R: CanonicalResult):
        self.B = R.basis_change
        self.M = R.result
        self.S = R.partition
        self.n = R.result.dim

    def block_of(self, i: int) -> tuple:
        return next(b for b in self.S if i in b)

    def swap(self, i: int) -> None:
        P = _swap_matrix(self.n, i)
        M2 = change_basis(self.M, P)
        if not satisfies_flag_property(M2.algebra):
            raise ArithmeticError(f"exchanging e{i}, e{i + 1} broke the flag property")
        self.M = M2
        self.B = self.B @ P
        self.S = _relabel(self.S, i)


def normalize_partition(R: CanonicalResult) -> CanonicalResult:
    """Move hyperbolic pairs to {j, n+1-j} and sort the middle diagonal descending."""
    if not (satisfies_flag_property(R.result.algebra) and _valid_partition(R.partition, R.result.dim)):
        raise PreconditionError("input is not in semi-canonical form")
    st = _Normalizer(R)
    n = st.n
    m = R.two_blocks
    for j in range(1, m + 1):
        target = (j, n + 1 - j)
        if target in st.S:
            continue
        if (j,) in st.S:
            i = j
            while (i + 1,) in st.S:
                i += 1
            partner = st.block_of(i + 1)
            if len(partner) != 2 or min(partner) != i + 1:
                raise ArithmeticError("unexpected partition shape while normalizing")
            for k in range(i, j - 1, -1):
                st.swap(k)
        blk = st.block_of(j)
        i = max(blk)
        while i < n + 1 - j:
            st.swap(i)
            i += 1
    lo, hi = m + 1, n - m
    g = lambda k: st.M.gamma[k - 1, k - 1]
    for end in range(hi, lo, -1):
        for k in range(lo, end):
            if g(k) < g(k + 1):
                st.swap(k)
    return replace(R, basis_change=st.B, result=st.M, partition=st.S)


def semi_canonicalize(M: MetrisedAlgebra) -> CanonicalResult:
    if not is_nilpotent(M.algebra):
        raise PreconditionError("semi-canonical form needs a nilpotent algebra")
    if not is_jordan(M.algebra):
        raise PreconditionError("semi-canonical form needs a Jordan algebra")
    if not is_trace_form(M):
        raise PreconditionError("semi-canonical form needs an invariant form")
    flag = complete_flag(M.algebra)
    B, S, non_unit = can_form_basis(M.gamma, flag)
    R = normalize_partition(CanonicalResult(B, change_basis(M, B), S, non_unit))
    if not verify_semi_canonical(R.result, R.partition):
        raise ArithmeticError("semi-canonicalization produced an invalid form")
    return R


def standard_partition(n: int, m: int) -> Partition:
    """{1,n}, ..., {m, n+1-m} followed by the singletons in between."""
    pairs = [(j, n + 1 - j) for j in range(1, m + 1)]
    singles = [(k,) for k in range(m + 1, n - m + 1)]
    return tuple(sorted(pairs + singles))

