"""Exact linear algebra over Q and Q(sqrt d).

The working engine is :class:`RowReducer`, an incremental reduced row echelon
form on sparse rows (``dict`` column -> scalar).  Pivot rows are kept fully
reduced against each other, so reducing a new row takes a single pass over
its pivot columns.  Division is exact field division.

:func:`bareiss_rank` is a dense fraction-free elimination with a different
pivot order; it is kept as an independent oracle for tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

SparseRow = dict


def _nz(x) -> bool:
    return bool(x)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of exact scalars."""

    nrows: int
    ncols: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "ExactMatrix":
        rows = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols, tuple((Fraction(0),) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.ncols, self.nrows,
                           tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                                 for j in range(self.ncols)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.T.rows
        return ExactMatrix(self.nrows, other.ncols, tuple(
            tuple(dot(r, c) for c in cols) for r in self.rows))

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return [dot(r, v) for r in self.rows]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(_nz(x) for r in self.rows for x in r)

    def sparse_rows(self) -> list[SparseRow]:
        return [{j: x for j, x in enumerate(r) if _nz(x)} for r in self.rows]

    def rank(self) -> int:
        return rank_and_kernel(self)[0]


def dot(u: Sequence, v: Sequence):
    acc = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


class RowReducer:
    """Incrementally maintained reduced row echelon form.

    ``priority`` maps a column to a sort key; among the nonzero columns of a
    new residual the smallest key becomes the pivot.  Columns listed in
    ``forbidden`` never become pivots (used for right-hand sides).
    """

    def __init__(self, ncols: int, priority: Callable[[int], object] | None = None,
                 forbidden: Iterable[int] = ()):
        self.ncols = ncols
        self.priority = priority or (lambda c: c)
        self.forbidden = frozenset(forbidden)
        self.pivots: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "RowReducer":
        other = RowReducer(self.ncols, self.priority, self.forbidden)
        other.pivots = {c: dict(r) for c, r in self.pivots.items()}
        return other

    def reduce(self, row: SparseRow) -> SparseRow:
        """Residual of ``row`` modulo the current row space (normal form)."""
        row = {c: x for c, x in row.items() if x}
        hits = [c for c in row if c in self.pivots]
        for c in hits:
            coef = row.get(c)
            if not coef:
                continue
            for k, x in self.pivots[c].items():
                v = row.get(k, 0) - coef * x
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
        return row

    def add(self, row: SparseRow) -> bool:
        """Insert a row; returns False if it was already in the row space.

        Raises ``InconsistentRow`` when the residual lives only on forbidden
        columns.
        """
        res = self.reduce(row)
        if not res:
            return False
        allowed = [c for c in res if c not in self.forbidden]
        if not allowed:
            raise InconsistentRow(res)
        piv = min(allowed, key=self.priority)
        lead = res[piv]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        res = {k: x * inv for k, x in res.items()}
        for prow in self.pivots.values():
            coef = prow.get(piv)
            if coef:
                for k, x in res.items():
                    v = prow.get(k, 0) - coef * x
                    if v:
                        prow[k] = v
                    else:
                        prow.pop(k, None)
        self.pivots[piv] = res
        return True

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)

    def kernel(self, columns: Sequence[int] | None = None) -> list[SparseRow]:
        """Basis of the null space, one vector per free column.

        Vectors are ordered by column priority of their free column.
        """
        cols = range(self.ncols) if columns is None else columns
        free = sorted((c for c in cols if c not in self.pivots and c not in self.forbidden),
                      key=self.priority)
        out = []
        for f in free:
            v = {f: Fraction(1)}
            for p, prow in self.pivots.items():
                x = prow.get(f)
                if x:
                    v[p] = -x
            out.append(v)
        return out

    def basis(self) -> list[SparseRow]:
        return [self.pivots[c] for c in sorted(self.pivots, key=self.priority)]


class InconsistentRow(ArithmeticError):
    def __init__(self, residual):
        super().__init__("row reduces to a nonzero right-hand side only")
        self.residual = residual


def to_dense(row: SparseRow, n: int, zero=Fraction(0)) -> list:
    out = [zero] * n
    for k, x in row.items():
        out[k] = x
    return out


def rank_and_kernel(m: ExactMatrix) -> tuple[int, list[list]]:
    """Rank of ``m`` and a basis of its kernel, as dense vectors."""
    red = RowReducer(m.ncols)
    for r in m.sparse_rows():
        red.add(r)
    ker = [to_dense(v, m.ncols) for v in red.kernel()]
    return red.rank, ker


def sparse_rank(rows: Iterable[SparseRow], ncols: int) -> int:
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return red.rank


def solve_linear(m: ExactMatrix, rhs: Sequence):
    """Solve ``m x = rhs``; returns a list or ``None`` when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs has length {len(rhs)}, matrix has {m.nrows} rows")
    sols = solve_many(m.sparse_rows(), m.ncols, [list(rhs)])
    return sols[0]


def solve_many(rows: Sequence[SparseRow], ncols: int, rhss: Sequence[Sequence]):
    """Solve ``A x = b`` for several right-hand sides at once.

    ``rows`` are sparse rows of A.  Returns one dense solution (or ``None``)
    per right-hand side.
    """
    k = len(rhss)
    red = RowReducer(ncols + k, forbidden=range(ncols, ncols + k))
    bad = set()
    for i, r in enumerate(rows):
        aug = dict(r)
        for j, b in enumerate(rhss):
            if b[i]:
                aug[ncols + j] = b[i]
        try:
            red.add(aug)
        except InconsistentRow as exc:
            bad.update(c - ncols for c in exc.residual)
    out = []
    for j in range(k):
        if j in bad:
            out.append(None)
            continue
        x = [Fraction(0)] * ncols
        for p, prow in red.pivots.items():
            x[p] = prow.get(ncols + j, Fraction(0))
        out.append(x)
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Fraction-free rank with bottom-right-first pivoting (test oracle)."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    prev = Fraction(1)
    rank = 0
    row_used = [False] * nr
    for col in reversed(range(nc)):
        piv = None
        for i in reversed(range(nr)):
            if not row_used[i] and a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        row_used[piv] = True
        rank += 1
        p = a[piv][col]
        for i in range(nr):
            if row_used[i]:
                continue
            f = a[i][col]
            a[i] = [(p * a[i][j] - f * a[piv][j]) / prev for j in range(nc)]
        prev = p
    return rank


def determinant(rows: Sequence[Sequence]):
    """Determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sgn = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] * sgn


def inverse(rows: Sequence[Sequence]) -> list[list]:
    n = len(rows)
    sparse = [{j: x for j, x in enumerate(r) if x} for r in rows]
    if sparse_rank(sparse, n) < n:
        raise ZeroDivisionError("singular matrix")
    cols = solve_many(sparse, n, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def row_space_basis(rows: Iterable[Sequence], ncols: int) -> list[list]:
    """Independent subset of ``rows`` (greedy, in order)."""
    red = RowReducer(ncols)
    keep = []
    for r in rows:
        if red.add({j: x for j, x in enumerate(r) if x}):
            keep.append(list(r))
    return keep


def annihilator(vectors: Sequence[Sequence], n: int) -> list[list]:
    """Basis of linear forms vanishing on span(vectors), in R^n."""
    red = RowReducer(n)
    for v in vectors:
        red.add({j: x for j, x in enumerate(v) if x})
    return [to_dense(k, n) for k in red.kernel()]
