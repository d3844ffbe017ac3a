"""Exact scalar and matrix arithmetic over Q and Z.

Scalars are :class:`fractions.Fraction` and Python ints, both arbitrary
precision.  Matrices are small immutable row-major tables; nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class ExactMathError(ValueError):
    pass


class NotASublattice(ExactMathError):
    pass


class RankMismatch(ExactMathError):
    pass


class RankDeficient(ExactMathError):
    pass


class NotSkew(ExactMathError):
    pass


class OddDimension(ExactMathError):
    pass


def _norm(x) -> Fraction | int:
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


class Matrix:
    """Immutable dense matrix with exact entries.

    Entries are kept as ``int`` when integral and ``Fraction`` otherwise, so
    the same type serves as both the integer and the rational matrix.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_norm(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
            if cols is not None and cols != width:
                raise ValueError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    # construction helpers -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls.zeros(nrows or 0, 0)
        n = len(columns[0])
        return cls(([c[i] for c in columns] for i in range(n)), cols=len(columns))

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._data for x in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})" if self.rows else f"Matrix.zeros(0, {self.cols})"

    # arithmetic -----------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._data), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return Matrix(
            ([sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data),
            cols=other.cols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix(([-a for a in r] for r in self._data), cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return Matrix(([c * a for a in r] for r in self._data), cols=self.cols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix((r + s for r, s in zip(self._data, other._data)), cols=self.cols + other.cols)

    def is_skew(self) -> bool:
        n = self.rows
        return n == self.cols and all(
            self._data[i][j] == -self._data[j][i] for i in range(n) for j in range(i, n)
        )


IntMatrix = Matrix
RatMatrix = Matrix


def _mutable(M: Matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in r] for r in M.tolist()]


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = _mutable(M)
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return Matrix(A, cols=M.cols), pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def det(M: Matrix):
    """Determinant by Bareiss fraction-free elimination (after clearing denominators)."""
    n = M.rows
    if n != M.cols:
        raise ValueError("det of non-square matrix")
    if n == 0:
        return 1
    denom = 1
    for r in M.tolist():
        for x in r:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
    A = [[int(x * denom) for x in r] for r in M.tolist()]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return _norm(Fraction(sign * A[n - 1][n - 1], denom**n))


def rational_kernel(M: Matrix) -> Matrix:
    """Basis of the right null space, as columns in reduced column-echelon form."""
    R, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    if not basis:
        return Matrix.zeros(M.cols, 0)
    # reduced column-echelon shape = transpose of the rref of the row basis
    E, _ = rref(Matrix(basis, cols=M.cols))
    return E.T


# ---------------------------------------------------------------------------
# integer normal forms

def _col_hnf(A: list[list[int]], nrows: int, ncols: int, U: list[list[int]] | None = None) -> list[int]:
    """In-place column Hermite reduction of ``A`` (list of rows).

    Unimodular column operations are mirrored into ``U`` when given.  Returns
    the pivot row of each leading column; the remaining columns are zero.
    Pivots are positive and entries left of each pivot lie in ``[0, pivot)``.
    """

    def colop_swap(i, j):
        for M in (A, U) if U is not None else (A,):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def colop_addmul(dst, src, k):
        # col[dst] += k * col[src]
        for M in (A, U) if U is not None else (A,):
            for r in M:
                r[dst] += k * r[src]

    def colop_neg(j):
        for M in (A, U) if U is not None else (A,):
            for r in M:
                r[j] = -r[j]

    pivrows: list[int] = []
    c = 0
    for r in range(nrows):
        if c == ncols:
            break
        while True:
            nz = [j for j in range(c, ncols) if A[r][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda j: (abs(A[r][j]), j))
            if j != c:
                colop_swap(c, j)
            done = True
            for j in range(c + 1, ncols):
                if A[r][j]:
                    colop_addmul(j, c, -(A[r][j] // A[r][c]))
                    if A[r][j]:
                        done = False
            if done:
                break
        if all(A[r][j] == 0 for j in range(c, ncols)):
            continue
        if A[r][c] < 0:
            colop_neg(c)
        p = A[r][c]
        for j in range(c):
            q = A[r][j] // p
            if q:
                colop_addmul(j, c, -q)
        pivrows.append(r)
        c += 1
    return pivrows


def hermite_columns(B: Matrix) -> Matrix:
    """Column Hermite normal form of an integer matrix with independent columns."""
    if not B.is_integral():
        raise ValueError("hermite_columns needs an integer matrix")
    A = B.tolist()
    piv = _col_hnf(A, B.rows, B.cols)
    return Matrix(([r[j] for j in range(len(piv))] for r in A), cols=len(piv))


def integer_kernel(M: Matrix) -> Matrix:
    """Z-basis of ker(M) ∩ Z^c, in column Hermite form."""
    if not M.is_integral():
        raise ValueError("integer_kernel needs an integer matrix")
    c = M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(c)] for i in range(c)]
    piv = _col_hnf(A, M.rows, c, U)
    k0 = len(piv)
    K = Matrix(([r[j] for j in range(k0, c)] for r in U), cols=c - k0)
    if K.cols == 0:
        return Matrix.zeros(c, 0)
    return hermite_columns(K)


def smith_invariants(M: Matrix) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    if not M.is_integral():
        raise ValueError("smith_invariants needs an integer matrix")
    A = M.tolist()
    m, n = M.rows, M.cols
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for r in A:
            r[t], r[pj] = r[pj], r[t]
        while True:
            changed = False
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    changed = True
                    break
            if changed:
                continue
            p = A[t][t]
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    for r in A:
                        r[t], r[j] = r[j], r[t]
                    changed = True
                    break
            if changed:
                continue
            # enforce divisibility on the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def solve_rational(A: Matrix, B: Matrix) -> Matrix | None:
    """Exact X with A X = B for full-column-rank A, or None if inconsistent."""
    aug = A.hstack(B)
    R, pivots = rref(aug)
    if any(p >= A.cols for p in pivots):
        return None
    if len(pivots) < A.cols:
        raise RankDeficient("coefficient matrix has dependent columns")
    return Matrix(([R[i, A.cols + j] for j in range(B.cols)] for i in range(A.cols)), cols=B.cols)


def sublattice_index(sub: Matrix, ambient: Matrix) -> int:
    """Index [ambient : sub] of two lattices given by column bases."""
    if sub.rows != ambient.rows:
        raise ValueError("lattices live in different ambient spaces")
    if rank(ambient) != ambient.cols or rank(sub) != sub.cols:
        raise RankDeficient("basis columns are dependent")
    if sub.cols != ambient.cols:
        raise RankMismatch(f"rank {sub.cols} vs {ambient.cols}: index is infinite")
    X = solve_rational(ambient, sub)
    if X is None or not X.is_integral():
        raise NotASublattice("sub is not contained in ambient")
    if X.cols == 0:
        return 1
    inv = smith_invariants(X)
    if len(inv) < X.cols:
        raise RankMismatch("coordinate matrix is singular")
    out = 1
    for d in inv:
        out *= d
    return out


def gram_det(B: Matrix):
    """det(Bᵀ B): the squared Euclidean covolume of the lattice spanned by B's columns."""
    g = det(B.T @ B)
    if g == 0:
        raise RankDeficient("columns are linearly dependent")
    return g


def pfaffian(A: Matrix):
    """Pfaffian of a skew-symmetric matrix by exact 2x2-block elimination.

    At each step the lowest-index nonzero entry below the leading 2x2 block is
    swapped into position (k+1, k), then the Schur complement is formed.
    """
    n = A.rows
    if n != A.cols or not A.is_skew():
        raise NotSkew("matrix is not skew-symmetric")
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    M = _mutable(A)
    pf = Fraction(1)
    for k in range(0, n, 2):
        p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
        if p is None:
            return 0
        if p != k + 1:
            M[k + 1], M[p] = M[p], M[k + 1]
            for r in M:
                r[k + 1], r[p] = r[p], r[k + 1]
            pf = -pf
        a = M[k][k + 1]
        pf *= a
        rk, rk1 = M[k], M[k + 1]
        for i in range(k + 2, n):
            ci0, ci1 = rk[i], rk1[i]
            if not ci0 and not ci1:
                continue
            row = M[i]
            for j in range(k + 2, n):
                row[j] += (ci1 * rk[j] - ci0 * rk1[j]) / a
    return _norm(pf)
