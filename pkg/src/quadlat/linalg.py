"""Exact integer and rational matrix kernels.

All arithmetic runs over Python's arbitrary-precision ints and
``fractions.Fraction``; there is no floating point and no overflow.
Matrices are immutable values, so every routine here is a pure function.

The normal forms use the naive pivot-reduction algorithms (good to rank
~32, which is all this toolkit needs) rather than modular or
LLL-accelerated variants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from operator import index as _as_index
from typing import Iterable, Sequence

from .errors import NonSquare, SingularMatrix


class IntMatrix:
    """Immutable matrix with arbitrary-precision integer entries.

    Rows are exposed as tuples: ``m[i][j]`` is the entry in row i,
    column j.  An explicit ``ncols`` is required when there are no rows.
    """

    __slots__ = ("_data", "_ncols")

    def __init__(self, rows: Iterable[Sequence[int]], *, ncols: int | None = None):
        data = []
        for row in rows:
            t = tuple(_as_index(x) for x in row)
            if ncols is None:
                ncols = len(t)
            elif len(t) != ncols:
                raise ValueError("ragged rows")
            data.append(t)
        if ncols is None:
            raise ValueError("empty matrix needs an explicit ncols")
        self._data = tuple(data)
        self._ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def nrows(self) -> int:
        return len(self._data)

    @property
    def ncols(self) -> int:
        return self._ncols

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "IntMatrix":
        n, m = self.nrows, self._ncols
        return IntMatrix([[self._data[i][j] for i in range(n)] for j in range(m)], ncols=n)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self._ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = other.transpose()
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._data],
            ncols=other.ncols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows or self._ncols != other.ncols:
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._data, other._data)],
            ncols=self._ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        k = _as_index(k)
        return IntMatrix([[k * x for x in row] for row in self._data], ncols=self._ncols)

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self._ncols != other.ncols:
            raise ValueError("shape mismatch in vertical stack")
        return IntMatrix(list(self._data) + list(other._data), ncols=self._ncols)

    def is_symmetric(self) -> bool:
        if self.nrows != self._ncols:
            return False
        return all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self._ncols)
        )

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(self._data, ncols=self._ncols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self._ncols == other._ncols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self._ncols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


class RatMatrix:
    """Immutable matrix of exact rationals.

    ``Fraction`` keeps every entry in lowest terms with a positive
    denominator, so the canonical-form invariants hold by construction.
    """

    __slots__ = ("_data", "_ncols")

    def __init__(self, rows: Iterable[Sequence], *, ncols: int | None = None):
        data = []
        for row in rows:
            t = tuple(Fraction(x) for x in row)
            if ncols is None:
                ncols = len(t)
            elif len(t) != ncols:
                raise ValueError("ragged rows")
            data.append(t)
        if ncols is None:
            raise ValueError("empty matrix needs an explicit ncols")
        self._data = tuple(data)
        self._ncols = ncols

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @property
    def nrows(self) -> int:
        return len(self._data)

    @property
    def ncols(self) -> int:
        return self._ncols

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def __iter__(self):
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "RatMatrix":
        n, m = self.nrows, self._ncols
        return RatMatrix([[self._data[i][j] for i in range(n)] for j in range(m)], ncols=n)

    def __matmul__(self, other) -> "RatMatrix":
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self._ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = other.transpose()
        return RatMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._data],
            ncols=other.ncols,
        )

    def __rmatmul__(self, other) -> "RatMatrix":
        if isinstance(other, IntMatrix):
            return other.to_rat() @ self
        return NotImplemented

    def stack(self, other: "RatMatrix") -> "RatMatrix":
        if self._ncols != other.ncols:
            raise ValueError("shape mismatch in vertical stack")
        return RatMatrix(list(self._data) + list(other._data), ncols=self._ncols)

    def scale(self, k) -> "RatMatrix":
        k = Fraction(k)
        return RatMatrix([[k * x for x in row] for row in self._data], ncols=self._ncols)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._data for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix([[x.numerator for x in row] for row in self._data], ncols=self._ncols)

    def common_denominator(self) -> int:
        d = 1
        for row in self._data:
            for x in row:
                d = d * x.denominator // gcd(d, x.denominator)
        return d

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self._ncols == other._ncols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self._ncols, self._data))

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(x) for x in row] for row in self._data]!r})"


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    """Block-diagonal assembly of integer matrices."""
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = [[0] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            out[r0 + i][c0 : c0 + b.ncols] = list(b[i])
        r0 += b.nrows
        c0 += b.ncols
    return IntMatrix(out, ncols=ncols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a·x + b·y and g ≥ 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _ident_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _addmul_row(rows: list[list[int]], dst: int, src: int, k: int) -> None:
    if k:
        rdst, rsrc = rows[dst], rows[src]
        for j in range(len(rdst)):
            rdst[j] += k * rsrc[j]


def _gcd_row_op(mat: list[list[int]], trans: list[list[int]], pr: int, i: int, col: int) -> None:
    # Unimodular 2-row operation putting gcd(mat[pr][col], mat[i][col])
    # at (pr, col) and zero at (i, col).
    a, b = mat[pr][col], mat[i][col]
    if b == 0:
        return
    if a == 0:
        mat[pr], mat[i] = mat[i], mat[pr]
        trans[pr], trans[i] = trans[i], trans[pr]
        return
    if b % a == 0:
        q = b // a
        _addmul_row(mat, i, pr, -q)
        _addmul_row(trans, i, pr, -q)
        return
    g, x, y = _xgcd(a, b)
    af, bf = a // g, b // g
    for m in (mat, trans):
        rp, ri = m[pr], m[i]
        m[pr] = [x * p + y * q for p, q in zip(rp, ri)]
        m[i] = [-bf * p + af * q for p, q in zip(rp, ri)]


def _gcd_col_op(mat: list[list[int]], trans: list[list[int]], pc: int, j: int, row: int) -> None:
    # Column analogue of _gcd_row_op; trans accumulates the right factor.
    a, b = mat[row][pc], mat[row][j]
    if b == 0:
        return
    if a == 0:
        for m in (mat, trans):
            for r in m:
                r[pc], r[j] = r[j], r[pc]
        return
    if b % a == 0:
        q = b // a
        for m in (mat, trans):
            for r in m:
                r[j] -= q * r[pc]
        return
    g, x, y = _xgcd(a, b)
    af, bf = a // g, b // g
    for m in (mat, trans):
        for r in m:
            p, q = r[pc], r[j]
            r[pc] = x * p + y * q
            r[j] = -bf * p + af * q


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns (U, S, V) with U·m·V = S, U and V unimodular, and S diagonal
    with non-negative invariant factors d1 | d2 | ... ; zero factors come
    last.
    """
    r, c = m.nrows, m.ncols
    S = m.tolist()
    U = _ident_rows(r)
    V = _ident_rows(c)
    t = 0
    while t < min(r, c):
        # pivot: nonzero entry of smallest magnitude in the working block
        piv = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = S[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            S[t], S[pi] = S[pi], S[t]
            U[t], U[pi] = U[pi], U[t]
        if pj != t:
            for mm in (S, V):
                for row in mm:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, r):
                _gcd_row_op(S, U, t, i, t)
            for j in range(t + 1, c):
                _gcd_col_op(S, V, t, j, t)
            if any(S[i][t] for i in range(t + 1, r)):
                continue  # column ops re-dirtied the pivot column
            p = S[t][t]
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _addmul_row(S, t, bad, 1)
            _addmul_row(U, t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return IntMatrix(U, ncols=r), IntMatrix(S, ncols=c), IntMatrix(V, ncols=c)


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form with transform.

    Returns (H, T) with T·m = H and T unimodular.  Normalization: pivots
    positive, entries above a pivot reduced into [0, pivot), zero rows
    last.  This makes H unique for the row lattice of m, so the form is
    idempotent.
    """
    r, c = m.nrows, m.ncols
    H = m.tolist()
    T = _ident_rows(r)
    prow = 0
    for col in range(c):
        if prow >= r:
            break
        # smallest-magnitude nonzero below the pivot row keeps entries small
        piv = None
        best = None
        for i in range(prow, r):
            v = H[i][col]
            if v and (best is None or abs(v) < best):
                best = abs(v)
                piv = i
        if piv is None:
            continue
        if piv != prow:
            H[prow], H[piv] = H[piv], H[prow]
            T[prow], T[piv] = T[piv], T[prow]
        for i in range(prow + 1, r):
            _gcd_row_op(H, T, prow, i, col)
        if H[prow][col] < 0:
            H[prow] = [-x for x in H[prow]]
            T[prow] = [-x for x in T[prow]]
        p = H[prow][col]
        for i in range(prow):
            q = H[i][col] // p  # floor division leaves a remainder in [0, p)
            _addmul_row(H, i, prow, -q)
            _addmul_row(T, i, prow, -q)
        prow += 1
    return IntMatrix(H, ncols=c), IntMatrix(T, ncols=r)


def det_exact(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.nrows != m.ncols:
        raise NonSquare(f"determinant needs a square matrix, got {m.nrows}x{m.ncols}")
    n = m.nrows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def rank_int(m: IntMatrix) -> int:
    """Rank over the rationals (= number of nonzero HNF rows)."""
    H, _ = hermite_normal_form(m)
    return sum(1 for row in H if any(row))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Saturated basis of the left kernel {x ∈ ℤ^r : x·m = 0}.

    The rows of the unimodular HNF transform that correspond to zero rows
    of H span the kernel exactly, hence the result is a primitive
    sublattice of ℤ^r.  Rows are HNF-normalized for determinism.
    """
    r = m.nrows
    H, T = hermite_normal_form(m)
    rank = sum(1 for row in H if any(row))
    ker = [T[i] for i in range(rank, r)]
    if not ker:
        return IntMatrix([], ncols=r)
    Hk, _ = hermite_normal_form(IntMatrix(ker, ncols=r))
    return Hk


def solve_rational(m: IntMatrix, b: RatMatrix | IntMatrix) -> RatMatrix:
    """Exact solution x of m·x = b for square non-singular m."""
    if m.nrows != m.ncols:
        raise NonSquare(f"solve needs a square matrix, got {m.nrows}x{m.ncols}")
    if isinstance(b, IntMatrix):
        b = b.to_rat()
    n = m.nrows
    if b.nrows != n:
        raise ValueError("right-hand side has wrong number of rows")
    k = b.ncols
    aug = [[Fraction(m[i][j]) for j in range(n)] + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        pval = aug[col][col]
        for i in range(n):
            if i == col:
                continue
            f = aug[i][col] / pval
            if f:
                row_i, row_c = aug[i], aug[col]
                for j in range(col, n + k):
                    row_i[j] -= f * row_c[j]
    return RatMatrix([[aug[i][n + j] / aug[i][i] for j in range(k)] for i in range(n)], ncols=k)


def invert_rational(m: IntMatrix) -> RatMatrix:
    """Exact inverse of a square integer matrix."""
    return solve_rational(m, IntMatrix.identity(m.nrows))
