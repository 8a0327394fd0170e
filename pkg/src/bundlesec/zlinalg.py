"""Exact integer linear algebra: Smith normal form, cokernels, lattice membership.

Everything here works over plain Python ints (arbitrary precision), since
intermediate entries in a Smith reduction can grow well past 64 bits.  The
pivoting strategy (always move the minimal nonzero entry to the pivot) is
deterministic, which keeps canonical coordinates stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    rows: int
    cols: int
    data: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return IntMatrix(nrows, ncols, data)

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        if cols:
            rows = len(cols[0])
        elif rows is None:
            raise ValueError("need explicit row count for an empty column list")
        data = tuple(tuple(int(col[i]) for col in cols) for i in range(rows))
        return IntMatrix(rows, len(cols), data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        odata = other.data
        out = []
        for row in self.data:
            out.append(tuple(
                sum(row[k] * odata[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in matrix sum")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)
        ))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def column(self, j: int) -> Vector:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> Tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(row[j] * v[j] for j in range(self.cols)) for row in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def determinant(self) -> int:
        """Fraction-free Bareiss elimination; exact for any integer matrix."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.determinant() in (1, -1)

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a determinant +-1 matrix, exactly over the integers."""
        dec = smith_normal_form(self)
        if not dec.D.is_identity():
            raise ValueError("matrix is not invertible over the integers")
        return dec.V @ dec.U

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.data)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> Tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.data[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Diagonalize by row/column operations, pivoting on the minimal nonzero entry."""
    r, c = m.rows, m.cols
    a = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        # row[dst] += q * row[src]
        arow, srow = a[dst], a[src]
        for k in range(c):
            arow[k] += q * srow[k]
        urow, usrc = u[dst], u[src]
        for k in range(r):
            urow[k] += q * usrc[k]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(r, c)
    while t < limit:
        # locate the minimal nonzero entry in the trailing submatrix
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, r):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                addmul_row(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, c):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                addmul_col(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue  # pivot strictly shrank; re-select

        # pivot must divide the whole trailing block for the chain to hold
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, 1)
            continue
        t += 1

    d = IntMatrix.from_rows(a)
    return SmithDecomposition(IntMatrix.from_rows(u), d, IntMatrix.from_rows(v))


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``invariant_factors`` lists torsion factors (each >= 2, divisibility chain)
    followed by zeros, one per infinite cyclic factor.  ``projection`` maps an
    ambient vector to canonical coordinates; coordinate i is taken mod the
    i-th factor when that factor is nonzero.
    """

    invariant_factors: Tuple[int, ...]
    projection: IntMatrix

    def __post_init__(self) -> None:
        fs = self.invariant_factors
        for f in fs:
            if f < 0 or f == 1:
                raise ValueError(f"invalid invariant factor {f}")
        for x, y in zip(fs, fs[1:]):
            if x == 0 and y != 0:
                raise ValueError("free factors must come last")
            if x != 0 and y != 0 and y % x != 0:
                raise ValueError("divisibility chain violated")
        if self.projection.rows != len(fs):
            raise ValueError("projection row count must equal factor count")

    @property
    def rank(self) -> int:
        return sum(1 for f in self.invariant_factors if f == 0)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(f for f in self.invariant_factors if f != 0)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def project(self, v: Sequence[int]) -> Vector:
        raw = self.projection.apply(v)
        return tuple(x % f if f else x for x, f in zip(raw, self.invariant_factors))

    def is_zero_class(self, v: Sequence[int]) -> bool:
        return all(x == 0 for x in self.project(v))

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{f}" for f in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: IntMatrix) -> AbelianGroup:
    """The quotient Z^rows / im(m), with its canonical projection."""
    dec = smith_normal_form(m)
    diag = dec.diagonal()
    torsion_rows = [i for i, d in enumerate(diag) if d >= 2]
    free_rows = [i for i, d in enumerate(diag) if d == 0] + list(range(len(diag), m.rows))
    factors = tuple(diag[i] for i in torsion_rows) + tuple(0 for _ in free_rows)
    proj_rows = [dec.U.data[i] for i in torsion_rows + free_rows]
    projection = IntMatrix(len(factors), m.rows, tuple(tuple(r) for r in proj_rows))
    return AbelianGroup(factors, projection)


def kernel_basis(m: IntMatrix) -> Tuple[Vector, ...]:
    """A lattice basis of { v : m @ v == 0 }."""
    dec = smith_normal_form(m)
    diag = dec.diagonal()
    free = [j for j, d in enumerate(diag) if d == 0] + list(range(len(diag), m.cols))
    return tuple(dec.V.column(j) for j in free)


def solve(m: IntMatrix, v: Sequence[int]) -> Optional[Vector]:
    """One integer solution x of m @ x == v, or None if there is none."""
    if len(v) != m.rows:
        raise ValueError("dimension mismatch")
    dec = smith_normal_form(m)
    w = dec.U.apply(v)
    diag = dec.diagonal()
    y = [0] * m.cols
    for i, wi in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if wi != 0:
                return None
        else:
            if wi % d != 0:
                return None
            if i < m.cols:
                y[i] = wi // d
    return dec.V.apply(y)


def submodule_membership(gens: Sequence[Sequence[int]], v: Sequence[int]):
    """Is v in the integer span of gens?  Returns (bool, witness-or-None)."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != len(v):
            raise ValueError("dimension mismatch")
    m = IntMatrix.from_columns(gens, rows=len(v))
    x = solve(m, v)
    return (x is not None), x


def quotient_class(v: Sequence[int], gens: Sequence[Sequence[int]]) -> Vector:
    """Canonical coordinates of v in Z^n / span(gens)."""
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != len(v):
            raise ValueError("dimension mismatch")
    m = IntMatrix.from_columns(gens, rows=len(v))
    return cokernel(m).project(v)


def direct_sum(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    """Canonical invariant factors of a (+) b."""
    fs = list(a.invariant_factors) + list(b.invariant_factors)
    n = len(fs)
    diag = IntMatrix(n, n, tuple(tuple(fs[i] if i == j else 0 for j in range(n)) for i in range(n)))
    return cokernel(diag)


def invariant_factors_by_minors(m: IntMatrix) -> Tuple[int, ...]:
    """Invariant factors via gcds of k x k minors; an independent cross-check.

    Only usable for small matrices (exponential in the dimensions).
    """
    from itertools import combinations
    from math import gcd

    diag = []
    prev = 1
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                sub = IntMatrix.from_rows([[m.data[i][j] for j in cols] for i in rows])
                g = gcd(g, sub.determinant())
        if g == 0:
            break
        diag.append(g // prev)
        prev = g
    return tuple(diag)
