"""Dense exact linear algebra over a :class:`FieldSpec`.

Vectors are plain tuples of field elements.  Matrices and subspaces are
immutable; a :class:`Subspace` always stores its basis in canonical reduced
row echelon form, so two spanning sets of the same space compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import FieldSpec

Vector = tuple


class DimensionError(ValueError):
    pass


# -- vectors -----------------------------------------------------------------

def zero_vector(field: FieldSpec, n: int) -> Vector:
    z = field.zero
    return (z,) * n


def unit_vector(field: FieldSpec, n: int, k: int) -> Vector:
    z, o = field.zero, field.one
    return tuple(o if i == k else z for i in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"length {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"length {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vneg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Vector) -> bool:
    return not any(v)


def combination(coeffs: Sequence, vectors: Sequence[Vector], field: FieldSpec, n: int) -> Vector:
    out = [field.zero] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] = out[i] + c * a
    return tuple(out)


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple  # tuple of row tuples
    ncols: int

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None) -> "Matrix":
        rows = tuple(tuple(field(a) for a in r) for r in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("cannot infer column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        return cls(field, rows, ncols)

    @classmethod
    def from_columns(cls, field: FieldSpec, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        if any(len(c) != nrows for c in cols):
            raise DimensionError("ragged matrix")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(field, rows, len(cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple(unit_vector(field, n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Matrix":
        return cls(field, tuple(zero_vector(field, ncols) for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, k: int) -> Vector:
        return tuple(r[k] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(k) for k in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tuple(self.columns()), self.nrows)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        z = self.field.zero
        out = []
        for r in self.rows:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        rows = tuple(tuple(_dot(r, c, self.field) for c in cols) for r in self.rows)
        return Matrix(self.field, rows, other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape {self.shape} != {other.shape}")
        return Matrix(self.field, tuple(vadd(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape {self.shape} != {other.shape}")
        return Matrix(self.field, tuple(vsub(a, b) for a, b in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, tuple(vscale(c, r) for r in self.rows), self.ncols)

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.rows)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)


def _dot(u, v, field):
    s = field.zero
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical reduced row echelon form and its pivot columns.

    Elimination scans columns left to right and takes the topmost usable row
    as pivot; zero rows are dropped from the result.
    """
    rows = [list(r) for r in m.rows]
    pivots = []
    top = 0
    for col in range(m.ncols):
        piv = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        inv = m.field.one / prow[col]
        prow = [a * inv for a in prow]
        rows[top] = prow
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    out = tuple(tuple(r) for r in rows[:top])
    return Matrix(m.field, out, m.ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> "Subspace":
    """Null space ``{x : m x = 0}`` as a canonical subspace of F^ncols."""
    r, pivots = rref(m)
    n = m.ncols
    f = m.field
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [f.zero] * n
        v[fc] = f.one
        for row, pc in zip(r.rows, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return Subspace.span(f, n, basis)


def eigenspace(m: Matrix, lam) -> "Subspace":
    if m.nrows != m.ncols:
        raise DimensionError("eigenspace of a non-square matrix")
    return kernel(m - Matrix.identity(m.field, m.ncols).scale(lam))


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise DimensionError("inverse of a non-square matrix")
    aug = Matrix(m.field, tuple(r + e for r, e in zip(m.rows, Matrix.identity(m.field, n).rows)), 2 * n)
    r, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)) or len(r.rows) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(m.field, tuple(row[n:] for row in r.rows), n)


def solve(m: Matrix, b: Vector) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    aug = Matrix(m.field, tuple(r + (bi,) for r, bi in zip(m.rows, b)), m.ncols + 1)
    r, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [m.field.zero] * m.ncols
    for row, pc in zip(r.rows, pivots):
        x[pc] = row[-1]
    return tuple(x)


# -- subspaces ---------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient, stored as the canonical RREF of a spanning set."""

    field: FieldSpec
    ambient: int
    basis: tuple  # RREF rows

    @classmethod
    def span(cls, field: FieldSpec, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in F^{ambient}")
        if not vectors:
            return cls(field, ambient, ())
        r, _ = rref(Matrix.from_rows(field, vectors, ambient))
        return cls(field, ambient, r.rows)

    @classmethod
    def zero(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient: int) -> "Subspace":
        return cls(field, ambient, Matrix.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(r) if a) for r in self.basis)

    def contains(self, x: Vector) -> bool:
        if len(x) != self.ambient:
            raise DimensionError(f"vector of length {len(x)} in F^{self.ambient}")
        # reduce x by the RREF rows; x is inside iff nothing is left
        x = list(x)
        for row, pc in zip(self.basis, self.pivots()):
            c = x[pc]
            if c:
                x = [a - c * b for a, b in zip(x, row)]
        return not any(x)

    __contains__ = contains

    def coordinates(self, x: Vector) -> tuple | None:
        """Coefficients of ``x`` in the stored basis, or None if ``x`` is outside."""
        if not self.contains(x):
            return None
        return tuple(x[pc] for pc in self.pivots())

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise DimensionError(f"ambient {self.ambient} != {other.ambient}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient)
        # x = sum a_i u_i = sum b_j v_j  <=>  [U^T | -V^T] (a, b) = 0
        k = self.dim
        cols = list(self.basis) + [vneg(v) for v in other.basis]
        ker = kernel(Matrix.from_columns(self.field, cols, self.ambient))
        vecs = [combination(c[:k], self.basis, self.field, self.ambient) for c in ker.basis]
        return Subspace.span(self.field, self.ambient, vecs)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def contains(u: Subspace, x: Vector) -> bool:
    return u.contains(x)


def is_direct_sum(parts: Sequence[Subspace], ambient: int) -> bool:
    """True iff the parts' dimensions add up to ``ambient`` and they span it."""
    parts = list(parts)
    if any(p.ambient != ambient for p in parts):
        raise DimensionError("ambient mismatch")
    if sum(p.dim for p in parts) != ambient:
        return False
    if not parts:
        return ambient == 0
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total.dim == ambient
