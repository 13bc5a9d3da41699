"""Canonical enumeration of the elements of an algebra over F_p.

Element ``x = (x_0, ..., x_{n-1})`` has index ``sum x_k p^(n-1-k)``: the
coordinate tuples in lexicographic order.  Arithmetic on indices runs on
plain ints, which is what the exhaustive checks and searches need.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraError
from .field import Mod
from .linalg import Vector

# full multiplication tables are built eagerly up to this many elements
EAGER_TABLE_LIMIT = 512


class IndexedAlgebra:
    def __init__(self, alg: Algebra):
        if alg.field.is_rational:
            raise AlgebraError("element enumeration needs a finite field")
        self.algebra = alg
        self.p = p = alg.field.modulus
        self.n = n = alg.dim
        self.size = p ** n
        self._digits = [self._to_digits(i) for i in range(self.size)]
        self._weights = [p ** (n - 1 - k) for k in range(n)]
        # c[a][b] = ((k, coeff), ...) with int coefficients
        self._consts = [[tuple((k, int(c)) for k, c in enumerate(alg.table[a][b]) if c)
                         for b in range(n)] for a in range(n)]
        self._mul_cache: dict[tuple[int, int], int] = {}
        self._mul_table = None
        if self.size <= EAGER_TABLE_LIMIT:
            self._mul_table = [[self._compute_mul(i, j) for j in range(self.size)]
                               for i in range(self.size)]

    def _to_digits(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(reversed(out))

    def __len__(self):
        return self.size

    def digits(self, i: int) -> tuple[int, ...]:
        return self._digits[i]

    def from_digits(self, d) -> int:
        return sum((x % self.p) * w for x, w in zip(d, self._weights))

    def vector(self, i: int) -> Vector:
        p = self.p
        return tuple(Mod(x, p) for x in self._digits[i])

    def index(self, v: Vector) -> int:
        if len(v) != self.n:
            raise AlgebraError(f"vector of length {len(v)} in a {self.n}-dim algebra")
        return self.from_digits(int(x) for x in v)

    def add(self, i: int, j: int) -> int:
        p = self.p
        return self.from_digits((a + b) % p for a, b in zip(self._digits[i], self._digits[j]))

    def sub(self, i: int, j: int) -> int:
        p = self.p
        return self.from_digits((a - b) % p for a, b in zip(self._digits[i], self._digits[j]))

    def neg(self, i: int) -> int:
        return self.from_digits(-a for a in self._digits[i])

    def scale(self, c: int, i: int) -> int:
        return self.from_digits(c * a for a in self._digits[i])

    def _compute_mul(self, i: int, j: int) -> int:
        x, y = self._digits[i], self._digits[j]
        out = [0] * self.n
        consts = self._consts
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = consts[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                t = xa * yb
                for k, c in row[b]:
                    out[k] += t * c
        return self.from_digits(out)

    def mul(self, i: int, j: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[i][j]
        key = (i, j) if i <= j else (j, i)
        r = self._mul_cache.get(key)
        if r is None:
            r = self._mul_cache[key] = self._compute_mul(*key)
        return r

    def mul_row(self, i: int):
        """``[mul(i, j) for j]`` (a view of the table when it is eager)."""
        if self._mul_table is not None:
            return self._mul_table[i]
        return [self.mul(i, j) for j in range(self.size)]

    def word(self, ts, x: int) -> int:
        """``L_{t_1} ... L_{t_k} x`` on indices (rightmost factor first)."""
        for t in reversed(ts):
            x = self.mul(t, x)
        return x
