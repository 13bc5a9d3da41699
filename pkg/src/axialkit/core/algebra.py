"""Commutative algebras given by structure constants.

An :class:`Algebra` is finite-dimensional with a dense symmetric table
``c[i][j] = b_i b_j``.  A :class:`LazyAlgebra` has a countable basis of
hashable keys and a product rule on keys; its elements are
:class:`SparseVector` values with finite support.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .field import FieldSpec, FieldError
from .linalg import (
    DimensionError,
    Matrix,
    Subspace,
    Vector,
    is_zero,
    unit_vector,
    zero_vector,
)


class AlgebraError(ValueError):
    pass


class Algebra:
    """Finite-dimensional commutative algebra over an exact field.

    ``table[i][j]`` is the coordinate vector of ``b_i b_j``; the table must be
    symmetric.
    """

    def __init__(self, field: FieldSpec, names: Sequence[str], table: Sequence[Sequence[Sequence]]):
        n = len(names)
        if len(set(names)) != n:
            raise AlgebraError("duplicate basis names")
        if len(table) != n or any(len(row) != n for row in table):
            raise DimensionError(f"structure table must be {n}x{n}")
        tab = []
        for i in range(n):
            row = []
            for j in range(n):
                v = table[i][j]
                if len(v) != n:
                    raise DimensionError(f"product {names[i]}*{names[j]} has length {len(v)}")
                row.append(tuple(field(a) for a in v))
            tab.append(tuple(row))
        for i in range(n):
            for j in range(i + 1, n):
                if tab[i][j] != tab[j][i]:
                    raise AlgebraError(f"product table not symmetric at ({names[i]}, {names[j]})")
        self.field = field
        self.names = tuple(names)
        self.table = tuple(tab)
        # sparse form of the table for fast products: (i, j) -> ((k, c), ...)
        self._sparse = {
            (i, j): tuple((k, c) for k, c in enumerate(tab[i][j]) if c)
            for i in range(n) for j in range(n)
        }

    @classmethod
    def from_products(cls, field: FieldSpec, names: Sequence[str],
                      products: Mapping[tuple[str, str], Mapping[str, object]]) -> "Algebra":
        """Build from ``{(x, y): {z: coeff}}``; missing pairs default to their
        symmetric counterpart, then to zero."""
        idx = {nm: k for k, nm in enumerate(names)}
        n = len(names)
        table = [[None] * n for _ in range(n)]
        for (x, y), terms in products.items():
            for nm in (x, y, *terms):
                if nm not in idx:
                    raise AlgebraError(f"unknown basis name {nm!r}")
            v = [field.zero] * n
            for nm, c in terms.items():
                v[idx[nm]] = v[idx[nm]] + field(c)
            i, j = idx[x], idx[y]
            v = tuple(v)
            for a, b in ((i, j), (j, i)):
                if table[a][b] is not None and table[a][b] != v:
                    raise AlgebraError(f"conflicting entries for {names[a]}*{names[b]}")
            table[i][j] = table[j][i] = v
        z = zero_vector(field, n)
        table = [[z if t is None else t for t in row] for row in table]
        return cls(field, names, table)

    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"Algebra({self.field}, dim={self.dim})"

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.field == other.field
                and self.names == other.names and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.names, self.table))

    # -- elements --------------------------------------------------------

    def basis(self, k: int | str) -> Vector:
        if isinstance(k, str):
            k = self.index(k)
        return unit_vector(self.field, self.dim, k)

    def basis_vectors(self) -> list[Vector]:
        return [self.basis(k) for k in range(self.dim)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis name {name!r}") from None

    def zero(self) -> Vector:
        return zero_vector(self.field, self.dim)

    def vector(self, coords: Sequence | Mapping[str, object]) -> Vector:
        """Coerce coordinates (sequence or ``{name: coeff}``) into the field."""
        if isinstance(coords, Mapping):
            v = [self.field.zero] * self.dim
            for nm, c in coords.items():
                k = self.index(nm)
                v[k] = v[k] + self.field(c)
            return tuple(v)
        if len(coords) != self.dim:
            raise DimensionError(f"vector of length {len(coords)} in a {self.dim}-dim algebra")
        return tuple(self.field(c) for c in coords)

    def _check(self, x: Vector):
        if len(x) != self.dim:
            raise DimensionError(f"vector of length {len(x)} in a {self.dim}-dim algebra")
        if x and not self.field.contains(x[0]):
            raise FieldError(f"vector entries are not in {self.field}")

    # -- products --------------------------------------------------------

    def product(self, x: Vector, y: Vector) -> Vector:
        self._check(x)
        self._check(y)
        out = [self.field.zero] * self.dim
        sp = self._sparse
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in sp[i, j]:
                    out[k] = out[k] + ab * c
        return tuple(out)

    def left_mul_matrix(self, e: Vector) -> Matrix:
        """Matrix of ``L_e``; column k is ``e * b_k``."""
        self._check(e)
        cols = [self.product(e, self.basis(k)) for k in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def is_idempotent(self, e: Vector) -> bool:
        return self.product(e, e) == tuple(e)

    def change_field(self, field: FieldSpec) -> "Algebra":
        """Reduce (or reinterpret) the structure constants in another field."""
        if not self.field.is_rational and field != self.field:
            raise FieldError("only rational algebras can be moved to another field")
        table = [[tuple(field(c) for c in v) for v in row] for row in self.table]
        return Algebra(field, self.names, table)

    def as_lazy(self) -> "LazyAlgebra":
        """The same algebra with basis names as keys."""
        names = self.names
        sp = self._sparse
        idx = {nm: k for k, nm in enumerate(names)}

        def rule(x, y):
            return SparseVector({names[k]: c for k, c in sp[idx[x], idx[y]]})

        return LazyAlgebra(self.field, rule, name="dense")

    def to_sparse(self, v: Vector) -> "SparseVector":
        return SparseVector({self.names[k]: c for k, c in enumerate(v) if c})

    def from_sparse(self, v: "SparseVector") -> Vector:
        return self.vector({k: c for k, c in v.items()})

    def format_vector(self, v: Vector) -> str:
        return format_combination(self.field, [(self.names[k], c) for k, c in enumerate(v) if c])


def format_combination(field: FieldSpec, terms: Iterable[tuple[str, object]]) -> str:
    """``2 a + -1/3 b`` style text; a coefficient of exactly 1 is omitted."""
    parts = []
    for name, c in terms:
        s = field.format(c)
        parts.append(str(name) if s == "1" else f"{s} {name}")
    return " + ".join(parts) if parts else "0"


def product(alg: "Algebra | LazyAlgebra", x, y):
    return alg.product(x, y)


def left_mul_matrix(alg: Algebra, e: Vector) -> Matrix:
    return alg.left_mul_matrix(e)


def is_idempotent(alg: "Algebra | LazyAlgebra", e) -> bool:
    return alg.is_idempotent(e)


def subalgebra_generated(alg: Algebra, gens: Iterable[Vector]) -> Subspace:
    """Smallest subspace containing ``gens`` and closed under the product.

    Multiplies basis vectors of the current span pairwise until the span stops
    growing; the dimension strictly increases each round, so this stops
    after at most ``alg.dim`` rounds.
    """
    span = Subspace.span(alg.field, alg.dim, list(gens))
    while True:
        basis = span.basis
        prods = [alg.product(u, v) for i, u in enumerate(basis) for v in basis[i:]]
        grown = Subspace.span(alg.field, alg.dim, basis + tuple(p for p in prods if not is_zero(p)))
        if grown.dim == span.dim:
            return span
        span = grown


# -- lazy algebras ------------------------------------------------------------

class SparseVector(Mapping):
    """Immutable finitely supported vector ``{key: coefficient}``.

    Zero coefficients are never stored, so equality is structural.
    """

    __slots__ = ("_d", "_hash")

    def __init__(self, data: Mapping | Iterable = ()):
        d = {}
        items = data.items() if isinstance(data, Mapping) else data
        for k, c in items:
            if k in d:
                c = d[k] + c
            d[k] = c
        self._d = {k: c for k, c in d.items() if c}
        self._hash = None

    def __getitem__(self, k):
        return self._d[k]

    def get(self, k, default=0):
        return self._d.get(k, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self == SparseVector(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __bool__(self):
        return bool(self._d)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        d = dict(self._d)
        for k, c in other.items():
            d[k] = d[k] + c if k in d else c
        return SparseVector(d)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        d = dict(self._d)
        for k, c in other.items():
            d[k] = d[k] - c if k in d else -c
        return SparseVector(d)

    def __neg__(self):
        return SparseVector({k: -c for k, c in self._d.items()})

    def __rmul__(self, c):
        if not c:
            return SparseVector()
        return SparseVector({k: c * a for k, a in self._d.items()})

    def __mul__(self, c):
        return self.__rmul__(c)

    def support(self) -> tuple:
        return tuple(sorted(self._d, key=_key_order))

    def __repr__(self):
        return "SparseVector({" + ", ".join(f"{k!r}: {c}" for k, c in sorted(self._d.items(), key=lambda kv: _key_order(kv[0]))) + "})"


def _key_order(k):
    return (str(type(k)), k)


class SparseEchelon:
    """Incremental Gaussian elimination on sparse vectors.

    Each stored row has a pivot key that no later row contains.  Over the
    rationals rows are kept as primitive integer vectors (fraction-free
    elimination), which is much faster than Fraction arithmetic.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot key -> row (dict)
        self._integral = None

    def __len__(self):
        return len(self._rows)

    def _prepare(self, v: Mapping) -> dict:
        if self._integral is None and v:
            self._integral = isinstance(next(iter(v.values())), (int, Fraction))
        if not self._integral:
            return dict(v)
        den = 1
        for c in v.values():
            den = lcm(den, Fraction(c).denominator)
        return {k: int(c * den) for k, c in v.items() if c}

    def _reduce(self, d: dict) -> dict:
        rows = self._rows
        integral = self._integral
        while d:
            hits = [k for k in d if k in rows]
            if not hits:
                break
            for k in hits:
                c = d.get(k)
                if not c:
                    continue
                row = rows[k]
                if integral:
                    # d <- row[k] d - c row, then strip the content
                    a0 = row[k]
                    g = gcd(a0, c)
                    m, c = a0 // g, c // g
                    if m != 1:
                        d = {kk: m * t for kk, t in d.items()}
                else:
                    # pivot entries are 1
                    pass
                for kk, a in row.items():
                    t = d.get(kk)
                    t = -c * a if t is None else t - c * a
                    if t:
                        d[kk] = t
                    else:
                        d.pop(kk, None)
                if integral and d:
                    g = 0
                    for t in d.values():
                        g = gcd(g, t)
                        if g == 1:
                            break
                    if g > 1:
                        d = {kk: t // g for kk, t in d.items()}
        return d

    def reduce(self, v: Mapping) -> dict:
        """Remainder of ``v`` (up to a nonzero scalar over the rationals)."""
        return self._reduce(self._prepare(v))

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; False if it was already in the span."""
        d = self.reduce(v)
        if not d:
            return False
        piv = max(d, key=_key_order)
        if self._integral:
            if d[piv] < 0:
                d = {k: -c for k, c in d.items()}
        else:
            inv = 1 / d[piv]
            d = {k: c * inv for k, c in d.items()}
        self._rows[piv] = d
        return True

    def rows(self) -> list:
        """Stored rows as plain dicts (integer rows over the rationals)."""
        return [r for _, r in sorted(self._rows.items(), key=lambda kv: _key_order(kv[0]))]

    def basis(self) -> list:
        rows = sorted(self._rows.items(), key=lambda kv: _key_order(kv[0]))
        if self._integral:
            return [SparseVector({k: Fraction(c) for k, c in r.items()}) for _, r in rows]
        return [SparseVector(r) for _, r in rows]


def sparse_sum(vectors: Iterable[SparseVector]) -> SparseVector:
    d = {}
    for v in vectors:
        for k, c in v.items():
            d[k] = d[k] + c if k in d else c
    return SparseVector(d)


class LazyAlgebra:
    """Commutative algebra on a countable basis with a product rule on keys.

    ``rule(k1, k2)`` returns the :class:`SparseVector` ``b_k1 b_k2``; it must be
    symmetric.  Rule results are cached.
    """

    def __init__(self, field: FieldSpec, rule: Callable[[Hashable, Hashable], SparseVector],
                 name: str = "lazy", format_key: Callable[[Hashable], str] = str):
        self.field = field
        self.name = name
        self.format_key = format_key
        self._rule = lru_cache(maxsize=None)(rule)
        self._int_rule: dict = {}

    def __repr__(self):
        return f"LazyAlgebra({self.name}, {self.field})"

    def basis_product(self, k1, k2) -> SparseVector:
        return self._rule(k1, k2)

    def basis(self, key) -> SparseVector:
        return SparseVector({key: self.field.one})

    def vector(self, coords: Mapping) -> SparseVector:
        return SparseVector({k: self.field(c) for k, c in coords.items()})

    def product(self, x: SparseVector, y: SparseVector) -> SparseVector:
        d = {}
        rule = self._rule
        for (k1, a), (k2, b) in cartesian(x.items(), y.items()):
            ab = a * b
            for k, c in rule(k1, k2).items():
                t = ab * c
                d[k] = d[k] + t if k in d else t
        return SparseVector(d)

    def integral_product(self, x: Mapping, y: Mapping) -> dict:
        """A positive multiple of ``x y`` with integer entries, for integer
        ``x``, ``y`` over the rationals.  Span computations only need the
        product up to scale, and ints are much faster than Fractions."""
        cache = self._int_rule
        terms, den = [], 1
        for k1, a in x.items():
            for k2, b in y.items():
                key = (k1, k2)
                hit = cache.get(key)
                if hit is None:
                    v = self._rule(k1, k2)
                    d = 1
                    for c in v.values():
                        d = lcm(d, Fraction(c).denominator)
                    hit = cache[key] = (d, tuple((k, int(c * d)) for k, c in v.items()))
                if hit[1]:
                    terms.append((a * b, hit))
                    den = lcm(den, hit[0])
        out: dict = {}
        for ab, (d, items) in terms:
            m = ab * (den // d)
            for k, c in items:
                out[k] = out.get(k, 0) + m * c
        return {k: c for k, c in out.items() if c}

    def is_idempotent(self, e: SparseVector) -> bool:
        return self.product(e, e) == e

    def format_vector(self, v: SparseVector) -> str:
        return format_combination(self.field, [(self.format_key(k), v[k]) for k in v.support()])
