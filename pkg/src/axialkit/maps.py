"""Maps between algebras and their additivity defects.

Four classes are covered: n-multiplicative isomorphisms, n-multiplicative
derivations, elementary pairs and Jordan elementary pairs.  Each comes with
its residual ("nullifying function")::

    iso        phi^-1(phi(x_1 + ... + x_n) - phi(x_1) - ... - phi(x_n))
    der        d(x_1 + ... + x_n) - d(x_1) - ... - d(x_n)
    elem/jelem M^-1(M(x_1 + ... + x_n) - M(x_1) - ... - M(x_n))

which vanishes identically iff the map is additive.

The identities are not linear in their arguments, so nothing reduces to a
basis: checks either run over every element (finite fields, small algebras)
or over seeded random samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice, permutations, product as cartesian
from typing import Callable, Iterator, Sequence

from .core.algebra import Algebra
from .core.finite import IndexedAlgebra
from .core.linalg import Matrix, Vector, inverse, vadd, vsub, zero_vector
from .fusion import AxisDecomposition

EXHAUSTIVE_BOUND = 3125  # elements
MAX_EXHAUSTIVE_TUPLES = 10**7
COEFFS = (-1, 0, 1, 2)
CLASSES = ("iso", "der", "elem", "jelem")


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class Mode:
    """``exhaustive`` over every tuple, or ``sampled`` with ``count`` random tuples."""

    kind: str = "sampled"
    count: int = 1000
    seed: int = 0
    bound: int = EXHAUSTIVE_BOUND

    def __post_init__(self):
        if self.kind not in ("exhaustive", "sampled"):
            raise MapError(f"unknown mode {self.kind!r}")

    @classmethod
    def exhaustive(cls, bound: int = EXHAUSTIVE_BOUND) -> "Mode":
        return cls("exhaustive", bound=bound)

    @classmethod
    def sampled(cls, count: int = 1000, seed: int = 0) -> "Mode":
        return cls("sampled", count=count, seed=seed)


# -- element models -------------------------------------------------------------

class _Finite:
    """Elements are canonical indices of an algebra over F_p."""

    def __init__(self, ia: IndexedAlgebra):
        self.ia = ia
        self.size = ia.size
        self.zero = 0
        self.add, self.sub, self.mul = ia.add, ia.sub, ia.mul
        self.field = ia.algebra.field

    def elements(self):
        return range(self.size)

    def random(self, rng: random.Random):
        return rng.randrange(self.size)

    def coerce(self, x):
        return self.ia.index(x) if isinstance(x, tuple) else x


class _Vectors:
    """Elements are coordinate tuples; used for linear maps."""

    def __init__(self, alg: Algebra):
        self.alg = alg
        self.field = alg.field
        self.zero = zero_vector(alg.field, alg.dim)
        self.add, self.sub, self.mul = vadd, vsub, alg.product
        self.size = None if alg.field.is_rational else alg.field.modulus ** alg.dim

    def elements(self):
        raise MapError("exhaustive mode needs a finite algebra")

    def random(self, rng: random.Random):
        f = self.field
        if f.is_rational:
            return tuple(f(Fraction(rng.randint(-5, 5), rng.choice((1, 1, 2, 3)))) for _ in range(self.alg.dim))
        return tuple(f(rng.randrange(f.modulus)) for _ in range(self.alg.dim))

    def coerce(self, x):
        return self.alg.vector(x)


# -- maps --------------------------------------------------------------------------

class TableMap:
    """A function between algebras over F_p, tabulated on canonical indices."""

    def __init__(self, domain: IndexedAlgebra, table: Sequence[int], codomain: IndexedAlgebra | None = None):
        codomain = codomain or domain
        if len(table) != domain.size:
            raise MapError(f"table has {len(table)} entries, domain has {domain.size} elements")
        if any(not 0 <= j < codomain.size for j in table):
            raise MapError("table value outside the codomain")
        self.domain = domain
        self.codomain = codomain
        self.table = tuple(table)
        self._inverse = None

    @classmethod
    def from_function(cls, domain: IndexedAlgebra, fn: Callable[[int], int],
                      codomain: IndexedAlgebra | None = None) -> "TableMap":
        return cls(domain, [fn(i) for i in range(domain.size)], codomain)

    @classmethod
    def from_linear(cls, domain: IndexedAlgebra, matrix: Matrix,
                    codomain: IndexedAlgebra | None = None) -> "TableMap":
        codomain = codomain or domain
        return cls(domain, [codomain.index(matrix.apply(domain.vector(i))) for i in range(domain.size)], codomain)

    @classmethod
    def identity(cls, domain: IndexedAlgebra) -> "TableMap":
        return cls(domain, range(domain.size))

    def __call__(self, i: int) -> int:
        return self.table[i]

    def __eq__(self, other):
        return isinstance(other, TableMap) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"TableMap({list(self.table)})"

    @property
    def is_bijective(self) -> bool:
        return self.domain.size == self.codomain.size and len(set(self.table)) == len(self.table)

    def inverse(self) -> "TableMap":
        if self._inverse is None:
            if not self.is_bijective:
                raise MapError("map is not invertible (not a bijection)")
            inv = [0] * len(self.table)
            for i, j in enumerate(self.table):
                inv[j] = i
            self._inverse = TableMap(self.codomain, inv, self.domain)
        return self._inverse

    def models(self):
        return _Finite(self.domain), _Finite(self.codomain)


class LinearMap:
    """A linear map given by its matrix (columns are images of basis vectors)."""

    def __init__(self, domain: Algebra, matrix: Matrix, codomain: Algebra | None = None):
        codomain = codomain or domain
        if matrix.shape != (codomain.dim, domain.dim):
            raise MapError(f"matrix shape {matrix.shape} does not fit {domain.dim} -> {codomain.dim}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self._inverse = None

    @classmethod
    def identity(cls, alg: Algebra) -> "LinearMap":
        return cls(alg, Matrix.identity(alg.field, alg.dim))

    @classmethod
    def scalar(cls, alg: Algebra, c) -> "LinearMap":
        return cls(alg, Matrix.identity(alg.field, alg.dim).scale(alg.field(c)))

    @classmethod
    def permutation(cls, alg: Algebra, perm: Sequence[int]) -> "LinearMap":
        """Basis permutation ``b_k -> b_perm[k]``."""
        n = alg.dim
        cols = [tuple(alg.field.one if r == perm[k] else alg.field.zero for r in range(n)) for k in range(n)]
        return cls(alg, Matrix.from_columns(alg.field, cols, n))

    def __call__(self, v: Vector) -> Vector:
        return self.matrix.apply(v)

    def __repr__(self):
        return f"LinearMap({[list(r) for r in self.matrix.rows]})"

    def inverse(self) -> "LinearMap":
        if self._inverse is None:
            try:
                inv = inverse(self.matrix)
            except ZeroDivisionError:
                raise MapError("map is not invertible (singular matrix)") from None
            self._inverse = LinearMap(self.codomain, inv, self.domain)
        return self._inverse

    def to_table(self) -> TableMap:
        if self.domain.field.is_rational:
            raise MapError("only maps over F_p can be tabulated")
        return TableMap.from_linear(IndexedAlgebra(self.domain), self.matrix, IndexedAlgebra(self.codomain))

    def models(self):
        return _Vectors(self.domain), _Vectors(self.codomain)


def _underlying(x):
    return x.algebra if isinstance(x, IndexedAlgebra) else x


@dataclass(frozen=True)
class ElementaryPair:
    """``M: A -> A'`` and ``Mstar: A' -> A``; ``flavor`` is ``elementary`` or ``jordan``."""

    M: object
    Mstar: object
    flavor: str = "elementary"

    def __post_init__(self):
        if self.flavor not in ("elementary", "jordan"):
            raise MapError(f"unknown flavor {self.flavor!r}")
        if type(self.M) is not type(self.Mstar):
            raise MapError("M and Mstar must have the same representation")
        if _underlying(self.M.codomain) != _underlying(self.Mstar.domain):
            raise MapError("Mstar must start where M ends")


# -- checks ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapCheck:
    ok: bool
    counterexample: tuple | None = None
    tuples_checked: int = 0
    exhaustive: bool = False

    def __iter__(self):
        # (ok, counterexample) unpacking
        return iter((self.ok, self.counterexample))


def _prepare(fmap, mode: Mode):
    if mode.kind == "exhaustive" and isinstance(fmap, LinearMap):
        fmap = fmap.to_table()
    return fmap


def _tuples(models: Sequence, mode: Mode) -> Iterator[tuple]:
    if mode.kind == "exhaustive":
        sizes = [m.size for m in models]
        if any(s is None for s in sizes):
            raise MapError("exhaustive mode needs algebras over a finite field")
        for s in sizes:
            if s > mode.bound:
                raise MapError(f"algebra has {s} elements, over the exhaustive bound {mode.bound}")
        total = 1
        for s in sizes:
            total *= s
        if total > MAX_EXHAUSTIVE_TUPLES:
            raise MapError(f"{total} tuples is over the exhaustive limit {MAX_EXHAUSTIVE_TUPLES}")
        return cartesian(*(m.elements() for m in models))
    rng = random.Random(mode.seed)
    return (tuple(m.random(rng) for m in models) for _ in range(mode.count))


def _run(tuples, predicate, mode: Mode) -> MapCheck:
    k = 0
    for k, tup in enumerate(tuples, 1):
        if not predicate(*tup):
            return MapCheck(False, tup, k, mode.kind == "exhaustive")
    return MapCheck(True, None, k, mode.kind == "exhaustive")


def _word(model, ts, x):
    # L_{t_1} ... L_{t_k} x, rightmost factor first
    for t in reversed(ts):
        x = model.mul(t, x)
    return x


def check_n_multiplicative_iso(phi, n: int, mode: Mode = Mode()) -> MapCheck:
    """``phi(L x) = phi(L) phi(x)`` with ``L = L_{t_1} ... L_{t_{n-1}}``.

    Counterexamples are ``(t_1, ..., t_{n-1}, x)``.
    """
    if n < 1:
        raise MapError("n must be positive")
    phi = _prepare(phi, mode)
    phi.inverse()  # bijectivity
    src, dst = phi.models()

    def holds(*tup):
        ts, x = tup[:-1], tup[-1]
        return phi(_word(src, ts, x)) == _word(dst, [phi(t) for t in ts], phi(x))

    return _run(_tuples([src] * n, mode), holds, mode)


def check_n_multiplicative_derivation(d, n: int, mode: Mode = Mode()) -> MapCheck:
    """``d(L x) = d(L) x + L d(x)`` where ``d(L)`` replaces one factor at a time."""
    if n < 1:
        raise MapError("n must be positive")
    d = _prepare(d, mode)
    A, _ = d.models()

    def holds(*tup):
        ts, x = list(tup[:-1]), tup[-1]
        rhs = _word(A, ts, d(x))
        for k in range(len(ts)):
            rhs = A.add(rhs, _word(A, ts[:k] + [d(ts[k])] + ts[k + 1:], x))
        return d(_word(A, ts, x)) == rhs

    return _run(_tuples([A] * n, mode), holds, mode)


def check_elementary_pair(pair: ElementaryPair, mode: Mode = Mode()) -> MapCheck:
    """Both defining identities of the pair's flavor.

    elementary: ``M(a(M*(x) b)) = M(a)(x M(b))`` and ``M*(x(M(a) y)) = M*(x)(a M*(y))``;
    jordan: ``M(a M*(x) + M*(x) a) = M(a) x + x M(a)`` and
    ``M*(M(a) x + x M(a)) = a M*(x) + M*(x) a``.
    Counterexamples are tagged with the identity that failed.
    """
    M, Ms = _prepare(pair.M, mode), _prepare(pair.Mstar, mode)
    A, B = M.models()
    if pair.flavor == "jordan":
        if A.field.characteristic == 2:
            raise MapError("Jordan elementary maps need characteristic not 2")

        def first(a, x):
            y = Ms(x)
            return M(A.add(A.mul(a, y), A.mul(y, a))) == B.add(B.mul(M(a), x), B.mul(x, M(a)))

        def second(a, x):
            y = Ms(x)
            return Ms(B.add(B.mul(M(a), x), B.mul(x, M(a)))) == A.add(A.mul(a, y), A.mul(y, a))

        shapes = ((first, [A, B]), (second, [A, B]))
    else:
        def first(a, b, x):
            return M(A.mul(a, A.mul(Ms(x), b))) == B.mul(M(a), B.mul(x, M(b)))

        def second(x, y, a):
            return Ms(B.mul(x, B.mul(M(a), y))) == A.mul(Ms(x), A.mul(a, Ms(y)))

        shapes = ((first, [A, A, B]), (second, [B, B, A]))
    total = 0
    for k, (pred, models) in enumerate(shapes, 1):
        res = _run(_tuples(models, mode), pred, mode)
        total += res.tuples_checked
        if not res.ok:
            return MapCheck(False, (f"identity-{k}",) + tuple(res.counterexample), total, res.exhaustive)
    return MapCheck(True, None, total, mode.kind == "exhaustive")


def is_additive(fmap, mode: Mode = Mode()) -> MapCheck:
    """``f(x + y) = f(x) + f(y)``; counterexample ``(x, y)``."""
    fmap = _prepare(fmap, mode)
    A, B = fmap.models()
    return _run(_tuples([A, A], mode), lambda x, y: fmap(A.add(x, y)) == B.add(fmap(x), fmap(y)), mode)


# -- residuals --------------------------------------------------------------------

def _forward(kind: str, fmap):
    if kind in ("elem", "jelem"):
        if not isinstance(fmap, ElementaryPair):
            raise MapError(f"class {kind} needs an elementary pair")
        return fmap.M
    if kind in ("iso", "der"):
        if isinstance(fmap, ElementaryPair):
            raise MapError(f"class {kind} needs a single map")
        return fmap
    raise MapError(f"unknown map class {kind!r}; expected one of {', '.join(CLASSES)}")


def residual(kind: str, fmap, args: Sequence):
    """Value of the class's nullifying function on ``args``.

    Table maps take and return canonical indices (coordinate tuples are
    accepted and converted); linear maps work on coordinate tuples.
    """
    if not args:
        raise MapError("residual needs at least one argument")
    F = _forward(kind, fmap)
    A, B = F.models()
    xs = [A.coerce(x) for x in args]
    total = A.zero
    for x in xs:
        total = A.add(total, x)
    out = F(total)
    for x in xs:
        out = B.sub(out, F(x))
    if kind == "der":
        return out
    return F.inverse()(out)


def residual_fn(kind: str, fmap) -> Callable:
    F = _forward(kind, fmap)
    if kind != "der":
        F.inverse()
    return lambda *args: residual(kind, fmap, args)


@dataclass(frozen=True)
class TupleFamily:
    kind: str
    tuples: tuple


def _combos(basis, limit=None) -> list:
    """Small combinations ``sum c_k b_k`` with ``c_k`` in COEFFS (zero vector skipped)."""
    out = []
    if not basis:
        return out
    n = len(basis[0])
    for cs in cartesian(COEFFS, repeat=len(basis)):
        if not any(cs):
            continue
        v = basis[0][0] * 0
        vec = [v] * n
        for c, b in zip(cs, basis):
            if c:
                vec = [s + c * x for s, x in zip(vec, b)]
        out.append(tuple(vec))
        if limit is not None and len(out) >= limit:
            break
    return out


TUPLE_KINDS = ("peirce-components", "mixed-product", "same-part", "general-pairs")


def lemma_tuples(decomp: AxisDecomposition, kind: str, part: str | None = None,
                 limit: int = 2000, per_part: int = 16) -> TupleFamily:
    """Argument tuples shaped like the additivity lemmas.

    ``peirce-components``: one element per part, in law order (a_1, a_0, a_alpha[, a_beta]);
    ``mixed-product``: ``(a_x a_0, b_x)`` with x = ``part`` (alpha by default);
    ``same-part``: ``(a_x, b_x)`` for ``part``;
    ``general-pairs``: ``(x, y)`` over small combinations of the full basis.
    Elements are small combinations of part basis vectors with coefficients
    in {-1, 0, 1, 2}.
    """
    law, alg = decomp.law, decomp.algebra
    labels = {law.label(lam): decomp.parts[lam] for lam in law.eigenvalues}

    def elems(label):
        if label not in labels:
            raise MapError(f"law {law.spec()} has no part {label!r}")
        return _combos(list(labels[label].basis), per_part)

    if kind == "peirce-components":
        pools = [elems(law.label(lam)) for lam in law.eigenvalues]
        it = cartesian(*pools)
    elif kind == "mixed-product":
        x = part or "alpha"
        xs, zs = elems(x), elems("0")
        it = ((alg.product(a, z), b) for a in xs for z in zs for b in xs)
    elif kind == "same-part":
        if part is None:
            raise MapError("same-part tuples need a part")
        xs = elems(part)
        it = ((a, b) for a in xs for b in xs)
    elif kind == "general-pairs":
        xs = _combos(alg.basis_vectors(), per_part * alg.dim)
        it = ((a, b) for a in xs for b in xs)
    else:
        raise MapError(f"unknown tuple kind {kind!r}; expected one of {', '.join(TUPLE_KINDS)}")
    return TupleFamily(kind, tuple(islice(it, limit)))


def residual_vanishes_on(kind: str, fmap, family: TupleFamily | Sequence) -> MapCheck:
    f = residual_fn(kind, fmap)
    A, _ = _forward(kind, fmap).models()
    tuples = family.tuples if isinstance(family, TupleFamily) else tuple(family)
    k = 0
    for k, tup in enumerate(tuples, 1):
        if f(*tup) != A.zero:
            return MapCheck(False, tup, k)
    return MapCheck(True, None, k)


# -- nullifying-function axioms -------------------------------------------------

def nullifying_properties(kind: str, fmap, count: int = 500, seed: int = 0, r: int = 1,
                          arity: int = 3) -> dict:
    """Sample-check axioms (I)-(V) of the class's residual.

    (I) symmetry under permutations, (II) merging a block ``t`` changes the
    value iff ``f(t) != 0``, (III) ``f(x) = 0``, (IV) appending 0 changes
    nothing, (V) ``L f(s) = f(L s)`` for ``L = L_{t_1} ... L_{t_r}``.
    Returns ``{axiom: MapCheck}``.
    """
    f = residual_fn(kind, fmap)
    A, _ = _forward(kind, fmap).models()
    rng = random.Random(seed)
    out = {}

    def sample(k):
        return [A.random(rng) for _ in range(k)]

    def run(name, pred):
        for i in range(count):
            tup = pred()
            if tup is not None:
                out[name] = MapCheck(False, tuple(tup), i + 1)
                return
        out[name] = MapCheck(True, None, count)

    def ax1():
        s = sample(arity)
        perm = list(s)
        rng.shuffle(perm)
        return None if f(*s) == f(*perm) else s

    def ax2():
        s, t = sample(rng.randint(1, arity)), sample(rng.randint(1, arity))
        tsum = A.zero
        for x in t:
            tsum = A.add(tsum, x)
        same = f(*s, tsum) == f(*s, *t)
        return None if same == (f(*t) == A.zero) else s + t

    def ax3():
        (x,) = sample(1)
        return None if f(x) == A.zero else [x]

    def ax4():
        s = sample(arity)
        return None if f(*s, A.zero) == f(*s) else s

    def ax5():
        ts, s = sample(r), sample(arity)
        lhs = _word(A, ts, f(*s))
        rhs = f(*(_word(A, ts, x) for x in s))
        return None if lhs == rhs else ts + s

    for name, pred in (("I", ax1), ("II", ax2), ("III", ax3), ("IV", ax4), ("V", ax5)):
        run(name, pred)
    return out


def all_permutations_equal(f, args) -> bool:
    v = f(*args)
    return all(f(*p) == v for p in permutations(args))
