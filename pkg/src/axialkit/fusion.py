"""Fusion laws, axis eigenspace decompositions and fusion verification."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Mapping, Sequence

from .core.algebra import Algebra, LazyAlgebra, SparseVector, subalgebra_generated
from .core.field import QQ, FieldSpec
from .core.linalg import (
    Matrix,
    Subspace,
    Vector,
    combination,
    eigenspace,
    inverse,
    is_direct_sum,
    is_zero,
    rref,
    unit_vector,
)

OUTSIDE = "outside-spectrum"


class FusionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FusionLaw:
    """A symmetric table ``(lam, mu) -> allowed eigenvalues`` over ``eigenvalues``.

    ``kind`` is ``"J"`` for Jordan-type laws (one extra eigenvalue ``alpha``),
    ``"M"`` for Monster-type laws (``alpha`` and ``beta``), else None.
    """

    name: str
    field: FieldSpec
    eigenvalues: tuple
    table: Mapping
    params: tuple = ()
    kind: str | None = None
    alpha: object = None
    beta: object = None

    def __post_init__(self):
        lams = self.eigenvalues
        if len(set(lams)) != len(lams):
            raise FusionError(f"law {self.name}: eigenvalues are not distinct in {self.field}")
        if self.field.one not in lams:
            raise FusionError(f"law {self.name}: 1 must be an eigenvalue")
        for (a, b), s in self.table.items():
            if a not in lams or b not in lams or not set(s) <= set(lams):
                raise FusionError(f"law {self.name}: table entry ({a}, {b}) leaves the eigenvalue set")
            if self.table.get((b, a), frozenset()) != s:
                raise FusionError(f"law {self.name}: table is not symmetric at ({a}, {b})")

    def allowed(self, lam, mu) -> frozenset:
        return self.table.get((lam, mu), frozenset())

    def label(self, lam) -> str:
        """Role name of an eigenvalue: ``1``, ``0``, ``alpha`` or ``beta``."""
        if lam == self.field.one:
            return "1"
        if lam == self.field.zero:
            return "0"
        if self.alpha is not None and lam == self.alpha:
            return "alpha"
        if self.beta is not None and lam == self.beta:
            return "beta"
        return self.field.format(lam)

    def spec(self) -> str:
        """Text form used by algebra files and the CLI: ``jordan 1/4`` etc."""
        return " ".join([self.name] + [self.field.format(p) for p in self.params])

    def __eq__(self, other):
        return (isinstance(other, FusionLaw) and self.field == other.field
                and self.eigenvalues == other.eigenvalues and dict(self.table) == dict(other.table))

    def __repr__(self):
        return f"FusionLaw({self.spec()!r}, {self.field})"


def _law(name, field, lams, entries, params, kind=None, alpha=None, beta=None):
    table = {}
    for (a, b), s in entries.items():
        table[a, b] = table[b, a] = frozenset(s)
    return FusionLaw(name, field, tuple(lams), table, tuple(params), kind, alpha, beta)


def builtin_law(name: str, params: Sequence = (), field: FieldSpec = QQ) -> FusionLaw:
    """One of the standard laws: ``assoc``, ``jordan eta``, ``monster alpha beta``, ``highwater``."""
    one, zero = field.one, field.zero
    params = tuple(field(p) for p in params)
    if name == "assoc":
        if params:
            raise FusionError("law assoc takes no parameters")
        return _law("assoc", field, (one, zero), {(one, one): {one}, (zero, zero): {zero}}, ())
    if name == "jordan":
        if len(params) != 1:
            raise FusionError("law jordan takes one parameter eta")
        (eta,) = params
        if eta in (zero, one):
            raise FusionError(f"jordan law needs eta not in {{0, 1}}, got {field.format(eta)}")
        return _law("jordan", field, (one, zero, eta), {
            (one, one): {one}, (zero, zero): {zero},
            (one, eta): {eta}, (zero, eta): {eta}, (eta, eta): {one, zero},
        }, params, "J", eta)
    if name == "monster":
        if len(params) != 2:
            raise FusionError("law monster takes two parameters alpha beta")
        a, b = params
        if a in (zero, one) or b in (zero, one):
            raise FusionError("monster law needs alpha, beta not in {0, 1}")
        if a == b:
            raise FusionError("monster law needs alpha != beta")
        return _law("monster", field, (one, zero, a, b), {
            (one, one): {one}, (zero, zero): {zero},
            (one, a): {a}, (zero, a): {a}, (a, a): {one, zero},
            (one, b): {b}, (zero, b): {b}, (a, b): {b}, (b, b): {one, zero, a},
        }, params, "M", a, b)
    if name == "highwater":
        if params:
            raise FusionError("law highwater takes no parameters")
        if field.characteristic in (2, 3):
            raise FusionError("highwater law needs characteristic not 2 or 3")
        two, half = field(2), field("1/2")
        return _law("highwater", field, (one, zero, two, half), {
            (one, one): {one}, (zero, zero): {zero},
            (one, two): {two}, (zero, two): {two}, (two, two): {zero},
            (one, half): {half}, (zero, half): {half}, (two, half): {half},
            (half, half): {zero, two},
        }, (), "M", two, half)
    raise FusionError(f"unknown fusion law {name!r}")


def parse_law(tokens: Sequence[str], field: FieldSpec) -> FusionLaw:
    if not tokens:
        raise FusionError("empty law specification")
    return builtin_law(tokens[0], tokens[1:], field)


# -- decompositions -----------------------------------------------------------

@dataclass(eq=False)
class AxisDecomposition:
    algebra: Algebra
    axis: Vector
    law: FusionLaw
    parts: dict  # eigenvalue -> Subspace
    complete: bool
    _proj: object = dc_field(default=None, repr=False)

    def dims(self) -> dict:
        return {lam: p.dim for lam, p in self.parts.items()}

    def part(self, lam) -> Subspace:
        return self.parts.get(self.law.field(lam), Subspace.zero(self.algebra.field, self.algebra.dim))

    def components(self, v: Vector) -> dict:
        """Split ``v`` along the direct sum; needs ``complete``."""
        if not self.complete:
            raise FusionError("decomposition is not a direct sum of the law's eigenspaces")
        if self._proj is None:
            cols = [b for lam in self.law.eigenvalues for b in self.parts[lam].basis]
            self._proj = inverse(Matrix.from_columns(self.algebra.field, cols, self.algebra.dim))
        coeffs = self._proj.apply(tuple(v))
        out, k = {}, 0
        f, n = self.algebra.field, self.algebra.dim
        for lam in self.law.eigenvalues:
            b = self.parts[lam].basis
            out[lam] = combination(coeffs[k:k + len(b)], b, f, n)
            k += len(b)
        return out


def decompose(alg: Algebra, e: Vector, law: FusionLaw) -> AxisDecomposition:
    e = alg.vector(e)
    if law.field != alg.field:
        raise FusionError(f"law over {law.field} used with an algebra over {alg.field}")
    if is_zero(e):
        raise FusionError("axis must be a nonzero idempotent")
    if not alg.is_idempotent(e):
        raise FusionError(f"axis {alg.format_vector(e)} is not idempotent")
    L = alg.left_mul_matrix(e)
    parts = {lam: eigenspace(L, lam) for lam in law.eigenvalues}
    return AxisDecomposition(alg, e, law, parts, is_direct_sum(list(parts.values()), alg.dim))


@dataclass(frozen=True)
class Violation:
    left: object  # eigenvalue, None for outside-spectrum
    right: object
    u: object  # witness vectors
    v: object
    offending: object  # eigenvalue or OUTSIDE
    component: object = None


@dataclass
class FusionReport:
    violations: list
    axis: object = None
    window: int | None = None

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    @property
    def ok(self) -> bool:
        return not self.violations


def _outside_witness(alg: Algebra, decomp: AxisDecomposition) -> Vector:
    # image of prod (L - lam) kills every Lambda-eigenvector, so it holds the rest
    L = alg.left_mul_matrix(decomp.axis)
    n, f = alg.dim, alg.field
    P = Matrix.identity(f, n)
    I = Matrix.identity(f, n)
    for lam in decomp.law.eigenvalues:
        P = P @ (L - I.scale(lam))
    covered = Subspace.span(f, n, [b for p in decomp.parts.values() for b in p.basis])
    image, _ = rref(P.T)
    for cand in list(image.rows) + [unit_vector(f, n, k) for k in range(n)]:
        if not covered.contains(cand):
            return cand
    raise AssertionError("incomplete decomposition but every vector is covered")


def verify_decomposition(decomp: AxisDecomposition) -> FusionReport:
    alg, law = decomp.algebra, decomp.law
    if not decomp.complete:
        w = _outside_witness(alg, decomp)
        return FusionReport([Violation(None, None, w, None, OUTSIDE)], axis=decomp.axis)
    lams = law.eigenvalues
    violations = []
    for i, lam in enumerate(lams):
        for mu in lams[i:]:
            allowed = law.allowed(lam, mu)
            for u in decomp.parts[lam].basis:
                for v in decomp.parts[mu].basis:
                    comps = decomp.components(alg.product(u, v))
                    for nu in lams:
                        if nu not in allowed and not is_zero(comps[nu]):
                            violations.append(Violation(lam, mu, u, v, nu, comps[nu]))
    return FusionReport(violations, axis=decomp.axis)


def verify_fusion(alg: Algebra, e: Vector, law: FusionLaw) -> FusionReport:
    """Check ``A_lam A_mu`` inside ``A_{law(lam, mu)}`` on part-basis pairs.

    Bilinearity makes basis pairs enough.  An incomplete decomposition is a
    single ``outside-spectrum`` violation whose witness lies outside the sum
    of the law's eigenspaces.
    """
    return verify_decomposition(decompose(alg, e, law))


def is_primitive(alg: Algebra, e: Vector, law: FusionLaw) -> bool:
    d = decompose(alg, e, law)
    if not d.complete:
        raise FusionError("primitivity needs a complete decomposition")
    return d.part(1) == Subspace.span(alg.field, alg.dim, [d.axis])


@dataclass
class AxialReport:
    reports: list
    generation: bool

    @property
    def ok(self) -> bool:
        return self.generation and all(r.ok for r in self.reports)


def verify_axial(alg: Algebra, axes: Iterable[Vector], law: FusionLaw) -> AxialReport:
    axes = [alg.vector(a) for a in axes]
    reports = []
    for a in axes:
        try:
            reports.append(verify_fusion(alg, a, law))
        except FusionError:
            reports.append(FusionReport([Violation(None, None, a, None, "not-an-axis")], axis=a))
    generated = subalgebra_generated(alg, axes)
    return AxialReport(reports, generated.dim == alg.dim)


# -- lazy algebras ------------------------------------------------------------

def check_eigenvector_window(lazy: LazyAlgebra, axis, v: SparseVector, lam) -> bool:
    """Exact test of ``axis * v == lam v`` for a finitely supported ``v``."""
    if not isinstance(axis, SparseVector):
        axis = lazy.basis(axis)
    return lazy.product(axis, v) == lazy.field(lam) * v


def dense_columns(columns: Sequence[Mapping], field: FieldSpec) -> tuple[Matrix, list]:
    """Matrix whose k-th column holds the entries of ``columns[k]``, plus the
    sorted keys labelling its rows."""
    keys = sorted({k for c in columns for k in c}, key=lambda k: (str(type(k)), k))
    rows = tuple(tuple(c.get(k, field.zero) for c in columns) for k in keys)
    return Matrix(field, rows, len(columns)), keys


class WindowedDecomposition:
    """Eigenspace decomposition of an infinite-dimensional algebra, seen through
    finite windows.

    ``generators(lam, N)`` lists the spanning eigenvectors of ``A_lam`` with
    index at most N; ``radius(v)`` is the least window whose generators span
    a space containing ``v``.  Together the generators of window N must form a
    basis of the span of their support, so every finitely supported vector
    splits exactly.
    """

    def __init__(self, algebra: LazyAlgebra, axis: SparseVector, law: FusionLaw,
                 generators: Callable[[object, int], list], radius: Callable[[SparseVector], int]):
        self.algebra = algebra
        self.axis = axis
        self.law = law
        self.field = algebra.field
        self._generators = generators
        self._radius = radius
        self._solvers: dict[int, tuple] = {}

    def generators(self, lam, N: int) -> list[SparseVector]:
        return list(self._generators(self.field(lam), N))

    def parts(self, N: int) -> dict:
        return {lam: self.generators(lam, N) for lam in self.law.eigenvalues}

    def radius(self, v: SparseVector) -> int:
        return self._radius(v)

    def _solver(self, M: int):
        if M not in self._solvers:
            labels, cols = [], []
            for lam in self.law.eigenvalues:
                for g in self.generators(lam, M):
                    labels.append(lam)
                    cols.append(g)
            mat, keys = dense_columns(cols, self.field)
            if mat.nrows != mat.ncols:
                raise FusionError(f"window {M} generators do not form a square system")
            self._solvers[M] = (inverse(mat), keys, labels, cols)
        return self._solvers[M]

    def components(self, v: SparseVector, window: int | None = None) -> dict:
        """Exact split of ``v`` into eigencomponents (keys are eigenvalues)."""
        M = max(self.radius(v), 1) if window is None else window
        if self.radius(v) > M:
            raise FusionError(f"vector leaves window {M}")
        inv, keys, labels, cols = self._solver(M)
        index = {k: i for i, k in enumerate(keys)}
        x = [self.field.zero] * len(keys)
        for k, c in v.items():
            x[index[k]] = c
        coeffs = inv.apply(tuple(x))
        out = {lam: SparseVector() for lam in self.law.eigenvalues}
        acc: dict = {lam: [] for lam in self.law.eigenvalues}
        for c, lam, g in zip(coeffs, labels, cols):
            if c:
                acc[lam].append(c * g)
        for lam, terms in acc.items():
            s = SparseVector()
            for t in terms:
                s = s + t
            out[lam] = s
        return out


def verify_fusion_window(wd: WindowedDecomposition, N: int) -> FusionReport:
    """Fusion on all pairs of generators with index at most N, each product
    split exactly."""
    alg, law = wd.algebra, wd.law
    lams = law.eigenvalues
    parts = wd.parts(N)
    violations = []
    for lam, gens in parts.items():
        for g in gens:
            if not check_eigenvector_window(alg, wd.axis, g, lam):
                violations.append(Violation(lam, None, g, None, "not-eigenvector"))
    window = 2 * N
    for i, lam in enumerate(lams):
        for mu in lams[i:]:
            allowed = law.allowed(lam, mu)
            for u in parts[lam]:
                for v in parts[mu]:
                    w = alg.product(u, v)
                    comps = wd.components(w, max(window, wd.radius(w)))
                    for nu in lams:
                        if nu not in allowed and comps[nu]:
                            violations.append(Violation(lam, mu, u, v, nu, comps[nu]))
    return FusionReport(violations, axis=wd.axis, window=N)
