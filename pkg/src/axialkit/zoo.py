"""Concrete algebras: Jordan B+, Norton-Sakuma 2A, Matsuo algebras, the
Highwater algebra and a few degenerate negative controls."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .core.algebra import Algebra, LazyAlgebra, SparseVector
from .core.field import QQ, FieldSpec
from .fusion import FusionLaw, WindowedDecomposition, builtin_law


class ZooError(ValueError):
    pass


@dataclass
class ZooEntry:
    name: str
    algebra: Algebra | LazyAlgebra
    axes: list
    law: FusionLaw | None
    excluded_characteristics: tuple = ()
    extra: dict = dc_field(default_factory=dict)

    @property
    def is_lazy(self) -> bool:
        return isinstance(self.algebra, LazyAlgebra)


def _require(field: FieldSpec, excluded: tuple, name: str):
    if field.characteristic in excluded:
        bad = ", ".join(str(c) for c in excluded)
        raise ZooError(f"{name} needs characteristic not in {{{bad}}}, got {field.characteristic}")


def jordan_b_plus(field: FieldSpec = QQ) -> ZooEntry:
    """Symmetrized 2x2 matrix units: ``x*y = (xy + yx)/2`` with ``e_ij e_kl = delta_jk e_il``."""
    _require(field, (2,), "Jordan B+")
    idx = [(1, 1), (1, 0), (0, 1), (0, 0)]
    names = [f"e{i}{j}" for i, j in idx]
    half = Fraction(1, 2)
    products = {}
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if b < a:
                continue
            terms: dict = {}
            if j == k:
                terms[f"e{i}{l}"] = terms.get(f"e{i}{l}", 0) + half
            if l == i:
                terms[f"e{k}{j}"] = terms.get(f"e{k}{j}", 0) + half
            products[names[a], names[b]] = terms
    alg = Algebra.from_products(field, names, products)
    return ZooEntry("b-plus", alg, [alg.basis("e11")], builtin_law("jordan", ["1/2"], field), (2,))


def norton_sakuma_2a(field: FieldSpec = QQ) -> ZooEntry:
    _require(field, (2, 3, 5), "Norton-Sakuma 2A")
    e = Fraction(1, 8)
    names = ["eA", "eB", "eC"]
    products = {
        ("eA", "eA"): {"eA": 1},
        ("eB", "eB"): {"eB": 1},
        ("eC", "eC"): {"eC": 1},
        ("eA", "eB"): {"eA": e, "eB": e, "eC": -e},
        ("eA", "eC"): {"eA": e, "eB": -e, "eC": e},
        ("eB", "eC"): {"eA": -e, "eB": e, "eC": e},
    }
    alg = Algebra.from_products(field, names, products)
    return ZooEntry("2a", alg, [alg.basis(k) for k in names],
                    builtin_law("jordan", ["1/4"], field), (2, 3, 5))


# -- Matsuo algebras -----------------------------------------------------------

@dataclass(frozen=True)
class FischerSpace:
    points: tuple
    lines: tuple  # tuple of frozensets of 3 points

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise ZooError("repeated point in Fischer space")
        object.__setattr__(self, "lines", tuple(frozenset(line) for line in self.lines))
        seen = {}
        for line in self.lines:
            if len(line) != 3 or not line <= pts:
                raise ZooError(f"bad line {sorted(line)}")
            for x, y in combinations(sorted(line), 2):
                if (x, y) in seen and seen[x, y] != line:
                    raise ZooError(f"points {x}, {y} lie on two lines")
                seen[x, y] = line

    def third_point(self, x, y):
        for line in self.lines:
            if x in line and y in line:
                (z,) = set(line) - {x, y}
                return z
        return None


def fischer_line() -> FischerSpace:
    return FischerSpace(("a", "b", "c"), (frozenset("abc"),))


def fischer_two_points() -> FischerSpace:
    return FischerSpace(("a", "b"), ())


def fischer_symmetric(n: int) -> FischerSpace:
    """Transpositions of S_n; lines are the transposition triples of each S_3."""
    pts = tuple(f"t{i}{j}" for i, j in combinations(range(1, n + 1), 2))
    lines = tuple(frozenset({f"t{i}{j}", f"t{i}{k}", f"t{j}{k}"})
                  for i, j, k in combinations(range(1, n + 1), 3))
    return FischerSpace(pts, lines)


FISCHER_SPACES = {"line": fischer_line, "two-point": fischer_two_points,
                  "s4": lambda: fischer_symmetric(4)}


def matsuo(space: FischerSpace, eta, field: FieldSpec = QQ) -> ZooEntry:
    """Matsuo algebra: ``x x = x``, ``x y = 0`` off lines, ``x y = eta/2 (x + y - z)``
    on a line ``{x, y, z}``.

    ``extra["double_axes"]`` holds ``a + b`` for distinct non-collinear points
    and ``extra["double_law"]`` the law ``M(2 eta, eta)`` they are expected to
    satisfy.
    """
    _require(field, (2,), "Matsuo algebra")
    eta = field(eta)
    if eta in (field.zero, field.one):
        raise ZooError(f"Matsuo algebra needs eta not in {{0, 1}}, got {field.format(eta)}")
    half_eta = eta / 2
    pts = list(space.points)
    products = {}
    for i, x in enumerate(pts):
        products[x, x] = {x: 1}
        for y in pts[i + 1:]:
            z = space.third_point(x, y)
            if z is not None:
                products[x, y] = {x: half_eta, y: half_eta, z: -half_eta}
    alg = Algebra.from_products(field, pts, products)
    law = builtin_law("jordan", [eta], field)
    doubles = [alg.vector({x: 1, y: 1}) for i, x in enumerate(pts) for y in pts[i + 1:]
               if space.third_point(x, y) is None]
    extra = {"double_axes": doubles, "eta": eta}
    two_eta = 2 * eta
    if two_eta not in (field.zero, field.one, eta):
        extra["double_law"] = builtin_law("monster", [two_eta, eta], field)
    return ZooEntry("matsuo", alg, [alg.basis(x) for x in pts], law, (2,), extra)


# -- Highwater ---------------------------------------------------------------

def _a(i):
    return ("a", i)


def _s(j):
    return ("s", j)


def format_highwater_key(k) -> str:
    return f"{k[0]}({k[1]})"


def parse_highwater_key(text: str):
    t = text.strip()
    if len(t) < 4 or t[0] not in "as" or t[1] != "(" or t[-1] != ")":
        raise ZooError(f"bad Highwater key {text!r}; expected a(i) or s(j)")
    try:
        i = int(t[2:-1])
    except ValueError:
        raise ZooError(f"bad Highwater key {text!r}") from None
    if t[0] == "s" and i < 1:
        raise ZooError("s(j) needs j >= 1")
    return (t[0], i)


def highwater(field: FieldSpec = QQ) -> ZooEntry:
    """The Highwater algebra on ``a(i)``, ``s(j)`` (i in Z, j >= 1), with ``s(0) = 0``."""
    _require(field, (2, 3), "Highwater algebra")
    half, q3, q8, t2 = field("1/2"), field("3/4"), field("3/8"), field("3/2")

    def sig(j, c, d):
        if j != 0:
            d[_s(j)] = d.get(_s(j), field.zero) + c

    def rule(x, y):
        if x[0] == "s" and y[0] == "a":
            x, y = y, x
        d: dict = {}
        if x[0] == "a" and y[0] == "a":
            i, j = x[1], y[1]
            d[_a(i)] = d.get(_a(i), field.zero) + half
            d[_a(j)] = d.get(_a(j), field.zero) + half
            sig(abs(i - j), field.one, d)
        elif x[0] == "a":
            i, j = x[1], y[1]
            d[_a(i)] = d.get(_a(i), field.zero) - q3
            d[_a(i - j)] = d.get(_a(i - j), field.zero) + q8
            d[_a(i + j)] = d.get(_a(i + j), field.zero) + q8
            sig(j, t2, d)
        else:
            i, j = x[1], y[1]
            sig(i, q3, d)
            sig(j, q3, d)
            sig(abs(i - j), -q8, d)
            sig(i + j, -q8, d)
        return SparseVector(d)

    lazy = LazyAlgebra(field, rule, name="highwater", format_key=format_highwater_key)
    axes = [lazy.basis(_a(0)), lazy.basis(_a(1))]
    return ZooEntry("highwater", lazy, axes, builtin_law("highwater", (), field), (2, 3))


def highwater_generators(field: FieldSpec, k: int = 0):
    """Spanning eigenvectors of ``L_{a(k)}``: ``gens(lam, N)`` for index ``j <= N``."""
    one = field.one
    two, half = field(2), field("1/2")

    def gens(lam, N):
        if lam == one:
            return [SparseVector({_a(k): one})]
        out = []
        for j in range(1, N + 1):
            lo, hi = _a(k - j), _a(k + j)
            if lam == field.zero:
                out.append(SparseVector({_a(k): field(6), lo: field(-3), hi: field(-3), _s(j): field(4)}))
            elif lam == two:
                out.append(SparseVector({_a(k): field(2), lo: -one, hi: -one, _s(j): field(-4)}))
            elif lam == half:
                out.append(SparseVector({lo: one, hi: -one}))
        return out

    def radius(v):
        r = 0
        for key in v:
            r = max(r, abs(key[1] - k) if key[0] == "a" else key[1])
        return r

    return gens, radius


def highwater_decomposition(entry: ZooEntry | None = None, k: int = 0,
                            field: FieldSpec = QQ) -> WindowedDecomposition:
    """Windowed decomposition of the Highwater algebra at the axis ``a(k)``."""
    entry = entry or highwater(field)
    f = entry.algebra.field
    gens, radius = highwater_generators(f, k)
    return WindowedDecomposition(entry.algebra, entry.algebra.basis(_a(k)), entry.law, gens, radius)


# -- degenerate controls -------------------------------------------------------

def zero_algebra(n: int, field: FieldSpec = QQ) -> ZooEntry:
    names = ["x"] if n == 1 else [f"x{k}" for k in range(1, n + 1)]
    alg = Algebra.from_products(field, names, {})
    return ZooEntry(f"zero{n}", alg, [], builtin_law("assoc", (), field))


def diag2(field: FieldSpec = QQ) -> ZooEntry:
    alg = Algebra.from_products(field, ["e1", "e2"], {("e1", "e1"): {"e1": 1}, ("e2", "e2"): {"e2": 1}})
    return ZooEntry("diag2", alg, [alg.basis(0), alg.basis(1)], builtin_law("assoc", (), field))


def line_algebra(field: FieldSpec = QQ) -> ZooEntry:
    """One-dimensional algebra ``F e`` with ``e e = e`` (the field itself)."""
    alg = Algebra.from_products(field, ["e"], {("e", "e"): {"e": 1}})
    return ZooEntry("line", alg, [alg.basis(0)], builtin_law("assoc", (), field))


def degenerates(kind: str, field: FieldSpec = QQ, n: int = 1, eta="1/4") -> ZooEntry:
    if kind == "zero":
        return zero_algebra(n, field)
    if kind == "diag2":
        return diag2(field)
    if kind == "two-point-matsuo":
        entry = matsuo(fischer_two_points(), eta, field)
        entry.name = "two-point-matsuo"
        return entry
    if kind == "line":
        return line_algebra(field)
    raise ZooError(f"unknown degenerate kind {kind!r}")


def build(name: str, field: FieldSpec = QQ, params=()) -> ZooEntry:
    """Entry by CLI name: ``2a``, ``b-plus``, ``matsuo <space> <eta>``, ``highwater``,
    ``zero <n>``, ``diag2``, ``two-point-matsuo [eta]``, ``line``."""
    params = list(params)
    if name == "2a":
        return norton_sakuma_2a(field)
    if name in ("b-plus", "jordan-b-plus"):
        return jordan_b_plus(field)
    if name == "highwater":
        return highwater(field)
    if name == "matsuo":
        space = params[0] if params else "line"
        eta = params[1] if len(params) > 1 else "1/4"
        if space not in FISCHER_SPACES:
            raise ZooError(f"unknown Fischer space {space!r}; known: {', '.join(FISCHER_SPACES)}")
        entry = matsuo(FISCHER_SPACES[space](), eta, field)
        entry.name = f"matsuo-{space}"
        return entry
    if name == "zero":
        return zero_algebra(int(params[0]) if params else 1, field)
    if name == "two-point-matsuo":
        return degenerates(name, field, eta=params[0] if params else "1/4")
    if name in ("diag2", "line"):
        return degenerates(name, field)
    raise ZooError(f"unknown zoo entry {name!r}")


ZOO_NAMES = ("2a", "b-plus", "matsuo", "highwater", "zero", "diag2", "two-point-matsuo", "line")
