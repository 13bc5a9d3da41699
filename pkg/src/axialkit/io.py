"""Text formats: algebra files and map files.

Algebra file (line oriented, ``#`` starts a comment)::

    field Q                     # or: field F 7
    dim 3
    basis eA eB eC
    mul eA eB -> 1/8 eA + 1/8 eB + -1/8 eC
    axis eA                     # or a combination: axis 1 eA + 1 eB
    law jordan 1/4              # assoc | jordan <eta> | monster <a> <b> | highwater

Products not listed are zero unless their mirror ``mul y x`` is given.
``lazy highwater`` replaces dim/basis/mul for the infinite-dimensional
Highwater algebra; its axes are written ``a(i)``.

Map files: ``map <size>`` followed by ``i -> j`` lines over canonical element
indices, or ``linmap <n>`` followed by n matrix rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .core.algebra import Algebra, AlgebraError, LazyAlgebra
from .core.field import FieldError, FieldSpec
from .core.finite import IndexedAlgebra
from .core.linalg import Matrix
from .fusion import FusionError, FusionLaw, parse_law
from .maps import LinearMap, MapError, TableMap
from .zoo import format_highwater_key, highwater, parse_highwater_key


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


LAZY_KINDS = ("highwater",)

# product rules of the lazy Highwater algebra, written as comments in its marker file
HIGHWATER_RULES = [
    "# Highwater algebra: basis a(i) for i in Z, s(j) for j >= 1, s(0) = 0",
    "# a(i) a(j) = 1/2 a(i) + 1/2 a(j) + s(|i-j|)",
    "# a(i) s(j) = -3/4 a(i) + 3/8 a(i-j) + 3/8 a(i+j) + 3/2 s(j)",
    "# s(i) s(j) = 3/4 s(i) + 3/4 s(j) - 3/8 s(|i-j|) - 3/8 s(i+j)",
]


@dataclass
class AlgebraFile:
    field: FieldSpec
    algebra: Algebra | LazyAlgebra
    axes: list = dc_field(default_factory=list)
    law: FusionLaw | None = None
    lazy: str | None = None

    @property
    def is_lazy(self) -> bool:
        return self.lazy is not None


def _clean(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def parse_combination(tokens, field: FieldSpec, known=None, line=None) -> dict:
    """``[c] name + [c] name ...`` into ``{name: coeff}`` (``0`` is the empty sum)."""
    if tokens == ["0"]:
        return {}
    out: dict = {}
    terms, cur = [], []
    for t in tokens:
        if t == "+":
            terms.append(cur)
            cur = []
        else:
            cur.append(t)
    terms.append(cur)
    for term in terms:
        if len(term) == 1:
            coeff, name = "1", term[0]
        elif len(term) == 2:
            coeff, name = term
        else:
            raise ParseError(f"bad term {' '.join(term) or '(empty)'!r}", line)
        if name.startswith("-") and len(term) == 1:
            coeff, name = "-1", name[1:]
        if known is not None and name not in known:
            raise ParseError(f"unknown basis name {name!r}", line)
        try:
            c = field(coeff)
        except (ValueError, ZeroDivisionError, FieldError) as exc:
            raise ParseError(f"bad coefficient {coeff!r}: {exc}", line) from None
        out[name] = out.get(name, field.zero) + c
    return {k: v for k, v in out.items() if v}


def parse_algebra(text: str) -> AlgebraFile:
    field = None
    dim = None
    names = None
    products: dict = {}
    axis_specs = []
    law_tokens = None
    lazy = None
    for n, toks in _clean(text):
        key, rest = toks[0], toks[1:]
        if key == "field":
            try:
                field = FieldSpec.parse(" ".join(rest))
            except FieldError as exc:
                raise ParseError(str(exc), n) from None
        elif key == "dim":
            if len(rest) != 1 or not rest[0].isdigit():
                raise ParseError("dim takes one non-negative integer", n)
            dim = int(rest[0])
        elif key == "basis":
            names = rest
            if len(set(names)) != len(names):
                raise ParseError("duplicate basis name", n)
        elif key == "mul":
            if field is None or names is None:
                raise ParseError("mul before field/basis", n)
            if len(rest) < 4 or rest[2] != "->":
                raise ParseError("expected: mul <x> <y> -> <combination>", n)
            x, y = rest[0], rest[1]
            for nm in (x, y):
                if nm not in names:
                    raise ParseError(f"unknown basis name {nm!r}", n)
            terms = parse_combination(rest[3:], field, set(names), n)
            for pair in ((x, y), (y, x)):
                if pair in products and products[pair] != terms:
                    raise ParseError(f"conflicting products for {x}*{y}", n)
            products[x, y] = terms
        elif key == "axis":
            axis_specs.append((n, rest))
        elif key == "law":
            law_tokens = (n, rest)
        elif key == "lazy":
            if rest != ["highwater"]:
                raise ParseError(f"unknown lazy algebra {' '.join(rest)!r}", n)
            lazy = rest[0]
        else:
            raise ParseError(f"unknown directive {key!r}", n)
    if field is None:
        raise ParseError("missing field line")
    if lazy:
        try:
            alg = highwater(field).algebra
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        axes = []
        for n, toks in axis_specs:
            try:
                keys = {parse_highwater_key(k): c for k, c in parse_combination(toks, field, None, n).items()}
            except ValueError as exc:
                raise ParseError(str(exc), n) from None
            axes.append(alg.vector(keys))
    else:
        if names is None:
            raise ParseError("missing basis line")
        if dim is not None and dim != len(names):
            raise ParseError(f"dim {dim} but {len(names)} basis names")
        try:
            alg = Algebra.from_products(field, names, products)
        except AlgebraError as exc:
            raise ParseError(str(exc)) from None
        axes = [alg.vector(parse_combination(toks, field, set(names), n)) for n, toks in axis_specs]
    law = None
    if law_tokens is not None:
        n, toks = law_tokens
        try:
            law = parse_law(toks, field)
        except FusionError as exc:
            raise ParseError(str(exc), n) from None
    return AlgebraFile(field, alg, axes, law, lazy)


def _format_terms(field, terms) -> str:
    return " + ".join(f"{field.format(c)} {k}" for k, c in terms) if terms else "0"


def _axis_line(field, terms) -> str:
    if len(terms) == 1 and terms[0][1] == field.one:
        return f"axis {terms[0][0]}"
    return "axis " + _format_terms(field, terms)


def emit_algebra(alg: Algebra | LazyAlgebra, axes=(), law: FusionLaw | None = None) -> str:
    """Canonical text: products for i <= j in basis order, every coefficient written."""
    f = alg.field
    lines = ["field Q" if f.is_rational else f"field F {f.modulus}"]
    if isinstance(alg, LazyAlgebra):
        lines = HIGHWATER_RULES + lines + [f"lazy {alg.name}"]
        for a in axes:
            lines.append(_axis_line(f, [(format_highwater_key(k), a[k]) for k in a.support()]))
    else:
        lines.append(f"dim {alg.dim}")
        lines.append("basis " + " ".join(alg.names))
        for i in range(alg.dim):
            for j in range(i, alg.dim):
                v = alg.table[i][j]
                if any(v):
                    rhs = _format_terms(f, [(alg.names[k], c) for k, c in enumerate(v) if c])
                    lines.append(f"mul {alg.names[i]} {alg.names[j]} -> {rhs}")
        for a in axes:
            lines.append(_axis_line(f, [(alg.names[k], c) for k, c in enumerate(a) if c]))
    if law is not None:
        lines.append(f"law {law.spec()}")
    return "\n".join(lines) + "\n"


def emit_file(af: AlgebraFile) -> str:
    return emit_algebra(af.algebra, af.axes, af.law)


# -- maps -------------------------------------------------------------------------

def parse_map(text: str, alg: Algebra) -> TableMap | LinearMap:
    lines = list(_clean(text))
    if not lines:
        raise ParseError("empty map file")
    n0, head = lines[0]
    f = alg.field
    if head[0] == "map":
        if f.is_rational:
            raise ParseError("table maps need an algebra over F_p", n0)
        ia = IndexedAlgebra(alg)
        if len(head) != 2 or int(head[1]) != ia.size:
            raise ParseError(f"map header must be 'map {ia.size}'", n0)
        table = [None] * ia.size
        for n, toks in lines[1:]:
            if len(toks) != 3 or toks[1] != "->":
                raise ParseError("expected: i -> j", n)
            i, j = int(toks[0]), int(toks[2])
            if not 0 <= i < ia.size or not 0 <= j < ia.size:
                raise ParseError(f"index out of range 0..{ia.size - 1}", n)
            if table[i] is not None and table[i] != j:
                raise ParseError(f"two values for {i}", n)
            table[i] = j
        missing = [i for i, v in enumerate(table) if v is None]
        if missing:
            raise ParseError(f"map undefined at {missing[0]}")
        return TableMap(ia, table)
    if head[0] == "linmap":
        if len(head) != 2 or int(head[1]) != alg.dim:
            raise ParseError(f"linmap header must be 'linmap {alg.dim}'", n0)
        rows = []
        for n, toks in lines[1:]:
            if len(toks) != alg.dim:
                raise ParseError(f"row needs {alg.dim} entries", n)
            try:
                rows.append(tuple(f(t) for t in toks))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), n) from None
        if len(rows) != alg.dim:
            raise ParseError(f"linmap needs {alg.dim} rows, got {len(rows)}")
        try:
            return LinearMap(alg, Matrix.from_rows(f, rows, alg.dim))
        except MapError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown map header {head[0]!r}", n0)


def emit_map(m: TableMap | LinearMap) -> str:
    if isinstance(m, TableMap):
        lines = [f"map {len(m.table)}"] + [f"{i} -> {j}" for i, j in enumerate(m.table)]
    else:
        f = m.domain.field
        lines = [f"linmap {m.domain.dim}"] + [" ".join(f.format(c) for c in row) for row in m.matrix.rows]
    return "\n".join(lines) + "\n"
