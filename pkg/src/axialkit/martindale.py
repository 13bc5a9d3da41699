"""Martindale-like non-degeneracy conditions and the operator families used
to check the annihilation/injectivity lemmas on concrete algebras.

Every "for all t in A_x" quantifier is reduced to a basis of A_x: the
conditions are linear in t, so a basis multiplier set decides them.  For
the same reason an operator family is generated by words whose factors run
over part bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as cartesian
from fractions import Fraction
from math import lcm, prod

from .core.algebra import Algebra, SparseEchelon, SparseVector
from .core.field import FieldSpec
from .core.linalg import Matrix, Subspace, Vector, combination, kernel
from .fusion import AxisDecomposition, FusionError, WindowedDecomposition, dense_columns


class MartindaleError(ValueError):
    pass


class CapExceeded(MartindaleError):
    def __init__(self, family: str, count: int, cap: int):
        super().__init__(f"family {family} needs {count} words, over the cap of {cap}")
        self.family = family
        self.count = count
        self.cap = cap


DEFAULT_CAP = 10_000

# condition name -> ((annihilated part, multiplier part), ...)
J_CONDITIONS = {
    "i": (("1", "alpha"), ("0", "alpha")),
    "ii": (("0", "0"),),
    "iii": (("alpha", "0"),),
}
M_CONDITIONS = {
    "i": (("1", "alpha"), ("0", "alpha")),
    "ii": (("0", "0"),),
    "iii": (("alpha", "0"), ("beta", "0")),
    "iv": (("beta", "alpha"),),
    "v": (("alpha", "beta"),),
}


@dataclass
class MartindaleReport:
    """Outcome of the condition checks.

    ``witnesses[name] = (part label, multiplier label, w)`` with ``w`` a nonzero
    vector of that part killed by every multiplier.  ``window`` is set for
    windowed checks on an infinite-dimensional algebra, where a pass only
    covers generators up to that index.
    """

    kind: str
    conditions: dict
    witnesses: dict = dc_field(default_factory=dict)
    window: int | None = None

    @property
    def all_true(self) -> bool:
        return all(self.conditions.values())

    @property
    def status(self) -> str:
        if not self.all_true:
            return "fail"
        return "pass" if self.window is None else "window-verified"

    def __getattr__(self, name):
        if name.startswith("cond_"):
            try:
                return self.__dict__["conditions"][name[5:]]
            except KeyError:
                pass
        raise AttributeError(name)


class MartindaleReportJ(MartindaleReport):
    pass


class MartindaleReportM(MartindaleReport):
    pass


def _label_parts(decomp: AxisDecomposition) -> dict:
    law = decomp.law
    return {law.label(lam): decomp.parts[lam] for lam in law.eigenvalues}


def _require(decomp, kind: str):
    if decomp.law.kind != kind:
        raise MartindaleError(f"law {decomp.law.spec()} is not of type {kind}")
    if isinstance(decomp, AxisDecomposition) and not decomp.complete:
        raise MartindaleError("decomposition is incomplete (eigenvalues outside the law)")


def annihilated(alg: Algebra, part: Subspace, multipliers: Subspace) -> Subspace:
    """``{a in part : t a = 0 for every t in multipliers}``."""
    f, n = alg.field, alg.dim
    if part.dim == 0 or not multipliers.basis:
        return part
    pb = part.basis
    # column i stacks t_k * p_i over all multiplier basis vectors t_k
    cols = []
    for p in pb:
        col = []
        for t in multipliers.basis:
            col.extend(alg.product(t, p))
        cols.append(tuple(col))
    K = kernel(Matrix.from_columns(f, cols, n * len(multipliers.basis)))
    return Subspace.span(f, n, [combination(c, pb, f, n) for c in K.basis])


def _check(alg, decomp, table, cls, kind):
    _require(decomp, kind)
    parts = _label_parts(decomp)
    conds, wits = {}, {}
    for name, pairs in table.items():
        ok = True
        for target, mult in pairs:
            bad = annihilated(alg, parts[target], parts[mult])
            if bad.dim:
                ok = False
                wits[name] = (target, mult, bad.basis[0])
                break
        conds[name] = ok
    return cls(kind, conds, wits)


def check_j_conditions(alg: Algebra, decomp: AxisDecomposition) -> MartindaleReportJ:
    return _check(alg, decomp, J_CONDITIONS, MartindaleReportJ, "J")


def check_m_conditions(alg: Algebra, decomp: AxisDecomposition) -> MartindaleReportM:
    return _check(alg, decomp, M_CONDITIONS, MartindaleReportM, "M")


def check_conditions(alg: Algebra, decomp: AxisDecomposition) -> MartindaleReport:
    """Dispatch on the law's type."""
    if decomp.law.kind == "J":
        return check_j_conditions(alg, decomp)
    if decomp.law.kind == "M":
        return check_m_conditions(alg, decomp)
    raise MartindaleError(f"law {decomp.law.spec()} has no Martindale-like conditions")


# -- windowed (lazy) versions -------------------------------------------------

def _window_parts(wd: WindowedDecomposition, N: int) -> dict:
    law = wd.law
    return {law.label(lam): wd.generators(lam, N) for lam in law.eigenvalues}


def annihilated_window(wd: WindowedDecomposition, part: list, multipliers: list) -> list:
    """Nonzero combinations of ``part`` generators killed by every multiplier
    generator (a basis of that space, as sparse vectors)."""
    if not part:
        return []
    if not multipliers:
        return list(part)
    alg, f = wd.algebra, wd.field
    cols = []
    for g in part:
        col = {}
        for k, t in enumerate(multipliers):
            for key, c in alg.product(t, g).items():
                col[k, key] = c
        cols.append(col)
    mat, _ = dense_columns(cols, f)
    if mat.nrows == 0:
        return list(part)
    K = kernel(mat)
    return [sum((c * g for c, g in zip(vec, part) if c), SparseVector()) for vec in K.basis]


def check_conditions_window(wd: WindowedDecomposition, N: int) -> MartindaleReport:
    """Conditions with parts and multipliers cut to generators of index <= N."""
    kind = wd.law.kind
    _require(wd, kind)
    table, cls = (J_CONDITIONS, MartindaleReportJ) if kind == "J" else (M_CONDITIONS, MartindaleReportM)
    parts = _window_parts(wd, N)
    conds, wits = {}, {}
    for name, pairs in table.items():
        ok = True
        for target, mult in pairs:
            bad = annihilated_window(wd, parts[target], parts[mult])
            if bad:
                ok = False
                wits[name] = (target, mult, bad[0])
                break
        conds[name] = ok
    return cls(kind, conds, wits, window=N)


# -- operator families -----------------------------------------------------------

# slot recipes; "e" is the axis itself, other letters name a part
def family_recipes(kind: str, r: int) -> dict:
    if r < 1:
        raise MartindaleError("word length r must be positive")
    L0, L1 = ["0"] * r, ["e"] * r
    La = ["e"] * (r - 1) + ["alpha"]
    if kind == "J":
        Fa = L0 + L1
        return {"L0": L0, "L1": L1, "Lalpha": La, "Falpha": Fa,
                "F1": Fa + La + L1, "F0": Fa + La + L0}
    if kind == "M":
        Lb = ["e"] * (r - 1) + ["beta"]
        G = L0 + L1
        Fb = G + La + G
        Fa = Fb + Lb + G
        return {"L0": L0, "L1": L1, "Lalpha": La, "Lbeta": Lb, "G": G, "Fbeta": Fb,
                "Falpha": Fa, "F1": Fa + La + L1, "F0": Fa + La + L0}
    raise MartindaleError(f"no operator families for law type {kind!r}")


# family tag attached to each part label in the lemma statements
LEMMA_FAMILIES = {"1": "F1", "0": "F0", "alpha": "Falpha", "beta": "Fbeta"}


@dataclass(frozen=True)
class OperatorWord:
    """``L_{t_1} ... L_{t_k}``; ``factors`` holds ``(part label, t)`` pairs."""

    factors: tuple
    matrix: Matrix

    def apply(self, v: Vector) -> Vector:
        return self.matrix.apply(v)


@dataclass(frozen=True)
class OperatorFamily:
    tag: str
    slots: tuple
    words: tuple
    r: int


def _slot_bases(decomp, slots, parts):
    return [[decomp.axis] if s == "e" else list(parts[s].basis) for s in slots]


def build_operator_families(alg: Algebra, decomp: AxisDecomposition, r: int = 1,
                            cap: int = DEFAULT_CAP) -> dict:
    """Every family of the law's type as explicit basis words.

    Raises :class:`CapExceeded` if a family would need more than ``cap`` words.
    """
    if cap < 1:
        raise CapExceeded("(any)", 1, cap)
    kind = decomp.law.kind
    _require(decomp, kind)
    parts = _label_parts(decomp)
    recipes = family_recipes(kind, r)
    bases = {}
    for tag, slots in recipes.items():
        sb = _slot_bases(decomp, slots, parts)
        count = prod(len(b) for b in sb)
        if count > cap:
            raise CapExceeded(tag, count, cap)
        bases[tag] = (slots, sb)
    mats: dict = {}

    def L(t):
        if t not in mats:
            mats[t] = alg.left_mul_matrix(t)
        return mats[t]

    out = {}
    for tag, (slots, sb) in bases.items():
        words = []
        for choice in cartesian(*sb):
            M = Matrix.identity(alg.field, alg.dim)
            for t in choice:
                M = M @ L(t)
            words.append(OperatorWord(tuple(zip(slots, choice)), M))
        out[tag] = OperatorFamily(tag, tuple(slots), tuple(words), r)
    return out


def verify_family_annihilation(fam: OperatorFamily, part: Subspace) -> bool:
    return all(all(not any(w.apply(v)) for v in part.basis) for w in fam.words)


def verify_family_injectivity(fam: OperatorFamily, part: Subspace) -> bool:
    """True iff no nonzero vector of ``part`` is killed by every word."""
    if part.dim == 0:
        return True
    if not fam.words:
        return False
    f = part.field
    stacked = Matrix.from_rows(f, [row for w in fam.words for row in w.matrix.rows], part.ambient)
    cols = [stacked.apply(b) for b in part.basis]
    K = kernel(Matrix.from_columns(f, cols, stacked.nrows))
    return K.dim == 0


# -- lemma statements -----------------------------------------------------------

@dataclass
class LemmaCheck:
    family: str
    part: str
    statement: str  # "annihilates" or "injective"
    holds: bool
    witness: object = None


@dataclass
class LemmaReport:
    r: int
    checks: list
    window: int | None = None

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)


def _image_span(alg: Algebra, decomp, slots, parts, part: Subspace) -> Subspace:
    # apply slots right to left, keeping only a basis of the image
    f, n = alg.field, alg.dim
    S = part
    for bs in reversed(_slot_bases(decomp, slots, parts)):
        if S.dim == 0:
            break
        S = Subspace.span(f, n, [alg.product(t, v) for t in bs for v in S.basis])
    return S


def _joint_kernel(alg: Algebra, decomp, slots, parts, part: Subspace) -> Subspace:
    # row space of all words, built left to right: rows(L_t X) = rows(L_t) X
    f, n = alg.field, alg.dim
    bases = _slot_bases(decomp, slots, parts)
    R = Subspace.span(f, n, [row for t in bases[0] for row in alg.left_mul_matrix(t).rows])
    for bs in bases[1:]:
        if R.dim == 0:
            break
        rows = []
        for t in bs:
            Lt = alg.left_mul_matrix(t)
            rows.extend(Lt.T.apply(r) for r in R.basis)
        R = Subspace.span(f, n, rows)
    if not part.basis:
        return part
    cols = [tuple(sum((r[k] * b[k] for k in range(n)), f.zero) for r in R.basis) for b in part.basis]
    if not R.basis:
        return part
    K = kernel(Matrix.from_columns(f, cols, R.dim))
    return Subspace.span(f, n, [combination(c, part.basis, f, n) for c in K.basis])


def lemma_statements(alg: Algebra, decomp: AxisDecomposition, r: int = 1,
                     method: str = "span", cap: int = DEFAULT_CAP) -> LemmaReport:
    """``F_i A_j = 0`` for every ``i != j`` and ``F_i`` injective on ``A_i``.

    ``method="span"`` propagates image and row spaces slot by slot (no word
    enumeration); ``method="words"`` builds the families explicitly.
    """
    kind = decomp.law.kind
    _require(decomp, kind)
    parts = _label_parts(decomp)
    recipes = family_recipes(kind, r)
    fams = build_operator_families(alg, decomp, r, cap) if method == "words" else None
    checks = []
    for i in parts:
        tag = LEMMA_FAMILIES[i]
        for j in parts:
            P = parts[j]
            if i != j:
                if fams is not None:
                    ok = verify_family_annihilation(fams[tag], P)
                    wit = None
                else:
                    img = _image_span(alg, decomp, recipes[tag], parts, P)
                    ok, wit = img.dim == 0, (img.basis[0] if img.dim else None)
                checks.append(LemmaCheck(tag, j, "annihilates", ok, wit))
        P = parts[i]
        if fams is not None:
            ok, wit = verify_family_injectivity(fams[tag], P), None
        else:
            K = _joint_kernel(alg, decomp, recipes[tag], parts, P)
            ok, wit = K.dim == 0, (K.basis[0] if K.dim else None)
        checks.append(LemmaCheck(tag, i, "injective", ok, wit))
    return LemmaReport(r, checks)


# -- lemma statements on windows -----------------------------------------------------

def sparse_basis(vectors, field: FieldSpec = None) -> list:
    """Echelon basis of the span of sparse vectors."""
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


def _window_slots(wd: WindowedDecomposition, slots, parts):
    return [[wd.axis] if s == "e" else parts[s] for s in slots]


def _integral(v) -> dict:
    den = lcm(*(Fraction(c).denominator for c in v.values())) if v else 1
    return {k: int(c * den) for k, c in v.items()}


def _image_span_window(wd, slots, parts, part: list) -> list:
    alg = wd.algebra
    if wd.field.is_rational:
        # spans are scale-invariant, so work with integer multiples throughout
        mul = alg.integral_product
    else:
        mul = alg.product
    S = sparse_basis(part)
    slot_bases = _window_slots(wd, slots, parts)
    if wd.field.is_rational:
        S = [_integral(v) for v in S]
        slot_bases = [[_integral(t) for t in bs] for bs in slot_bases]
    for bs in reversed(slot_bases):
        if not S:
            break
        ech = SparseEchelon()
        for t in bs:
            for v in S:
                ech.add(mul(t, v))
        S = ech.rows()
    return [SparseVector(v) for v in S]


def _joint_kernel_window(wd, slots, parts, part: list):
    """Kernel of all window words on the span of ``part``, as coefficient
    vectors; depth-first over words, stopping as soon as it is zero."""
    alg, f = wd.algebra, wd.field
    m = len(part)
    if m == 0:
        return None
    bases = list(reversed(_window_slots(wd, slots, parts)))
    K = Subspace.full(f, m)

    def constrain(images):
        nonlocal K
        cols = []
        for c in K.basis:
            s = SparseVector()
            for a, img in zip(c, images):
                if a:
                    s = s + a * img
            cols.append(s)
        mat, _ = dense_columns(cols, f)
        if mat.nrows == 0:
            return
        sub = kernel(mat)
        K = Subspace.span(f, m, [combination(c, K.basis, f, m) for c in sub.basis])

    def dfs(depth, images):
        if K.dim == 0:
            return
        if not any(images):
            return
        if depth == len(bases):
            constrain(images)
            return
        for t in bases[depth]:
            dfs(depth + 1, [alg.product(t, v) if v else v for v in images])
            if K.dim == 0:
                return

    dfs(0, list(part))
    if K.dim == 0:
        return None
    c = K.basis[0]
    return sum((a * g for a, g in zip(c, part) if a), SparseVector())


def lemma_statements_window(wd: WindowedDecomposition, N: int, r: int = 1) -> LemmaReport:
    """Lemma statements with every part and slot cut to generators of index <= N."""
    kind = wd.law.kind
    _require(wd, kind)
    parts = _window_parts(wd, N)
    recipes = family_recipes(kind, r)
    checks = []
    for i in parts:
        tag = LEMMA_FAMILIES[i]
        for j in parts:
            if i != j:
                img = _image_span_window(wd, recipes[tag], parts, parts[j])
                checks.append(LemmaCheck(tag, j, "annihilates", not img, img[0] if img else None))
        wit = _joint_kernel_window(wd, recipes[tag], parts, parts[i])
        checks.append(LemmaCheck(tag, i, "injective", wit is None, wit))
    return LemmaReport(r, checks, window=N)


__all__ = [
    "MartindaleError", "CapExceeded", "DEFAULT_CAP", "J_CONDITIONS", "M_CONDITIONS",
    "MartindaleReport", "MartindaleReportJ", "MartindaleReportM", "annihilated",
    "check_j_conditions", "check_m_conditions", "check_conditions", "annihilated_window",
    "check_conditions_window", "family_recipes", "LEMMA_FAMILIES", "OperatorWord",
    "OperatorFamily", "build_operator_families", "verify_family_annihilation",
    "verify_family_injectivity", "LemmaCheck", "LemmaReport", "lemma_statements",
    "sparse_basis", "lemma_statements_window", "FusionError",
]
