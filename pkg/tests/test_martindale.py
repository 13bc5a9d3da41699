from fractions import Fraction as Fr

import pytest

import oracle
from axialkit.core import GF, QQ, Algebra, Subspace
from axialkit.fusion import builtin_law, decompose
from axialkit.martindale import (
    CapExceeded,
    MartindaleError,
    OperatorFamily,
    annihilated,
    build_operator_families,
    check_conditions,
    check_conditions_window,
    check_j_conditions,
    family_recipes,
    lemma_statements,
    lemma_statements_window,
    verify_family_annihilation,
    verify_family_injectivity,
)
from axialkit.zoo import (
    degenerates,
    highwater_decomposition,
    jordan_b_plus,
    matsuo,
    fischer_line,
    fischer_symmetric,
    norton_sakuma_2a,
)


def _decomp(entry, axis=None, law=None):
    return decompose(entry.algebra, entry.axes[0] if axis is None else axis, law or entry.law)


# -- examples ------------------------------------------------------------------

def test_2a_all_true():
    e = norton_sakuma_2a(QQ)
    rep = check_conditions(e.algebra, _decomp(e))
    assert rep.conditions == {"i": True, "ii": True, "iii": True}
    assert rep.status == "pass" and not rep.witnesses


def test_b_plus_all_true():
    e = jordan_b_plus(QQ)
    rep = check_j_conditions(e.algebra, _decomp(e))
    assert rep.all_true and rep.cond_i and rep.cond_iii


def test_2a_monster_law_all_five():
    e = norton_sakuma_2a(QQ)
    d = _decomp(e, law=builtin_law("monster", ["1/4", "1/32"], QQ))
    rep = check_conditions(e.algebra, d)
    # A_beta = 0: (iv) has nothing to kill, (v) has no multipliers and fails
    assert rep.conditions["iv"] and not rep.conditions["v"]
    assert rep.witnesses["v"][:2] == ("alpha", "beta")
    assert rep.kind == "M"


def test_two_point_matsuo_fails_i_with_axis_witness():
    e = degenerates("two-point-matsuo", QQ)
    rep = check_conditions(e.algebra, _decomp(e))
    assert not rep.cond_i
    target, mult, w = rep.witnesses["i"]
    assert (target, mult) == ("1", "alpha")
    assert w == e.axes[0]
    assert rep.status == "fail"


def test_diag2_monster_law_fails_i():
    e = degenerates("diag2", QQ)
    law = builtin_law("monster", ["1/4", "1/32"], QQ)
    rep = check_conditions(e.algebra, _decomp(e, (QQ(1), QQ(0)), law))
    assert not rep.cond_i
    assert rep.witnesses["i"][2] == (1, 0)


def test_empty_zero_part_fails_iii():
    # e x = x/2 and x x = 0: A_0 = 0 while A_1/2 is a line
    alg = Algebra.from_products(QQ, ["e", "x"], {("e", "e"): {"e": 1}, ("e", "x"): {"x": Fr(1, 2)}})
    law = builtin_law("jordan", ["1/2"], QQ)
    d = decompose(alg, alg.basis("e"), law)
    assert d.part(0).dim == 0
    rep = check_conditions(alg, d)
    assert not rep.cond_iii
    assert rep.witnesses["iii"][:2] == ("alpha", "0")


def test_assoc_law_has_no_conditions():
    e = norton_sakuma_2a(QQ)
    with pytest.raises(MartindaleError):
        check_conditions(e.algebra, _decomp(e, law=builtin_law("assoc", (), QQ)))


def test_incomplete_decomposition_rejected():
    e = jordan_b_plus(QQ)
    d = _decomp(e, law=builtin_law("jordan", ["1/4"], QQ))
    assert not d.complete
    with pytest.raises(MartindaleError):
        check_conditions(e.algebra, d)


def test_annihilated_examples():
    e = degenerates("diag2", QQ)
    alg = e.algebra
    d = _decomp(e, (QQ(1), QQ(0)), builtin_law("jordan", ["1/4"], QQ))
    assert annihilated(alg, d.part(1), d.part(0)) == d.part(1)
    assert annihilated(alg, d.part(1), d.part(1)).dim == 0


def test_matsuo_s4_double_axis_conditions():
    e = matsuo(fischer_symmetric(4), "1/4", QQ)
    law = e.extra["double_law"]
    for x in e.extra["double_axes"]:
        rep = check_conditions(e.algebra, decompose(e.algebra, x, law))
        assert rep.kind == "M"
        assert set(rep.conditions) == {"i", "ii", "iii", "iv", "v"}


# -- operator families -------------------------------------------------------------

def test_family_sizes():
    e = norton_sakuma_2a(QQ)
    fams = build_operator_families(e.algebra, _decomp(e), 1)
    assert len(fams["F1"].words) == 1
    assert fams["F1"].slots == ("0", "e", "alpha", "e")
    b = jordan_b_plus(QQ)
    fams = build_operator_families(b.algebra, _decomp(b), 2)
    assert len(fams["Lalpha"].words) == 2
    assert fams["Lalpha"].slots == ("e", "alpha")


def test_family_recipes_reject_bad_r_and_kind():
    with pytest.raises(MartindaleError):
        family_recipes("J", 0)
    with pytest.raises(MartindaleError):
        family_recipes(None, 1)
    assert family_recipes("M", 1)["Fbeta"] == ["0", "e", "alpha", "0", "e"]


def test_cap_exceeded():
    e = norton_sakuma_2a(QQ)
    with pytest.raises(CapExceeded):
        build_operator_families(e.algebra, _decomp(e), 1, cap=0)
    b = jordan_b_plus(QQ)
    with pytest.raises(CapExceeded):
        lemma_statements(b.algebra, _decomp(b), 3, method="words", cap=1)


def test_l1_not_injective_on_a1_and_empty_family():
    e = norton_sakuma_2a(QQ)
    d = _decomp(e)
    fams = build_operator_families(e.algebra, d, 1)
    # L_e acts as the identity on A_1, so L1 is injective there and kills nothing
    assert verify_family_injectivity(fams["L1"], d.part(1))
    assert not verify_family_annihilation(fams["L1"], d.part(1))
    # L0 kills A_1 in 2A
    assert not verify_family_injectivity(fams["L0"], d.part(1))
    empty = OperatorFamily("x", (), (), 1)
    assert not verify_family_injectivity(empty, d.part(1))
    assert verify_family_injectivity(empty, Subspace.zero(QQ, 3))


@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("mk", [norton_sakuma_2a, jordan_b_plus])
def test_lemma_statements_hold(mk, r):
    e = mk(QQ)
    d = _decomp(e)
    rep = lemma_statements(e.algebra, d, r)
    assert rep.ok
    words = lemma_statements(e.algebra, d, r, method="words")
    assert [(c.family, c.part, c.statement, c.holds) for c in rep.checks] == \
        [(c.family, c.part, c.statement, c.holds) for c in words.checks]
    n_parts = len(e.law.eigenvalues)
    assert len(rep.checks) == n_parts * n_parts


def test_lemma_statements_fail_on_degenerate():
    e = degenerates("two-point-matsuo", QQ)
    rep = lemma_statements(e.algebra, _decomp(e), 1)
    assert not rep.ok
    bad = [c for c in rep.checks if not c.holds]
    assert any(c.statement == "injective" for c in bad)


@pytest.mark.parametrize("r", [1, 2])
def test_lemma_window_highwater(r):
    rep = lemma_statements_window(highwater_decomposition(), 4, r)
    assert rep.ok and rep.window == 4
    assert {c.family for c in rep.checks} == {"F1", "F0", "Falpha", "Fbeta"}


# -- windowed conditions -----------------------------------------------------------------

def test_highwater_conditions_window():
    rep = check_conditions_window(highwater_decomposition(), 8)
    assert rep.conditions == {k: True for k in ("i", "ii", "iii", "iv", "v")}
    assert rep.status == "window-verified" and rep.window == 8


# -- brute-force oracle over F_5 ------------------------------------------------------------

P = 5
F5 = GF(P)
JORDAN = [("jordan", [a]) for a in ("1/2", "1/4", "2")]
MONSTER = [("monster", ab) for ab in (("1/2", "1/4"), ("1/4", "1/2"), ("2", "1/2"))]

ORACLE_CASES = [
    ("b-plus", jordan_b_plus(F5), oracle.B_PLUS, 4),
    ("matsuo-line", matsuo(fischer_line(), "1/4", F5),
     oracle.matsuo_line(Fr(1, 4)), 3),
    ("two-point-matsuo", degenerates("two-point-matsuo", F5), oracle.two_points(), 2),
    ("diag2", degenerates("diag2", F5), oracle.diag2(), 2),
    ("line", degenerates("line", F5), oracle.line(), 1),
]


def _values(law):
    vals = {"1": 1, "0": 0, "alpha": int(law.alpha)}
    if law.kind == "M":
        vals["beta"] = int(law.beta)
    return vals


@pytest.mark.parametrize("name,entry,table,n", ORACLE_CASES, ids=[c[0] for c in ORACLE_CASES])
def test_conditions_agree_with_brute_force(name, entry, table, n):
    tab = oracle.mod_table(table, n, P)
    alg = entry.algebra
    idems = oracle.idempotents(tab, n, P)
    assert idems
    checked = 0
    for e in idems:
        ev = tuple(F5(c) for c in e)
        assert alg.is_idempotent(ev)
        for lname, params in JORDAN + MONSTER:
            law = builtin_law(lname, params, F5)
            vals = _values(law)
            pairs = oracle.J_PAIRS if law.kind == "J" else oracle.M_PAIRS
            d = decompose(alg, ev, law)
            complete = oracle.is_complete(tab, n, P, e, sorted(set(vals.values())))
            assert d.complete == complete
            if not complete:
                with pytest.raises(MartindaleError):
                    check_conditions(alg, d)
                continue
            want = oracle.brute_martindale(tab, n, P, e, vals, pairs)
            assert check_conditions(alg, d).conditions == want, (e, law.spec())
            checked += 1
    assert checked


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_zero_algebra_has_no_axes(k):
    # no nonzero idempotent, so there is nothing to decompose
    assert oracle.idempotents(oracle.zero(k), k, P) == []
    alg = degenerates("zero", F5, n=k).algebra
    with pytest.raises(ValueError):
        decompose(alg, (F5(0),) * k, builtin_law("jordan", ["1/2"], F5))
