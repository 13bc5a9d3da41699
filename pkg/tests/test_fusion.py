from fractions import Fraction as Fr
import random

import pytest

from axialkit.core import GF, QQ, Subspace, SparseVector
from axialkit.fusion import (
    OUTSIDE,
    FusionError,
    FusionLaw,
    builtin_law,
    check_eigenvector_window,
    decompose,
    is_primitive,
    parse_law,
    verify_axial,
    verify_fusion,
    verify_fusion_window,
)
from axialkit.zoo import (
    degenerates,
    highwater,
    highwater_decomposition,
    fischer_line,
    jordan_b_plus,
    line_algebra,
    matsuo,
    norton_sakuma_2a,
)

LAWS = [("assoc", ()), ("jordan", ("1/4",)), ("jordan", ("1/2",)), ("monster", ("1/4", "1/32")), ("highwater", ())]


@pytest.mark.parametrize("name,params", LAWS)
def test_builtin_law_tables_symmetric_and_closed(name, params):
    law = builtin_law(name, params, QQ)
    assert QQ.one in law.eigenvalues
    for a in law.eigenvalues:
        for b in law.eigenvalues:
            assert law.allowed(a, b) == law.allowed(b, a)
            assert law.allowed(a, b) <= set(law.eigenvalues)


def test_jordan_table():
    law = builtin_law("jordan", ["1/4"], QQ)
    q = Fr(1, 4)
    assert law.eigenvalues == (1, 0, q)
    assert law.allowed(q, q) == {1, 0}


def test_monster_beta_beta():
    law = builtin_law("monster", ["1/4", "1/32"], QQ)
    b = Fr(1, 32)
    assert law.allowed(b, b) == {1, 0, Fr(1, 4)}


def test_highwater_table():
    law = builtin_law("highwater", (), QQ)
    two, half = QQ(2), QQ("1/2")
    assert law.allowed(two, two) == {0}
    assert law.allowed(half, half) == {0, two}
    assert law.allowed(1, 0) == frozenset()
    assert law.allowed(two, half) == {half}


@pytest.mark.parametrize("tokens", [["jordan", "1"], ["jordan", "0"], ["monster", "1/2", "1/2"],
                                    ["monster", "1", "1/2"], ["assoc", "3"], ["nope"]])
def test_bad_laws(tokens):
    with pytest.raises(FusionError):
        parse_law(tokens, QQ)


def test_highwater_law_needs_char():
    with pytest.raises(FusionError):
        builtin_law("highwater", (), GF(3))


def test_decompose_2a():
    e = norton_sakuma_2a(QQ)
    d = decompose(e.algebra, e.axes[0], e.law)
    assert d.complete
    assert d.dims() == {1: 1, 0: 1, Fr(1, 4): 1}
    assert d.part(0) == Subspace.span(QQ, 3, [(-1, 4, 4)])


def test_decompose_b_plus():
    e = jordan_b_plus(QQ)
    d = decompose(e.algebra, e.axes[0], e.law)
    assert d.dims() == {1: 1, Fr(1, 2): 2, 0: 1}


def test_decompose_two_point_matsuo():
    e = degenerates("two-point-matsuo", QQ)
    d = decompose(e.algebra, e.axes[0], e.law)
    assert d.complete
    assert d.dims() == {1: 1, 0: 1, Fr(1, 4): 0}


def test_decompose_rejects_non_idempotent_and_zero():
    e = norton_sakuma_2a(QQ)
    with pytest.raises(FusionError):
        decompose(e.algebra, (1, 1, 0), e.law)
    with pytest.raises(FusionError):
        decompose(e.algebra, (0, 0, 0), e.law)


def test_decompose_field_mismatch():
    e = norton_sakuma_2a(QQ)
    with pytest.raises(FusionError):
        decompose(e.algebra, e.axes[0], builtin_law("jordan", ["1/4"], GF(7)))


def test_components_reassemble():
    e = norton_sakuma_2a(QQ)
    d = decompose(e.algebra, e.axes[0], e.law)
    v = (Fr(3), Fr(-1, 2), Fr(5, 7))
    comps = d.components(v)
    total = tuple(sum(c[k] for c in comps.values()) for k in range(3))
    assert total == v
    for lam, c in comps.items():
        assert d.part(lam).contains(c)


def test_verify_fusion_examples():
    e = norton_sakuma_2a(QQ)
    assert verify_fusion(e.algebra, e.axes[0], e.law).ok
    rep = verify_fusion(e.algebra, e.axes[0], builtin_law("assoc", (), QQ))
    assert rep.status == "fail"
    (v,) = rep.violations
    assert v.offending == OUTSIDE
    assert Subspace.span(QQ, 3, [v.u]) == Subspace.span(QQ, 3, [(0, 1, -1)])


@pytest.mark.parametrize("eta", ["1/4", "1/3", "2/5", "-1"])
def test_matsuo_line_fusion(eta):
    e = matsuo(fischer_line(), eta, QQ)
    for a in e.axes:
        assert verify_fusion(e.algebra, a, e.law).ok


def test_fusion_violation_witness_replays():
    # 2A under a law that allows only 0 in A_1/4 A_1/4; the square of e_B - e_C has an e_A part
    e = norton_sakuma_2a(QQ)
    q = Fr(1, 4)
    law = FusionLaw("tight", QQ, (QQ(1), QQ(0), q), {
        (1, 1): frozenset({1}), (0, 0): frozenset({0}), (1, q): frozenset({q}), (q, 1): frozenset({q}),
        (0, q): frozenset({q}), (q, 0): frozenset({q}), (q, q): frozenset({0})}, (), "J", q)
    rep = verify_fusion(e.algebra, e.axes[0], law)
    assert rep.violations
    d = decompose(e.algebra, e.axes[0], law)
    for v in rep.violations:
        comps = d.components(e.algebra.product(v.u, v.v))
        assert v.offending not in law.allowed(v.left, v.right)
        assert any(comps[v.offending])
        assert comps[v.offending] == v.component


def test_fusion_soundness_random_pairs():
    e = norton_sakuma_2a(QQ)
    d = decompose(e.algebra, e.axes[0], e.law)
    rng = random.Random(1)
    lams = e.law.eigenvalues
    for _ in range(50):
        lam, mu = rng.choice(lams), rng.choice(lams)
        c1, c2 = rng.randint(-3, 3), rng.randint(-3, 3)
        u = tuple(c1 * x for x in d.part(lam).basis[0])
        v = tuple(c2 * x for x in d.part(mu).basis[0])
        comps = d.components(e.algebra.product(u, v))
        for nu in lams:
            if nu not in e.law.allowed(lam, mu):
                assert not any(comps[nu])


def test_jordan_implies_monster_with_fresh_beta():
    e = norton_sakuma_2a(QQ)
    law = builtin_law("monster", ["1/4", "1/32"], QQ)
    assert verify_fusion(e.algebra, e.axes[0], law).ok


def test_is_primitive():
    e = norton_sakuma_2a(QQ)
    assert is_primitive(e.algebra, e.axes[0], e.law)
    ln = line_algebra(QQ)
    assert is_primitive(ln.algebra, ln.axes[0], ln.law)
    dg = degenerates("diag2", QQ)
    assert not is_primitive(dg.algebra, (1, 1), dg.law)


def test_verify_axial():
    e = norton_sakuma_2a(QQ)
    assert verify_axial(e.algebra, e.axes, e.law).ok
    one = verify_axial(e.algebra, e.axes[:1], e.law)
    assert one.reports[0].ok and not one.generation
    b = jordan_b_plus(QQ)
    assert not verify_axial(b.algebra, b.axes, b.law).generation


def test_eigenvector_window_examples():
    hw = highwater(QQ).algebra
    a = lambda i: ("a", i)
    v0 = SparseVector({a(0): 6, a(-1): -3, a(1): -3, ("s", 1): 4})
    assert check_eigenvector_window(hw, a(0), v0, 0)
    assert check_eigenvector_window(hw, a(0), SparseVector({a(-1): 1, a(1): -1}), Fr(1, 2))
    assert check_eigenvector_window(hw, a(0), SparseVector({a(0): 1}), 1)
    assert not check_eigenvector_window(hw, a(0), v0, 2)


@pytest.mark.parametrize("k", [0, 3, -2])
def test_highwater_window_fusion(k):
    wd = highwater_decomposition(k=k)
    assert verify_fusion_window(wd, 4).ok


def test_highwater_window_components_exact():
    wd = highwater_decomposition()
    hw = wd.algebra
    v = hw.product(hw.basis(("a", 2)), hw.basis(("s", 3)))
    comps = wd.components(v)
    total = SparseVector()
    for lam, c in comps.items():
        total = total + c
        assert hw.product(wd.axis, c) == lam * c
    assert total == v
