"""Acceptance criteria 1-10.

Each criterion prints one ``criterion N: PASS|FAIL`` line (also collected
into the pytest terminal summary).  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

import functools
import random
import sys
import time
from fractions import Fraction as Fr
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracle  # noqa: E402
from axialkit.core import GF, QQ, SparseVector, Subspace  # noqa: E402
from axialkit.core.finite import IndexedAlgebra  # noqa: E402
from axialkit.fusion import builtin_law, decompose, verify_fusion, verify_fusion_window  # noqa: E402
from axialkit.maps import (  # noqa: E402
    ElementaryPair,
    LinearMap,
    TableMap,
    nullifying_properties,
    residual_fn,
)
from axialkit.martindale import (  # noqa: E402
    MartindaleError,
    check_conditions,
    check_conditions_window,
    lemma_statements,
    lemma_statements_window,
)
from axialkit.search import SearchSpec, linear_automorphisms, run_search  # noqa: E402
from axialkit.zoo import (  # noqa: E402
    degenerates,
    fischer_line,
    highwater,
    highwater_decomposition,
    jordan_b_plus,
    matsuo,
    norton_sakuma_2a,
)

RESULTS = {}


def criterion(number, title, limit=None):
    """Record PASS/FAIL (and the time limit, if any) for one criterion."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            ok, err = False, None
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - t0
                assert limit is None or elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"
                ok = True
            except BaseException as exc:
                err = exc
                raise
            finally:
                elapsed = time.perf_counter() - t0
                line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title} ({elapsed:.2f} s)"
                if err is not None:
                    line += f"  [{type(err).__name__}: {err}]"
                RESULTS[number] = line
                print(line)

        return run

    return wrap


# -- exact reproductions -----------------------------------------------------------------

@criterion(1, "2A decomposition at eA over Q", limit=5)
def test_criterion_1_2a_decomposition():
    e = norton_sakuma_2a(QQ)
    d = decompose(e.algebra, e.algebra.basis("eA"), e.law)
    q = Fr(1, 4)
    assert d.complete
    assert d.part(1).basis == ((1, 0, 0),)
    # span{-eA + 4eB + 4eC}, stored as its canonical row
    assert d.part(0) == Subspace.span(QQ, 3, [(-1, 4, 4)])
    assert d.part(0).basis == ((1, -4, -4),)
    assert d.part(q).basis == ((0, 1, -1),)


@criterion(2, "2A fusion J(1/4) and conditions (i)-(iii)", limit=5)
def test_criterion_2_2a_fusion_and_conditions():
    e = norton_sakuma_2a(QQ)
    law = builtin_law("jordan", ["1/4"], QQ)
    assert verify_fusion(e.algebra, e.axes[0], law).ok
    rep = check_conditions(e.algebra, decompose(e.algebra, e.axes[0], law))
    assert rep.conditions == {"i": True, "ii": True, "iii": True}


@criterion(3, "Jordan B+ dims (1,2,1), fusion J(1/2), conditions (i)-(iii)", limit=5)
def test_criterion_3_b_plus():
    e = jordan_b_plus(QQ)
    law = builtin_law("jordan", ["1/2"], QQ)
    e11 = e.algebra.basis("e11")
    d = decompose(e.algebra, e11, law)
    assert (d.part(1).dim, d.part(Fr(1, 2)).dim, d.part(0).dim) == (1, 2, 1)
    assert verify_fusion(e.algebra, e11, law).ok
    assert check_conditions(e.algebra, d).all_true


@criterion(4, "Highwater window N = 8 at a_0", limit=5)
def test_criterion_4_highwater_window():
    N = 8
    hw = highwater(QQ).algebra
    a = lambda i: SparseVector({("a", i): 1})
    s = lambda j: SparseVector({("s", j): 1})
    a0 = a(0)
    for j in range(1, N + 1):
        h0 = 6 * a0 - 3 * (a(-j) + a(j)) + 4 * s(j)
        h2 = 2 * a0 - (a(-j) + a(j)) - 4 * s(j)
        hh = a(-j) - a(j)
        assert hw.product(a0, h0) == SparseVector()
        assert hw.product(a0, h2) == 2 * h2
        assert hw.product(a0, hh) == Fr(1, 2) * hh
    for i in range(-N, N + 1):
        assert hw.product(a(i), a(i)) == a(i)
    wd = highwater_decomposition()
    assert verify_fusion_window(wd, N).ok
    rep = check_conditions_window(wd, N)
    assert rep.conditions == {k: True for k in ("i", "ii", "iii", "iv", "v")}
    assert rep.status == "window-verified"


@criterion(5, "Matsuo line with eta = 1/4 equals 2A", limit=5)
def test_criterion_5_matsuo_equals_2a():
    m = matsuo(fischer_line(), "1/4", QQ).algebra
    n = norton_sakuma_2a(QQ).algebra
    assert m.dim == n.dim == 3
    assert m.table == n.table
    assert all(type(c) is Fr for row in m.table for v in row for c in v)


# -- property-based substitutes ---------------------------------------------------------------

@criterion(6, "lemma instances for r = 1, 2 on 2A, B+ and the Highwater window", limit=30)
def test_criterion_6_lemma_instances():
    for mk in (norton_sakuma_2a, jordan_b_plus):
        e = mk(QQ)
        d = decompose(e.algebra, e.axes[0], e.law)
        for r in (1, 2):
            rep = lemma_statements(e.algebra, d, r)
            assert rep.ok, [c for c in rep.checks if not c.holds]
            assert {c.statement for c in rep.checks} == {"annihilates", "injective"}
    wd = highwater_decomposition()
    for r in (1, 2):
        rep = lemma_statements_window(wd, 8, r)
        assert rep.ok, [c for c in rep.checks if not c.holds]


@criterion(7, "2A over F_7: no non-additive multiplicative bijection")
def test_criterion_7_2a_additivity():
    e = norton_sakuma_2a(GF(7))
    alg = e.algebra
    autos = linear_automorphisms(alg)
    assert len(autos) == 6
    out = run_search(SearchSpec(alg, budget=10**5, axes=e.axes, law=e.law))
    assert out.status == "exhausted-none" and out.witness is None
    assert out.nodes <= 10**5
    ia = IndexedAlgebra(alg)
    rng = random.Random(2024)
    pairs = [(rng.randrange(ia.size), rng.randrange(ia.size)) for _ in range(1000)]
    for phi in autos:
        f = residual_fn("iso", phi.to_table())
        assert all(f(x, y) == 0 for x, y in pairs)


@criterion(8, "F_5 zero algebra: 24 multiplicative bijections, 4 additive, f(1,2) = 1")
def test_criterion_8_zero_algebra_negative_control():
    assert oracle.zero_algebra_bijections(5) == (24, 4)
    alg = degenerates("zero", GF(5), n=1).algebra
    out = run_search(SearchSpec(alg, mode="exhaustive"))
    assert out.counts == (24, 4)
    assert out.status == "witness-found"
    w = out.witness
    assert residual_fn("iso", w)(1, 2) == 1
    assert (1, 2) in oracle.nonzero_residual_pairs(w.table, 5)


P = 5
F5 = GF(P)
LAWS = [("jordan", [a]) for a in ("1/2", "1/4", "2")] + \
       [("monster", ab) for ab in (("1/2", "1/4"), ("1/4", "1/2"), ("2", "1/2"))]


def _agree_with_brute_force(alg, table, n):
    tab = oracle.mod_table(table, n, P)
    for e in oracle.idempotents(tab, n, P):
        ev = tuple(F5(c) for c in e)
        for name, params in LAWS:
            law = builtin_law(name, params, F5)
            vals = {"1": 1, "0": 0, "alpha": int(law.alpha)}
            if law.kind == "M":
                vals["beta"] = int(law.beta)
            d = decompose(alg, ev, law)
            if not oracle.is_complete(tab, n, P, e, sorted(set(vals.values()))):
                assert not d.complete
                try:
                    check_conditions(alg, d)
                except MartindaleError:
                    continue
                raise AssertionError("incomplete decomposition accepted")
            pairs = oracle.J_PAIRS if law.kind == "J" else oracle.M_PAIRS
            assert check_conditions(alg, d).conditions == oracle.brute_martindale(tab, n, P, e, vals, pairs)


@criterion(9, "Martindale checks over F_5 agree with brute force on the zoo")
def test_criterion_9_oracle_equivalence():
    cases = [
        (jordan_b_plus(F5).algebra, oracle.B_PLUS, 4),
        (matsuo(fischer_line(), "1/4", F5).algebra, oracle.matsuo_line(Fr(1, 4)), 3),
        (degenerates("two-point-matsuo", F5).algebra, oracle.two_points(), 2),
        (degenerates("diag2", F5).algebra, oracle.diag2(), 2),
        (degenerates("line", F5).algebra, oracle.line(), 1),
    ]
    for alg, table, n in cases:
        _agree_with_brute_force(alg, table, n)
    for k in range(1, 5):
        # the zero algebra has no nonzero idempotent, hence no axis to test
        assert oracle.idempotents(oracle.zero(k), k, P) == []
        alg = degenerates("zero", F5, n=k).algebra
        assert not any(alg.is_idempotent(IndexedAlgebra(alg).vector(i)) for i in range(1, P ** k))


@criterion(10, "nullifying properties (I), (III), (IV) for every class; (V) with r = n - 1")
def test_criterion_10_nullifying_axioms():
    alg = norton_sakuma_2a(QQ).algebra
    phi = LinearMap.permutation(alg, (0, 2, 1))
    maps = {"iso": phi, "der": LinearMap.scalar(alg, 0),
            "elem": ElementaryPair(phi, phi.inverse()),
            "jelem": ElementaryPair(phi, phi.inverse(), "jordan")}
    for kind, fmap in maps.items():
        props = nullifying_properties(kind, fmap, count=500, seed=10)
        for ax in ("I", "III", "IV"):
            assert props[ax].ok and props[ax].tuples_checked == 500, (kind, ax, props[ax])
    # finite examples, including non-additive ones, for n = 2, 3
    z5 = IndexedAlgebra(degenerates("zero", F5, n=1).algebra)
    line7 = IndexedAlgebra(degenerates("line", GF(7)).algebra)
    a7 = norton_sakuma_2a(GF(7)).algebra
    auto7 = LinearMap.permutation(a7, (1, 0, 2)).to_table()
    finite = [
        ("iso", TableMap(z5, [0, 1, 2, 4, 3])),
        ("iso", TableMap.from_function(line7, lambda x: pow(x, 5, 7))),
        ("iso", auto7),
        ("der", TableMap(z5, [0, 3, 1, 1, 4])),
        ("elem", ElementaryPair(auto7, auto7.inverse())),
        ("jelem", ElementaryPair(auto7, auto7.inverse(), "jordan")),
    ]
    for kind, fmap in finite:
        for n in (2, 3):
            props = nullifying_properties(kind, fmap, count=200, seed=n, r=n - 1)
            for ax in ("I", "III", "IV", "V"):
                assert props[ax].ok, (kind, n, ax, props[ax])


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)
