from itertools import permutations, product

import pytest

import oracle
from axialkit.core import GF, QQ
from axialkit.core.finite import IndexedAlgebra
from axialkit.fusion import decompose
from axialkit.maps import (
    ElementaryPair,
    LinearMap,
    MapError,
    Mode,
    TableMap,
    TUPLE_KINDS,
    all_permutations_equal,
    check_elementary_pair,
    check_n_multiplicative_derivation,
    check_n_multiplicative_iso,
    is_additive,
    lemma_tuples,
    nullifying_properties,
    residual,
    residual_fn,
    residual_vanishes_on,
)
from axialkit.zoo import degenerates, jordan_b_plus, norton_sakuma_2a

EX = Mode.exhaustive()


@pytest.fixture(scope="module")
def zero5():
    return IndexedAlgebra(degenerates("zero", GF(5), n=1).algebra)


@pytest.fixture(scope="module")
def two_a():
    return norton_sakuma_2a(QQ)


# -- multiplicative checks ------------------------------------------------------------

def test_identity_and_swap_are_isomorphisms(two_a):
    alg = two_a.algebra
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2)):
        phi = LinearMap.permutation(alg, perm)
        for n in (2, 3):
            assert check_n_multiplicative_iso(phi, n, Mode.sampled(200)).ok


def test_scaling_is_not_an_isomorphism(two_a):
    ok, cex = check_n_multiplicative_iso(LinearMap.scalar(two_a.algebra, 2), 2, Mode.sampled(50))
    assert not ok and len(cex) == 2


def test_shift_on_zero_algebra_fails_at_origin(zero5):
    phi = TableMap(zero5, [1, 2, 3, 4, 0])
    res = check_n_multiplicative_iso(phi, 2, EX)
    assert not res.ok and res.counterexample == (0, 0) and res.exhaustive


def test_multiplicative_bijection_count_matches_oracle(zero5):
    mult = add = 0
    for perm in permutations(range(5)):
        phi = TableMap(zero5, perm)
        if check_n_multiplicative_iso(phi, 2, EX).ok:
            mult += 1
            add += is_additive(phi, EX).ok
    assert (mult, add) == oracle.zero_algebra_bijections(5) == (24, 4)


def test_non_bijection_rejected(zero5):
    with pytest.raises(MapError):
        check_n_multiplicative_iso(TableMap(zero5, [0, 0, 1, 2, 3]), 2, EX)


def test_derivation_count_matches_oracle():
    z3 = IndexedAlgebra(degenerates("zero", GF(3), n=1).algebra)
    mult = add = 0
    for table in product(range(3), repeat=3):
        d = TableMap(z3, table)
        if check_n_multiplicative_derivation(d, 2, EX).ok:
            mult += 1
            add += is_additive(d, EX).ok
    assert (mult, add) == oracle.zero_algebra_derivations(3)


def test_line_derivations_match_oracle():
    ln = IndexedAlgebra(degenerates("line", GF(5)).algebra)
    mult = add = 0
    for table in product(range(5), repeat=5):
        d = TableMap(ln, table)
        if check_n_multiplicative_derivation(d, 2, EX).ok:
            mult += 1
            add += is_additive(d, EX).ok
    assert (mult, add) == oracle.line_derivations(5)


def test_derivation_examples(two_a, zero5):
    alg = two_a.algebra
    assert check_n_multiplicative_derivation(LinearMap.scalar(alg, 0), 3, Mode.sampled(50)).ok
    assert not check_n_multiplicative_derivation(LinearMap.identity(alg), 2, Mode.sampled(50)).ok
    assert check_n_multiplicative_derivation(TableMap(zero5, [0, 3, 3, 1, 2]), 2, EX).ok


def test_bad_arity_and_modes(two_a):
    alg = two_a.algebra
    with pytest.raises(MapError):
        check_n_multiplicative_iso(LinearMap.identity(alg), 0)
    with pytest.raises(MapError):
        check_n_multiplicative_iso(LinearMap.identity(alg), 2, EX)
    with pytest.raises(MapError):
        Mode("random")
    big = IndexedAlgebra(norton_sakuma_2a(GF(7)).algebra)
    with pytest.raises(MapError):
        check_n_multiplicative_iso(TableMap.identity(big), 2, Mode.exhaustive(bound=100))


def test_table_map_validation(zero5):
    with pytest.raises(MapError):
        TableMap(zero5, [0, 1])
    with pytest.raises(MapError):
        TableMap(zero5, [0, 1, 2, 3, 9])
    phi = TableMap(zero5, [0, 1, 2, 4, 3])
    assert phi.inverse().inverse() == phi


def test_linear_map_to_table_matches():
    e = norton_sakuma_2a(GF(7))
    phi = LinearMap.permutation(e.algebra, (1, 0, 2))
    t = phi.to_table()
    ia = t.domain
    for i in (0, 5, 77, 300):
        assert ia.vector(t(i)) == phi(ia.vector(i))
    assert check_n_multiplicative_iso(t, 2, EX).ok


# -- elementary pairs -------------------------------------------------------------------

def test_identity_pair_is_elementary_and_jordan(two_a):
    alg = two_a.algebra
    ident = LinearMap.identity(alg)
    assert check_elementary_pair(ElementaryPair(ident, ident), Mode.sampled(100)).ok
    assert check_elementary_pair(ElementaryPair(ident, ident, "jordan"), Mode.sampled(100)).ok


def test_scaled_pair_fails(two_a):
    alg = two_a.algebra
    pair = ElementaryPair(LinearMap.scalar(alg, 2), LinearMap.scalar(alg, "1/2"))
    res = check_elementary_pair(pair, Mode.sampled(100))
    assert not res.ok and res.counterexample[0] == "identity-1"


def test_inverse_pair_on_b_plus_exhaustive():
    e = jordan_b_plus(GF(3))
    phi = LinearMap.permutation(e.algebra, (3, 2, 1, 0)).to_table()
    pair = ElementaryPair(phi, phi.inverse(), "jordan")
    assert check_elementary_pair(pair, EX).ok


def test_jordan_flavor_refuses_char_2():
    z2 = IndexedAlgebra(degenerates("zero", GF(2), n=1).algebra)
    ident = TableMap.identity(z2)
    with pytest.raises(MapError):
        check_elementary_pair(ElementaryPair(ident, ident, "jordan"), EX)
    with pytest.raises(MapError):
        ElementaryPair(ident, ident, "nope")


# -- residuals ----------------------------------------------------------------------------

def test_transposition_residual(zero5):
    phi = TableMap(zero5, [0, 1, 2, 4, 3])
    assert residual("iso", phi, (1, 2)) == 1
    pairs = oracle.nonzero_residual_pairs(phi.table, 5)
    assert (1, 2) in pairs
    f = residual_fn("iso", phi)
    for x in range(5):
        for y in range(5):
            assert (f(x, y) != 0) == ((x, y) in pairs)


def test_residual_zero_iff_additive(zero5):
    for perm in permutations(range(5)):
        phi = TableMap(zero5, perm)
        f = residual_fn("iso", phi)
        vanishes = all(f(x, y) == 0 for x in range(5) for y in range(5))
        assert vanishes == is_additive(phi, EX).ok


def test_residual_class_checks(two_a, zero5):
    ident = LinearMap.identity(two_a.algebra)
    with pytest.raises(MapError):
        residual("elem", ident, (ident(two_a.axes[0]),))
    with pytest.raises(MapError):
        residual("iso", ElementaryPair(ident, ident), (two_a.axes[0],))
    with pytest.raises(MapError):
        residual("nope", ident, (two_a.axes[0],))
    with pytest.raises(MapError):
        residual("iso", ident, ())
    with pytest.raises(MapError):
        residual_fn("iso", TableMap(zero5, [0, 0, 0, 0, 0]))
    assert residual_fn("der", TableMap(zero5, [0, 0, 0, 0, 0]))(1, 2) == 0


@pytest.mark.parametrize("kind", TUPLE_KINDS)
def test_automorphism_residual_vanishes_on_lemma_tuples(two_a, kind):
    alg = two_a.algebra
    d = decompose(alg, two_a.axes[0], two_a.law)
    fam = lemma_tuples(d, kind, part="alpha" if kind == "same-part" else None, limit=300)
    assert fam.tuples and fam.kind == kind
    phi = LinearMap.permutation(alg, (0, 2, 1))
    assert residual_vanishes_on("iso", phi, fam).ok
    assert residual_vanishes_on("elem", ElementaryPair(phi, phi.inverse()), fam).ok


def test_lemma_tuples_shapes(two_a):
    d = decompose(two_a.algebra, two_a.axes[0], two_a.law)
    comps = lemma_tuples(d, "peirce-components", limit=10)
    assert all(len(t) == 3 for t in comps.tuples)
    for a1, a0, aq in comps.tuples:
        assert d.part(1).contains(a1) and d.part(0).contains(a0) and d.part("1/4").contains(aq)
    with pytest.raises(MapError):
        lemma_tuples(d, "nope")
    with pytest.raises(MapError):
        lemma_tuples(d, "same-part")
    with pytest.raises(MapError):
        lemma_tuples(d, "same-part", part="beta")


def test_nonadditive_residual_detected_on_family(zero5):
    phi = TableMap(zero5, [0, 1, 2, 4, 3])
    res = residual_vanishes_on("iso", phi, [(0, 1), (1, 2)])
    assert not res.ok and res.counterexample == (1, 2)


# -- nullifying properties -------------------------------------------------------------------

def _class_maps(alg):
    phi = LinearMap.permutation(alg, (0, 2, 1))
    return {"iso": phi, "der": LinearMap.scalar(alg, 0),
            "elem": ElementaryPair(phi, phi.inverse()),
            "jelem": ElementaryPair(phi, phi.inverse(), "jordan")}


@pytest.mark.parametrize("kind", ["iso", "der", "elem", "jelem"])
def test_nullifying_properties_on_2a(two_a, kind):
    fmap = _class_maps(two_a.algebra)[kind]
    props = nullifying_properties(kind, fmap, count=100, seed=3, r=1)
    assert set(props) == {"I", "II", "III", "IV", "V"}
    assert all(p.ok for p in props.values())


def test_nullifying_properties_nonadditive(zero5):
    phi = TableMap(zero5, [0, 1, 2, 4, 3])
    props = nullifying_properties("iso", phi, count=200, seed=1)
    for ax in ("I", "III", "IV", "V"):
        assert props[ax].ok


def test_all_permutations_equal(zero5):
    f = residual_fn("iso", TableMap(zero5, [0, 1, 2, 4, 3]))
    assert all_permutations_equal(f, (1, 2, 3))
    assert not all_permutations_equal(lambda *a: a[0], (1, 2))
