import random

import hypothesis
import hypothesis.strategies as st
import pytest

from fcatlab import fincat as fc
from fcatlab.fixtures import categories, z2

import oracles
from perturb import perturb_category

FIXTURES = categories()
SMALL = [n for n, c in FIXTURES.items() if len(c.morphisms) <= 5]
names = st.sampled_from(sorted(FIXTURES))
small_names = st.sampled_from(sorted(SMALL))


def canon(*maps):
    return repr([sorted(m.items(), key=repr) for m in maps])


def test_compose_identity_laws():
    W = fc.walking_arrow()
    assert fc.compose(W, "1_1", "a") == "a"
    assert fc.compose(W, "a", "1_0") == "a"
    with pytest.raises(fc.NotComposable):
        fc.compose(W, "a", "a")


def test_compose_three_chain():
    C = fc.chain(3)
    assert fc.compose(C, "1<2", "0<1") == "0<2"


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_passes_axioms(name):
    cat = FIXTURES[name]
    assert cat.violations() == []
    assert oracles.category_ok(cat)


@pytest.mark.parametrize("name", [n for n in sorted(FIXTURES)
                                  if FIXTURES[n].morphisms])
def test_perturbations_rejected_with_witness(name):
    rng = random.Random(name)
    cat = FIXTURES[name]
    for _ in range(50):
        kind, broken = perturb_category(cat, rng)
        found = broken.violations()
        assert found, kind
        assert found[0]["kind"] and found[0]["at"] is not None
        assert not oracles.category_ok(broken)


@hypothesis.given(names, st.randoms(use_true_random=False))
def test_random_parallel_rewrite_agrees_with_oracle(name, rnd):
    # replacing a composite by a parallel morphism may or may not stay valid
    cat = FIXTURES[name]
    pairs = [p for p in cat.table if len(cat.hom(cat.src[p[1]],
                                                 cat.dst[p[0]])) > 1]
    hypothesis.assume(pairs)
    g, f = rnd.choice(sorted(pairs, key=repr))
    table = dict(cat.table)
    table[(g, f)] = rnd.choice(cat.hom(cat.src[f], cat.dst[g]))
    mutated = fc.FiniteCategory(cat.objects,
                                {m: (cat.src[m], cat.dst[m])
                                 for m in cat.morphisms},
                                cat.identities, table, check=False)
    assert (mutated.violations() == []) == oracles.category_ok(mutated)


def test_invalid_table_raises():
    W = fc.walking_arrow()
    table = dict(W.table)
    table[("a", "1_0")] = "1_1"
    with pytest.raises(fc.InvalidCategory) as err:
        fc.FiniteCategory(W.objects, [(m, W.src[m], W.dst[m])
                                      for m in W.morphisms],
                          W.identities, table)
    assert err.value.witness["at"] == ["a", "1_0", "1_1"]


def test_functor_counts():
    W, T = fc.walking_arrow(), fc.terminal()
    assert len(fc.enumerate_functors(T, W, 10)) == 2
    assert len(fc.enumerate_functors(W, T, 10)) == 1
    assert len(fc.enumerate_functors(W, W, 10)) == 3


def test_enumeration_bound():
    with pytest.raises(fc.EnumerationBoundExceeded):
        fc.enumerate_functors(fc.walking_arrow(), fc.walking_arrow(), 2)


@hypothesis.settings(deadline=None, max_examples=60)
@hypothesis.given(small_names, small_names)
def test_functor_enumeration_matches_brute_force(a, b):
    A, B = FIXTURES[a], FIXTURES[b]
    ours = [canon(F.ob, F.mor) for F in fc.enumerate_functors(A, B)]
    theirs = [canon(*pair) for pair in oracles.all_functors(A, B)]
    assert len(ours) == len(theirs)
    assert sorted(ours) == sorted(theirs)


def test_enumeration_order_is_deterministic():
    A, B = fc.chain(3), FIXTURES["square"]
    first = [F.key for F in fc.enumerate_functors(A, B)]
    second = [F.key for F in fc.enumerate_functors(A, B)]
    assert first == second


@hypothesis.settings(deadline=None, max_examples=40)
@hypothesis.given(small_names, small_names)
def test_count_invariant_under_renaming(a, b):
    A, B = FIXTURES[a], FIXTURES[b]
    renamed = fc.relabel(A, {x: ("r", x) for x in A.objects},
                         {m: ("r", m) for m in A.morphisms})
    assert len(fc.enumerate_functors(A, B)) == \
        len(fc.enumerate_functors(renamed, B))


def test_is_isomorphism_examples():
    W = fc.walking_arrow()
    assert fc.is_isomorphism(fc.identity_functor(W))
    (F,) = fc.enumerate_functors(W, fc.terminal())
    assert not fc.is_isomorphism(F)
    P = fc.parallel_pair()
    Q = fc.relabel(P, {"0": "src", "1": "dst"},
                   {"1_0": "i0", "1_1": "i1", "s": "u", "t": "v"})
    R = fc.FiniteFunctor(P, Q, {"0": "src", "1": "dst"},
                         {"1_0": "i0", "1_1": "i1", "s": "v", "t": "u"})
    assert fc.is_isomorphism(R)
    assert oracles.isomorphic(P, Q)


def test_is_equivalence_examples():
    C = fc.chaotic(["x", "y"])
    sub = fc.full_subcategory(C, ["x"])
    inc = fc.inclusion(sub, C)
    assert fc.is_equivalence(inc)
    assert oracles.is_equivalence(sub, C, inc.ob, inc.mor)
    D = fc.discrete(["x", "y"])
    (F,) = fc.enumerate_functors(D, fc.terminal())
    assert not fc.is_equivalence(F)
    assert not oracles.is_equivalence(D, fc.terminal(), F.ob, F.mor)


@hypothesis.settings(deadline=None, max_examples=60)
@hypothesis.given(small_names, small_names)
def test_equivalence_and_isomorphism_match_oracle(a, b):
    A, B = FIXTURES[a], FIXTURES[b]
    for F in fc.enumerate_functors(A, B, limit=30):
        assert fc.is_equivalence(F) == \
            oracles.is_equivalence(A, B, F.ob, F.mor)
        if fc.is_isomorphism(F):
            assert fc.is_equivalence(F)


def test_naturality_examples():
    W = fc.walking_arrow()
    F = fc.identity_functor(W)
    assert fc.check_naturality(fc.identity_transformation(F))
    B = fc.parallel_pair()
    P = fc.FiniteFunctor(W, B, {"0": "0", "1": "1"},
                         {"1_0": "1_0", "1_1": "1_1", "a": "s"})
    Q = fc.FiniteFunctor(W, B, {"0": "0", "1": "1"},
                         {"1_0": "1_0", "1_1": "1_1", "a": "t"})
    ids = fc.NaturalTransformation(P, Q, {"0": "1_0", "1": "1_1"})
    assert not fc.check_naturality(ids)
    assert ids.failures() == [{"kind": "naturality", "at": ["a"],
                               "detail": ""}]
    whiskered = fc.whisker_left(fc.identity_functor(B),
                                fc.identity_transformation(P))
    assert fc.check_naturality(whiskered)


def test_naturality_shape_mismatch():
    W = fc.walking_arrow()
    F = fc.identity_functor(W)
    (G,) = fc.enumerate_functors(W, fc.terminal())
    with pytest.raises(fc.ShapeMismatch):
        fc.NaturalTransformation(F, G, {})


@hypothesis.settings(deadline=None, max_examples=40)
@hypothesis.given(small_names, small_names)
def test_transformations_match_brute_force(a, b):
    A, B = FIXTURES[a], FIXTURES[b]
    functors = fc.enumerate_functors(A, B, limit=6)
    for P in functors:
        for Q in functors:
            ours = fc.enumerate_transformations(P, Q)
            theirs = oracles.all_transformations(
                A, B, (P.ob, P.mor), (Q.ob, Q.mor))
            assert sorted(canon(t.components) for t in ours) == \
                sorted(canon(c) for c in theirs)


def test_functor_category_is_valid():
    W = fc.walking_arrow()
    FC = fc.functor_category(W, W)
    assert FC.violations() == []
    assert len(FC.objects) == 3


def test_pullback_examples():
    W = fc.walking_arrow()
    I = fc.identity_functor(W)
    P, p1, p2 = fc.pullback_category(I, I)
    assert fc.are_isomorphic(P, W)
    D = fc.discrete(["x", "y"])
    T = fc.terminal()
    ix = fc.FiniteFunctor(T, D, {"*": "x"}, {"1_*": "1_x"})
    iy = fc.FiniteFunctor(T, D, {"*": "y"}, {"1_*": "1_y"})
    P, _, _ = fc.pullback_category(ix, iy)
    assert P.objects == () and P.morphisms == ()
    at1 = fc.FiniteFunctor(T, W, {"*": "1"}, {"1_*": "1_1"})
    P, _, _ = fc.pullback_category(at1, at1)
    assert fc.are_isomorphic(P, T)


TEST_APEXES = [fc.terminal(), fc.discrete(["p", "q"]), fc.walking_arrow(),
               fc.chain(3), fc.parallel_pair(), fc.empty()]


@pytest.mark.parametrize("legs", [("walking-arrow", "chain3"),
                                  ("span", "walking-arrow"),
                                  ("Z2", "Z2"), ("discrete2", "square")])
def test_pullback_universal_property(legs):
    A, B = FIXTURES[legs[0]], FIXTURES[legs[1]]
    C = fc.walking_arrow()
    for F in fc.enumerate_functors(A, C, limit=3):
        for G in fc.enumerate_functors(B, C, limit=3):
            P, p1, p2 = fc.pullback_category(F, G)
            assert oracles.category_ok(P)
            for K in TEST_APEXES:
                maps = fc.enumerate_functors(K, P)
                for u in fc.enumerate_functors(K, A):
                    for v in fc.enumerate_functors(K, B):
                        if u.then(F).key != v.then(G).key:
                            continue
                        mediating = [m for m in maps
                                     if m.then(p1).key == u.key and
                                     m.then(p2).key == v.key]
                        assert len(mediating) == 1


def test_json_roundtrip():
    for cat in FIXTURES.values():
        again = fc.FiniteCategory.from_json(cat.to_json())
        assert again == cat


def test_z2_inverse():
    G = z2()
    assert G.inverse("s") == "s"


QUOTIENTS = [
    ("parallel-pair", [], [("s", "t")]),
    ("discrete2", [("x", "y")], []),
    ("walking-iso", [("0", "1")], [("u", "1_0")]),
    ("square", [], []),
    ("span", [("l", "r")], []),
    ("Z2", [], [("s", "e")]),
    ("chain3", [], []),
]


@pytest.mark.parametrize("name,obs,mors", QUOTIENTS)
def test_quotient_has_universal_property(name, obs, mors):
    base = FIXTURES[name]
    Q, ob, mor = fc.quotient_category(base, obs, mors, bound=50)
    assert oracles.category_ok(Q)
    assert all(mor[m] in Q.hom(ob[base.src[m]], ob[base.dst[m]])
               for m in base.morphisms)
    # functors out of Q match functors out of base that respect the gluing
    for T in [FIXTURES[n] for n in ("walking-arrow", "Z2", "chaotic2",
                                    "idempotent", "parallel-pair")]:
        respecting = [
            (o, m) for o, m in oracles.all_functors(base, T)
            if all(o[x] == o[y] for x, y in obs) and
            all(m[f] == m[g] for f, g in mors)]
        assert len(fc.enumerate_functors(Q, T)) == len(respecting)


def test_quotient_without_relations_is_isomorphic():
    for name in ("square", "Z2", "parallel-pair", "idempotent"):
        Q, _, _ = fc.quotient_category(FIXTURES[name])
        assert fc.are_isomorphic(Q, FIXTURES[name])


def test_gluing_endpoints_of_arrow_is_infinite():
    with pytest.raises(fc.FinitenessExceeded):
        fc.quotient_category(fc.walking_arrow(), [("0", "1")], bound=40)
    with pytest.raises(fc.FinitenessExceeded):
        fc.quotient_category(fc.walking_iso(), [("0", "1")], bound=40)
