import collections
import itertools

import pytest

from fcatlab import fincat as fc
from fcatlab import fixtures as fx
from fcatlab import limits as lim
from fcatlab import sketch as sk
from fcatlab.fcat import (DUAL, FCell, FMap, FObject, LooseTransformation,
                          Modification,
                          check_loose_natural, check_modification, chordate,
                          compose_transformations, constant_ffunctor,
                          identity_transformation, locally_discrete,
                          restrict_transformation, whisker_r)
from fcatlab.limits import AMBIENT

import oracles

FRAGMENT = fx.product_fragment_sketch()
CATS = fx.monoidal_categories()
K = AMBIENT

PAIRS = {
    "c": [("arrow-max", "arrow-min"), ("arrow-max", "BZ2"),
          ("arrow-min", "arrow-min"), ("BZ2", "arrow-min"),
          ("discrete-xor", "B-idempotent")],
    "l": [("arrow-max", "arrow-max"), ("arrow-min", "arrow-max"),
          ("arrow-min", "B-idempotent"), ("BZ2", "arrow-max"),
          ("discrete-xor", "arrow-min")],
}
CASES = [(w, a, b) for w, ps in PAIRS.items() for a, b in ps]


def nontrivial(M, N, w):
    """The first ``(s, w)`` transformation with a non-identity cell."""
    for p in sk.enumerate_loose_transformations(M, N, w):
        if not all(K.is_identity2(c) for c in p.cells.values()):
            return p
    raise AssertionError("no weak transformation")


_CACHE = {}


def case(w, a, b):
    if (w, a, b) not in _CACHE:
        M = fx.word_model(FRAGMENT, CATS[a])
        N = fx.word_model(FRAGMENT, CATS[b])
        phi = nontrivial(M, N, w)
        _CACHE[(w, a, b)] = (M, N, phi,
                             lim.pointwise_model_limit(M, N, phi, w))
    return _CACHE[(w, a, b)]


def arrow_at(M, N, phi, x):
    shape = lim.loose_arrow_shape()
    return shape, lim.diagram(shape.shape, {"A": M.ob[x], "B": N.ob[x]},
                              {"f": phi.components[x]})


# -- construction ------------------------------------------------------------------

@pytest.mark.parametrize("w,a,b", CASES)
def test_limit_is_a_model(w, a, b):
    M, N, phi, P = case(w, a, b)
    assert sk.check_model(P.functor, FRAGMENT).valid
    assert P.functor.violations() == []


@pytest.mark.parametrize("w,a,b", CASES)
def test_unit_cone_is_valid(w, a, b):
    M, N, phi, P = case(w, a, b)
    for eta in (P.eta_A, P.eta_B):
        assert eta.weakness == ("s", w)
        assert check_loose_natural(eta).valid
    assert check_modification(P.eta_f) == []


@pytest.mark.parametrize("w,a,b", CASES)
def test_limit_is_pointwise_the_dotted_limit(w, a, b):
    M, N, phi, P = case(w, a, b)
    for x in FRAGMENT.carrier.objects:
        shape, D = arrow_at(M, N, phi, x)
        Lx = P.functor.ob[x]
        ids = oracles.point_cone_ids(shape.shape, D, DUAL[w], shape.marked)
        assert sorted(ids, key=fc.sort_key) == \
            sorted(Lx.loose.objects, key=fc.sort_key)
        point = oracles._Point()
        cones, _ = oracles.cones_from(point, (), shape.shape, D, DUAL[w],
                                      shape.marked, ())
        count = sum(oracles.cone_morphism_count(point, shape.shape, D,
                                                DUAL[w], p, q)
                    for p in cones for q in cones)
        assert count == len(Lx.loose.morphisms)
        direct = lim.dotted_lax_limit(shape, D, DUAL[w])
        assert lim.apex_isomorphic(direct, P.limits[x])


@pytest.mark.parametrize("w,a,b", CASES)
def test_functoriality_of_limit(w, a, b):
    M, N, phi, P = case(w, a, b)
    T, L = FRAGMENT.carrier, P.functor
    for (g, f), gf in T._comp1.items():
        assert L.one[gf] == K.comp1(L.one[g], L.one[f])


# -- universal property against cones from constant functors -----------------------

def modifications(src, dst):
    X = src.source
    pools = []
    for x in X.source.objects:
        u, v = src.components[x], dst.components[x]
        pools.append([FCell(u, v, t) for t in
                      fc.enumerate_transformations(u.loose, v.loose)])
    for cells in itertools.product(*pools):
        m = Modification(src, dst, dict(zip(X.source.objects, cells)))
        if not check_modification(m, first=True):
            yield m


def cone_key(alpha_A, alpha_B, mu):
    def comps(t):
        return (tuple(sorted((x, c.loose.key)
                             for x, c in t.components.items())),
                tuple(sorted((f, c.transformation.key)
                             for f, c in t.cells.items())))
    return (comps(alpha_A), comps(alpha_B),
            tuple(sorted((x, c.transformation.key)
                         for x, c in mu.components.items())))


def cones_over(X, M, N, phi, w):
    """All cones ``(α_A, α_B, μ)`` from ``X`` over ``phi`` with tight flags."""
    out = {}
    for aA in sk.enumerate_loose_transformations(X, M, w):
        pushed = compose_transformations(phi, aA)
        for aB in sk.enumerate_loose_transformations(X, N, w):
            src, dst = (pushed, aB) if DUAL[w] == "l" else (aB, pushed)
            for mu in modifications(src, dst):
                tight = all(K.is_tight(c) for c in aA.components.values()) \
                    and all(K.is_tight(c) for c in aB.components.values())
                out[cone_key(aA, aB, mu)] = tight
    return out


def induced_cone(P, beta, phi):
    aA = compose_transformations(P.eta_A, beta)
    aB = compose_transformations(P.eta_B, beta)
    mu = {x: whisker_r(K, P.eta_f.components[x], beta.components[x])
          for x in beta.components}
    pushed = compose_transformations(phi, aA)
    src, dst = (pushed, aB) if DUAL[P.w] == "l" else (aB, pushed)
    m = Modification(src, dst, mu)
    assert check_modification(m) == []
    return cone_key(aA, aB, m)


TEST_APEXES = [chordate(fc.terminal()),
               FObject.from_subset(fc.walking_arrow(), ["0"]),
               chordate(fc.discrete(["p", "q"])),
               chordate(fc.walking_arrow())]


@pytest.mark.parametrize("w,a,b", CASES)
@pytest.mark.parametrize("apex", range(len(TEST_APEXES)))
def test_universal_property_against_constant_cones(w, a, b, apex):
    M, N, phi, P = case(w, a, b)
    X = constant_ffunctor(FRAGMENT.carrier, K, TEST_APEXES[apex])
    cones = cones_over(X, M, N, phi, w)
    induced = collections.Counter()
    tight = {}
    for beta in sk.enumerate_loose_transformations(X, P.functor, w):
        key = induced_cone(P, beta, phi)
        induced[key] += 1
        tight[key] = all(K.is_tight(c) for c in beta.components.values())
    assert set(induced) == set(cones)
    assert all(n == 1 for n in induced.values())
    assert tight == cones


def test_universal_property_against_the_identity_cone():
    w, a, b = ("c",) + PAIRS["c"][3]
    M, N, phi, P = case(w, a, b)
    cones = cones_over(M, M, N, phi, w)
    induced = collections.Counter(
        induced_cone(P, beta, phi)
        for beta in sk.enumerate_loose_transformations(M, P.functor, w))
    assert set(induced) == set(cones)
    assert all(n == 1 for n in induced.values())


# -- degenerate inputs -----------------------------------------------------------

def test_identity_arrow_gives_lax_limit_of_identity():
    M = fx.word_model(FRAGMENT, CATS["arrow-max"])
    for w in "cl":
        phi = identity_transformation(M, ("s", w))
        P = lim.pointwise_model_limit(M, M, phi, w)
        for x in FRAGMENT.carrier.objects:
            f = K.id1(M.ob[x])
            direct = lim.w_limit_of_arrow(f, DUAL[w])
            assert lim.apex_isomorphic(direct, P.limits[x])


def test_terminal_carrier_is_one_limit():
    T = locally_discrete(fc.terminal())
    A, B = chordate(fc.walking_arrow()), chordate(fc.terminal())
    M = constant_ffunctor(T, K, A)
    N = constant_ffunctor(T, K, B)
    f = FMap(A, B, fc.constant_functor(A.loose, B.loose, "*"))
    phi = LooseTransformation(M, N, {"*": f}, {}, ("s", "c"))
    P = lim.pointwise_model_limit(M, N, phi, "c")
    shape = lim.loose_arrow_shape()
    D = lim.diagram(shape.shape, {"A": A, "B": B}, {"f": f})
    assert lim.apex_isomorphic(lim.dotted_lax_limit(shape, D, "l"),
                               P.limits["*"])
    assert P.functor.ob["*"] == P.limits["*"].apex


def test_weakness_mismatch_rejected():
    M = fx.word_model(FRAGMENT, CATS["arrow-max"])
    phi = identity_transformation(M, ("s", "l"))
    with pytest.raises(ValueError):
        lim.pointwise_model_limit(M, M, phi, "c")


def test_non_model_input_warns():
    S = fx.sigma_sketches()["binary-product"]
    F = {(n, l): G for n, l, G in fx.sigma_models()}[
        ("binary-product", "diagonal")]
    phi = identity_transformation(F, ("s", "c"))
    with pytest.warns(lim.NotAModelWarning):
        P = lim.pointwise_model_limit(F, F, phi, "c", sketch=S)
    assert P.functor.violations() == []


# -- restriction to the tight part ---------------------------------------------------

@pytest.mark.parametrize("w,a,b", CASES)
def test_tight_restriction_is_the_tight_limit(w, a, b):
    M, N, phi, P = case(w, a, b)
    T, inc = FRAGMENT.tight_part()
    direct = lim.pointwise_model_limit(
        M.restrict(inc), N.restrict(inc), restrict_transformation(phi, inc),
        w, sketch=T)
    restricted = P.functor.restrict(inc)
    assert restricted == direct.functor
    assert sk.check_model(direct.functor, T).valid
    assert restrict_transformation(P.eta_A, inc) == direct.eta_A
    assert restrict_transformation(P.eta_B, inc) == direct.eta_B
