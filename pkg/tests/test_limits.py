import hypothesis
import hypothesis.strategies as st
import pytest

from fcatlab import fincat as fc
from fcatlab import limits as lim
from fcatlab.fcat import FCell, FMap, FObject, chordate, locally_discrete
from fcatlab.fixtures import categories, limit_problems

import oracles

PROBLEMS = limit_problems()
SOLVED = {}
ORACLE_TESTS = [chordate(fc.terminal()), FObject.from_subset(fc.terminal(), ()),
                chordate(fc.discrete(["p", "q"])), chordate(fc.walking_arrow()),
                FObject.from_subset(fc.walking_arrow(), ["1"])]


def solved(name):
    if name not in SOLVED:
        SOLVED[name] = PROBLEMS[name].solve()
    return SOLVED[name]


def conical(name):
    p = PROBLEMS[name]
    return p.kind != "weighted"


def test_at_least_twenty_problems():
    kinds = [p.kind for p in PROBLEMS.values()]
    assert len(kinds) >= 20
    assert set(kinds) == {"weighted", "marked", "dotted"}


@pytest.mark.parametrize("name", sorted(PROBLEMS))
def test_universal_property_certified(name):
    res = solved(name)
    assert res.apex.loose.violations() == []
    cert = lim.check_limit_universal(res)
    assert cert.ok, cert.failures


@pytest.mark.parametrize("name", sorted(n for n in PROBLEMS if conical(n)))
def test_point_cones_match_oracle(name):
    p, res = PROBLEMS[name], solved(name)
    ids = oracles.point_cone_ids(p.shape.shape, p.diagram, p.w,
                                 p.shape.marked)
    assert ids == sorted(res.apex.loose.objects)


@pytest.mark.parametrize("name", sorted(n for n in PROBLEMS if conical(n)))
def test_cones_from_test_objects_match_oracle(name):
    p, res = PROBLEMS[name], solved(name)
    dotted = getattr(p.shape, "dotted", p.shape.shape.objects)
    for K in ORACLE_TESTS:
        cones, flags = oracles.cones_from(K.loose, K.tight_objects,
                                          p.shape.shape, p.diagram, p.w,
                                          p.shape.marked, dotted)
        maps = fc.enumerate_functors(K.loose, res.apex.loose)
        assert len(cones) == len(maps)
        tight = [FMap(K, res.apex, u, check=False).is_tight for u in maps]
        assert sum(flags) == sum(tight)
        hom = fc.functor_category(K.loose, res.apex.loose)
        count = sum(oracles.cone_morphism_count(K.loose, p.shape.shape,
                                                p.diagram, p.w, x, y)
                    for x in cones for y in cones)
        assert count == len(hom.morphisms)


@pytest.mark.parametrize("name", sorted(n for n in PROBLEMS
                                        if not conical(n)))
def test_weighted_cones_match_oracle(name):
    p, res = PROBLEMS[name], solved(name)
    for K in ORACLE_TESTS[:4]:
        count, tight = oracles.weighted_cones_from(
            K.loose, K.tight_objects, p.weight, p.diagram)
        maps = fc.enumerate_functors(K.loose, res.apex.loose)
        assert count == len(maps)
        assert tight == sum(FMap(K, res.apex, u, check=False).is_tight
                            for u in maps)


def test_empty_diagram_gives_terminal_apex():
    res = solved("weighted-empty")
    assert len(res.apex.loose.objects) == 1
    assert res.apex.is_chordate()


def test_tight_part_of_product_is_product_of_tight_parts():
    res = solved("weighted-tight-product")
    assert len(res.apex.tight_objects) == 1 * 1
    assert len(res.apex.loose.objects) == 2 * 1


def test_lax_limit_agrees_with_lax_slice_weight():
    p = PROBLEMS["weighted-lax-slice"]
    lax = lim.marked_lax_limit(lim.MarkedTwoCategory(p.shape), p.diagram)
    assert lim.apex_isomorphic(lax, solved("weighted-lax-slice"))


def test_lax_limit_of_arrow_agrees_with_comma_weight():
    assert lim.apex_isomorphic(solved("marked-lax-arrow"),
                               solved("weighted-comma"))


@pytest.mark.parametrize("name", ["weighted-product", "weighted-pullback",
                                  "weighted-equalizer"])
def test_fully_marked_limit_is_the_conical_limit(name):
    p = PROBLEMS[name]
    everything = lim.MarkedTwoCategory(p.shape, p.shape.one_cells)
    for w in "lcps":
        res = lim.marked_lax_limit(everything, p.diagram, w)
        assert lim.apex_isomorphic(res, solved(name))


def test_undotted_limit_has_everything_tight():
    res = solved("dotted-lax-undotted")
    assert res.apex.is_chordate()
    dotted = solved("dotted-lax-arrow")
    assert res.apex.loose == dotted.apex.loose
    assert len(dotted.apex.tight_objects) < len(res.apex.tight_objects)


def _op_diagram(D):
    """The diagram of opposite categories, on a locally discrete shape."""
    obs = {a: chordate(fc.opposite(D.ob[a].loose)) for a in D.ob}
    ones = {}
    for f, F in D.one.items():
        a, b = D.source.src1(f), D.source.dst1(f)
        ones[f] = fc.FiniteFunctor(obs[a].loose, obs[b].loose,
                                   F.loose.ob, F.loose.mor, check=False)
    return lim.diagram(D.source, obs, ones)


@pytest.mark.parametrize("name", ["marked-lax-arrow", "marked-lax-cospan",
                                  "marked-lax-loop", "marked-chain"])
def test_colax_limit_is_opposite_of_lax_limit_of_opposites(name):
    p = PROBLEMS[name]
    colax = lim.marked_lax_limit(p.shape, p.diagram, "c")
    lax_op = lim.marked_lax_limit(p.shape, _op_diagram(p.diagram), "l")
    flipped = chordate(fc.opposite(lax_op.apex.loose))
    assert fc.are_isomorphic(flipped.loose, colax.apex.loose)


def test_swapped_projections_still_certified():
    W = fc.walking_arrow()
    shape = locally_discrete(fc.discrete(["x", "y"]))
    D = lim.diagram(shape, {"x": W, "y": W}, {})
    res = lim.marked_lax_limit(lim.MarkedTwoCategory(shape), D, "s")
    legs = {"x": res.legs["y"], "y": res.legs["x"]}
    cells = {"1_x": res.cells["1_y"], "1_y": res.cells["1_x"]}
    swapped = lim.LimitResult(res.kind, res.apex, legs, cells, D,
                              "s", shape=shape, cones=res.cones)
    swapped.marked, swapped.dotted = res.marked, res.dotted
    assert lim.check_limit_universal(swapped).ok


def test_broken_leg_fails_certification():
    res = solved("weighted-product")
    W = fc.walking_arrow()
    leg = res.legs[("x", "*")]
    const = fc.constant_functor(res.apex.loose, W, "0")
    broken = dict(res.legs)
    broken[("x", "*")] = FMap(leg.source, leg.target, const, check=False)
    bad = lim.LimitResult("weighted", res.apex, broken, res.cells,
                          res.diagram, shape=res.shape, weight=res.weight,
                          cones=res.cones)
    cert = lim.check_limit_universal(bad)
    assert not cert.ok
    assert not cert.one_dimensional


def test_factor_recovers_identity():
    res = solved("marked-lax-arrow")
    u = res.factor(res.apex, res.legs, res.cells)
    assert u.loose.key == fc.identity_functor(res.apex.loose).key


def test_factor_rejects_non_cone():
    res = solved("marked-lax-arrow")
    legs = dict(res.legs)
    W = fc.walking_arrow()
    legs["0"] = FMap(res.apex, legs["0"].target,
                     fc.constant_functor(res.apex.loose, W, "1"),
                     check=False)
    with pytest.raises((lim.NotACone, KeyError)):
        res.factor(res.apex, legs, res.cells)


def test_factor_cell_of_identity_is_identity():
    res = solved("marked-lax-arrow")
    one = res.factor(res.apex, res.legs, res.cells)
    comps = {a: FCell(res.legs[a], res.legs[a],
                      fc.identity_transformation(res.legs[a].loose))
             for a in res.legs}
    cell = res.factor_cell(one, one, comps)
    assert cell.transformation.is_identity()


SMALL = {n: c for n, c in categories().items()
         if 0 < len(c.objects) <= 3 and len(c.morphisms) <= 6}


@hypothesis.settings(deadline=None, max_examples=25)
@hypothesis.given(st.sampled_from(sorted(SMALL)), st.sampled_from(sorted(SMALL)),
                  st.integers(0, 50), st.sampled_from("lcps"))
def test_random_arrow_limits_match_oracle(a, b, pick, w):
    A, B = SMALL[a], SMALL[b]
    functors = fc.enumerate_functors(A, B, limit=51)
    hypothesis.assume(functors)
    F = functors[pick % len(functors)]
    shape = locally_discrete(fc.walking_arrow())
    D = lim.diagram(shape, {"0": A, "1": B}, {"a": F})
    marked = lim.MarkedTwoCategory(shape)
    res = lim.marked_lax_limit(marked, D, w)
    assert oracles.point_cone_ids(shape, D, w, marked.marked) == \
        sorted(res.apex.loose.objects)
    assert lim.check_limit_universal(
        res, lim.default_test_objects(2)).ok
