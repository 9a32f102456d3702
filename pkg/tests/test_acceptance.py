"""Acceptance suite: one check per criterion, each printing a PASS/FAIL
line.  Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``."""

import collections
import os
import random
import sys
import time
import warnings

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fcatlab import fincat as fc  # noqa: E402
from fcatlab import fixtures as fx  # noqa: E402
from fcatlab import limits as lim  # noqa: E402
from fcatlab import monad as mo  # noqa: E402
from fcatlab import orthogonal as orth  # noqa: E402
from fcatlab import sketch as sk  # noqa: E402
from fcatlab.fcat import (DUAL, FMap, LooseTransformation,  # noqa: E402
                          check_loose_natural, constant_ffunctor,
                          restrict_transformation)
from fcatlab.limits import AMBIENT as K  # noqa: E402

import oracles  # noqa: E402
from perturb import perturb_category, perturb_fcategory  # noqa: E402

RESULTS = collections.OrderedDict()


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    return ok


# -- 1. axiom suites ---------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    cats, fcats = fx.categories(), fx.fcategories()
    bad = [n for n, c in cats.items()
           if c.violations() or not oracles.category_ok(c)]
    bad += [n for n, T in fcats.items()
            if T.violations() or not oracles.fcategory_ok(T)]
    missed, checked = [], 0
    for name, cat in cats.items():
        if not cat.morphisms:
            continue
        rng = random.Random(f"acceptance-{name}")
        for _ in range(200):
            kind, broken = perturb_category(cat, rng)
            found = broken.violations(first=True)
            checked += 1
            if not found or found[0]["at"] is None:
                missed.append((name, kind))
    for name, T in fcats.items():
        rng = random.Random(f"acceptance-{name}")
        for _ in range(200):
            kind, broken = perturb_fcategory(T, rng)
            found = broken.violations(first=True)
            checked += 1
            if not found or found[0]["at"] is None:
                missed.append((name, kind))
    elapsed = time.perf_counter() - start
    ok = not bad and not missed and elapsed < 10
    return ok, (f"{len(cats) + len(fcats)} fixtures valid, {checked} "
                f"perturbations, {len(missed)} unwitnessed, {elapsed:.1f}s "
                f"(< 10s)")


# -- 2. limits against the cone-enumeration oracle ---------------------------------

ORACLE_TESTS = lim.default_test_objects(3)


def _oracle_agrees(p, res):
    if p.kind == "weighted":
        for Kt in ORACLE_TESTS[:5]:
            count, tight = oracles.weighted_cones_from(
                Kt.loose, Kt.tight_objects, p.weight, p.diagram)
            maps = fc.enumerate_functors(Kt.loose, res.apex.loose)
            if count != len(maps) or tight != sum(
                    FMap(Kt, res.apex, u, check=False).is_tight
                    for u in maps):
                return False
        return True
    shape = p.shape.shape
    dotted = getattr(p.shape, "dotted", shape.objects)
    ids = oracles.point_cone_ids(shape, p.diagram, p.w, p.shape.marked)
    if ids != sorted(res.apex.loose.objects):
        return False
    for Kt in ORACLE_TESTS[:5]:
        cones, flags = oracles.cones_from(Kt.loose, Kt.tight_objects, shape,
                                          p.diagram, p.w, p.shape.marked,
                                          dotted)
        maps = fc.enumerate_functors(Kt.loose, res.apex.loose)
        if len(cones) != len(maps) or sum(flags) != sum(
                FMap(Kt, res.apex, u, check=False).is_tight for u in maps):
            return False
        hom = fc.functor_category(Kt.loose, res.apex.loose)
        count = sum(oracles.cone_morphism_count(Kt.loose, shape, p.diagram,
                                                p.w, x, y)
                    for x in cones for y in cones)
        if count != len(hom.morphisms):
            return False
    return True


def criterion_2():
    start = time.perf_counter()
    problems = fx.limit_problems()
    kinds = collections.Counter(p.kind for p in problems.values())
    failed = []
    for name, p in problems.items():
        res = p.solve()
        cert = lim.check_limit_universal(res, ORACLE_TESTS)
        if not cert.ok or not _oracle_agrees(p, res):
            failed.append(name)
    elapsed = time.perf_counter() - start
    ok = len(problems) >= 20 and set(kinds) == {"weighted", "marked",
                                                 "dotted"} \
        and not failed and elapsed < 300
    return ok, (f"{len(problems)} problems {dict(sorted(kinds.items()))}, "
                f"{len(failed)} failures {failed}, test apexes <= 3 objects, "
                f"{elapsed:.1f}s (< 300s)")


# -- 3. the obstruction at the projections -----------------------------------------

def _as_monoidal(phi, M):
    X = phi.components["X"].loose
    ob = {a: X.ob[(a,)][0] for a in M.cat.objects}
    mor = {m: X.mor[(m,)][0] for m in M.cat.morphisms}
    m_cell = phi.cells["m"].components
    F2 = {(a, b): m_cell[(a, b)][0]
          for a in M.cat.objects for b in M.cat.objects}
    return ob, mor, F2, phi.cells["e"].components[()][0]


def _canon(items):
    return sorted(repr((sorted(ob.items()), sorted(mor.items()),
                        sorted(F2.items()), F0))
                  for ob, mor, F2, F0 in items)


def criterion_3():
    S, M, N, _ = fx.obstruction()
    everything = sk.enumerate_loose_transformations(M, N, "l", w1="l")
    weak = [p for p in everything
            if not all(K.is_identity2(p.cells[q]) for q in ("π₁", "π₂"))]
    leaked = 0
    for p in weak:
        strict = LooseTransformation(M, N, p.components, p.cells, ("s", "l"))
        at = {v["at"][0] for v in check_loose_natural(strict).violations}
        if not at & {"π₁", "π₂"}:
            leaked += 1
    monoid = fx.monoid_sketch()
    cats = fx.monoidal_categories()
    pairs = [("arrow-max", "arrow-min"), ("arrow-min", "arrow-max"),
             ("arrow-max", "arrow-max"), ("B-idempotent", "BZ2")]
    mismatched = []
    for a, b in pairs:
        A, B = cats[a], cats[b]
        assert len(A.cat.morphisms) <= 6 and len(B.cat.morphisms) <= 6
        got = sk.enumerate_loose_transformations(
            fx.word_model(monoid, A), fx.word_model(monoid, B), "l")
        want = oracles.monoidal_functors(
            A.cat, A.tensor_ob, A.tensor_mor, A.unit, B.cat, B.tensor_ob,
            B.tensor_mor, B.unit, "lax")
        if _canon(_as_monoidal(p, A) for p in got) != _canon(want):
            mismatched.append((a, b))
    ok = weak and not leaked and not mismatched
    return ok, (f"{len(weak)} candidates with non-identity projection cells, "
                f"{leaked} accepted; {len(pairs)} model pairs, "
                f"{len(mismatched)} disagreeing with the lax monoidal "
                f"functor enumerator")


# -- 4 and 5. limits of loose morphisms between models ------------------------------

POINTWISE_PAIRS = {
    "c": [("arrow-max", "arrow-min"), ("arrow-max", "BZ2"),
          ("arrow-min", "arrow-min"), ("BZ2", "arrow-min"),
          ("discrete-xor", "B-idempotent")],
    "l": [("arrow-max", "arrow-max"), ("arrow-min", "arrow-max"),
          ("arrow-min", "B-idempotent"), ("BZ2", "arrow-max"),
          ("discrete-xor", "arrow-min")],
}
_POINTWISE = {}


def _pointwise_cases():
    if not _POINTWISE:
        import test_pointwise as tp
        for w, pairs in POINTWISE_PAIRS.items():
            for a, b in pairs:
                _POINTWISE[(w, a, b)] = tp.case(w, a, b)
    return _POINTWISE


def criterion_4():
    import test_pointwise as tp
    S = fx.product_fragment_sketch()
    failures = collections.Counter()
    cases = _pointwise_cases()
    for (w, a, b), (M, N, phi, P) in cases.items():
        if not sk.check_model(P.functor, S).valid:
            failures["model"] += 1
        for x in S.carrier.objects:
            shape, D = tp.arrow_at(M, N, phi, x)
            direct = lim.dotted_lax_limit(shape, D, DUAL[w])
            if not lim.apex_isomorphic(direct, P.limits[x]):
                failures["pointwise"] += 1
        for apex in tp.TEST_APEXES:
            X = constant_ffunctor(S.carrier, K, apex)
            cones = tp.cones_over(X, M, N, phi, w)
            induced, tight = collections.Counter(), {}
            for beta in sk.enumerate_loose_transformations(X, P.functor, w):
                key = tp.induced_cone(P, beta, phi)
                induced[key] += 1
                tight[key] = all(K.is_tight(c)
                                 for c in beta.components.values())
            if set(induced) != set(cones) or \
                    any(n != 1 for n in induced.values()) or tight != cones:
                failures["universal"] += 1
    ws = collections.Counter(w for w, _, _ in cases)
    ok = not failures and ws["c"] >= 5 and ws["l"] >= 5
    return ok, (f"{ws['c']} pairs for w = c, {ws['l']} for w = l, "
                f"{len(tp.TEST_APEXES)} test apexes; failures "
                f"{dict(failures) or 'none'}")


def criterion_5():
    S = fx.product_fragment_sketch()
    T, inc = S.tight_part()
    bad = []
    for (w, a, b), (M, N, phi, P) in _pointwise_cases().items():
        direct = lim.pointwise_model_limit(
            M.restrict(inc), N.restrict(inc),
            restrict_transformation(phi, inc), w, sketch=T)
        if P.functor.restrict(inc) != direct.functor or \
                not sk.check_model(direct.functor, T).valid or \
                restrict_transformation(P.eta_A, inc) != direct.eta_A or \
                restrict_transformation(P.eta_B, inc) != direct.eta_B:
            bad.append((w, a, b))
    return not bad, (f"{len(_pointwise_cases())} limits restricted to the "
                     f"tight part, {len(bad)} differing from the direct "
                     f"limit")


# -- 6 and 7. lifting and orthogonality -------------------------------------------

def criterion_6():
    records = orth.wfs_audit(100, seed=2024)
    bad = [r["index"] for r in records if not r["agree"]]
    isos = sum(r["in_right_class"] for r in records)
    return not bad, (f"100 random FMaps ({isos} in the right class), "
                     f"{len(bad)} disagreements")


def criterion_7():
    bad = collections.Counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", orth.BridgeViolation)
        for base in orth.BASES:
            for r in ("iso", "equiv"):
                rng = random.Random(f"bridge-{base}-{r}")
                for _ in range(50):
                    Kx, m = orth.random_orthogonality_pair(rng, base)
                    if not orth.verify_bridge(Kx, m, r):
                        bad[(base, r)] += 1
    return not bad, (f"50 pairs for each of {list(orth.BASES)} x [iso, "
                     f"equiv], disagreements {dict(bad) or 'none'}")


# -- 8. mates -----------------------------------------------------------------------

def criterion_8():
    bad = []
    fixtures = fx.mate_fixtures()
    for name, (alpha, beta, eta, eps, w) in fixtures.items():
        mate = mo.mate_transformation(alpha, beta, eta, eps, w)
        S = alpha.source.source
        if not all(K.is_identity2(mate.cells[t]) for t in S.tight) or \
                mate.weakness != ("s", w) or \
                not check_loose_natural(mate).valid or \
                not mo.check_doctrinal_lift(alpha, mate, eta, eps):
            bad.append(name)
    return not bad, f"{len(fixtures)} adjunctions, failing: {bad or 'none'}"


# -- 9. equivalence witness ---------------------------------------------------------

def criterion_9():
    out, ok = [], True
    for name, (S, models, monad, corr) in fx.monad_fixtures().items():
        rep = mo.equivalence_witness(S, monad, models, corr,
                                     ("l", "c", "p", "s"), 10 ** 4)
        ok = ok and rep.certified
        out.append(f"{name}: {rep.label}")
    return ok, "; ".join(out)


# -- 10. orthogonality against σ ------------------------------------------------------

def criterion_10():
    sketches = fx.sigma_sketches()
    checked, bad = 0, []
    for name, label, F in fx.sigma_models():
        S = sketches[name]
        for r in ("iso", "equiv"):
            verdicts = sk.check_model(F, S, r).verdicts
            for i, v in enumerate(verdicts):
                checked += 1
                if sk.orthogonal_to_sigma(F, S, i, r) != v:
                    bad.append((name, label, r, i))
    return not bad and len(sketches) >= 3, (
        f"{len(sketches)} sketches, {checked} (model, cone, R) verdicts, "
        f"{len(bad)} disagreements")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
            9: criterion_9, 10: criterion_10}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, detail = CRITERIA[n]()
    assert record(n, ok, detail), RESULTS[n]


if __name__ == "__main__":
    failed = 0
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not record(n, ok, detail)
    sys.exit(1 if failed else 0)
