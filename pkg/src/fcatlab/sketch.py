"""Limit sketches enriched in 𝔽 and their models.

A sketch is a finite F-category with chosen weighted cones.  A model with
respect to a class ``R`` is an F-functor into 𝔽 whose comparison maps into
the weighted limits of the cones lie in ``R`` hom-wise.  The module also
enumerates loose transformations between models and builds the maps
``σ: W * yo D^op → yo(s)`` whose orthogonal objects are the models.
"""

from __future__ import annotations

from . import fincat as fc
from . import limits as lim
from .fcat import (FCell, FFunctor, FiniteFCategory, FMap, FObject,
                   LooseTransformation, cell_endpoints, check_loose_natural,
                   chordate, is_equivalence_fmap, is_iso_fmap,
                   postcompose_map, weaker_or_equal)
from .fincat import (CategoryError, EnumerationBoundExceeded,
                     FinitenessExceeded, FiniteCategory, FiniteFunctor,
                     NaturalTransformation, label, violation)
from .limits import AMBIENT


class ModelCheckFailed(CategoryError):
    """A functor expected to be a model is not one."""

    def __init__(self, report):
        super().__init__(f"not a model: {report.failures[:1]}",
                         report.failures[0] if report.failures else None)
        self.report = report


# -- classes of maps ---------------------------------------------------------------

class RClass:
    """A class of maps of the base, closed under isomorphisms and
    composition.  ``iso`` and ``equivalence`` are built in; a custom
    predicate may be supplied (its closure properties are assumed)."""

    def __init__(self, tag, predicate=None):
        self.tag = tag
        self._predicate = predicate

    def __repr__(self):
        return f"RClass({self.tag})"

    def __eq__(self, other):
        return isinstance(other, RClass) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __call__(self, f):
        return self.contains(f)

    def contains(self, f):
        """Membership of an FMap or a plain functor."""
        if self._predicate is not None:
            return bool(self._predicate(f))
        if isinstance(f, FMap):
            return is_iso_fmap(f) if self.tag == "iso" else \
                is_equivalence_fmap(f)
        return fc.is_isomorphism(f) if self.tag == "iso" else \
            fc.is_equivalence(f)


ISO = RClass("iso")
EQUIVALENCE = RClass("equivalence")


def r_class(name):
    """Parse ``iso`` / ``equiv`` / ``equivalence``."""
    if isinstance(name, RClass):
        return name
    table = {"iso": ISO, "equiv": EQUIVALENCE, "equivalence": EQUIVALENCE}
    if name not in table:
        raise ValueError(f"unknown class {name!r}")
    return table[name]


# -- hom maps of a finite F-category ------------------------------------------------

def postcompose_hom(S, x, u):
    """``S(x, u): S(x, a) → S(x, b)`` for a 1-cell ``u: a → b``."""
    Ha, Hb = S.hom(x, S.src1(u)), S.hom(x, S.dst1(u))
    iu = S.id2(u)
    F = FiniteFunctor(Ha.loose, Hb.loose,
                      {f: S.comp1(u, f) for f in Ha.loose.objects},
                      {a: S.hcomp(iu, a) for a in Ha.loose.morphisms},
                      check=False)
    return FMap(Ha, Hb, F, check=False)


def precompose_hom(S, u, y):
    """``S(u, y): S(b, y) → S(a, y)`` for a 1-cell ``u: a → b``."""
    Hb, Ha = S.hom(S.dst1(u), y), S.hom(S.src1(u), y)
    iu = S.id2(u)
    F = FiniteFunctor(Hb.loose, Ha.loose,
                      {f: S.comp1(f, u) for f in Hb.loose.objects},
                      {a: S.hcomp(a, iu) for a in Hb.loose.morphisms},
                      check=False)
    return FMap(Hb, Ha, F, check=False)


def representable(S, s):
    """The F-functor ``S(s, -): S → 𝔽``."""
    obs = {t: S.hom(s, t) for t in S.objects}
    ones = {u: postcompose_hom(S, s, u) for u in S.one_cells}
    twos = {}
    for k in S.two_cells:
        u, v = S.src2(k), S.dst2(k)
        H = obs[S.src1(u)].loose
        comps = {f: S.hcomp(k, S.id2(f)) for f in H.objects}
        twos[k] = FCell(ones[u], ones[v], NaturalTransformation(
            ones[u].loose, ones[v].loose, comps))
    return FFunctor(S, AMBIENT, obs, ones, twos, name=f"yo({label(s)})",
                    check=False)


# -- weighted cones and sketches ---------------------------------------------------

class WeightedCone:
    """``(W, D, s, γ)``: a weight ``W: J → 𝔽``, a diagram ``D: J → S``, an
    apex ``s`` and FMaps ``γ[j]: W(j) → S(s, D j)`` natural in ``j``."""

    def __init__(self, weight, diagram, apex, gamma, name=None):
        self.weight = weight
        self.diagram = diagram
        self.apex = apex
        self.gamma = dict(gamma)
        self.name = name

    @property
    def shape(self):
        return self.weight.source

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return f"<WeightedCone{n} at {label(self.apex)}>"

    def violations(self, S):
        J, W, D = self.shape, self.weight, self.diagram
        out = []
        if D.source.objects != J.objects or D.source.one_cells != J.one_cells:
            return [violation("shape-mismatch", ())]
        if self.apex not in S.objects:
            return [violation("apex", (self.apex,))]
        for j in J.objects:
            g = self.gamma.get(j)
            H = S.hom(self.apex, D.ob[j])
            if g is None or g.source != W.ob[j] or g.target != H:
                out.append(violation("gamma-type", (j,)))
            elif not g.is_tight:
                out.append(violation("gamma-not-tight", (j,)))
        if out:
            return out
        for u in J.one_cells:
            j, k = J.src1(u), J.dst1(u)
            Wu, Du = W.one[u].loose, D.one[u]
            gj, gk = self.gamma[j].loose, self.gamma[k].loose
            for w in Wu.source.objects:
                if gk.ob[Wu.ob[w]] != S.comp1(Du, gj.ob[w]):
                    out.append(violation("cone-naturality", (u, w)))
            for m in Wu.source.morphisms:
                if gk.mor[Wu.mor[m]] != S.hcomp(S.id2(Du), gj.mor[m]):
                    out.append(violation("cone-naturality", (u, m)))
        for b in J.two_cells:
            u = J.src2(b)
            j, k = J.src1(u), J.dst1(u)
            gj, gk = self.gamma[j].loose, self.gamma[k].loose
            comps = W.two[b].transformation.components
            for w in W.ob[j].loose.objects:
                want = S.hcomp(D.two[b], S.id2(gj.ob[w]))
                if gk.mor[comps[w]] != want:
                    out.append(violation("cone-2-naturality", (b, w)))
        return out

    def signature(self):
        """Hashable data identifying the cone exactly."""
        J, W, D = self.shape, self.weight, self.diagram
        return (
            J.objects, J.one_cells, J.two_cells, tuple(sorted(J.tight,
                                                              key=fc.sort_key)),
            tuple(W.ob[x] for x in J.objects),
            tuple(W.one[f] for f in J.one_cells),
            tuple(W.two[a] for a in J.two_cells),
            tuple(D.ob[x] for x in J.objects),
            tuple(D.one[f] for f in J.one_cells),
            tuple(D.two[a] for a in J.two_cells),
            self.apex,
            tuple(self.gamma[j].loose.key for j in J.objects),
        )


def _terminal_fobject():
    return chordate(fc.terminal())


def cone(S, weight, diagram, apex, objects, morphisms=None, name=None):
    """A weighted cone from the values of ``γ``: ``objects[j][w]`` is a
    1-cell ``apex → D j`` and ``morphisms[j][m]`` a 2-cell (identities are
    filled in)."""
    gamma = {}
    morphisms = morphisms or {}
    for j in weight.source.objects:
        Wj = weight.ob[j]
        H = S.hom(apex, diagram.ob[j])
        obs = dict(objects[j])
        mors = dict(morphisms.get(j, {}))
        for w in Wj.loose.objects:
            mors.setdefault(Wj.loose.identities[w], S.id2(obs[w]))
        gamma[j] = FMap(Wj, H, FiniteFunctor(Wj.loose, H.loose, obs, mors))
    return WeightedCone(weight, diagram, apex, gamma, name=name)


def conical_cone(S, shape, diagram, apex, legs, name=None):
    """A cone with terminal weight; ``legs[j]`` is a 1-cell ``apex → D j``."""
    W = lim.terminal_weight(shape)
    return cone(S, W, diagram, apex, {j: {"*": legs[j]} for j in legs},
                name=name)


def sketch_diagram(shape, S, objects, one_cells=None, two_cells=None):
    """An F-functor ``shape → S``; identities are filled in."""
    ones = dict(one_cells or {})
    for x in shape.objects:
        ones.setdefault(shape.id1(x), S.id1(objects[x]))
    twos = dict(two_cells or {})
    for f in shape.one_cells:
        twos.setdefault(shape.id2(f), S.id2(ones[f]))
    return FFunctor(shape, S, objects, ones, twos)


class Sketch:
    """A finite F-category with a list of weighted cones."""

    def __init__(self, carrier, cones, name=None, check=True):
        self.carrier = carrier
        self.cones = list(cones)
        self.name = name
        if check:
            bad = self.violations()
            if bad:
                raise CategoryError(f"invalid sketch: {bad[0]}", bad[0])

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return f"<Sketch{n}: {self.carrier!r}, {len(self.cones)} cones>"

    @property
    def tight_cones(self):
        """Every cone shape is chordate."""
        return all(c.shape.is_chordate() for c in self.cones)

    def violations(self):
        out = list(self.carrier.violations(first=True))
        for n, c in enumerate(self.cones):
            for v in c.violations(self.carrier):
                out.append({**v, "at": [str(n)] + v["at"]})
        return out

    def tight_part(self):
        """The chordate sketch on the tight 1-cells, with the cones that
        lie in it, and the inclusion F-functor."""
        S = self.carrier
        T = S.tight_part(name=S.name and S.name + "_tight")
        inc = FFunctor(T, S, {x: x for x in T.objects},
                       {f: f for f in T.one_cells},
                       {a: a for a in T.two_cells}, check=False)
        cones = []
        for c in self.cones:
            J, D = c.shape, c.diagram
            if not J.is_chordate() or \
                    any(D.one[f] not in T.tight for f in J.one_cells):
                continue
            images = [(j, c.gamma[j].loose) for j in J.objects]
            if any(g.ob[w] not in T.tight for _, g in images
                   for w in g.source.objects):
                continue
            D2 = FFunctor(J, T, D.ob, D.one, D.two, check=False)
            cones.append(cone(T, c.weight, D2, c.apex,
                              {j: dict(g.ob) for j, g in images},
                              {j: dict(g.mor) for j, g in images},
                              name=c.name))
        return Sketch(T, cones, name=self.name and self.name + "_tight"), inc

    def to_json(self):
        return {"name": self.name, "carrier": self.carrier.to_json(),
                "tight_cones": self.tight_cones,
                "cones": [_cone_to_json(c) for c in self.cones]}

    @classmethod
    def from_json(cls, doc):
        S = FiniteFCategory.from_json(doc["carrier"])
        return cls(S, [_cone_from_json(c, S) for c in doc["cones"]],
                   name=doc.get("name"))


# -- JSON for F-functors -------------------------------------------------------------

def _functor_json(F):
    return {"objects": {label(k): label(v) for k, v in F.ob.items()},
            "morphisms": {label(k): label(v) for k, v in F.mor.items()}}


def ffunctor_to_json(F):
    """Serialize an F-functor into 𝔽 or into a finite F-category."""
    doc = {"source": F.source.to_json()}
    if isinstance(F.target, FiniteFCategory):
        doc["objects"] = {label(k): label(v) for k, v in F.ob.items()}
        doc["one_cells"] = {label(k): label(v) for k, v in F.one.items()}
        doc["two_cells"] = {label(k): label(v) for k, v in F.two.items()}
        return doc
    doc["objects"] = {label(k): v.to_json() for k, v in F.ob.items()}
    doc["one_cells"] = {label(k): _functor_json(v.loose)
                        for k, v in F.one.items()}
    doc["two_cells"] = {label(k): {label(x): label(c) for x, c in
                                   v.transformation.components.items()}
                        for k, v in F.two.items()}
    return doc


def ffunctor_from_json(doc, target=None, source=None):
    """Inverse of :func:`ffunctor_to_json`; ``target`` is a finite
    F-category, or ``None`` for 𝔽."""
    J = source or FiniteFCategory.from_json(doc["source"])
    if target is not None:
        return FFunctor(J, target, doc["objects"], doc["one_cells"],
                        doc["two_cells"])
    obs = {x: FObject.from_json(v) for x, v in doc["objects"].items()}
    ones = {}
    for f, v in doc["one_cells"].items():
        a, b = obs[J.src1(f)], obs[J.dst1(f)]
        ones[f] = FMap(a, b, FiniteFunctor(a.loose, b.loose, v["objects"],
                                           v["morphisms"]))
    twos = {}
    for al, comps in doc["two_cells"].items():
        s, d = ones[J.src2(al)], ones[J.dst2(al)]
        twos[al] = FCell(s, d, NaturalTransformation(s.loose, d.loose, comps,
                                                     check=True))
    return FFunctor(J, AMBIENT, obs, ones, twos)


def _cone_to_json(c):
    return {"name": c.name, "apex": label(c.apex),
            "weight": ffunctor_to_json(c.weight),
            "diagram": ffunctor_to_json(c.diagram),
            "gamma": {label(j): _functor_json(g.loose)
                      for j, g in c.gamma.items()}}


def _cone_from_json(doc, S):
    W = ffunctor_from_json(doc["weight"])
    D = ffunctor_from_json(doc["diagram"], target=S, source=W.source)
    g = doc["gamma"]
    return cone(S, W, D, doc["apex"],
                {j: v["objects"] for j, v in g.items()},
                {j: v["morphisms"] for j, v in g.items()}, name=doc.get("name"))


# -- models ---------------------------------------------------------------------

class ModelReport:
    """Per-cone verdicts of :func:`check_model`."""

    def __init__(self, r, verdicts, failures, tested):
        self.r = r
        self.verdicts = verdicts
        self.failures = failures
        self.tested = tested

    @property
    def valid(self):
        return not self.failures

    def __bool__(self):
        return self.valid

    def __repr__(self):
        state = "model" if self.valid else f"{len(self.failures)} failures"
        return f"<ModelReport {self.r.tag}: {state}>"

    @property
    def label(self):
        if self.r.tag == "iso":
            return "decided"
        return f"certified up to size {max(self.tested, default=0)}"

    def to_json(self):
        return {"r": self.r.tag, "valid": self.valid, "verdicts":
                self.verdicts, "failures": self.failures,
                "label": self.label, "test_sizes": self.tested}


def comparison_map(F, c, bound=fc.DEFAULT_BOUND):
    """``ρ: F(s) → {W, F·D}`` induced by the image of the cone ``c``;
    returns ``(ρ, limit)``."""
    FD = F.restrict(c.diagram)
    res = lim.weighted_limit_end(c.weight, FD, bound)
    legs, cells = {}, {}
    for j in c.shape.objects:
        g = c.gamma[j].loose
        for w in g.source.objects:
            legs[(j, w)] = F.one[g.ob[w]]
        for m in g.source.morphisms:
            cells[(j, m)] = F.two[g.mor[m]]
    rho = res.factor(F.ob[c.apex], legs, cells)
    return rho, res


def check_model(F, sketch, R=ISO, bound=fc.DEFAULT_BOUND, test_objects=None):
    """Decide whether ``F: S → 𝔽`` is a model with respect to ``R``.

    For ``R = iso`` the comparison maps are tested directly; for
    ``R = equivalence`` the maps ``𝔽(K, ρ)`` are tested for every test
    object ``K`` and the verdict is labelled with the largest size tried.
    """
    R = r_class(R)
    failures, verdicts, tested = [], [], []
    bad = F.violations(first=True)
    if bad:
        return ModelReport(R, [], [{**bad[0], "cone": None}], tested)
    if R.tag != "iso" and test_objects is None:
        test_objects = lim.default_test_objects()
    if test_objects:
        tested = sorted({len(K.loose.objects) for K in test_objects})
    for n, c in enumerate(sketch.cones):
        name = c.name or str(n)
        try:
            rho, _ = comparison_map(F, c, bound)
        except lim.NotACone as err:
            failures.append({"cone": n, "kind": "not-a-cone",
                             "at": [name], "detail": str(err)})
            verdicts.append(False)
            continue
        if R.tag == "iso":
            ok = R.contains(rho)
            if not ok:
                failures.append({"cone": n, "kind": "comparison-not-iso",
                                 "at": [name], "detail": _describe(rho)})
        else:
            ok = True
            for K in test_objects:
                if not R.contains(postcompose_map(K, rho, bound)):
                    ok = False
                    failures.append({
                        "cone": n, "kind": f"comparison-not-{R.tag}",
                        "at": [name, str(len(K.loose.objects))],
                        "detail": _describe(rho)})
                    break
        verdicts.append(ok)
    return ModelReport(R, verdicts, failures, tested)


def _describe(f):
    A, B = f.source.loose, f.target.loose
    return (f"{len(A.objects)} objects/{len(A.morphisms)} morphisms to "
            f"{len(B.objects)} objects/{len(B.morphisms)} morphisms")


class Model:
    """An F-functor into 𝔽 together with its sketch; comparison maps are
    cached per cone."""

    def __init__(self, sketch, functor, name=None):
        self.sketch = sketch
        self.functor = functor
        self.name = name
        self._rho = {}

    def rho(self, i, bound=fc.DEFAULT_BOUND):
        if i not in self._rho:
            self._rho[i] = comparison_map(self.functor, self.sketch.cones[i],
                                          bound)[0]
        return self._rho[i]

    def check(self, R=ISO, bound=fc.DEFAULT_BOUND, test_objects=None):
        return check_model(self.functor, self.sketch, R, bound, test_objects)


# -- sketch morphisms ---------------------------------------------------------------

def cone_image(i, c):
    """The image ``(W, i·D, i(s), i·γ)`` of a cone under ``i``."""
    T = i.target
    D = i.restrict(c.diagram)
    s = i.ob[c.apex]
    objs, mors = {}, {}
    for j, g in c.gamma.items():
        objs[j] = {w: i.one[f] for w, f in g.loose.ob.items()}
        mors[j] = {m: i.two[a] for m, a in g.loose.mor.items()}
    return cone(T, c.weight, D, s, objs, mors, name=c.name)


def unpreserved_cones(i, S, T):
    """Indices of cones of ``S`` whose image is not a cone of ``T``."""
    targets = {c.signature() for c in T.cones}
    return [n for n, c in enumerate(S.cones)
            if cone_image(i, c).signature() not in targets]


def check_sketch_morphism(i, S, T):
    """``i`` is an F-functor between carriers sending cones to cones."""
    if i.source is not S.carrier and i.source.objects != S.carrier.objects:
        return False
    if i.violations(first=True):
        return False
    return not unpreserved_cones(i, S, T)


def _preimages(i, S):
    ob, one, two = {}, {}, {}
    for x in S.objects:
        ob.setdefault(i.ob[x], []).append(x)
    for f in S.one_cells:
        one.setdefault(i.one[f], []).append(f)
    for a in S.two_cells:
        two.setdefault(i.two[a], []).append(a)
    return ob, one, two


def _lifted_diagrams(i, S, D2, pre):
    J = D2.source
    ob_pre, one_pre, two_pre = pre
    ob, one, two = {}, {}, {}
    objs, cells, twos = list(J.objects), list(J.one_cells), list(J.two_cells)

    def search_two(n):
        if n == len(twos):
            F = FFunctor(J, S, ob, one, two, check=False)
            if not F.violations(first=True):
                yield F
            return
        a = twos[n]
        for b in two_pre.get(D2.two[a], ()):
            if S.src2(b) == one[J.src2(a)] and S.dst2(b) == one[J.dst2(a)]:
                two[a] = b
                yield from search_two(n + 1)
        two.pop(a, None)

    def search_one(n):
        if n == len(cells):
            yield from search_two(0)
            return
        f = cells[n]
        for g in one_pre.get(D2.one[f], ()):
            if S.src1(g) == ob[J.src1(f)] and S.dst1(g) == ob[J.dst1(f)]:
                one[f] = g
                yield from search_one(n + 1)
        one.pop(f, None)

    def search_ob(n):
        if n == len(objs):
            yield from search_one(0)
            return
        for y in ob_pre.get(D2.ob[objs[n]], ()):
            ob[objs[n]] = y
            yield from search_ob(n + 1)
        ob.pop(objs[n], None)

    yield from search_ob(0)


def _lifted_cones(i, S, c2, pre):
    """Quadruples of ``S`` with natural ``γ`` whose image is ``c2``."""
    ob_pre, one_pre, two_pre = pre
    J = c2.shape
    for s in ob_pre.get(c2.apex, ()):
        for D in _lifted_diagrams(i, S, c2.diagram, pre):
            pools = []
            for j in J.objects:
                Wj = c2.weight.ob[j]
                H = S.hom(s, D.ob[j])
                g2 = c2.gamma[j].loose
                obc = {w: [f for f in one_pre.get(g2.ob[w], ())
                           if f in H.loose.objects]
                       for w in Wj.loose.objects}
                morc = {m: set(two_pre.get(g2.mor[m], ()))
                        for m in Wj.loose.morphisms}
                pools.append([FMap(Wj, H, F, check=False) for F in
                              fc.iter_functors(Wj.loose, H.loose, None, obc,
                                               morc)])
            for combo in _product(pools):
                gamma = dict(zip(J.objects, combo))
                if not all(g.is_tight for g in combo):
                    continue
                q = WeightedCone(c2.weight, D, s, gamma, name=c2.name)
                if not q.violations(S):
                    yield q


def _product(pools):
    if not pools:
        yield ()
        return
    for x in pools[0]:
        for rest in _product(pools[1:]):
            yield (x,) + rest


def reflection_failures(i, S, T):
    """Quadruples of ``S`` mapped onto a cone of ``T`` that are not cones
    of ``S`` (empty when ``i`` reflects cones)."""
    own = {c.signature() for c in S.cones}
    pre = _preimages(i, S.carrier)
    out = []
    for n, c2 in enumerate(T.cones):
        for q in _lifted_cones(i, S.carrier, c2, pre):
            if q.signature() not in own:
                out.append({"kind": "not-reflected", "at": [str(n)],
                            "detail": f"apex {label(q.apex)}"})
    return out


def check_cone_reflecting(i, S, T):
    return not reflection_failures(i, S, T)


def restrict_model(i, F, S, R=ISO, bound=fc.DEFAULT_BOUND,
                   test_objects=None):
    """``F·i`` as a model of ``S``; raises :class:`ModelCheckFailed` when the
    restriction is not a model."""
    H = F.restrict(i)
    report = check_model(H, S, R, bound, test_objects)
    if not report.valid:
        raise ModelCheckFailed(report)
    return H


# -- loose transformations between models ----------------------------------------------

def _need(S, f, w1, w):
    if f == S.id1(S.src1(f)):
        return "s"
    return w1 if f in S.tight else w


def _component_families(S, M, N, strict, bound):
    """Families ``φ_x: M(x) → N(x)`` strictly natural at ``strict``."""
    order = sorted(S.objects, key=lambda x: (len(M.ob[x].loose.objects),
                                             fc.sort_key(x)))
    pos = {x: n for n, x in enumerate(order)}
    rel = {x: [] for x in order}
    for f in strict:
        a, b = S.src1(f), S.dst1(f)
        rel[order[max(pos[a], pos[b])]].append(f)
    comps = {}

    def ok(f):
        a, b = S.src1(f), S.dst1(f)
        return fc.compose_key(comps[a], N.one[f].loose) == \
            fc.compose_key(M.one[f].loose, comps[b])

    def narrow(table, key, allowed):
        table[key] = [v for v in table.get(key, allowed) if v in allowed]

    def choices(x):
        A, B = M.ob[x].loose, N.ob[x].loose
        obc, morc = {}, {}
        for f in rel[x]:
            a, b = S.src1(f), S.dst1(f)
            if a == b:
                continue
            Mf, Nf = M.one[f].loose, N.one[f].loose
            if b == x:
                pa = comps[a]
                for y in Mf.source.objects:
                    narrow(obc, Mf.ob[y], [Nf.ob[pa.ob[y]]])
                for m in Mf.source.morphisms:
                    narrow(morc, Mf.mor[m], [Nf.mor[pa.mor[m]]])
            else:
                pb = comps[b]
                for y in A.objects:
                    t = pb.ob[Mf.ob[y]]
                    narrow(obc, y, [c for c in B.objects if Nf.ob[c] == t])
                for m in A.morphisms:
                    t = pb.mor[Mf.mor[m]]
                    narrow(morc, m, [k for k in B.morphisms
                                     if Nf.mor[k] == t])
        return obc, {m: set(v) for m, v in morc.items()}

    def search(n):
        if n == len(order):
            yield dict(comps)
            return
        x = order[n]
        obc, morc = choices(x)
        for F in fc.iter_functors(M.ob[x].loose, N.ob[x].loose, bound,
                                  obc, morc):
            comps[x] = F
            if all(ok(f) for f in rel[x]):
                yield from search(n + 1)
        comps.pop(x, None)

    yield from search(0)


class _CellProblem:
    """Finite constraint problem for the components of all 2-cells once
    the 1-components are fixed.  Variables are pairs ``(f, y)``."""

    def __init__(self, S, M, N, comps, w1, w):
        self.orient = "c" if w == "c" else "l"
        self.ends = {}
        self.variables = []
        self.domain = {}
        lax = self.orient == "l"
        for f in S.one_cells:
            a, b = S.src1(f), S.dst1(f)
            up = comps[a].then(N.one[f].loose)
            down = M.one[f].loose.then(comps[b])
            F1, F2 = (up, down) if lax else (down, up)
            self.ends[f] = (F1, F2)
            B = N.ob[b].loose
            need = _need(S, f, w1, w)
            for y in M.ob[a].loose.objects:
                s, d = F1.ob[y], F2.ob[y]
                if need == "s":
                    cand = [B.identities[s]] if s == d else []
                else:
                    cand = list(B.hom(s, d))
                    if need == "p":
                        cand = [h for h in cand if B.is_isomorphism(h)]
                self.variables.append((f, y))
                self.domain[(f, y)] = cand
        self.constraints = []
        add = self.constraints.append
        for f in S.one_cells:
            F1, F2 = self.ends[f]
            A, B = F1.source, F1.target
            for m in A.morphisms:
                if A.is_identity(m):
                    continue
                p, q = (f, A.src[m]), (f, A.dst[m])
                a1, a2 = F1.mor[m], F2.mor[m]
                add(((p, q), lambda v, p=p, q=q, B=B, a1=a1, a2=a2:
                     B.table[(a2, v[p])] == B.table[(v[q], a1)]))
        for (g, h), gh in S._comp1.items():
            if S.is_identity2(S.id2(g)) and (g == S.id1(S.src1(g)) or
                                             h == S.id1(S.src1(h))):
                continue
            Mh, Ng = M.one[h].loose, N.one[g].loose
            C = N.ob[S.dst1(g)].loose
            for y in M.ob[S.src1(h)].loose.objects:
                pg, ph, pgh = (g, Mh.ob[y]), (h, y), (gh, y)
                if lax:
                    fn = (lambda v, pg=pg, ph=ph, pgh=pgh, C=C, Ng=Ng:
                          v[pgh] == C.table[(v[pg], Ng.mor[v[ph]])])
                else:
                    fn = (lambda v, pg=pg, ph=ph, pgh=pgh, C=C, Ng=Ng:
                          v[pgh] == C.table[(Ng.mor[v[ph]], v[pg])])
                add((tuple(dict.fromkeys((pg, ph, pgh))), fn))
        for al in S.two_cells:
            if S.is_identity2(al):
                continue
            f, f2 = S.src2(al), S.dst2(al)
            a, b = S.src1(f), S.dst1(f)
            B = N.ob[b].loose
            Mal = M.two[al].transformation.components
            Nal = N.two[al].transformation.components
            pb, pa = comps[b], comps[a]
            for y in M.ob[a].loose.objects:
                lm, rn = pb.mor[Mal[y]], Nal[pa.ob[y]]
                p, q = (f, y), (f2, y)
                if lax:
                    fn = (lambda v, p=p, q=q, B=B, lm=lm, rn=rn:
                          B.table[(lm, v[p])] == B.table[(v[q], rn)])
                else:
                    fn = (lambda v, p=p, q=q, B=B, lm=lm, rn=rn:
                          B.table[(v[q], lm)] == B.table[(rn, v[p])])
                add((tuple(dict.fromkeys((p, q))), fn))
        self.watch = {v: [] for v in self.variables}
        for c in self.constraints:
            for v in c[0]:
                self.watch[v].append(c)

    def solutions(self):
        variables, dom = self.variables, {k: list(v) for k, v in
                                          self.domain.items()}
        if any(not d for d in dom.values()):
            return
        assigned = {}

        def undo(trail):
            for u, old in reversed(trail):
                dom[u] = old

        def propagate(v):
            trail = []
            for vars_, fn in self.watch[v]:
                free = [u for u in vars_ if u not in assigned]
                if not free:
                    if not fn(assigned):
                        undo(trail)
                        return None
                elif len(free) == 1:
                    u = free[0]
                    keep = []
                    for c in dom[u]:
                        assigned[u] = c
                        if fn(assigned):
                            keep.append(c)
                    del assigned[u]
                    if len(keep) < len(dom[u]):
                        trail.append((u, dom[u]))
                        dom[u] = keep
                        if not keep:
                            undo(trail)
                            return None
            return trail

        def choose():
            return min((u for u in variables if u not in assigned),
                       key=lambda u: len(dom[u]))

        if not variables:
            yield {}
            return
        first = choose()
        frames = [[first, list(dom[first]), 0, None]]
        while frames:
            fr = frames[-1]
            v, cands, i, trail = fr
            if trail is not None:
                undo(trail)
                fr[3] = None
                del assigned[v]
            if i == len(cands):
                frames.pop()
                continue
            fr[2] = i + 1
            assigned[v] = cands[i]
            t = propagate(v)
            if t is None:
                del assigned[v]
                continue
            fr[3] = t
            if len(assigned) == len(variables):
                yield dict(assigned)
                continue
            u = choose()
            frames.append([u, list(dom[u]), 0, None])


def enumerate_loose_transformations(M, N, w="l", bound=fc.DEFAULT_BOUND,
                                    w1="s"):
    """All loose ``(w1, w)``-natural transformations ``M ⇒ N`` between
    F-functors into 𝔽 with a common finite source, in a deterministic
    order; each is validated by :func:`check_loose_natural`."""
    S = M.source
    if N.source is not S and N.source.objects != S.objects:
        raise fc.ShapeMismatch("models over different carriers")
    if not weaker_or_equal(w1, w):
        raise ValueError(f"bad weakness pair {(w1, w)}")
    strict = [f for f in S.one_cells if _need(S, f, w1, w) == "s"]
    out = []
    orient = "c" if w == "c" else "l"
    for comps in _component_families(S, M, N, strict, bound):
        phis = {x: FMap(M.ob[x], N.ob[x], F, check=False)
                for x, F in comps.items()}
        problem = _CellProblem(S, M, N, comps, w1, w)
        for sol in problem.solutions():
            cells = {}
            for f in S.one_cells:
                a, b = S.src1(f), S.dst1(f)
                src, dst = cell_endpoints(AMBIENT, M, N, phis[a], phis[b], f,
                                          orient)
                y_comps = {y: sol[(f, y)] for y in M.ob[a].loose.objects}
                cells[f] = FCell(src, dst, NaturalTransformation(
                    src.loose, dst.loose, y_comps))
            phi = LooseTransformation(M, N, phis, cells, (w1, w))
            if check_loose_natural(phi, first=True).valid:
                out.append(phi)
                if bound is not None and len(out) > bound:
                    raise EnumerationBoundExceeded(bound, "transformations")
    return out


def is_tight_transformation(phi):
    """An F-natural transformation with tight components: the tight
    1-cells between models."""
    K = phi.target.target
    return all(K.is_tight(c) for c in phi.components.values()) and \
        all(K.is_identity2(a) for a in phi.cells.values())


# -- the maps σ --------------------------------------------------------------------------

class SigmaMap:
    """``σ: P → yo(s)`` where ``P = W * yo D^op``; ``components[t]`` is
    the FMap ``P(t) → S(s, t)``."""

    def __init__(self, sketch, index, colimit, representable, components):
        self.sketch = sketch
        self.index = index
        self.colimit = colimit
        self.representable = representable
        self.components = components

    def __repr__(self):
        sizes = [len(self.colimit.ob[t].loose.objects)
                 for t in self.sketch.carrier.objects]
        return f"<SigmaMap cone {self.index}: colimit sizes {sizes}>"


def _coend_at(S, c, t, bound):
    """``∫^j W(j) × S(D j, t)`` as an FObject, with the maps ``ob`` and
    ``mor`` sending base elements ``(j, w, h)`` and ``(j, m, β)`` of the
    coproduct to their classes."""
    J, W, D = c.shape, c.weight, c.diagram
    objs, mors, ident, table, tight = [], [], {}, {}, []
    for j in J.objects:
        Wj, Hj = W.ob[j], S.hom(D.ob[j], t)
        A, B = Wj.loose, Hj.loose
        for w in A.objects:
            for h in B.objects:
                objs.append((j, w, h))
                ident[(j, w, h)] = (j, A.identities[w], B.identities[h])
                if Wj.is_tight_object(w) and Hj.is_tight_object(h):
                    tight.append((j, w, h))
        for m in A.morphisms:
            for b in B.morphisms:
                mors.append(((j, m, b), (j, A.src[m], B.src[b]),
                             (j, A.dst[m], B.dst[b])))
        for (m2, m), mm in A.table.items():
            for (b2, b), bb in B.table.items():
                table[((j, m2, b2), (j, m, b))] = (j, mm, bb)
    base = FiniteCategory(objs, mors, ident, table, check=False)
    ob_pairs, mor_pairs = [], []
    for u in J.one_cells:
        j, k = J.src1(u), J.dst1(u)
        Wu = W.one[u].loose
        pre = precompose_hom(S, D.one[u], t).loose
        A, Ak = W.ob[j].loose, W.ob[k].loose
        Bj, Bk = S.hom(D.ob[j], t).loose, S.hom(D.ob[k], t).loose
        for w in A.objects:
            for h in Bk.objects:
                ob_pairs.append(((k, Wu.ob[w], h), (j, w, pre.ob[h])))
            for b in Bk.morphisms:
                mor_pairs.append(((k, Ak.identities[Wu.ob[w]], b),
                                  (j, A.identities[w], pre.mor[b])))
        for m in A.morphisms:
            for h in Bk.objects:
                mor_pairs.append(((k, Wu.mor[m], Bk.identities[h]),
                                  (j, m, Bj.identities[pre.ob[h]])))
    for al in J.two_cells:
        u = J.src2(al)
        j, k = J.src1(u), J.dst1(u)
        A, Bk = W.ob[j].loose, S.hom(D.ob[k], t).loose
        Wal = W.two[al].transformation.components
        for w in A.objects:
            for h in Bk.objects:
                mor_pairs.append(((k, Wal[w], Bk.identities[h]),
                                  (j, A.identities[w],
                                   S.hcomp(S.id2(h), D.two[al]))))
    Q, ob, mor = fc.quotient_category(base, ob_pairs, mor_pairs, bound)
    P = FObject.from_subset(Q, sorted({ob[x] for x in tight},
                                      key=fc.sort_key))
    return P, ob, mor


def _descend(Q, ob, mor, target, on_ob, on_mor):
    """The functor out of a quotient induced by a functor on the base,
    given by ``on_ob``/``on_mor`` on base objects and morphisms."""
    rep = {}
    for x in ob:
        rep.setdefault(ob[x], x)
    obs = {c: on_ob(rep[c]) for c in Q.objects}
    mors = {}
    for q in Q.morphisms:
        s = Q.src[q]
        if Q.is_identity(q):
            mors[q] = target.identities[obs[s]]
            continue
        acc = target.identities[obs[s]]
        for g in q:
            acc = target.table[(on_mor(g), acc)]
        mors[q] = acc
    return FiniteFunctor(Q, target, obs, mors, check=False)


def sigma_map(sketch, i, bound=fc.DEFAULT_BOUND):
    """The map ``σ_i: W_i * yo D_i^op → yo(s_i)`` of F-functors
    ``S → 𝔽``, computed pointwise.  Raises :class:`FinitenessExceeded`
    when a colimit has more than ``bound`` morphisms."""
    S = sketch.carrier
    c = sketch.cones[i]
    s = c.apex
    yo = representable(S, s)
    parts = {t: _coend_at(S, c, t, bound) for t in S.objects}
    P_ob = {t: parts[t][0] for t in S.objects}
    P_one = {}
    for u in S.one_cells:
        a, b = S.src1(u), S.dst1(u)
        Pa, oba, mora = parts[a]
        Pb, obb, morb = parts[b]
        iu = S.id2(u)
        F = _descend(Pa.loose, oba, mora, Pb.loose,
                     lambda x, u=u, obb=obb: obb[(x[0], x[1],
                                                  S.comp1(u, x[2]))],
                     lambda g, iu=iu, morb=morb: morb[(g[0], g[1],
                                                       S.hcomp(iu, g[2]))])
        P_one[u] = FMap(Pa, Pb, F, check=False)
    P_two = {}
    for k in S.two_cells:
        u, v = S.src2(k), S.dst2(k)
        a, b = S.src1(u), S.dst1(u)
        Pa, oba, _ = parts[a]
        _, _, morb = parts[b]
        rep = {}
        for x in oba:
            rep.setdefault(oba[x], x)
        comps = {}
        for cl in Pa.loose.objects:
            j, w, h = rep[cl]
            Wj = c.weight.ob[j].loose
            comps[cl] = morb[(j, Wj.identities[w], S.hcomp(k, S.id2(h)))]
        P_two[k] = FCell(P_one[u], P_one[v], NaturalTransformation(
            P_one[u].loose, P_one[v].loose, comps))
    P = FFunctor(S, AMBIENT, P_ob, P_one, P_two, name="W*yoD", check=False)
    comps = {}
    for t in S.objects:
        Pt, obt, mort = parts[t]
        H = S.hom(s, t)
        gamma = c.gamma
        F = _descend(Pt.loose, obt, mort, H.loose,
                     lambda x: S.comp1(x[2], gamma[x[0]].loose.ob[x[1]]),
                     lambda g: S.hcomp(g[2], gamma[g[0]].loose.mor[g[1]]))
        comps[t] = FMap(Pt, H, F, check=False)
    return SigmaMap(sketch, i, P, yo, comps)


def sigma_hom_map(sigma, G, bound=fc.DEFAULT_BOUND):
    """``[S, 𝔽](σ, G): [S, 𝔽](yo s, G) → [S, 𝔽](P, G)`` as an FMap
    between ends."""
    S = sigma.sketch.carrier
    A1 = lim.weighted_limit_end(sigma.representable, G, bound)
    A2 = lim.weighted_limit_end(sigma.colimit, G, bound)
    objs = list(S.objects)
    C1, C2 = A1.apex.loose, A2.apex.loose
    obs = {}
    for n in C1.objects:
        fam = C1.payload[n]
        new = {t: sigma.components[t].loose.then(fam[t]) for t in objs}
        obs[n] = lim._weighted_key(S, new)
    known = set(C2.morphisms)
    mors = {}
    for m in C1.morphisms:
        i, k, _ = m
        th = C1.payload[m]
        fam = tuple(fc.whisker_right(th[t], sigma.components[t].loose).key
                    for t in objs)
        mid = (obs[i], obs[k], fam)
        if mid not in known:
            raise CategoryError("precomposition left the end")
        mors[m] = mid
    return FMap(A1.apex, A2.apex, FiniteFunctor(C1, C2, obs, mors,
                                                check=False), check=False)


def orthogonal_to_sigma(F, sketch, i, R=ISO, test_objects=None,
                        bound=fc.DEFAULT_BOUND, sigma=None):
    """Whether ``𝔽(K, F-)`` is orthogonal to ``σ_i`` with respect to ``R``
    for every test object ``K``."""
    R = r_class(R)
    sigma = sigma or sigma_map(sketch, i, bound)
    for K in test_objects or lim.default_test_objects():
        G = lim.exponentiate(K, F, bound)
        if not R.contains(sigma_hom_map(sigma, G, bound)):
            return False
    return True


__all__ = [
    "RClass", "ISO", "EQUIVALENCE", "r_class", "WeightedCone", "Sketch",
    "Model", "ModelReport", "ModelCheckFailed", "cone", "conical_cone",
    "sketch_diagram", "comparison_map", "check_model", "cone_image",
    "check_sketch_morphism", "check_cone_reflecting", "reflection_failures",
    "restrict_model", "enumerate_loose_transformations",
    "is_tight_transformation", "representable", "sigma_map", "SigmaMap",
    "sigma_hom_map", "orthogonal_to_sigma", "postcompose_hom",
    "precompose_hom", "ffunctor_to_json", "ffunctor_from_json",
    "FinitenessExceeded",
]
