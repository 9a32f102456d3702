"""Weighted, marked-lax and dotted-lax limits in the ambient 𝔽.

A diagram is an :class:`~fcatlab.fcat.FFunctor` from a finite F-category
into :class:`~fcatlab.fcat.FAmbient`.  Limits are built by enumerating the
cones from the point; every apex object is identified by the canonical
tuple of its cone data.  :func:`check_limit_universal` re-verifies the
universal property against test objects: for each test object ``K`` the
comparison ``𝔽(K, apex) → Cones(K)`` must be an isomorphism of categories
(objects: 1-dimensional, morphisms: 2-dimensional) that matches tight
parts.
"""

from __future__ import annotations

import warnings

from . import fincat as fc
from .fcat import (DUAL, FAmbient, FCell, FFunctor, FMap, FObject,
                   FiniteFCategory, LooseTransformation, Modification,
                   chordate, compose_transformations, hom_ambient_f,
                   postcompose_map, whisker_l, whisker_r)
from .fincat import (CategoryError, EnumerationBoundExceeded, FiniteCategory,
                     FiniteFunctor, NaturalTransformation, label, violation)

AMBIENT = FAmbient()


class NotAModelWarning(UserWarning):
    pass


class NotACone(CategoryError):
    pass


# -- shapes ------------------------------------------------------------------

class MarkedTwoCategory:
    """A finite 2-category with a marked class of 1-cells."""

    def __init__(self, shape, marked=None):
        self.shape = shape
        self.marked = frozenset(
            [shape.id1(x) for x in shape.objects] if marked is None
            else marked)
        bad = self.violations()
        if bad:
            raise CategoryError(f"invalid marking: {bad[0]}", bad[0])

    def violations(self):
        S, out = self.shape, []
        for x in S.objects:
            if S.id1(x) not in self.marked:
                out.append(violation("marking-identity", (x,)))
        for (g, f), gf in S._comp1.items():
            if g in self.marked and f in self.marked and gf not in self.marked:
                out.append(violation("marking-composition", (g, f)))
        return out


class DottedFCategory(MarkedTwoCategory):
    """A marked F-category with a set of dotted objects."""

    def __init__(self, shape, marked=None, dotted=()):
        self.dotted = frozenset(dotted)
        super().__init__(shape, marked)

    def violations(self):
        out = super().violations()
        S = self.shape
        for f in S.one_cells:
            if f in S.tight and f in self.marked and \
                    S.src1(f) in self.dotted and S.dst1(f) not in self.dotted:
                out.append(violation("dotted-closure", (f,)))
        return out


def loose_arrow_shape():
    """``Ȧ ⇝ Ḃ``: two dotted objects and one loose arrow ``f``."""
    shape = FiniteFCategory(
        ["A", "B"], {"1_A": ("A", "A"), "1_B": ("B", "B"), "f": ("A", "B")},
        {"=1_A": ("1_A", "1_A"), "=1_B": ("1_B", "1_B"), "=f": ("f", "f")},
        {"A": "1_A", "B": "1_B"}, {"1_A": "=1_A", "1_B": "=1_B", "f": "=f"},
        {("1_A", "1_A"): "1_A", ("1_B", "1_B"): "1_B", ("f", "1_A"): "f",
         ("1_B", "f"): "f"},
        {("=1_A", "=1_A"): "=1_A", ("=1_B", "=1_B"): "=1_B",
         ("=f", "=f"): "=f"},
        {("=1_A", "=1_A"): "=1_A", ("=1_B", "=1_B"): "=1_B",
         ("=f", "=1_A"): "=f", ("=1_B", "=f"): "=f"},
        tight=["1_A", "1_B"], name="loose-arrow")
    return DottedFCategory(shape, dotted=["A", "B"])


# -- results -------------------------------------------------------------------

class LimitResult:
    """An apex with its universal cone.

    ``legs[a]`` is the FMap ``apex → D(a)``; ``cells[f]`` the 2-cell of the
    cone at ``f`` (``D(f)·leg_a ⇒ leg_b`` when lax).  For weighted limits
    ``legs[(j, w)]`` and ``cells[(j, u)]`` evaluate at ``w`` and ``u`` in
    ``W(j)``.
    """

    def __init__(self, kind, apex, legs, cells, diagram, weakness="s",
                 shape=None, weight=None, cones=None):
        self.kind = kind
        self.apex = apex
        self.legs = legs
        self.cells = cells
        self.diagram = diagram
        self.weakness = weakness
        self.shape = shape
        self.weight = weight
        self.cones = cones or {}

    def __repr__(self):
        return (f"<LimitResult {self.kind}: apex with "
                f"{len(self.apex.loose.objects)} objects>")

    def to_json(self):
        return {"kind": self.kind, "weakness": self.weakness,
                "apex": self.apex.to_json()}

    def factor(self, K, legs, cells):
        """The unique map ``K → apex`` inducing the cone ``(legs, cells)``
        (1-cells and 2-cells of 𝔽 out of ``K``)."""
        if self.kind == "weighted":
            return _factor_weighted(self, K, legs, cells)
        return _factor_conical(self, K, legs, cells)

    def factor_cell(self, source, target, components):
        """The unique 2-cell ``source ⇒ target`` between maps into a
        conical apex whose whiskering with ``legs[a]`` is
        ``components[a]``."""
        A = self.apex.loose
        comps = {}
        for k in source.source.loose.objects:
            x, y = source.loose.ob[k], target.loose.ob[k]
            fam = tuple(components[a].components[k]
                        for a in self.shape.objects)
            hits = [m for m in A.hom(x, y)
                    if A.payload[m] == fam]
            if len(hits) != 1:
                raise NotACone(f"no unique mediating 2-cell at {label(k)}")
            comps[k] = hits[0]
        return FCell(source, target,
                     NaturalTransformation(source.loose, target.loose, comps))


# -- diagrams ------------------------------------------------------------------

def diagram(shape, objects, one_cells, two_cells=None, check=True):
    """An F-functor into 𝔽 from a finite F-category.

    ``objects`` maps to FObjects (or categories, viewed as chordate);
    ``one_cells`` to FMaps or plain functors; missing 2-cells default to
    identities when the images of source and target agree.
    """
    obs = {x: (v if isinstance(v, FObject) else chordate(v))
           for x, v in objects.items()}
    ones = {}
    for f in shape.one_cells:
        v = one_cells.get(f)
        a, b = obs[shape.src1(f)], obs[shape.dst1(f)]
        if v is None and shape.src1(f) == shape.dst1(f) and \
                f == shape.id1(shape.src1(f)):
            v = AMBIENT.id1(a)
        if isinstance(v, FiniteFunctor):
            v = FMap(a, b, v, check=False)
        ones[f] = v
    twos = {}
    two_cells = two_cells or {}
    for al in shape.two_cells:
        v = two_cells.get(al)
        if v is None:
            s, d = ones[shape.src2(al)], ones[shape.dst2(al)]
            if s != d:
                raise CategoryError(f"missing image of 2-cell {label(al)}")
            v = AMBIENT.id2(s)
        elif isinstance(v, NaturalTransformation):
            v = FCell(ones[shape.src2(al)], ones[shape.dst2(al)], v)
        twos[al] = v
    return FFunctor(shape, AMBIENT, obs, ones, twos, check=check)


# -- conical w-cones ---------------------------------------------------------------

def _cone_plan(shape):
    """Objects interleaved with the non-identity 1-cells whose endpoints are
    placed, each carrying the coherence conditions completed at that step."""
    order, placed, done, steps = list(shape.objects), set(), set(), []
    position = {}
    for x in order:
        placed.add(x)
        position[("ob", x)] = len(steps)
        steps.append(["ob", x, []])
        for f in shape.one_cells:
            if f not in done and shape.src1(f) in placed and \
                    shape.dst1(f) in placed:
                done.add(f)
                position[("cell", f)] = len(steps)
                steps.append(["cell", f, []])
    for (g, h), gh in shape._comp1.items():
        last = max(position[("cell", g)], position[("cell", h)],
                   position[("cell", gh)])
        steps[last][2].append(("comp", g, h, gh))
    for al in shape.two_cells:
        f, f2 = shape.src2(al), shape.dst2(al)
        last = max(position[("cell", f)], position[("cell", f2)])
        steps[last][2].append(("two", al, f, f2))
    return steps


class _ConeRules:
    """Typing and coherence of a w-cone from the point into ``D``."""

    def __init__(self, shape, D, marked, w):
        self.shape, self.D, self.marked, self.w = shape, D, marked, w

    def cat(self, a):
        return self.D.ob[a].loose

    def ends(self, f, xa, xb):
        """Source and target of the component ``x_f`` in ``D(b)``."""
        image = self.D.one[f].loose.ob[xa]
        return (xb, image) if self.w == "c" else (image, xb)

    def candidates(self, f, x):
        a, b = self.shape.src1(f), self.shape.dst1(f)
        C = self.cat(b)
        s, d = self.ends(f, x[a], x[b])
        if f == self.shape.id1(a) or self.w == "s" or f in self.marked:
            return [C.identities[s]] if s == d else []
        hom = C.hom(s, d)
        if self.w == "p":
            return [m for m in hom if C.is_isomorphism(m)]
        return list(hom)

    def coherent(self, check, x):
        kind = check[0]
        S = self.shape
        if kind == "comp":
            _, g, h, gh = check
            C = self.cat(S.dst1(g))
            mid = self.D.one[g].loose.mor[x[h]]
            if self.w == "c":
                return C.table[(mid, x[g])] == x[gh]
            return C.table[(x[g], mid)] == x[gh]
        _, al, f, f2 = check
        a = S.src1(f)
        C = self.cat(S.dst1(f))
        comp = self.D.two[al].transformation.components[x[a]]
        if self.w == "c":
            return C.table[(comp, x[f])] == x[f2]
        return C.table[(x[f2], comp)] == x[f]

    def morphism_ok(self, f, x, y, m):
        """Modification condition at ``f`` for the family ``m``."""
        S = self.shape
        a, b = S.src1(f), S.dst1(f)
        C = self.cat(b)
        image = self.D.one[f].loose.mor[m[a]]
        if self.w == "c":
            return C.table[(image, x[f])] == C.table[(y[f], m[b])]
        return C.table[(y[f], image)] == C.table[(m[b], x[f])]


def _cone_key(shape, x):
    return tuple(x[a] for a in shape.objects) + \
        tuple(x[f] for f in shape.one_cells)


def _enumerate_cones(shape, rules, bound):
    steps = _cone_plan(shape)
    x, out = {}, []

    def search(i):
        if i == len(steps):
            if bound is not None and len(out) >= bound:
                raise EnumerationBoundExceeded(bound, "cones")
            out.append(dict(x))
            return
        kind, item, checks = steps[i]
        if kind == "ob":
            for v in rules.cat(item).objects:
                x[item] = v
                search(i + 1)
            x.pop(item, None)
            return
        for v in rules.candidates(item, x):
            x[item] = v
            if all(rules.coherent(c, x) for c in checks):
                search(i + 1)
        x.pop(item, None)

    search(0)
    return out


def _cone_morphisms(shape, rules, x, y):
    objects = list(shape.objects)
    cells_at = {a: [] for a in objects}
    index = {a: i for i, a in enumerate(objects)}
    for f in shape.one_cells:
        a, b = shape.src1(f), shape.dst1(f)
        cells_at[objects[max(index[a], index[b])]].append(f)
    m, out = {}, []

    def search(i):
        if i == len(objects):
            out.append(dict(m))
            return
        a = objects[i]
        for v in rules.cat(a).hom(x[a], y[a]):
            m[a] = v
            if all(rules.morphism_ok(f, x, y, m) for f in cells_at[a]):
                search(i + 1)
        m.pop(a, None)

    search(0)
    return out


def _cone_category(shape, D, marked, w, dotted, bound, kind):
    rules = _ConeRules(shape, D, marked, w)
    cones = _enumerate_cones(shape, rules, bound)
    ids = [_cone_key(shape, x) for x in cones]
    by_id = dict(zip(ids, cones))
    mors, payload = [], {}
    total = 0
    for i in ids:
        for j in ids:
            for m in _cone_morphisms(shape, rules, by_id[i], by_id[j]):
                fam = tuple(m[a] for a in shape.objects)
                mid = (i, j, fam)
                mors.append((mid, i, j))
                payload[mid] = fam
                total += 1
                if bound is not None and total > bound:
                    raise EnumerationBoundExceeded(bound, "cone morphisms")
    lookup = {(s, d, payload[m]): m for m, s, d in mors}
    idents = {}
    for i in ids:
        x = by_id[i]
        fam = tuple(rules.cat(a).identities[x[a]] for a in shape.objects)
        idents[i] = lookup[(i, i, fam)]
    table = {}
    out_of = {}
    for m, s, d in mors:
        out_of.setdefault(s, []).append((m, d))
    for f, s, d in mors:
        for g, e in out_of.get(d, ()):
            fam = tuple(rules.cat(a).table[(payload[g][n], payload[f][n])]
                        for n, a in enumerate(shape.objects))
            table[(g, f)] = lookup[(s, e, fam)]
    apex_cat = FiniteCategory(ids, mors, idents, table, check=False,
                              name=f"{kind}-apex")
    apex_cat.payload = {**payload, **by_id}
    tight = [i for i in ids
             if all(D.ob[a].is_tight_object(by_id[i][a]) for a in dotted)]
    apex = FObject.from_subset(apex_cat, tight)
    apex.tight.payload = apex_cat.payload
    legs, cells = {}, {}
    for n, a in enumerate(shape.objects):
        F = FiniteFunctor(apex_cat, D.ob[a].loose,
                          {i: by_id[i][a] for i in ids},
                          {m: payload[m][n] for m, _, _ in mors}, check=False)
        legs[a] = FMap(apex, D.ob[a], F, check=False)
    for f in shape.one_cells:
        a, b = shape.src1(f), shape.dst1(f)
        pushed = AMBIENT.comp1(D.one[f], legs[a])
        s, d = (legs[b], pushed) if w == "c" else (pushed, legs[b])
        cells[f] = FCell(s, d, NaturalTransformation(
            s.loose, d.loose, {i: by_id[i][f] for i in ids}))
    res = LimitResult(kind, apex, legs, cells, D, w, shape=shape,
                      cones=by_id)
    res.marked = frozenset(marked)
    res.dotted = frozenset(dotted)
    return res


def marked_lax_limit(marked_shape, D, w="l", bound=fc.DEFAULT_BOUND):
    """Marked-w limit of a 2-functor into Cat (``D`` valued in chordate
    FObjects); marked 1-cells get identity 2-components."""
    if isinstance(marked_shape, FiniteFCategory):
        marked_shape = MarkedTwoCategory(marked_shape)
    res = _cone_category(marked_shape.shape, D, marked_shape.marked, w,
                         marked_shape.shape.objects, bound, "marked-" + w)
    return res


def dotted_lax_limit(dotted_shape, D, w="l", bound=fc.DEFAULT_BOUND):
    """Dotted-w limit in 𝔽: the loose part classifies marked-w cones, the
    tight part those whose 1-components at dotted objects are tight."""
    return _cone_category(dotted_shape.shape, D, dotted_shape.marked, w,
                          dotted_shape.dotted, bound, "dotted-" + w)


def w_limit_of_arrow(f_map, w="l", bound=fc.DEFAULT_BOUND):
    """The w-limit of a (loose) 1-cell of 𝔽, over ``Ȧ ⇝ Ḃ``."""
    shape = loose_arrow_shape()
    D = diagram(shape.shape, {"A": f_map.source, "B": f_map.target},
                {"f": f_map, "1_A": AMBIENT.id1(f_map.source),
                 "1_B": AMBIENT.id1(f_map.target)})
    return dotted_lax_limit(shape, D, w, bound)


def _factor_conical(res, K, legs, cells):
    shape = res.shape
    A = res.apex.loose
    obs, mors = {}, {}
    for k in K.loose.objects:
        x = {a: legs[a].loose.ob[k] for a in shape.objects}
        for f in shape.one_cells:
            x[f] = cells[f].transformation.components[k]
        key = _cone_key(shape, x)
        if key not in res.cones:
            raise NotACone(f"not a cone at {label(k)}")
        obs[k] = key
    for m in K.loose.morphisms:
        s, d = obs[K.loose.src[m]], obs[K.loose.dst[m]]
        fam = tuple(legs[a].loose.mor[m] for a in shape.objects)
        hits = [n for n in A.hom(s, d) if A.payload[n] == fam]
        if len(hits) != 1:
            raise NotACone(f"no mediating morphism at {label(m)}")
        mors[m] = hits[0]
    return FMap(K, res.apex, FiniteFunctor(K.loose, A, obs, mors,
                                           check=False), check=False)


# -- weighted limits via the end formula -------------------------------------------

def _weighted_key(J, x):
    return tuple((j, x[j].key) for j in J.objects)


def weighted_limit_end(W, D, bound=fc.DEFAULT_BOUND):
    """``{W, D}`` as the end of the hom-objects ``𝔽(W j, D j)``.

    Objects are families ``x_j: W(j) → D(j)`` of functors on loose parts,
    natural in every 1-cell and 2-cell of the shape; morphisms are families
    of natural transformations; tight objects are the families of FMaps.
    """
    J = W.source
    if D.source.objects != J.objects:
        raise fc.ShapeMismatch("weight and diagram have different shapes")
    homs = {j: fc.functor_category(W.ob[j].loose, D.ob[j].loose, bound)
            for j in J.objects}
    objects = list(J.objects)
    checks = {j: [] for j in objects}
    index = {j: n for n, j in enumerate(objects)}
    for u in J.one_cells:
        a, b = J.src1(u), J.dst1(u)
        checks[objects[max(index[a], index[b])]].append(("one", u))
    for al in J.two_cells:
        u = J.src2(al)
        a, b = J.src1(u), J.dst1(u)
        checks[objects[max(index[a], index[b])]].append(("two", al))

    def natural_one(u, x):
        a, b = J.src1(u), J.dst1(u)
        return fc.compose_key(x[a], D.one[u].loose) == \
            fc.compose_key(W.one[u].loose, x[b])

    def natural_two(al, x):
        u = J.src2(al)
        a, b = J.src1(u), J.dst1(u)
        lhs = fc.horizontal(D.two[al].transformation,
                            fc.identity_transformation(x[a]))
        rhs = fc.horizontal(fc.identity_transformation(x[b]),
                            W.two[al].transformation)
        return lhs.key == rhs.key

    families, x = [], {}

    def search(i):
        if i == len(objects):
            if bound is not None and len(families) >= bound:
                raise EnumerationBoundExceeded(bound, "cones")
            families.append(dict(x))
            return
        j = objects[i]
        H = homs[j]
        for n in H.objects:
            x[j] = H.payload[n]
            ok = True
            for kind, c in checks[j]:
                if kind == "one" and not natural_one(c, x):
                    ok = False
                    break
                if kind == "two" and not natural_two(c, x):
                    ok = False
                    break
            if ok:
                search(i + 1)
        x.pop(j, None)

    search(0)
    ids = [_weighted_key(J, fam) for fam in families]
    by_id = dict(zip(ids, families))

    def modification_ok(u, th):
        a, b = J.src1(u), J.dst1(u)
        left = fc.whisker_left(D.one[u].loose, th[a])
        right = fc.whisker_right(th[b], W.one[u].loose)
        return left.key == right.key

    mors, payload = [], {}
    for i in ids:
        for k in ids:
            X, Y = by_id[i], by_id[k]
            pools = [fc.enumerate_transformations(X[j], Y[j], bound)
                     for j in objects]
            th = {}

            def pick(n):
                if n == len(objects):
                    fam = tuple(th[j].key for j in objects)
                    mid = (i, k, fam)
                    mors.append((mid, i, k))
                    payload[mid] = dict(th)
                    return
                j = objects[n]
                for t in pools[n]:
                    th[j] = t
                    if all(modification_ok(u, th) for kind, u in checks[j]
                           if kind == "one"):
                        pick(n + 1)
                th.pop(j, None)

            pick(0)
            if bound is not None and len(mors) > bound:
                raise EnumerationBoundExceeded(bound, "cone morphisms")
    lookup = {(s, d, m[2]): m for m, s, d in mors}
    idents = {}
    for i in ids:
        fam = tuple(fc.identity_transformation(by_id[i][j]).key
                    for j in objects)
        idents[i] = lookup[(i, i, fam)]
    table = {}
    out_of = {}
    for m, s, d in mors:
        out_of.setdefault(s, []).append((m, d))
    for f, s, d in mors:
        for g, e in out_of.get(d, ()):
            fam = tuple(payload[f][j].then(payload[g][j]).key
                        for j in objects)
            table[(g, f)] = lookup[(s, e, fam)]
    apex_cat = FiniteCategory(ids, mors, idents, table, check=False,
                              name="weighted-apex")
    apex_cat.payload = {**payload, **by_id}
    tight = [i for i in ids
             if all(FMap(W.ob[j], D.ob[j], by_id[i][j], check=False).is_tight
                    for j in objects)]
    apex = FObject.from_subset(apex_cat, tight)
    legs, cells = {}, {}
    for j in objects:
        Wj = W.ob[j].loose
        for w in Wj.objects:
            F = FiniteFunctor(apex_cat, D.ob[j].loose,
                              {i: by_id[i][j].ob[w] for i in ids},
                              {m: payload[m][j].components[w]
                               for m, _, _ in mors}, check=False)
            legs[(j, w)] = FMap(apex, D.ob[j], F, check=False)
        for u in Wj.morphisms:
            s, d = legs[(j, Wj.src[u])], legs[(j, Wj.dst[u])]
            cells[(j, u)] = FCell(s, d, NaturalTransformation(
                s.loose, d.loose, {i: by_id[i][j].mor[u] for i in ids}))
    return LimitResult("weighted", apex, legs, cells, D, "s", shape=J,
                       weight=W, cones=by_id)


def _factor_weighted(res, K, legs, cells):
    J, W = res.shape, res.weight
    A = res.apex.loose
    obs, mors = {}, {}
    for k in K.loose.objects:
        fam = {}
        for j in J.objects:
            Wj = W.ob[j].loose
            fam[j] = FiniteFunctor(
                Wj, res.diagram.ob[j].loose,
                {w: legs[(j, w)].loose.ob[k] for w in Wj.objects},
                {u: cells[(j, u)].transformation.components[k]
                 for u in Wj.morphisms}, check=False)
        key = _weighted_key(J, fam)
        if key not in res.cones:
            raise NotACone(f"not a weighted cone at {label(k)}")
        obs[k] = key
    for m in K.loose.morphisms:
        s, d = obs[K.loose.src[m]], obs[K.loose.dst[m]]
        fam = tuple(tuple(legs[(j, w)].loose.mor[m]
                          for w in W.ob[j].loose.objects) for j in J.objects)
        hits = [n for n in A.hom(s, d)
                if tuple(A.payload[n][j].key for j in J.objects) == fam]
        if len(hits) != 1:
            raise NotACone(f"no mediating morphism at {label(m)}")
        mors[m] = hits[0]
    return FMap(K, res.apex, FiniteFunctor(K.loose, A, obs, mors,
                                           check=False), check=False)


# -- certification ---------------------------------------------------------------

def exponentiate(K, D, bound=fc.DEFAULT_BOUND):
    """``D^K = 𝔽(K, D(-))`` as an F-functor into 𝔽."""
    shape = D.source
    homs = {a: hom_ambient_f(K, D.ob[a], bound) for a in shape.objects}
    ones, twos = {}, {}
    for f in shape.one_cells:
        a, b = shape.src1(f), shape.dst1(f)
        ones[f] = postcompose_map(K, D.one[f], bound, (homs[a], homs[b]))
    for al in shape.two_cells:
        f, g = shape.src2(al), shape.dst2(al)
        a, b = shape.src1(f), shape.dst1(f)
        Hb = homs[b].loose
        comps = {}
        for n in homs[a].loose.objects:
            F = homs[a].loose.payload[n]
            t = fc.whisker_right(D.two[al].transformation, F)
            s_idx = Hb.index[fc.compose_key(F, D.one[f].loose)]
            d_idx = Hb.index[fc.compose_key(F, D.one[g].loose)]
            comps[n] = Hb.transformation_index[(s_idx, d_idx, t.key)]
        twos[al] = FCell(ones[f], ones[g], NaturalTransformation(
            ones[f].loose, ones[g].loose, comps))
    return FFunctor(shape, AMBIENT, homs, ones, twos, check=False)


def limit_of(res, D, bound=fc.DEFAULT_BOUND):
    """Recompute a limit of the same kind for another diagram ``D``."""
    if res.kind == "weighted":
        W = res.weight
        return weighted_limit_end(W, D, bound)
    return _cone_category(res.shape, D, res.marked, res.weakness, res.dotted,
                          bound, res.kind)


def _cone_from_map(res, u, K, cone_res):
    """The cone into ``D^K`` induced by ``u: K → apex``, as an id of
    ``cone_res``'s apex."""
    if res.kind == "weighted":
        J, W = res.shape, res.weight
        fam = {}
        for j in J.objects:
            Hj = cone_res.diagram.ob[j].loose
            Wj = W.ob[j].loose
            obs = {w: Hj.index[fc.compose_key(u, res.legs[(j, w)].loose)]
                   for w in Wj.objects}
            mors = {}
            for m in Wj.morphisms:
                t = fc.whisker_right(res.cells[(j, m)].transformation, u)
                mors[m] = Hj.transformation_index[(obs[Wj.src[m]],
                                                   obs[Wj.dst[m]], t.key)]
            fam[j] = FiniteFunctor(Wj, Hj, obs, mors, check=False)
        return _weighted_key(J, fam)
    shape = res.shape
    x = {}
    for a in shape.objects:
        Ha = cone_res.diagram.ob[a].loose
        x[a] = Ha.index[fc.compose_key(u, res.legs[a].loose)]
    for f in shape.one_cells:
        b = shape.dst1(f)
        Hb = cone_res.diagram.ob[b].loose
        cell = res.cells[f]
        t = fc.whisker_right(cell.transformation, u)
        s = Hb.index[fc.compose_key(u, cell.source.loose)]
        d = Hb.index[fc.compose_key(u, cell.target.loose)]
        x[f] = Hb.transformation_index[(s, d, t.key)]
    return _cone_key(shape, x)


def _cone_morphism_from(res, tau, K, cone_res, src_id, dst_id):
    A = cone_res.apex.loose
    if res.kind == "weighted":
        J, W = res.shape, res.weight
        fam = []
        for j in J.objects:
            Hj = cone_res.diagram.ob[j].loose
            comps = {}
            for w in W.ob[j].loose.objects:
                leg = res.legs[(j, w)].loose
                t = fc.whisker_left(leg, tau)
                s = Hj.index[fc.compose_key(tau.source, leg)]
                d = Hj.index[fc.compose_key(tau.target, leg)]
                comps[w] = Hj.transformation_index[(s, d, t.key)]
            fam.append(tuple(comps[w] for w in W.ob[j].loose.objects))
        hits = [m for m in A.hom(src_id, dst_id)
                if tuple(A.payload[m][j].key for j in J.objects) ==
                tuple(fam)]
        return hits
    shape = res.shape
    fam = []
    for a in shape.objects:
        Ha = cone_res.diagram.ob[a].loose
        leg = res.legs[a].loose
        t = fc.whisker_left(leg, tau)
        s = Ha.index[fc.compose_key(tau.source, leg)]
        d = Ha.index[fc.compose_key(tau.target, leg)]
        fam.append(Ha.transformation_index[(s, d, t.key)])
    return [m for m in A.hom(src_id, dst_id) if A.payload[m] == tuple(fam)]


class Certificate:
    def __init__(self):
        self.one_dimensional = True
        self.two_dimensional = True
        self.tight = True
        self.failures = []
        self.tested = []

    @property
    def ok(self):
        return self.one_dimensional and self.two_dimensional and self.tight

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"one_dimensional": self.one_dimensional,
                "two_dimensional": self.two_dimensional,
                "tight": self.tight, "tested": self.tested,
                "failures": self.failures}


def default_test_objects(max_objects=3):
    """Test FObjects with at most ``max_objects`` loose objects."""
    out = [chordate(fc.terminal()), FObject.from_subset(fc.terminal(), ()),
           chordate(fc.empty()), chordate(fc.discrete(["p", "q"])),
           chordate(fc.walking_arrow()),
           FObject.from_subset(fc.walking_arrow(), ["0"]),
           FObject.from_subset(fc.walking_arrow(), ["1"]),
           chordate(fc.walking_iso()), chordate(fc.parallel_pair())]
    if max_objects >= 3:
        out.append(chordate(fc.chain(3)))
    return [K for K in out if len(K.loose.objects) <= max_objects]


def check_limit_universal(res, test_objects=None, bound=fc.DEFAULT_BOUND):
    """Certify the universal property of ``res`` against test objects.

    For each ``K`` the comparison sending ``u: K → apex`` to the cone
    ``legs·u`` must be a bijection onto the cones from ``K`` (computed as
    cones from the point into ``D^K``), must send natural transformations
    bijectively onto cone morphisms, and must match tight maps with
    tight cones.
    """
    cert = Certificate()
    if test_objects is None:
        test_objects = default_test_objects()
    apex = res.apex
    for K in test_objects:
        cert.tested.append(len(K.loose.objects))
        DK = exponentiate(K, res.diagram, bound)
        cone_res = limit_of(res, DK, bound)
        hom = fc.functor_category(K.loose, apex.loose, bound)
        images = {}
        for n in hom.objects:
            u = hom.payload[n]
            try:
                images[n] = _cone_from_map(res, u, K, cone_res)
            except KeyError:
                images[n] = None
        targets = set(cone_res.apex.loose.objects)
        hit = [v for v in images.values() if v is not None]
        if any(v not in targets for v in hit) or len(set(hit)) != len(hit) \
                or set(hit) != targets or None in images.values():
            cert.one_dimensional = False
            cert.failures.append(violation("one-dimensional",
                                           (len(K.loose.objects),)))
            continue
        for n in hom.objects:
            tight_map = FMap(K, apex, hom.payload[n], check=False).is_tight
            if tight_map != cone_res.apex.is_tight_object(images[n]):
                cert.tight = False
                cert.failures.append(violation("tightness",
                                               (len(K.loose.objects),)))
                break
        seen = {}
        for m in hom.morphisms:
            i, j, _ = m
            hits = _cone_morphism_from(res, hom.payload[m], K, cone_res,
                                       images[i], images[j])
            if len(hits) != 1:
                seen = None
                break
            seen.setdefault((i, j), set()).add(hits[0])
        if seen is not None:
            for i in hom.objects:
                for j in hom.objects:
                    size = len(hom.hom(i, j))
                    if len(seen.get((i, j), ())) != size or size != len(
                            cone_res.apex.loose.hom(images[i], images[j])):
                        seen = None
                        break
                if seen is None:
                    break
        if seen is None:
            cert.two_dimensional = False
            cert.failures.append(violation("two-dimensional",
                                           (len(K.loose.objects),)))
    return cert


def check_weighted_limit_universal(res, test_objects=None,
                                   bound=fc.DEFAULT_BOUND):
    return check_limit_universal(res, test_objects, bound)


# -- weights for lax limits -----------------------------------------------------

def lax_slice_weight(shape, w="l"):
    """The weight whose weighted limits are the lax (``w = "l"``) or
    colax limits over ``shape``: ``W(b)`` is the lax slice over ``b``.

    Objects of ``W(b)`` are 1-cells ``f: a → b``; a morphism ``f → f'`` is a
    pair ``(h, α)`` with ``h: a → a'`` and ``α: f ⇒ f'∘h`` (reversed for
    colax).
    """
    S = shape
    cats = {}
    for b in S.objects:
        objs = [f for f in S.one_cells if S.dst1(f) == b]
        mors = []
        for f in objs:
            for f2 in objs:
                for h in S.one_cells_between(S.src1(f), S.src1(f2)):
                    fh = S.comp1(f2, h)
                    pair = (f, fh) if w == "l" else (fh, f)
                    for al in S.two_cells_between(*pair):
                        mors.append(((h, al), f, f2))
        table = {}
        for (h, al), f, f2 in mors:
            for (k, be), g, g2 in mors:
                if g != f2:
                    continue
                kh = S.comp1(k, h)
                whisk = S.hcomp(be, S.id2(h))
                cell = S.vcomp(whisk, al) if w == "l" else S.vcomp(al, whisk)
                table[((k, be), (h, al))] = (kh, cell)
        idents = {f: (S.id1(S.src1(f)), S.id2(f)) for f in objs}
        cats[b] = FiniteCategory(objs, mors, idents, table, check=False,
                                 name=f"slice-{label(b)}")
    ones, twos = {}, {}
    for u in S.one_cells:
        a, b = S.src1(u), S.dst1(u)
        F = FiniteFunctor(cats[a], cats[b],
                          {f: S.comp1(u, f) for f in cats[a].objects},
                          {(h, al): (h, S.hcomp(S.id2(u), al))
                           for (h, al) in cats[a].morphisms}, check=False)
        ones[u] = FMap(chordate(cats[a]), chordate(cats[b]), F, check=False)
    for be in S.two_cells:
        u, v = S.src2(be), S.dst2(be)
        a, b = S.src1(u), S.dst1(u)
        comps = {}
        for f in cats[a].objects:
            h = S.id1(S.src1(f))
            cell = S.hcomp(be, S.id2(f))
            if w != "l":
                raise CategoryError("colax slice weights need invertible "
                                    "2-cells; use locally discrete shapes")
            comps[f] = (h, cell)
        twos[be] = FCell(ones[u], ones[v], NaturalTransformation(
            ones[u].loose, ones[v].loose, comps))
    return FFunctor(S, AMBIENT, {b: chordate(cats[b]) for b in S.objects},
                    ones, twos, check=False)


def terminal_weight(shape):
    T = chordate(fc.terminal())
    return FFunctor(shape, AMBIENT, {x: T for x in shape.objects},
                    {f: AMBIENT.id1(T) for f in shape.one_cells},
                    {a: AMBIENT.id2(AMBIENT.id1(T)) for a in shape.two_cells},
                    check=False)


def apex_isomorphic(r1, r2):
    """Isomorphism of apex FObjects (tight parts matched)."""
    A, B = r1.apex, r2.apex
    if len(A.tight_objects) != len(B.tight_objects):
        return False
    inv_b = {}
    for y in B.loose.objects:
        inv_b.setdefault((fc.object_invariant(B.loose, y),
                          B.is_tight_object(y)), []).append(y)
    choices = {}
    for x in A.loose.objects:
        c = inv_b.get((fc.object_invariant(A.loose, x),
                       A.is_tight_object(x)))
        if not c:
            return False
        choices[x] = c
    if len(A.loose.objects) != len(B.loose.objects) or \
            len(A.loose.morphisms) != len(B.loose.morphisms):
        return False
    for _ in fc.iter_functors(A.loose, B.loose, None, object_choices=choices,
                              injective=True, limit=1):
        return True
    return False


__all__ = [
    "MarkedTwoCategory", "DottedFCategory", "LimitResult", "NotAModelWarning",
    "NotACone", "weighted_limit_end", "marked_lax_limit", "dotted_lax_limit",
    "w_limit_of_arrow", "check_limit_universal",
    "check_weighted_limit_universal", "exponentiate", "lax_slice_weight",
    "terminal_weight", "apex_isomorphic", "diagram", "loose_arrow_shape",
    "LimitProblem",
]


class LimitProblem:
    """A limit to compute: ``kind`` is ``"weighted"``, ``"marked"`` or
    ``"dotted"``; ``shape`` is an F-category, a marked shape or a dotted
    shape accordingly."""

    def __init__(self, kind, shape, diagram, weight=None, w="l", name=None):
        self.kind = kind
        self.shape = shape
        self.diagram = diagram
        self.weight = weight
        self.w = w
        self.name = name

    def __repr__(self):
        return f"<LimitProblem {self.name or self.kind}>"

    def solve(self, bound=fc.DEFAULT_BOUND):
        if self.kind == "weighted":
            return weighted_limit_end(self.weight, self.diagram, bound)
        if self.kind == "marked":
            return marked_lax_limit(self.shape, self.diagram, self.w, bound)
        return dotted_lax_limit(self.shape, self.diagram, self.w, bound)


# -- limits of loose arrows between models, computed pointwise ------------------------

class PointwiseLimit:
    """The functor ``L`` with its universal cone: strict transformations
    ``eta_A: L ⇒ M_A``, ``eta_B: L ⇒ M_B`` and the modification ``eta_f``
    relating them through the loose arrow; ``limits[T]`` is the limit
    computed at ``T``."""

    def __init__(self, functor, eta_A, eta_B, eta_f, limits, w):
        self.functor = functor
        self.eta_A = eta_A
        self.eta_B = eta_B
        self.eta_f = eta_f
        self.limits = limits
        self.w = w

    def __repr__(self):
        return f"<PointwiseLimit w={self.w} on {self.functor.source!r}>"


def pointwise_model_limit(M_A, M_B, phi, w="c", sketch=None,
                          bound=fc.DEFAULT_BOUND):
    """Limit of the loose arrow ``phi: M_A ⇒ M_B`` among F-functors
    ``T → 𝔽`` and loose ``(s, w)``-transformations, built objectwise.

    At each ``T`` the dotted limit of ``phi_T`` is taken with the dual
    weakness of ``w``; ``L_t`` and ``L_γ`` are the unique maps and 2-cells
    induced into those limits.  When ``sketch`` is given and an input is
    not a model, :class:`NotAModelWarning` is issued and the construction
    still runs.
    """
    if w not in ("c", "l"):
        raise ValueError("w must be 'c' or 'l'")
    if tuple(phi.weakness) != ("s", w):
        raise ValueError(f"expected an (s, {w}) transformation")
    if sketch is not None:
        from .sketch import check_model
        for M in (M_A, M_B):
            report = check_model(M, sketch, bound=bound)
            if not report.valid:
                warnings.warn(f"input is not a model: {report.failures[0]}",
                              NotAModelWarning, stacklevel=2)
    T = M_A.source
    K = AMBIENT
    limit_w = DUAL[w]
    shape = loose_arrow_shape()
    res = {}
    for x in T.objects:
        D = diagram(shape.shape, {"A": M_A.ob[x], "B": M_B.ob[x]},
                    {"f": phi.components[x]})
        res[x] = dotted_lax_limit(shape, D, limit_w, bound)
    ob = {x: res[x].apex for x in T.objects}
    one = {}
    for t in T.one_cells:
        a, b = T.src1(t), T.dst1(t)
        r1, r2 = res[a], res[b]
        eA, eB, ef = r1.legs["A"], r1.legs["B"], r1.cells["f"]
        legs = {"A": K.comp1(M_A.one[t], eA), "B": K.comp1(M_B.one[t], eB)}
        across = whisker_r(K, phi.cells[t], eA)
        pushed = whisker_l(K, M_B.one[t], ef)
        theta = K.vcomp(pushed, across) if w == "c" else \
            K.vcomp(across, pushed)
        cells = {"f": theta, "1_A": K.id2(legs["A"]),
                 "1_B": K.id2(legs["B"])}
        one[t] = r2.factor(ob[a], legs, cells)
    two = {}
    for g in T.two_cells:
        t, t2 = T.src2(g), T.dst2(g)
        a, b = T.src1(t), T.dst1(t)
        r1 = res[a]
        comps = {"A": whisker_r(K, M_A.two[g], r1.legs["A"]),
                 "B": whisker_r(K, M_B.two[g], r1.legs["B"])}
        two[g] = res[b].factor_cell(one[t], one[t2], comps)
    L = FFunctor(T, K, ob, one, two, name="pointwise-limit")
    etas = []
    for key, M in (("A", M_A), ("B", M_B)):
        comps = {x: res[x].legs[key] for x in T.objects}
        cells = {t: K.id2(K.comp1(M.one[t], comps[T.src1(t)]))
                 for t in T.one_cells}
        etas.append(LooseTransformation(L, M, comps, cells, ("s", w)))
    eta_A, eta_B = etas
    pushed = compose_transformations(phi, eta_A)
    comps = {x: res[x].cells["f"] for x in T.objects}
    if limit_w == "l":
        eta_f = Modification(pushed, eta_B, comps)
    else:
        eta_f = Modification(eta_B, pushed, comps)
    return PointwiseLimit(L, eta_A, eta_B, eta_f, res, w)
