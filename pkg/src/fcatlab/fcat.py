"""Full embeddings, enhanced 2-categories and loose w-natural transformations.

Two kinds of 2-category share one small interface (``src1``, ``comp1``,
``vcomp``, ``hcomp`` ...):

* :class:`FiniteFCategory`, given by finite tables of 1- and 2-cells;
* :class:`FAmbient`, the ambient 𝔽 whose objects are full embeddings
  (:class:`FObject`), whose 1-cells are functors between loose parts
  (:class:`FMap`, tight when they restrict to the tight parts) and whose
  2-cells are natural transformations (:class:`FCell`).

``Cat`` is the chordate part of 𝔽: :func:`chordate` turns a category into
an FObject whose tight and loose parts coincide.

Weakness is one of ``"s"``, ``"p"``, ``"l"``, ``"c"``.  A lax 2-component
at ``f: X → Y`` is a 2-cell ``N(f)·φ_X ⇒ φ_Y·M(f)``; colax reverses it.
"""

from __future__ import annotations

from . import fincat as fc
from .fincat import (CategoryError, FiniteCategory, FiniteFunctor,
                     NotComposable, ShapeMismatch,
                     label, ordered, violation)

WEAKNESS = ("s", "p", "l", "c")
DUAL = {"s": "s", "p": "p", "l": "c", "c": "l"}


class InvalidTransformation(CategoryError):
    pass


def dual_weakness(w):
    return DUAL[w]


def weaker_or_equal(w1, w2):
    """Whether a ``w1``-cell is in particular a ``w2``-cell."""
    if w1 == w2 or w1 == "s":
        return True
    return w1 == "p" and w2 in ("l", "c")


# -- the base F -----------------------------------------------------------

class FObject:
    """A full embedding ``tight ↪ loose``."""

    def __init__(self, tight, loose, embedding=None, name=None, check=True):
        self.tight = tight
        self.loose = loose
        if embedding is None:
            embedding = fc.inclusion(tight, loose)
        self.embedding = embedding
        self.name = name
        self.tight_objects = frozenset(embedding.ob.values())
        self._back = None
        if check and not fc.is_full_embedding(embedding):
            raise CategoryError("embedding is not a full embedding")

    @classmethod
    def from_subset(cls, loose, tight_objects, name=None):
        return cls(fc.full_subcategory(loose, tight_objects), loose,
                   name=name, check=False)

    def __eq__(self, other):
        if not isinstance(other, FObject):
            return NotImplemented
        return self.loose == other.loose and \
            self.tight_objects == other.tight_objects

    def __hash__(self):
        return hash((self.loose, self.tight_objects))

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return (f"<FObject{n}: {len(self.tight_objects)} tight of "
                f"{len(self.loose.objects)} objects>")

    def is_chordate(self):
        return len(self.tight_objects) == len(self.loose.objects)

    def embedding_inverse(self):
        """Inverse of the embedding on objects and morphisms."""
        if self._back is None:
            e = self.embedding
            self._back = ({v: k for k, v in e.ob.items()},
                          {v: k for k, v in e.mor.items()})
        return self._back

    def is_tight_object(self, x):
        return x in self.tight_objects

    def violations(self):
        out = [dict(v, kind="tight-" + v["kind"])
               for v in self.tight.violations(first=True)]
        out += [dict(v, kind="loose-" + v["kind"])
                for v in self.loose.violations(first=True)]
        if out:
            return out
        e = self.embedding
        out += [dict(v, kind="embedding-" + v["kind"])
                for v in e.violations(first=True)]
        if out:
            return out
        if not fc.is_injective_on_objects(e):
            out.append(violation("embedding-not-injective", ()))
        if not fc.is_fully_faithful(e):
            out.append(violation("embedding-not-full", ()))
        return out

    def to_json(self):
        return {"tight_cat": self.tight.to_json(),
                "loose_cat": self.loose.to_json(),
                "embedding": {"objects": {label(k): label(v) for k, v in
                                          self.embedding.ob.items()},
                              "morphisms": {label(k): label(v) for k, v in
                                            self.embedding.mor.items()}}}

    @classmethod
    def from_json(cls, doc):
        tight = FiniteCategory.from_json(doc["tight_cat"])
        loose = FiniteCategory.from_json(doc["loose_cat"])
        emb = doc.get("embedding")
        if emb is None:
            return cls(tight, loose)
        return cls(tight, loose, FiniteFunctor(tight, loose, emb["objects"],
                                               emb["morphisms"]))


def chordate(cat, name=None):
    """The FObject ``cat ↪ cat`` (every object tight)."""
    return FObject(cat, cat, fc.identity_functor(cat),
                   name=name or cat.name, check=False)


def loose_only(cat, name=None):
    """The FObject ``∅ ↪ cat``."""
    return FObject.from_subset(cat, (), name=name)


class FMap:
    """A 1-cell of 𝔽: a functor between loose parts.

    It is tight (a morphism of F) when it sends tight objects to tight
    objects; ``tight`` is then the induced functor on tight parts, so the
    square ``embedding · tight = loose · embedding`` commutes.
    """

    def __init__(self, source, target, loose, tight=None, check=True):
        self.source = source
        self.target = target
        self.loose = loose
        self._tight = tight
        self._is_tight = None if tight is None else True
        if check:
            bad = self.violations()
            if bad:
                raise CategoryError(f"invalid FMap: {bad[0]}", bad[0])

    @property
    def is_tight(self):
        if self._is_tight is None:
            ob, emb = self.loose.ob, self.source.embedding.ob
            self._is_tight = all(self.target.is_tight_object(ob[emb[a]])
                                 for a in self.source.tight.objects)
        return self._is_tight

    @property
    def tight(self):
        """The induced functor on tight parts, or ``None``."""
        if self._tight is None and self.is_tight:
            self._tight = _restrict(self.source, self.target, self.loose)
        return self._tight

    def violations(self):
        out = [dict(v, kind="loose-" + v["kind"])
               for v in self.loose.violations(first=True)]
        if self.loose.source != self.source.loose or \
                self.loose.target != self.target.loose:
            out.append(violation("loose-endpoints", ()))
        if out or self.tight is None:
            return out
        out += [dict(v, kind="tight-" + v["kind"])
                for v in self.tight.violations(first=True)]
        if out:
            return out
        left = self.tight.then(self.target.embedding)
        right = self.source.embedding.then(self.loose)
        if left.key != right.key:
            out.append(violation("square", (), "square does not commute"))
        return out

    def __eq__(self, other):
        if not isinstance(other, FMap):
            return NotImplemented
        return self.loose.key == other.loose.key and \
            self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.loose.key)

    def __repr__(self):
        kind = "tight" if self.is_tight else "loose"
        return f"FMap[{kind}]({self.loose!r})"

    def then(self, other):
        return FMap(self.source, other.target, self.loose.then(other.loose),
                    check=False)


def _restrict(source, target, loose):
    je = source.embedding
    back_ob, back_mor = target.embedding_inverse()
    return FiniteFunctor(
        source.tight, target.tight,
        {a: back_ob[loose.ob[je.ob[a]]] for a in source.tight.objects},
        {m: back_mor[loose.mor[je.mor[m]]] for m in source.tight.morphisms},
        check=False)


class FCell:
    """A 2-cell of 𝔽: a natural transformation between loose parts."""

    def __init__(self, source, target, transformation):
        self.source = source
        self.target = target
        self.transformation = transformation

    @property
    def components(self):
        return self.transformation.components

    def __eq__(self, other):
        if not isinstance(other, FCell):
            return NotImplemented
        return self.transformation.key == other.transformation.key and \
            self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.transformation.key)

    def __repr__(self):
        return f"FCell({self.transformation!r})"


# -- the ambient 𝔽 ---------------------------------------------------------

class FAmbient:
    """The enhanced 2-category 𝔽 of full embeddings, computed on demand."""

    name = "F"

    def __init__(self, bound=fc.DEFAULT_BOUND):
        self.bound = bound
        self._homs = {}

    # structure
    def src1(self, f):
        return f.source

    def dst1(self, f):
        return f.target

    def src2(self, a):
        return a.source

    def dst2(self, a):
        return a.target

    def is_tight(self, f):
        return f.is_tight

    def id1(self, x):
        return FMap(x, x, fc.identity_functor(x.loose), check=False)

    def id2(self, f):
        return FCell(f, f, fc.identity_transformation(f.loose))

    def comp1(self, g, f):
        if f.target != g.source:
            raise NotComposable("1-cells not composable")
        return f.then(g)

    def composite_is(self, g, f, h):
        """Whether ``g∘f`` equals ``h`` (without building ``g∘f``)."""
        return f.target == g.source and f.source == h.source and \
            g.target == h.target and \
            fc.compose_key(f.loose, g.loose) == h.loose.key

    def vcomp(self, b, a):
        if a.target != b.source:
            raise NotComposable("2-cells not vertically composable")
        return FCell(a.source, b.target,
                     a.transformation.then(b.transformation))

    def hcomp(self, b, a):
        if a.source.target != b.source.source:
            raise NotComposable("2-cells not horizontally composable")
        return FCell(self.comp1(b.source, a.source),
                     self.comp1(b.target, a.target),
                     fc.horizontal(b.transformation, a.transformation))

    def is_identity2(self, a):
        return a.source == a.target and a.transformation.is_identity()

    def inverse2(self, a):
        if not a.transformation.is_invertible():
            return None
        return FCell(a.target, a.source, a.transformation.inverse())

    # enumeration
    def one_cells(self, x, y):
        return [FMap(x, y, F, check=False)
                for F in fc.enumerate_functors(x.loose, y.loose, self.bound)]

    def two_cells(self, f, g, choices=None):
        return [FCell(f, g, t) for t in fc.enumerate_transformations(
            f.loose, g.loose, self.bound, choices)]

    def hom(self, x, y):
        key = (x, y)
        if key not in self._homs:
            self._homs[key] = hom_ambient_f(x, y, self.bound)
        return self._homs[key]


def hom_ambient_f(A, B, bound=fc.DEFAULT_BOUND):
    """The hom FObject ``𝔽(A, B)``.

    Loose part: functors ``A_λ → B_λ`` and natural transformations.  Tight
    part: the full subcategory of FMaps, i.e. functors restricting to tight
    parts; ``payload`` records the FMap of each tight object.
    """
    loose = fc.functor_category(A.loose, B.loose, bound)
    tight_ids = []
    fmaps = {}
    for i in loose.objects:
        F = FMap(A, B, loose.payload[i], check=False)
        if F.is_tight:
            tight_ids.append(i)
            fmaps[i] = F
    hom = FObject.from_subset(loose, tight_ids)
    hom.tight.payload = {**hom.tight.payload, **fmaps}
    return hom


def fmap_from_json(doc, source, target):
    loose = FiniteFunctor(source.loose, target.loose, doc["objects"],
                          doc["morphisms"])
    f = FMap(source, target, loose)
    if doc.get("tight", False) and not f.is_tight:
        raise CategoryError("map declared tight does not restrict")
    return f


# -- finite F-categories ----------------------------------------------------

class FiniteFCategory:
    """A finite 2-category with a class of tight 1-cells.

    ``one_cells`` maps a 1-cell id to ``(source, target)``; ``two_cells`` a
    2-cell id to ``(source 1-cell, target 1-cell)``.  ``comp1[(g, f)]`` is
    ``g∘f``, ``vcomp[(b, a)]`` is the vertical ``b·a`` and ``hcomp[(b, a)]``
    the horizontal ``b*a``.
    """

    def __init__(self, objects, one_cells, two_cells, id1, id2, comp1, vcomp,
                 hcomp, tight=None, name=None, check=True):
        self.name = name
        self.objects = tuple(ordered(set(objects)))
        if not isinstance(one_cells, dict):
            one_cells = {f: (s, d) for f, s, d in one_cells}
        if not isinstance(two_cells, dict):
            two_cells = {a: (s, d) for a, s, d in two_cells}
        self.one_cells = tuple(ordered(one_cells))
        self.two_cells = tuple(ordered(two_cells))
        self._src1 = {f: v[0] for f, v in one_cells.items()}
        self._dst1 = {f: v[1] for f, v in one_cells.items()}
        self._src2 = {a: v[0] for a, v in two_cells.items()}
        self._dst2 = {a: v[1] for a, v in two_cells.items()}
        self._id1 = dict(id1)
        self._id2 = dict(id2)
        self._comp1 = dict(comp1)
        self._vcomp = dict(vcomp)
        self._hcomp = dict(hcomp)
        self.tight = frozenset(self.one_cells if tight is None else tight)
        self._hom = {}
        self._cells_between = {}
        for a in self.two_cells:
            key = (self._src2[a], self._dst2[a])
            self._cells_between.setdefault(key, []).append(a)
        self._out1 = {}
        for f in self.one_cells:
            self._out1.setdefault(self._src1[f], []).append(f)
        if check:
            bad = self.violations(first=True)
            if bad:
                raise CategoryError(f"invalid F-category: {bad[0]}", bad[0])

    # structure
    def src1(self, f):
        return self._src1[f]

    def dst1(self, f):
        return self._dst1[f]

    def src2(self, a):
        return self._src2[a]

    def dst2(self, a):
        return self._dst2[a]

    def is_tight(self, f):
        return f in self.tight

    def id1(self, x):
        return self._id1[x]

    def id2(self, f):
        return self._id2[f]

    def comp1(self, g, f):
        if self._dst1[f] != self._src1[g]:
            raise NotComposable(f"{label(g)} after {label(f)}", (g, f))
        return self._comp1[(g, f)]

    def vcomp(self, b, a):
        if self._dst2[a] != self._src2[b]:
            raise NotComposable(f"{label(b)} below {label(a)}", (b, a))
        return self._vcomp[(b, a)]

    def hcomp(self, b, a):
        if self._dst1[self._src2[a]] != self._src1[self._src2[b]]:
            raise NotComposable(f"{label(b)} beside {label(a)}", (b, a))
        return self._hcomp[(b, a)]

    def is_identity2(self, a):
        return self._id2[self._src2[a]] == a

    def inverse2(self, a):
        s, d = self._src2[a], self._dst2[a]
        for b in self._cells_between.get((d, s), ()):
            if self._vcomp[(b, a)] == self._id2[s] and \
                    self._vcomp[(a, b)] == self._id2[d]:
                return b
        return None

    def one_cells_between(self, x, y):
        return [f for f in self._out1.get(x, ()) if self._dst1[f] == y]

    def one_cells_from(self, x):
        return list(self._out1.get(x, ()))

    def two_cells_between(self, f, g):
        return list(self._cells_between.get((f, g), ()))

    def two_cells(self, f, g, choices=None):
        return self.two_cells_between(f, g)

    def one_cells_list(self, x, y):
        return self.one_cells_between(x, y)

    def hom(self, x, y):
        if (x, y) not in self._hom:
            cells = self.one_cells_between(x, y)
            keep = set(cells)
            mors = [(a, self._src2[a], self._dst2[a]) for a in self.two_cells
                    if self._src2[a] in keep]
            names = {a for a, _, _ in mors}
            table = {k: v for k, v in self._vcomp.items()
                     if k[0] in names and k[1] in names}
            loose = FiniteCategory(cells, mors,
                                   {f: self._id2[f] for f in cells}, table,
                                   check=False)
            self._hom[(x, y)] = FObject.from_subset(
                loose, [f for f in cells if f in self.tight])
        return self._hom[(x, y)]

    def underlying_category(self, tight_only=False):
        """The 1-category of objects and (tight) 1-cells."""
        cells = [f for f in self.one_cells
                 if not tight_only or f in self.tight]
        keep = set(cells)
        return FiniteCategory(
            self.objects, [(f, self._src1[f], self._dst1[f]) for f in cells],
            self._id1, {k: v for k, v in self._comp1.items()
                        if k[0] in keep and k[1] in keep}, check=False)

    def is_chordate(self):
        return len(self.tight) == len(self.one_cells)

    def is_locally_discrete(self):
        return len(self.two_cells) == len(self.one_cells)

    def tight_part(self, name=None):
        """The sub-F-category of tight 1-cells (all of them tight)."""
        cells = [f for f in self.one_cells if f in self.tight]
        keep = set(cells)
        twos = [a for a in self.two_cells
                if self._src2[a] in keep and self._dst2[a] in keep]
        tk = set(twos)
        return FiniteFCategory(
            self.objects, {f: (self._src1[f], self._dst1[f]) for f in cells},
            {a: (self._src2[a], self._dst2[a]) for a in twos}, self._id1,
            {f: self._id2[f] for f in cells},
            {k: v for k, v in self._comp1.items()
             if k[0] in keep and k[1] in keep},
            {k: v for k, v in self._vcomp.items()
             if k[0] in tk and k[1] in tk},
            {k: v for k, v in self._hcomp.items()
             if k[0] in tk and k[1] in tk},
            tight=cells, name=name or (self.name and self.name + "_tight"),
            check=False)

    def co(self):
        """The 2-cell dual: every 2-cell reversed."""
        return FiniteFCategory(
            self.objects, {f: (self._src1[f], self._dst1[f])
                           for f in self.one_cells},
            {a: (self._dst2[a], self._src2[a]) for a in self.two_cells},
            self._id1, self._id2, self._comp1,
            {(a, b): v for (b, a), v in self._vcomp.items()}, self._hcomp,
            tight=self.tight, name=self.name and self.name + "^co",
            check=False)

    def with_tight(self, tight, name=None, check=True):
        return FiniteFCategory(
            self.objects, {f: (self._src1[f], self._dst1[f])
                           for f in self.one_cells},
            {a: (self._src2[a], self._dst2[a]) for a in self.two_cells},
            self._id1, self._id2, self._comp1, self._vcomp, self._hcomp,
            tight=tight, name=name or self.name, check=check)

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return (f"<FiniteFCategory{n}: {len(self.objects)} objects, "
                f"{len(self.one_cells)} 1-cells ({len(self.tight)} tight), "
                f"{len(self.two_cells)} 2-cells>")

    # validation
    def violations(self, first=False):
        """Exhaustive check of the strict 2-category axioms and the
        tightness discipline."""
        out = []

        def report(*args):
            out.append(violation(*args))
            return first

        base = FiniteCategory(
            self.objects,
            [(f, self._src1[f], self._dst1[f]) for f in self.one_cells],
            self._id1, self._comp1, check=False)
        for v in base.violations(first):
            out.append(dict(v, kind="1-cell-" + v["kind"]))
            if first:
                return out
        if out:
            return out
        for a in self.two_cells:
            s, d = self._src2[a], self._dst2[a]
            if s not in self._src1 or d not in self._src1 or \
                    self._src1[s] != self._src1[d] or \
                    self._dst1[s] != self._dst1[d]:
                if report("2-cell-type", (a,)):
                    return out
        if out:
            return out
        for x in self.objects:
            for y in self.objects:
                loose = self.hom(x, y).loose
                for v in loose.violations(first):
                    out.append(dict(v, kind="vertical-" + v["kind"]))
                    if first:
                        return out
        if out:
            return out
        for f in self.one_cells:
            for g in self._out1.get(self._dst1[f], ()):
                gf = self._comp1[(g, f)]
                if self._hcomp.get((self._id2[g], self._id2[f])) != \
                        self._id2[gf]:
                    if report("hcomp-identity", (g, f)):
                        return out
        for a in self.two_cells:
            f, f2 = self._src2[a], self._dst2[a]
            for b in self.two_cells:
                g, g2 = self._src2[b], self._dst2[b]
                if self._src1[g] != self._dst1[f]:
                    continue
                ba = self._hcomp.get((b, a))
                if ba is None or ba not in self._src2 or \
                        self._src2[ba] != self._comp1[(g, f)] or \
                        self._dst2[ba] != self._comp1[(g2, f2)]:
                    if report("hcomp-type", (b, a)):
                        return out
        if out:
            return out
        for a in self.two_cells:
            x = self._src1[self._src2[a]]
            y = self._dst1[self._src2[a]]
            if self._hcomp[(self._id2[self._id1[y]], a)] != a:
                if report("hcomp-left-unit", (a,)):
                    return out
            if self._hcomp[(a, self._id2[self._id1[x]])] != a:
                if report("hcomp-right-unit", (a,)):
                    return out
        for a in self.two_cells:
            for a2 in self._cells_from_cell(a):
                for b in self.two_cells:
                    if self._src1[self._src2[b]] != self._dst1[self._src2[a]]:
                        continue
                    for b2 in self._cells_from_cell(b):
                        lhs = self._hcomp[(self._vcomp[(b2, b)],
                                           self._vcomp[(a2, a)])]
                        rhs = self._vcomp[(self._hcomp[(b2, a2)],
                                           self._hcomp[(b, a)])]
                        if lhs != rhs:
                            if report("interchange", (b2, b, a2, a)):
                                return out
        for a in self.two_cells:
            for b in self.two_cells:
                if self._src1[self._src2[b]] != self._dst1[self._src2[a]]:
                    continue
                ba = self._hcomp[(b, a)]
                for c in self.two_cells:
                    if self._src1[self._src2[c]] != self._dst1[self._src2[b]]:
                        continue
                    if self._hcomp[(self._hcomp[(c, b)], a)] != \
                            self._hcomp[(c, ba)]:
                        if report("hcomp-associativity", (c, b, a)):
                            return out
        for x in self.objects:
            if self._id1[x] not in self.tight:
                if report("tight-identity", (x,)):
                    return out
        for f in self.tight:
            for g in self._out1.get(self._dst1[f], ()):
                if g in self.tight and self._comp1[(g, f)] not in self.tight:
                    if report("tight-composition", (g, f)):
                        return out
        return out

    def _cells_from_cell(self, a):
        d = self._dst2[a]
        return [b for b in self.two_cells if self._src2[b] == d]

    def is_valid(self):
        return not self.violations(first=True)

    def to_json(self):
        homs = {}
        for x in self.objects:
            for y in self.objects:
                h = self.hom(x, y)
                homs[f"{label(x)},{label(y)}"] = {
                    "tight": [label(f) for f in ordered(h.tight_objects)],
                    "loose_cat": h.loose.to_json()}
        return {
            "objects": [label(x) for x in self.objects],
            "one_cells": [{"id": label(f), "src": label(self._src1[f]),
                           "dst": label(self._dst1[f]),
                           "tight": f in self.tight} for f in self.one_cells],
            "two_cells": [{"id": label(a), "src": label(self._src2[a]),
                           "dst": label(self._dst2[a])}
                          for a in self.two_cells],
            "units": {label(x): label(self._id1[x]) for x in self.objects},
            "identities": {label(f): label(self._id2[f])
                           for f in self.one_cells},
            "comp1": [[label(g), label(f), label(v)]
                      for (g, f), v in sorted(self._comp1.items(),
                                              key=fc.sort_key)],
            "vcomp": [[label(b), label(a), label(v)]
                      for (b, a), v in sorted(self._vcomp.items(),
                                              key=fc.sort_key)],
            "hcomp": [[label(b), label(a), label(v)]
                      for (b, a), v in sorted(self._hcomp.items(),
                                              key=fc.sort_key)],
            "homs": homs,
        }

    @classmethod
    def from_json(cls, doc, check=True):
        return cls(
            doc["objects"],
            {c["id"]: (c["src"], c["dst"]) for c in doc["one_cells"]},
            {c["id"]: (c["src"], c["dst"]) for c in doc["two_cells"]},
            doc["units"], doc["identities"],
            {(g, f): v for g, f, v in doc["comp1"]},
            {(b, a): v for b, a, v in doc["vcomp"]},
            {(b, a): v for b, a, v in doc["hcomp"]},
            tight=[c["id"] for c in doc["one_cells"] if c.get("tight", True)],
            name=doc.get("name"), check=check)


def cell_id(f):
    return f"={f}" if isinstance(f, str) else ("=", f)


def locally_discrete(cat, tight=None, name=None, check=True):
    """A 1-category as an F-category with identity 2-cells only."""
    ids = {f: cell_id(f) for f in cat.morphisms}
    return FiniteFCategory(
        cat.objects, {f: (cat.src[f], cat.dst[f]) for f in cat.morphisms},
        {ids[f]: (f, f) for f in cat.morphisms}, cat.identities, ids,
        cat.table, {(ids[f], ids[f]): ids[f] for f in cat.morphisms},
        {(ids[g], ids[f]): ids[gf] for (g, f), gf in cat.table.items()},
        tight=tight, name=name or cat.name, check=check)


def locally_posetal(cat, order, tight=None, name=None, check=True):
    """Hom-categories are the preorders ``order`` (pairs ``(f, g)`` for a
    2-cell ``f ⇒ g``); reflexive-transitive closure is taken per hom."""
    rel = {(f, f) for f in cat.morphisms} | set(order)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True

    def cell(f, g):
        return cell_id(f) if f == g else (
            f"{f}=>{g}" if isinstance(f, str) and isinstance(g, str)
            else ("=>", f, g))

    twos = {cell(f, g): (f, g) for f, g in rel}
    vcomp = {}
    for (f, g) in rel:
        for (g2, h) in rel:
            if g == g2:
                vcomp[(cell(g, h), cell(f, g))] = cell(f, h)
    hcomp = {}
    for (f, f2) in rel:
        for (g, g2) in rel:
            if cat.src[g] == cat.dst[f]:
                pair = (cat.table[(g, f)], cat.table[(g2, f2)])
                hcomp[(cell(g, g2), cell(f, f2))] = cell(*pair)
                if pair not in rel:
                    raise CategoryError("composition is not monotone",
                                        violation("hcomp-type", (g, f)))
    return FiniteFCategory(
        cat.objects, {f: (cat.src[f], cat.dst[f]) for f in cat.morphisms},
        twos, cat.identities, {f: cell(f, f) for f in cat.morphisms},
        cat.table, vcomp, hcomp, tight=tight, name=name or cat.name,
        check=check)


class Co:
    """The 2-cell dual of an ambient (any object with the interface)."""

    def __init__(self, base):
        self.base = base
        self.name = getattr(base, "name", "") + "^co"

    def src2(self, a):
        return self.base.dst2(a)

    def dst2(self, a):
        return self.base.src2(a)

    def vcomp(self, b, a):
        return self.base.vcomp(a, b)

    def two_cells(self, f, g, choices=None):
        return self.base.two_cells(g, f)

    def inverse2(self, a):
        return self.base.inverse2(a)

    def __getattr__(self, attr):
        return getattr(self.base, attr)


def whisker_l(K, g, a):
    """``g * a``."""
    return K.hcomp(K.id2(g), a)


def whisker_r(K, a, f):
    """``a * f``."""
    return K.hcomp(a, K.id2(f))


def paste_vertical(K, b, a):
    """``b · a`` in a hom-category of ``K``."""
    return K.vcomp(b, a)


def paste_horizontal(K, b, a):
    """``b * a``."""
    return K.hcomp(b, a)


# -- F-functors -------------------------------------------------------------

class FFunctor:
    """A strict F-functor from a finite F-category into ``target``."""

    def __init__(self, source, target, objects, one_cells, two_cells,
                 name=None, check=True):
        self.source = source
        self.target = target
        self.ob = dict(objects)
        self.one = dict(one_cells)
        self.two = dict(two_cells)
        self.name = name
        if check:
            bad = self.violations(first=True)
            if bad:
                raise CategoryError(f"invalid F-functor: {bad[0]}", bad[0])

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return f"<FFunctor{n} on {self.source!r}>"

    def __eq__(self, other):
        if not isinstance(other, FFunctor):
            return NotImplemented
        return self.ob == other.ob and self.one == other.one and \
            self.two == other.two

    def __hash__(self):
        return hash(tuple(self.ob[x] for x in self.source.objects))

    def violations(self, first=False):
        S, K = self.source, self.target
        out = []

        def report(*args):
            out.append(violation(*args))
            return first

        for f in S.one_cells:
            img = self.one.get(f)
            if img is None or K.src1(img) != self.ob[S.src1(f)] or \
                    K.dst1(img) != self.ob[S.dst1(f)]:
                if report("1-cell-type", (f,)):
                    return out
        for a in S.two_cells:
            img = self.two.get(a)
            if img is None or K.src2(img) != self.one[S.src2(a)] or \
                    K.dst2(img) != self.one[S.dst2(a)]:
                if report("2-cell-type", (a,)):
                    return out
        if out:
            return out
        for x in S.objects:
            if self.one[S.id1(x)] != K.id1(self.ob[x]):
                if report("unit", (x,)):
                    return out
        for f in S.one_cells:
            if self.two[S.id2(f)] != K.id2(self.one[f]):
                if report("2-cell-unit", (f,)):
                    return out
            if f in S.tight and not K.is_tight(self.one[f]):
                if report("tightness", (f,)):
                    return out
        same = getattr(K, "composite_is", None) or \
            (lambda g, f, h: K.comp1(g, f) == h)
        for (g, f), gf in S._comp1.items():
            if not same(self.one[g], self.one[f], self.one[gf]):
                if report("composition", (g, f)):
                    return out
        # pairs of identity 2-cells are covered by the unit and
        # composition checks above
        for (b, a), ba in S._vcomp.items():
            if S.is_identity2(a) and S.is_identity2(b):
                continue
            if K.vcomp(self.two[b], self.two[a]) != self.two[ba]:
                if report("vertical", (b, a)):
                    return out
        for (b, a), ba in S._hcomp.items():
            if S.is_identity2(a) and S.is_identity2(b):
                continue
            if K.hcomp(self.two[b], self.two[a]) != self.two[ba]:
                if report("horizontal", (b, a)):
                    return out
        return out

    def is_valid(self):
        return not self.violations(first=True)

    def co(self):
        return FFunctor(self.source.co(), Co(self.target), self.ob, self.one,
                        self.two, name=self.name, check=False)

    def restrict(self, along):
        """``self · along`` for an F-functor ``along`` into the source."""
        return FFunctor(
            along.source, self.target,
            {x: self.ob[y] for x, y in along.ob.items()},
            {f: self.one[g] for f, g in along.one.items()},
            {a: self.two[b] for a, b in along.two.items()}, check=False)

    def then(self, other):
        """``other · self`` where ``other`` is an FFunctor on the target."""
        return other.restrict(self)


def identity_ffunctor(S):
    return FFunctor(S, S, {x: x for x in S.objects},
                    {f: f for f in S.one_cells}, {a: a for a in S.two_cells},
                    check=False)


def constant_ffunctor(S, K, obj):
    i = K.id1(obj)
    ii = K.id2(i)
    return FFunctor(S, K, {x: obj for x in S.objects},
                    {f: i for f in S.one_cells}, {a: ii for a in S.two_cells},
                    check=False)


# -- loose transformations ----------------------------------------------------

class LooseTransformation:
    """1-components plus 2-components of a loose (w', w)-transformation.

    ``cells`` may omit tight 1-cells when ``w' = s``; they are filled with
    identities.
    """

    def __init__(self, source, target, components, cells, weakness=("s", "l"),
                 name=None):
        self.source = source
        self.target = target
        self.weakness = tuple(weakness)
        self.components = dict(components)
        self.name = name
        K = target.target
        cells = dict(cells)
        S = source.source
        for f in S.one_cells:
            if f not in cells and (f in S.tight and self.weakness[0] == "s"
                                   or self.weakness[1] == "s"):
                a, b = S.src1(f), S.dst1(f)
                one = K.comp1(target.one[f], self.components[a])
                other = K.comp1(self.components[b], source.one[f])
                if one == other:
                    cells[f] = K.id2(one)
        self.cells = cells

    @property
    def w(self):
        return self.weakness[1]

    def __eq__(self, other):
        if not isinstance(other, LooseTransformation):
            return NotImplemented
        return self.components == other.components and \
            self.cells == other.cells

    def __hash__(self):
        return hash(tuple(self.components[x]
                          for x in self.source.source.objects))

    def __repr__(self):
        return f"<LooseTransformation {self.weakness}>"

    def co(self):
        w1, w2 = self.weakness
        return LooseTransformation(self.source.co(), self.target.co(),
                                   self.components, self.cells,
                                   (DUAL[w1], DUAL[w2]), name=self.name)


def restrict_transformation(phi, along):
    """``phi · along``: the transformation between the restricted
    functors, for an F-functor ``along`` into the common source."""
    return LooseTransformation(
        phi.source.restrict(along), phi.target.restrict(along),
        {x: phi.components[y] for x, y in along.ob.items()},
        {f: phi.cells[g] for f, g in along.one.items()}, phi.weakness,
        name=phi.name)


def cell_endpoints(K, M, N, phi_a, phi_b, f, orientation):
    """Source and target 1-cells of the 2-component at ``f: a → b``."""
    lax_src = K.comp1(N.one[f], phi_a)
    lax_dst = K.comp1(phi_b, M.one[f])
    if orientation == "c":
        return lax_dst, lax_src
    return lax_src, lax_dst


def composite_cell(K, M, N, phi, g, h, orientation):
    """The pasting prescribed for the 2-component at ``g∘h``."""
    if orientation == "c":
        return K.vcomp(whisker_l(K, N.one[g], phi[h]),
                       whisker_r(K, phi[g], M.one[h]))
    return K.vcomp(whisker_r(K, phi[g], M.one[h]),
                   whisker_l(K, N.one[g], phi[h]))


class NaturalityReport:
    def __init__(self, violations, tight):
        self.violations = violations
        self.tight = tight

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def __repr__(self):
        state = "valid" if self.valid else f"{len(self.violations)} violations"
        return f"<NaturalityReport {state}, tight={self.tight}>"

    def to_json(self):
        return {"valid": self.valid, "tight": self.tight,
                "violations": self.violations}


def check_loose_natural(phi, M=None, N=None, first=False):
    """Every violated coherence cell of ``phi`` as a loose (w', w)-natural
    transformation ``M ⇒ N``."""
    M = M or phi.source
    N = N or phi.target
    if M.source is not N.source and M.source.objects != N.source.objects:
        raise ShapeMismatch("functors have different sources")
    S, K = M.source, M.target
    w1, w = phi.weakness
    if w1 not in WEAKNESS or w not in WEAKNESS or not weaker_or_equal(w1, w):
        raise ShapeMismatch(f"bad weakness pair {phi.weakness}")
    orient = "c" if w == "c" else "l"
    out = []
    comps, cells = phi.components, phi.cells

    def report(*args):
        out.append(violation(*args))
        return first

    for x in S.objects:
        c = comps.get(x)
        if c is None or K.src1(c) != M.ob[x] or K.dst1(c) != N.ob[x]:
            if report("component-type", (x,)):
                return NaturalityReport(out, False)
    if out:
        return NaturalityReport(out, False)
    for f in S.one_cells:
        a = cells.get(f)
        want = cell_endpoints(K, M, N, comps[S.src1(f)], comps[S.dst1(f)], f,
                              orient)
        if a is None or (K.src2(a), K.dst2(a)) != want:
            if report("cell-type", (f,), "2-component missing or mistyped"):
                return NaturalityReport(out, False)
    if out:
        return NaturalityReport(out, False)
    for x in S.objects:
        if not K.is_identity2(cells[S.id1(x)]):
            if report("unit", (S.id1(x),)):
                return NaturalityReport(out, False)
    for (g, h), gh in S._comp1.items():
        if composite_cell(K, M, N, cells, g, h, orient) != cells[gh]:
            if report("composition", (g, h)):
                return NaturalityReport(out, False)
    for al in S.two_cells:
        f, f2 = S.src2(al), S.dst2(al)
        a, b = S.src1(f), S.dst1(f)
        lhs_m = whisker_l(K, comps[b], M.two[al])
        rhs_n = whisker_r(K, N.two[al], comps[a])
        if orient == "c":
            ok = K.vcomp(cells[f2], lhs_m) == K.vcomp(rhs_n, cells[f])
        else:
            ok = K.vcomp(lhs_m, cells[f]) == K.vcomp(cells[f2], rhs_n)
        if not ok:
            if report("2-cell-naturality", (al,)):
                return NaturalityReport(out, False)
    for f in S.one_cells:
        tight_f = f in S.tight
        need = w1 if tight_f else w
        a = cells[f]
        if need == "s" and not K.is_identity2(a):
            kind = "tight-not-identity" if tight_f and w != "s" \
                else "not-identity"
            if report(kind, (f,)):
                return NaturalityReport(out, False)
        elif need == "p" and K.inverse2(a) is None:
            if report("not-invertible", (f,)):
                return NaturalityReport(out, False)
    tight = all(K.is_tight(comps[x]) for x in S.objects)
    return NaturalityReport(out, tight and not out)


class Modification:
    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __eq__(self, other):
        if not isinstance(other, Modification):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(tuple(sorted(map(hash, self.components.values()))))


def check_modification(m, first=False):
    """Failures of the modification axiom at each 1-cell."""
    phi, psi = m.source, m.target
    M, N = phi.source, phi.target
    S, K = M.source, M.target
    orient = "c" if phi.w == "c" else "l"
    out = []
    for x in S.objects:
        c = m.components.get(x)
        if c is None or K.src2(c) != phi.components[x] or \
                K.dst2(c) != psi.components[x]:
            out.append(violation("component-type", (x,)))
            if first:
                return out
    if out:
        return out
    for f in S.one_cells:
        a, b = S.src1(f), S.dst1(f)
        n_side = whisker_l(K, N.one[f], m.components[a])
        m_side = whisker_r(K, m.components[b], M.one[f])
        if orient == "c":
            ok = K.vcomp(n_side, phi.cells[f]) == K.vcomp(psi.cells[f], m_side)
        else:
            ok = K.vcomp(psi.cells[f], n_side) == K.vcomp(m_side, phi.cells[f])
        if not ok:
            out.append(violation("modification", (f,)))
            if first:
                return out
    return out


def identity_transformation(M, weakness=("s", "l")):
    S, K = M.source, M.target
    return LooseTransformation(
        M, M, {x: K.id1(M.ob[x]) for x in S.objects},
        {f: K.id2(M.one[f]) for f in S.one_cells}, weakness)


def compose_transformations(psi, phi):
    """Vertical composite ``psi · phi`` of loose transformations."""
    M, P = phi.source, psi.target
    S, K = M.source, M.target
    orient = "c" if phi.w == "c" else "l"
    comps = {x: K.comp1(psi.components[x], phi.components[x])
             for x in S.objects}
    cells = {}
    for f in S.one_cells:
        a, b = S.src1(f), S.dst1(f)
        first = whisker_r(K, psi.cells[f], phi.components[a])
        second = whisker_l(K, psi.components[b], phi.cells[f])
        if orient == "c":
            cells[f] = K.vcomp(first, second)
        else:
            cells[f] = K.vcomp(second, first)
    return LooseTransformation(M, P, comps, cells, phi.weakness)


def identity_modification(phi):
    K = phi.source.target
    return Modification(phi, phi, {x: K.id2(c)
                                   for x, c in phi.components.items()})


def classify_transformation(phi, M=None, N=None):
    """``"tight"``, ``"fit"`` or ``"loose"`` for a valid (s, w) transformation."""
    report = check_loose_natural(phi, M, N)
    if not report.valid or phi.weakness[0] != "s":
        raise InvalidTransformation("not a valid loose (s, w) transformation",
                                    report.violations[:1])
    K = (M or phi.source).target
    identities = all(K.is_identity2(a) for a in phi.cells.values())
    if identities and all(K.is_tight(c) for c in phi.components.values()):
        return "tight"
    if identities:
        return "fit"
    return "loose"


class F2Hom:
    """Three nested hom-categories ``tight ↪ fit ↪ loose``."""

    def __init__(self, tight, fit, loose, lower=None, upper=None, check=True):
        self.tight, self.fit, self.loose = tight, fit, loose
        self.lower = lower or fc.inclusion(tight, fit)
        self.upper = upper or fc.inclusion(fit, loose)
        if check and self.violations():
            raise CategoryError("not a pair of full embeddings",
                                self.violations()[0])

    def violations(self):
        out = []
        for name, e in (("lower", self.lower), ("upper", self.upper),
                        ("composite", self.lower.then(self.upper))):
            if not fc.is_full_embedding(e):
                out.append(violation("not-full-embedding", (name,)))
        return out


def postcompose_map(K, f, bound=fc.DEFAULT_BOUND, homs=None):
    """``𝔽(K, f): 𝔽(K, A) → 𝔽(K, B)`` for an FMap ``f: A → B``."""
    Ha, Hb = homs or (hom_ambient_f(K, f.source, bound),
                      hom_ambient_f(K, f.target, bound))
    A, B = Ha.loose, Hb.loose
    obs = {n: B.index[fc.compose_key(A.payload[n], f.loose)]
           for n in A.objects}
    mors = {}
    for m in A.morphisms:
        i, j, _ = m
        t = fc.whisker_left(f.loose, A.payload[m])
        mors[m] = B.transformation_index[(obs[i], obs[j], t.key)]
    return FMap(Ha, Hb, FiniteFunctor(A, B, obs, mors, check=False),
                check=False)


def precompose_map(f, K, bound=fc.DEFAULT_BOUND, homs=None):
    """``𝔽(f, K): 𝔽(B, K) → 𝔽(A, K)`` for an FMap ``f: A → B``."""
    Hb, Ha = homs or (hom_ambient_f(f.target, K, bound),
                      hom_ambient_f(f.source, K, bound))
    B, A = Hb.loose, Ha.loose
    obs = {n: A.index[fc.compose_key(f.loose, B.payload[n])]
           for n in B.objects}
    mors = {}
    for m in B.morphisms:
        i, j, _ = m
        t = fc.whisker_right(B.payload[m], f.loose)
        mors[m] = A.transformation_index[(obs[i], obs[j], t.key)]
    return FMap(Hb, Ha, FiniteFunctor(B, A, obs, mors, check=False),
                check=False)


def is_iso_fmap(f):
    """An isomorphism of 𝔽: bijective on loose parts, matching tight
    objects exactly."""
    if not fc.is_isomorphism(f.loose):
        return False
    image = {f.loose.ob[x] for x in f.source.tight_objects}
    return image == set(f.target.tight_objects)


def is_equivalence_fmap(f):
    """An equivalence in 𝔽: tight, with both components equivalences."""
    return f.is_tight and fc.is_equivalence(f.loose) and \
        fc.is_equivalence(f.tight)
