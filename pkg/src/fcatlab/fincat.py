"""Finite categories, functors and natural transformations.

Every category is given by a total composition table.  Identifiers may be
strings, integers or (nested) tuples of those; they are always ordered with
:func:`sort_key` so enumerations are reproducible.
"""

from __future__ import annotations

from itertools import product as _cartesian

DEFAULT_BOUND = 100_000


class CategoryError(ValueError):
    """Base class for malformed data; ``witness`` locates the problem."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidCategory(CategoryError):
    pass


class InvalidFunctor(CategoryError):
    pass


class NotComposable(CategoryError):
    pass


class ShapeMismatch(CategoryError):
    pass


class EnumerationBoundExceeded(RuntimeError):
    def __init__(self, bound, what="candidates"):
        super().__init__(f"more than {bound} {what}")
        self.bound = bound


def sort_key(x):
    if x is None:
        return (-1,)
    if isinstance(x, (bool, int)):
        return (0, int(x))
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(e) for e in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(sort_key(e) for e in x)))
    return (4, repr(x))


def ordered(xs):
    return sorted(xs, key=sort_key)


def label(x):
    """Canonical string form of an identifier."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label(e) for e in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(label(e) for e in ordered(x)) + "}"
    return str(x)


def violation(kind, at, detail=""):
    return {"kind": kind, "at": [label(a) for a in at], "detail": detail}


class FiniteCategory:
    """A finite category presented by its full composition table.

    ``morphisms`` maps an id to ``(source, target)`` (an iterable of
    ``(id, source, target)`` triples is also accepted); ``composition`` maps
    ``(g, f)`` to ``g∘f``.
    """

    def __init__(self, objects, morphisms, identities, composition,
                 name=None, check=True):
        if not isinstance(morphisms, dict):
            morphisms = {m: (s, d) for m, s, d in morphisms}
        self.name = name
        self.objects = tuple(ordered(set(objects)))
        self.morphisms = tuple(ordered(morphisms))
        self.src = {m: sd[0] for m, sd in morphisms.items()}
        self.dst = {m: sd[1] for m, sd in morphisms.items()}
        self.identities = dict(identities)
        self.table = dict(composition)
        self.payload = {}
        homs = {}
        for m in self.morphisms:
            homs.setdefault((self.src[m], self.dst[m]), []).append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._signature = None
        if check:
            bad = self.violations(first=True)
            if bad:
                raise InvalidCategory(f"invalid category: {bad[0]}", bad[0])

    # -- access ---------------------------------------------------------
    def hom(self, x, y):
        return self._homs.get((x, y), ())

    def identity(self, x):
        return self.identities[x]

    def compose(self, g, f):
        if self.dst[f] != self.src[g]:
            raise NotComposable(f"{label(g)} after {label(f)}", (g, f))
        return self.table[(g, f)]

    def compose_path(self, *arrows):
        """``compose_path(h, g, f)`` is ``h∘g∘f``."""
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            out = self.compose(g, out)
        return out

    def is_identity(self, m):
        return self.identities.get(self.src[m]) == m

    def composable_pairs(self):
        for f in self.morphisms:
            for g in self.morphisms_from(self.dst[f]):
                yield g, f

    def morphisms_from(self, x):
        return [m for m in self.morphisms if self.src[m] == x]

    def is_isomorphism(self, m):
        return self.inverse(m) is not None

    def inverse(self, m):
        x, y = self.src[m], self.dst[m]
        for n in self.hom(y, x):
            if self.table[(n, m)] == self.identities[x] and \
                    self.table[(m, n)] == self.identities[y]:
                return n
        return None

    def signature(self):
        if self._signature is None:
            self._signature = (
                self.objects,
                tuple((m, self.src[m], self.dst[m]) for m in self.morphisms),
                tuple((x, self.identities[x]) for x in self.objects),
                tuple(sorted(self.table.items(), key=sort_key)),
            )
        return self._signature

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return (f"<FiniteCategory{name}: {len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms>")

    # -- validation -----------------------------------------------------
    def violations(self, first=False):
        """Every failed axiom, each as a located witness."""
        out = []

        def report(*args):
            out.append(violation(*args))
            return first

        objs = set(self.objects)
        for m in self.morphisms:
            for end in (self.src[m], self.dst[m]):
                if end not in objs:
                    if report("unknown-object", (m, end)):
                        return out
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or i not in self.src:
                if report("identity-missing", (x,)):
                    return out
            elif self.src[i] != x or self.dst[i] != x:
                if report("identity-type", (x, i)):
                    return out
        for (g, f), gf in ordered(self.table.items()):
            if f not in self.src or g not in self.src or gf not in self.src:
                if report("unknown-morphism", (g, f, gf)):
                    return out
            elif self.dst[f] != self.src[g]:
                if report("spurious-composite", (g, f)):
                    return out
            elif self.src[gf] != self.src[f] or self.dst[gf] != self.dst[g]:
                if report("composite-type", (g, f, gf),
                          "composite has the wrong endpoints"):
                    return out
        if out:
            return out
        for g, f in self.composable_pairs():
            if (g, f) not in self.table:
                if report("missing-composite", (g, f)):
                    return out
        if out:
            return out
        for m in self.morphisms:
            i_src = self.identities[self.src[m]]
            i_dst = self.identities[self.dst[m]]
            if self.table[(m, i_src)] != m:
                if report("right-identity", (m, i_src)):
                    return out
            if self.table[(i_dst, m)] != m:
                if report("left-identity", (i_dst, m)):
                    return out
        out_homs = {}
        for m in self.morphisms:
            out_homs.setdefault(self.src[m], []).append(m)
        for f in self.morphisms:
            for g in out_homs.get(self.dst[f], ()):
                gf = self.table[(g, f)]
                for h in out_homs.get(self.dst[g], ()):
                    left = self.table[(h, gf)]
                    right = self.table[(self.table[(h, g)], f)]
                    if left != right:
                        if report("associativity", (h, g, f),
                                  f"{label(left)} != {label(right)}"):
                            return out
        return out

    def is_valid(self):
        return not self.violations(first=True)

    # -- serialisation --------------------------------------------------
    def to_json(self):
        return {
            "objects": [label(x) for x in self.objects],
            "morphisms": [{"id": label(m), "src": label(self.src[m]),
                           "dst": label(self.dst[m])} for m in self.morphisms],
            "compose": [{"g": label(g), "f": label(f), "gf": label(gf)}
                        for (g, f), gf in sorted(self.table.items(),
                                                 key=sort_key)],
            "identities": {label(x): label(self.identities[x])
                           for x in self.objects},
        }

    @classmethod
    def from_json(cls, doc, name=None, check=True):
        return cls(
            doc["objects"],
            [(m["id"], m["src"], m["dst"]) for m in doc["morphisms"]],
            doc["identities"],
            {(c["g"], c["f"]): c["gf"] for c in doc["compose"]},
            name=name or doc.get("name"), check=check)


def compose(cat, g, f):
    return cat.compose(g, f)


# -- builders -------------------------------------------------------------

def identity_id(x):
    return f"1_{x}" if isinstance(x, str) else ("1", x)


def discrete(objects, name=None):
    objects = list(objects)
    ids = {x: identity_id(x) for x in objects}
    return FiniteCategory(objects, [(ids[x], x, x) for x in objects], ids,
                          {(ids[x], ids[x]): ids[x] for x in objects},
                          name=name)


def empty():
    return discrete([], name="empty")


def terminal(obj="*"):
    return discrete([obj], name="terminal")


def preorder(objects, relation, name=None):
    """The thin category of the reflexive-transitive closure of ``relation``."""
    objects = ordered(set(objects))
    le = {(x, x) for x in objects} | set(relation)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True

    def arrow(a, b):
        if a == b:
            return identity_id(a)
        return f"{a}<{b}" if isinstance(a, str) and isinstance(b, str) \
            else ("le", a, b)

    mors = [(arrow(a, b), a, b) for (a, b) in le]
    table = {}
    for (a, b) in le:
        for (c, d) in le:
            if b == c:
                table[(arrow(c, d), arrow(a, b))] = arrow(a, d)
    return FiniteCategory(objects, mors, {x: arrow(x, x) for x in objects},
                          table, name=name)


def chain(n, name=None):
    objs = [str(i) for i in range(n)]
    return preorder(objs, [(objs[i], objs[i + 1]) for i in range(n - 1)],
                    name=name or f"chain{n}")


def walking_arrow():
    """``0 --a--> 1``."""
    return FiniteCategory(
        ["0", "1"], [("1_0", "0", "0"), ("1_1", "1", "1"), ("a", "0", "1")],
        {"0": "1_0", "1": "1_1"},
        {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1",
         ("a", "1_0"): "a", ("1_1", "a"): "a"}, name="walking-arrow")


def walking_iso():
    return FiniteCategory(
        ["0", "1"],
        [("1_0", "0", "0"), ("1_1", "1", "1"), ("u", "0", "1"),
         ("v", "1", "0")],
        {"0": "1_0", "1": "1_1"},
        {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1",
         ("u", "1_0"): "u", ("1_1", "u"): "u",
         ("v", "1_1"): "v", ("1_0", "v"): "v",
         ("v", "u"): "1_0", ("u", "v"): "1_1"}, name="walking-iso")


def parallel_pair(s="s", t="t"):
    return FiniteCategory(
        ["0", "1"], [("1_0", "0", "0"), ("1_1", "1", "1"),
                     (s, "0", "1"), (t, "0", "1")],
        {"0": "1_0", "1": "1_1"},
        {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1",
         (s, "1_0"): s, ("1_1", s): s, (t, "1_0"): t, ("1_1", t): t},
        name="parallel-pair")


def chaotic(objects, name=None):
    objects = list(objects)
    return preorder(objects, [(a, b) for a in objects for b in objects],
                    name=name)


def monoid(elements, multiply, unit, obj="*", name=None):
    """One-object category; ``multiply(g, f)`` is ``g∘f``."""
    elements = list(elements)
    return FiniteCategory(
        [obj], [(e, obj, obj) for e in elements], {obj: unit},
        {(g, f): multiply(g, f) for g in elements for f in elements},
        name=name)


def product(*cats, name=None):
    """Cartesian product; objects and morphisms are tuples."""
    objects = list(_cartesian(*(c.objects for c in cats)))
    mors = []
    for ms in _cartesian(*(c.morphisms for c in cats)):
        mors.append((ms, tuple(c.src[m] for c, m in zip(cats, ms)),
                     tuple(c.dst[m] for c, m in zip(cats, ms))))
    idents = {x: tuple(c.identities[o] for c, o in zip(cats, x))
              for x in objects}
    table = {}
    for g, s, _ in mors:
        for f, _, d in mors:
            if d == s:
                table[(g, f)] = tuple(c.table[(gi, fi)]
                                      for c, gi, fi in zip(cats, g, f))
    return FiniteCategory(objects, mors, idents, table, name=name,
                          check=False)


def opposite(cat):
    return FiniteCategory(
        cat.objects, [(m, cat.dst[m], cat.src[m]) for m in cat.morphisms],
        cat.identities, {(f, g): gf for (g, f), gf in cat.table.items()},
        name=f"{cat.name}^op" if cat.name else None, check=False)


def full_subcategory(cat, objects, name=None):
    keep = set(objects)
    mors = [(m, cat.src[m], cat.dst[m]) for m in cat.morphisms
            if cat.src[m] in keep and cat.dst[m] in keep]
    names = {m for m, _, _ in mors}
    sub = FiniteCategory(
        [x for x in cat.objects if x in keep], mors,
        {x: cat.identities[x] for x in keep},
        {k: v for k, v in cat.table.items() if k[0] in names and
         k[1] in names}, name=name, check=False)
    sub.payload = {k: v for k, v in cat.payload.items()
                   if k in keep or k in names}
    return sub


def relabel(cat, objects, morphisms, name=None):
    """Copy of ``cat`` with ids renamed by the two dictionaries."""
    return FiniteCategory(
        [objects[x] for x in cat.objects],
        [(morphisms[m], objects[cat.src[m]], objects[cat.dst[m]])
         for m in cat.morphisms],
        {objects[x]: morphisms[cat.identities[x]] for x in cat.objects},
        {(morphisms[g], morphisms[f]): morphisms[gf]
         for (g, f), gf in cat.table.items()}, name=name, check=False)


# -- functors -------------------------------------------------------------

class FiniteFunctor:
    def __init__(self, source, target, objects, morphisms, check=True):
        self.source = source
        self.target = target
        self.ob = dict(objects)
        self.mor = dict(morphisms)
        self._key = None
        if check:
            bad = self.violations(first=True)
            if bad:
                raise InvalidFunctor(f"invalid functor: {bad[0]}", bad[0])

    @property
    def key(self):
        if self._key is None:
            self._key = (tuple(self.ob[x] for x in self.source.objects),
                         tuple(self.mor[m] for m in self.source.morphisms))
        return self._key

    def __call__(self, m):
        return self.mor[m]

    def __eq__(self, other):
        if not isinstance(other, FiniteFunctor):
            return NotImplemented
        return self.key == other.key and self.source == other.source and \
            self.target == other.target

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        obs = ", ".join(f"{label(x)}->{label(self.ob[x])}"
                        for x in self.source.objects)
        return f"FiniteFunctor({obs})"

    def violations(self, first=False):
        A, B = self.source, self.target
        out = []
        for x in A.objects:
            if self.ob.get(x) not in B.identities:
                out.append(violation("object-map", (x,)))
                return out
        for m in A.morphisms:
            fm = self.mor.get(m)
            if fm not in B.src or B.src[fm] != self.ob[A.src[m]] or \
                    B.dst[fm] != self.ob[A.dst[m]]:
                out.append(violation("morphism-map", (m,)))
                return out
        for x in A.objects:
            if self.mor[A.identities[x]] != B.identities[self.ob[x]]:
                out.append(violation("identity", (x,)))
                if first:
                    return out
        for (g, f), gf in A.table.items():
            if B.table[(self.mor[g], self.mor[f])] != self.mor[gf]:
                out.append(violation("composition", (g, f)))
                if first:
                    return out
        return out

    def then(self, other):
        """``other ∘ self``."""
        if self.target != other.source:
            raise NotComposable("functor endpoints differ")
        return FiniteFunctor(
            self.source, other.target,
            {x: other.ob[y] for x, y in self.ob.items()},
            {m: other.mor[n] for m, n in self.mor.items()}, check=False)

    def image_objects(self):
        return set(self.ob.values())


def compose_key(F, G):
    """``(G ∘ F).key`` without building the composite."""
    obs, mors = F.key
    return (tuple(G.ob[y] for y in obs), tuple(G.mor[n] for n in mors))


def identity_functor(cat):
    return FiniteFunctor(cat, cat, {x: x for x in cat.objects},
                         {m: m for m in cat.morphisms}, check=False)


def compose_functors(G, F):
    return F.then(G)


def constant_functor(source, target, obj):
    i = target.identities[obj]
    return FiniteFunctor(source, target, {x: obj for x in source.objects},
                         {m: i for m in source.morphisms}, check=False)


def inclusion(sub, cat):
    return FiniteFunctor(sub, cat, {x: x for x in sub.objects},
                         {m: m for m in sub.morphisms})


def projection(prod, cats, index):
    return FiniteFunctor(prod, cats[index],
                         {x: x[index] for x in prod.objects},
                         {m: m[index] for m in prod.morphisms}, check=False)


def pairing(functors, target):
    """``<F_1, ..., F_n>`` into the product category ``target``."""
    src = functors[0].source
    return FiniteFunctor(
        src, target, {x: tuple(F.ob[x] for F in functors) for x in src.objects},
        {m: tuple(F.mor[m] for F in functors) for m in src.morphisms},
        check=False)


def _hom_images(F):
    A = F.source
    for x in A.objects:
        for y in A.objects:
            yield x, y, A.hom(x, y), {F.mor[m] for m in A.hom(x, y)}


def is_faithful(F):
    return all(len(img) == len(hom) for _, _, hom, img in _hom_images(F))


def is_full(F):
    B = F.target
    return all(len(img) == len(B.hom(F.ob[x], F.ob[y]))
               for x, y, _, img in _hom_images(F))


def is_fully_faithful(F):
    return is_full(F) and is_faithful(F)


def is_essentially_surjective(F):
    B = F.target
    image = F.image_objects()
    for y in B.objects:
        if y in image:
            continue
        if not any(B.is_isomorphism(m) for x in image for m in B.hom(x, y)):
            return False
    return True


def is_isomorphism(F):
    A, B = F.source, F.target
    if len(A.objects) != len(B.objects) or \
            len(A.morphisms) != len(B.morphisms):
        return False
    if len(set(F.ob.values())) != len(A.objects) or \
            len(set(F.mor.values())) != len(A.morphisms):
        return False
    inv_ob = {v: k for k, v in F.ob.items()}
    inv_mor = {v: k for k, v in F.mor.items()}
    inverse = FiniteFunctor(B, A, inv_ob, inv_mor, check=False)
    return not inverse.violations(first=True)


def is_equivalence(F):
    return is_fully_faithful(F) and is_essentially_surjective(F)


def is_injective_on_objects(F):
    return len(set(F.ob.values())) == len(F.source.objects)


def is_full_embedding(F):
    return is_injective_on_objects(F) and is_fully_faithful(F)


# -- natural transformations ---------------------------------------------

class NaturalTransformation:
    def __init__(self, source, target, components, check=False):
        if source.source != target.source or source.target != target.target:
            raise ShapeMismatch("functors have different endpoints")
        self.source = source
        self.target = target
        self.components = dict(components)
        if check and not check_naturality(self):
            raise CategoryError("not natural", self.failures()[0])

    @property
    def key(self):
        return tuple(self.components[x] for x in self.source.source.objects)

    def __getitem__(self, x):
        return self.components[x]

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return self.key == other.key and self.source == other.source and \
            self.target == other.target

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "NaturalTransformation(" + ", ".join(
            f"{label(x)}:{label(c)}" for x, c in self.components.items()) + ")"

    def failures(self):
        P, Q = self.source, self.target
        A, B = P.source, P.target
        out = []
        for x in A.objects:
            c = self.components.get(x)
            if c not in B.src or B.src[c] != P.ob[x] or B.dst[c] != Q.ob[x]:
                out.append(violation("component-type", (x,)))
        if out:
            return out
        for m in A.morphisms:
            x, y = A.src[m], A.dst[m]
            if B.table[(Q.mor[m], self.components[x])] != \
                    B.table[(self.components[y], P.mor[m])]:
                out.append(violation("naturality", (m,)))
        return out

    def then(self, other):
        """Vertical composite ``other · self``."""
        if self.target != other.source:
            raise NotComposable("transformations not composable")
        B = self.source.target
        return NaturalTransformation(
            self.source, other.target,
            {x: B.table[(other.components[x], c)]
             for x, c in self.components.items()})

    def is_identity(self):
        B = self.source.target
        return self.source == self.target and all(
            B.is_identity(c) for c in self.components.values())

    def is_invertible(self):
        B = self.source.target
        return all(B.is_isomorphism(c) for c in self.components.values())

    def inverse(self):
        B = self.source.target
        return NaturalTransformation(
            self.target, self.source,
            {x: B.inverse(c) for x, c in self.components.items()})


def identity_transformation(F):
    B = F.target
    return NaturalTransformation(
        F, F, {x: B.identities[F.ob[x]] for x in F.source.objects})


def check_naturality(alpha):
    P, Q = alpha.source, alpha.target
    if P.source != Q.source or P.target != Q.target:
        raise ShapeMismatch("functors have different endpoints")
    return not alpha.failures()


def whisker_left(G, alpha):
    """``G * alpha`` for ``alpha: P ⇒ Q: A → B`` and ``G: B → C``."""
    return NaturalTransformation(
        alpha.source.then(G), alpha.target.then(G),
        {x: G.mor[c] for x, c in alpha.components.items()})


def whisker_right(alpha, F):
    """``alpha * F`` for ``F: Z → A``."""
    return NaturalTransformation(
        F.then(alpha.source), F.then(alpha.target),
        {z: alpha.components[F.ob[z]] for z in F.source.objects})


def horizontal(beta, alpha):
    """Godement product ``beta * alpha``."""
    C = beta.source.target
    comps = {}
    for x, a in alpha.components.items():
        comps[x] = C.table[(beta.components[alpha.target.ob[x]],
                            beta.source.mor[a])]
    return NaturalTransformation(alpha.source.then(beta.source),
                                 alpha.target.then(beta.target), comps)


# -- enumeration ----------------------------------------------------------

def _functor_plan(A, order=None):
    """Steps of the backtracking search: objects interleaved with the
    morphisms whose endpoints are already placed, plus composition checks."""
    objects = list(order) if order is not None else list(A.objects)
    placed, done, steps = set(), set(), []
    position = {}
    for x in objects:
        placed.add(x)
        steps.append(("ob", x, ()))
        for m in A.morphisms:
            if m not in done and A.src[m] in placed and A.dst[m] in placed:
                done.add(m)
                position[m] = len(steps)
                steps.append(["mor", m, []])
    for (g, f), gf in A.table.items():
        last = max(position[g], position[f], position[gf])
        steps[last][2].append((g, f, gf))
    return steps


def enumerate_functors(A, B, bound=DEFAULT_BOUND, object_choices=None,
                       morphism_choices=None, injective=False, limit=None):
    """All functors ``A → B`` in canonical order.

    ``object_choices``/``morphism_choices`` optionally restrict the allowed
    images; ``injective`` prunes maps that are not injective.  Raises
    :class:`EnumerationBoundExceeded` past ``bound`` results; ``limit`` stops
    quietly after that many.
    """
    return list(iter_functors(A, B, bound, object_choices, morphism_choices,
                              injective, limit))


def iter_functors(A, B, bound=DEFAULT_BOUND, object_choices=None,
                  morphism_choices=None, injective=False, limit=None):
    steps = _functor_plan(A)
    ob, mor = {}, {}
    used_ob, used_mor = set(), set()
    count = 0
    object_choices = object_choices or {}
    morphism_choices = morphism_choices or {}

    def search(i):
        nonlocal count
        if i == len(steps):
            count += 1
            if bound is not None and count > bound:
                raise EnumerationBoundExceeded(bound, "functors")
            yield FiniteFunctor(A, B, ob, mor, check=False)
            return
        kind, item, checks = steps[i]
        if kind == "ob":
            for y in object_choices.get(item, B.objects):
                if injective and y in used_ob:
                    continue
                ob[item] = y
                used_ob.add(y)
                yield from search(i + 1)
                used_ob.discard(y)
            ob.pop(item, None)
            return
        x, y = ob[A.src[item]], ob[A.dst[item]]
        if A.identities[A.src[item]] == item:
            cands = (B.identities[x],)
        else:
            cands = B.hom(x, y)
            allowed = morphism_choices.get(item)
            if allowed is not None:
                cands = [c for c in cands if c in allowed]
        for c in cands:
            if injective and c in used_mor:
                continue
            mor[item] = c
            if all(B.table[(mor[g], mor[f])] == mor[gf]
                   for g, f, gf in checks):
                used_mor.add(c)
                yield from search(i + 1)
                used_mor.discard(c)
        mor.pop(item, None)

    for F in search(0):
        yield F
        if limit is not None and count >= limit:
            return


def enumerate_transformations(P, Q, bound=DEFAULT_BOUND, choices=None):
    """All natural transformations ``P ⇒ Q``; ``choices`` may restrict
    components per object (an iterable or a predicate on morphisms)."""
    A, B = P.source, P.target
    objects = list(A.objects)
    index = {x: i for i, x in enumerate(objects)}
    squares = [[] for _ in objects]
    for m in A.morphisms:
        if A.is_identity(m):
            continue
        squares[max(index[A.src[m]], index[A.dst[m]])].append(m)
    cand = []
    for x in objects:
        hom = B.hom(P.ob[x], Q.ob[x])
        c = (choices or {}).get(x)
        if c is None:
            cand.append(hom)
        elif callable(c):
            cand.append([h for h in hom if c(h)])
        else:
            allowed = set(c)
            cand.append([h for h in hom if h in allowed])
    comps = {}
    out = []

    def search(i):
        if i == len(objects):
            if bound is not None and len(out) >= bound:
                raise EnumerationBoundExceeded(bound, "transformations")
            out.append(NaturalTransformation(P, Q, comps))
            return
        x = objects[i]
        for c in cand[i]:
            comps[x] = c
            if all(B.table[(Q.mor[m], comps[A.src[m]])] ==
                   B.table[(comps[A.dst[m]], P.mor[m])] for m in squares[i]):
                search(i + 1)
        comps.pop(x, None)

    search(0)
    return out


def functor_category(A, B, bound=DEFAULT_BOUND, functors=None, name=None):
    """``[A, B]`` with integer object ids in enumeration order.

    ``payload`` maps each object id to its :class:`FiniteFunctor` and each
    morphism id ``(i, j, k)`` to its :class:`NaturalTransformation`.
    """
    if functors is None:
        functors = enumerate_functors(A, B, bound)
    functors = list(functors)
    index = {F.key: i for i, F in enumerate(functors)}
    mors, payload, by_key = [], {}, {}
    total = 0
    for i, P in enumerate(functors):
        payload[i] = P
        for j, Q in enumerate(functors):
            for k, t in enumerate(enumerate_transformations(P, Q, bound)):
                mors.append(((i, j, k), i, j))
                payload[(i, j, k)] = t
                by_key[(i, j, t.key)] = (i, j, k)
                total += 1
                if bound is not None and total > bound:
                    raise EnumerationBoundExceeded(bound, "transformations")
    idents = {}
    for i, P in enumerate(functors):
        idents[i] = by_key[(i, i, identity_transformation(P).key)]
    table = {}
    homs = {}
    for m, s, d in mors:
        homs.setdefault(s, []).append((m, d))
    for f, s, d in mors:
        tf = payload[f]
        for g, e in homs.get(d, ()):
            tg = payload[g]
            comp = tuple(B.table[(tg.components[x], tf.components[x])]
                         for x in A.objects)
            table[(g, f)] = by_key[(s, e, comp)]
    cat = FiniteCategory(range(len(functors)), mors, idents, table,
                         name=name, check=False)
    cat.payload = payload
    cat.index = index
    cat.transformation_index = by_key
    return cat


def pullback_category(F, G):
    """``(P, p1, p2)`` where ``P`` is the pullback of the cospan ``F, G``."""
    if F.target != G.target:
        raise ShapeMismatch("cospan legs have different targets")
    A, B = F.source, G.source
    objects = [(a, b) for a in A.objects for b in B.objects
               if F.ob[a] == G.ob[b]]
    mors = [((f, g), (A.src[f], B.src[g]), (A.dst[f], B.dst[g]))
            for f in A.morphisms for g in B.morphisms if F.mor[f] == G.mor[g]
            and F.ob[A.src[f]] == G.ob[B.src[g]]]
    keep = {m for m, _, _ in mors}
    table = {}
    for (f2, g2), s2, _ in mors:
        for (f1, g1), _, d1 in mors:
            if d1 == s2:
                gf = (A.table[(f2, f1)], B.table[(g2, g1)])
                if gf in keep:
                    table[((f2, g2), (f1, g1))] = gf
    cat = FiniteCategory(objects, mors,
                         {(a, b): (A.identities[a], B.identities[b])
                          for a, b in objects}, table, check=False)
    p1 = FiniteFunctor(cat, A, {x: x[0] for x in cat.objects},
           {m: m[0] for m in cat.morphisms}, check=False)
    p2 = FiniteFunctor(cat, B, {x: x[1] for x in cat.objects},
           {m: m[1] for m in cat.morphisms}, check=False)
    return cat, p1, p2


def object_invariant(cat, x):
    outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
    ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
    return (len(cat.hom(x, x)), tuple(outs), tuple(ins))


def find_isomorphism(A, B):
    """An isomorphism ``A → B`` or ``None``."""
    if len(A.objects) != len(B.objects) or \
            len(A.morphisms) != len(B.morphisms):
        return None
    inv_b = {}
    for y in B.objects:
        inv_b.setdefault(object_invariant(B, y), []).append(y)
    choices = {}
    for x in A.objects:
        c = inv_b.get(object_invariant(A, x))
        if not c:
            return None
        choices[x] = c
    for F in iter_functors(A, B, None, object_choices=choices, injective=True):
        return F
    return None


def are_isomorphic(A, B):
    return find_isomorphism(A, B) is not None


# -- quotients by generators and relations ------------------------------------

class FinitenessExceeded(RuntimeError):
    """A presented category has more than ``bound`` morphisms (or its
    rewriting system did not close within the bound)."""

    def __init__(self, bound, what="morphisms"):
        super().__init__(f"presented category exceeds {bound} {what}")
        self.bound = bound


class _Rewriting:
    """Knuth-Bendix completion for typed words under shortlex order.

    Letters are integers; a word lists letters in the order they are
    applied.  Rules ``l → r`` always have ``l`` larger than ``r``.
    """

    def __init__(self, bound):
        self.rules = {}
        self.bound = bound

    @staticmethod
    def bigger(u, v):
        return (len(u), u) > (len(v), v)

    def reduce(self, w):
        changed = True
        while changed:
            changed = False
            for n in range(len(w)):
                for m in range(n + 1, len(w) + 1):
                    r = self.rules.get(w[n:m])
                    if r is not None:
                        w = w[:n] + r + w[m:]
                        changed = True
                        break
                if changed:
                    break
        return w

    def add(self, u, v, pending):
        u, v = self.reduce(u), self.reduce(v)
        if u == v:
            return
        if self.bigger(v, u):
            u, v = v, u
        self.rules[u] = v
        pending.append(u)
        if len(self.rules) > self.bound:
            raise FinitenessExceeded(self.bound, "rewrite rules")

    def complete(self, equations):
        pending = []
        for u, v in equations:
            self.add(tuple(u), tuple(v), pending)
        while pending:
            lhs = pending.pop()
            if lhs not in self.rules:
                continue
            for other in list(self.rules):
                if lhs not in self.rules:
                    break
                if other not in self.rules:
                    continue
                for a, b in ((lhs, other), (other, lhs)):
                    ra, rb = self.rules.get(a), self.rules.get(b)
                    if ra is None or rb is None:
                        continue
                    # suffix of a overlaps prefix of b
                    for k in range(1, min(len(a), len(b))):
                        if a[-k:] == b[:k]:
                            self.add(ra + b[k:], a[:-k] + rb, pending)
                    # b occurs inside a
                    if len(b) < len(a):
                        for n in range(len(a) - len(b) + 1):
                            if a[n:n + len(b)] == b:
                                self.add(ra, a[:n] + rb + a[n + len(b):],
                                         pending)
            self._interreduce()

    def _interreduce(self):
        for lhs in sorted(self.rules, key=lambda w: (len(w), w),
                          reverse=True):
            rhs = self.rules.pop(lhs)
            if self.reduce(lhs) != lhs:
                continue
            self.rules[lhs] = self.reduce(rhs)

    def irreducible(self, w):
        return all(w[n:m] not in self.rules
                   for n in range(len(w)) for m in range(n + 1, len(w) + 1))


def quotient_category(base, object_pairs=(), morphism_pairs=(),
                      bound=DEFAULT_BOUND, name=None):
    """The category obtained from ``base`` by identifying the given pairs
    of objects and of morphisms (the smallest such quotient).

    Returns ``(Q, ob, mor)`` where ``ob`` and ``mor`` send objects and
    morphisms of ``base`` to their classes.  Gluing objects can create new
    composites; :class:`FinitenessExceeded` is raised when more than
    ``bound`` morphisms are generated.
    """
    parent = {x: x for x in base.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in object_pairs:
        rx, ry = find(x), find(y)
        if rx != ry:
            a, b = ordered([rx, ry])
            parent[b] = a
    for f, g in morphism_pairs:
        for x, y in ((base.src[f], base.src[g]), (base.dst[f], base.dst[g])):
            rx, ry = find(x), find(y)
            if rx != ry:
                a, b = ordered([rx, ry])
                parent[b] = a
    cls = {x: find(x) for x in base.objects}
    gens = [m for m in base.morphisms if not base.is_identity(m)]
    letter = {m: n for n, m in enumerate(gens)}
    src = {letter[m]: cls[base.src[m]] for m in gens}
    dst = {letter[m]: cls[base.dst[m]] for m in gens}

    def word(m):
        return () if base.is_identity(m) else (letter[m],)

    equations = []
    for (g, f), gf in base.table.items():
        if not base.is_identity(g) and not base.is_identity(f):
            equations.append(((letter[f], letter[g]), word(gf)))
    for f, g in morphism_pairs:
        equations.append((word(f), word(g)))
    rw = _Rewriting(bound)
    rw.complete(equations)
    classes = ordered(set(cls.values()))
    found = [((c, ()), c, c) for c in classes]
    frontier = list(found)
    while frontier:
        nxt = []
        for (c0, w), s, d in frontier:
            for l in range(len(gens)):
                if src[l] != d:
                    continue
                w2 = w + (l,)
                if rw.irreducible(w2):
                    item = ((s, w2), s, dst[l])
                    nxt.append(item)
                    found.append(item)
                    if len(found) > bound:
                        raise FinitenessExceeded(bound)
        frontier = nxt

    def mid(s, w):
        if not w:
            return ("1", s)
        return tuple(gens[l] for l in w)

    mors = [(mid(s, w), s, d) for (s, w), _, d in found]
    ident = {c: ("1", c) for c in classes}
    ends = {mid(s, w): (s, w) for (s, w), _, _ in found}
    table = {}
    for f, fs, fd in mors:
        for g, gs, gd in mors:
            if gs != fd:
                continue
            w = rw.reduce(ends[f][1] + ends[g][1])
            table[(g, f)] = mid(fs, w)
    Q = FiniteCategory(classes, mors, ident, table, name=name, check=False)
    ob = dict(cls)
    mor = {m: mid(cls[base.src[m]], rw.reduce(word(m)))
           for m in base.morphisms}
    return Q, ob, mor
