"""Small named categories, F-categories, sketches and models.

These are the worked examples shared by the test-suite and the command
line; each builder returns a fresh, validated value.
"""

from __future__ import annotations

from . import fincat as fc


def z2():
    """The group of order two as a one-object category."""
    return fc.monoid(["e", "s"], lambda g, f: "e" if g == f else "s", "e",
                     name="Z2")


def idempotent_monoid():
    """``{1, e}`` with ``e∘e = e``."""
    return fc.monoid(["1", "e"],
                     lambda g, f: "e" if "e" in (g, f) else "1", "1",
                     name="idempotent")


def commutative_square():
    objs = ["a", "b", "c", "d"]
    return fc.preorder(objs, [("a", "b"), ("a", "c"), ("b", "d"),
                              ("c", "d")], name="square")


def span():
    return fc.preorder(["l", "m", "r"], [("m", "l"), ("m", "r")],
                       name="span")


def cospan():
    return fc.preorder(["l", "m", "r"], [("l", "m"), ("r", "m")],
                       name="cospan")


def categories():
    """Named fixture categories used by the axiom suite."""
    return {
        "empty": fc.empty(),
        "terminal": fc.terminal(),
        "discrete2": fc.discrete(["x", "y"], name="discrete2"),
        "walking-arrow": fc.walking_arrow(),
        "walking-iso": fc.walking_iso(),
        "parallel-pair": fc.parallel_pair(),
        "chain3": fc.chain(3),
        "chaotic2": fc.chaotic(["x", "y"], name="chaotic2"),
        "Z2": z2(),
        "idempotent": idempotent_monoid(),
        "square": commutative_square(),
        "span": span(),
        "cospan": cospan(),
    }


# -- limit problems -------------------------------------------------------------

def thin_functor(A, B, ob):
    """The functor given on objects into a category with at most one
    morphism between any two objects."""
    mor = {}
    for m in A.morphisms:
        (n,) = B.hom(ob[A.src[m]], ob[A.dst[m]])
        mor[m] = n
    return fc.FiniteFunctor(A, B, ob, mor)


def limit_problems():
    """Named limit problems covering weighted, marked-lax and dotted-lax
    limits; values are :class:`~fcatlab.limits.LimitProblem`."""
    from .fcat import FObject, FMap, chordate, locally_discrete, \
        locally_posetal
    from . import limits as lim
    from .fincat import NaturalTransformation

    W, C3, T = fc.walking_arrow(), fc.chain(3), fc.terminal()
    I, G = fc.walking_iso(), z2()
    disc = locally_discrete(fc.discrete(["x", "y"]))
    cosp = locally_discrete(cospan())
    pair = locally_discrete(fc.parallel_pair())
    point = locally_discrete(T)
    arrow = locally_discrete(W)
    nothing = locally_discrete(fc.empty())
    two_cell = locally_posetal(fc.parallel_pair(), [("s", "t")])
    chain3 = locally_discrete(C3)
    loop = locally_discrete(G)
    dia = lim.diagram
    out = {}

    def add(name, *args, **kw):
        out[name] = lim.LimitProblem(*args, name=name, **kw)

    # weighted
    D = dia(disc, {"x": W, "y": G}, {})
    add("weighted-product", "weighted", disc, D,
        weight=lim.terminal_weight(disc))
    D = dia(cosp, {"l": W, "m": C3, "r": W},
            {"l<m": thin_functor(W, C3, {"0": "0", "1": "1"}),
             "r<m": thin_functor(W, C3, {"0": "1", "1": "2"})})
    add("weighted-pullback", "weighted", cosp, D,
        weight=lim.terminal_weight(cosp))
    add("weighted-lax-slice", "weighted", cosp, D,
        weight=lim.lax_slice_weight(cosp))
    D = dia(pair, {"0": W, "1": C3},
            {"s": thin_functor(W, C3, {"0": "0", "1": "1"}),
             "t": thin_functor(W, C3, {"0": "0", "1": "2"})})
    add("weighted-equalizer", "weighted", pair, D,
        weight=lim.terminal_weight(pair))
    W_arrow = dia(point, {"*": W}, {})
    add("weighted-cotensor-arrow", "weighted", point, dia(point, {"*": C3}, {}),
        weight=W_arrow)
    add("weighted-cotensor-iso", "weighted", point, dia(point, {"*": G}, {}),
        weight=dia(point, {"*": I}, {}))
    comma_w = dia(arrow, {"0": T, "1": W},
                  {"a": thin_functor(T, W, {"*": "0"})})
    D = dia(arrow, {"0": W, "1": C3},
            {"a": thin_functor(W, C3, {"0": "0", "1": "2"})})
    add("weighted-comma", "weighted", arrow, D, weight=comma_w)
    add("weighted-empty", "weighted", nothing, dia(nothing, {}, {}),
        weight=lim.terminal_weight(nothing))
    D = dia(disc, {"x": FObject.from_subset(W, ["0"]), "y": chordate(G)}, {})
    add("weighted-tight-product", "weighted", disc, D,
        weight=lim.terminal_weight(disc))
    ds, dt = (thin_functor(W, C3, {"0": "0", "1": "1"}),
              thin_functor(W, C3, {"0": "1", "1": "2"}))
    D = dia(two_cell, {"0": W, "1": C3}, {"s": ds, "t": dt},
            {"s=>t": NaturalTransformation(ds, dt, {"0": "0<1",
                                                     "1": "1<2"})})
    ws, wt = (thin_functor(T, W, {"*": "0"}), thin_functor(T, W, {"*": "1"}))
    weight = dia(two_cell, {"0": T, "1": W}, {"s": ws, "t": wt},
                 {"s=>t": NaturalTransformation(ws, wt, {"*": "a"})})
    add("weighted-two-cell", "weighted", two_cell, D, weight=weight)

    # marked-lax in Cat
    D = dia(arrow, {"0": W, "1": C3},
            {"a": thin_functor(W, C3, {"0": "0", "1": "2"})})
    add("marked-lax-arrow", "marked", lim.MarkedTwoCategory(arrow), D, w="l")
    add("marked-colax-arrow", "marked", lim.MarkedTwoCategory(arrow), D,
        w="c")
    add("marked-strict-arrow", "marked",
        lim.MarkedTwoCategory(arrow, arrow.one_cells), D, w="l")
    D = dia(arrow, {"0": I, "1": G},
            {"a": fc.FiniteFunctor(I, G, {"0": "*", "1": "*"},
                                   {"1_0": "e", "1_1": "e", "u": "s",
                                    "v": "s"})})
    add("marked-pseudo-arrow", "marked", lim.MarkedTwoCategory(arrow), D,
        w="p")
    D = dia(cosp, {"l": T, "m": W, "r": T},
            {"l<m": thin_functor(T, W, {"*": "0"}),
             "r<m": thin_functor(T, W, {"*": "1"})})
    add("marked-lax-cospan", "marked", lim.MarkedTwoCategory(cosp), D, w="l")
    D = dia(chain3, {"0": T, "1": W, "2": W},
            {"0<1": thin_functor(T, W, {"*": "0"}),
             "1<2": fc.identity_functor(W),
             "0<2": thin_functor(T, W, {"*": "0"})})
    marked = [chain3.id1(x) for x in chain3.objects] + ["0<1"]
    add("marked-chain", "marked", lim.MarkedTwoCategory(chain3, marked), D,
        w="l")
    ps, pt = (thin_functor(T, W, {"*": "0"}), thin_functor(T, W, {"*": "1"}))
    D = dia(two_cell, {"0": T, "1": W}, {"s": ps, "t": pt},
            {"s=>t": NaturalTransformation(ps, pt, {"*": "a"})})
    add("marked-lax-two-cell", "marked", lim.MarkedTwoCategory(two_cell), D,
        w="l")
    X = fc.chaotic(["x", "y"], name="chaotic2")
    swap = thin_functor(X, X, {"x": "y", "y": "x"})
    D = dia(loop, {"*": X}, {"e": fc.identity_functor(X), "s": swap})
    add("marked-lax-loop", "marked", lim.MarkedTwoCategory(loop), D, w="l")

    # dotted-lax in F
    shape = lim.loose_arrow_shape()
    A = FObject.from_subset(W, ["0"])
    B = FObject.from_subset(C3, ["0", "2"])
    f = FMap(A, B, thin_functor(W, C3, {"0": "1", "1": "2"}))
    D = dia(shape.shape, {"A": A, "B": B}, {"f": f})
    add("dotted-lax-arrow", "dotted", shape, D, w="l")
    add("dotted-colax-arrow", "dotted", shape, D, w="c")
    no_dots = lim.DottedFCategory(shape.shape, dotted=())
    add("dotted-lax-undotted", "dotted", no_dots, D, w="l")
    A = FObject.from_subset(I, ["0"])
    f = FMap(A, chordate(G), fc.FiniteFunctor(
        I, G, {"0": "*", "1": "*"},
        {"1_0": "e", "1_1": "e", "u": "s", "v": "s"}))
    D = dia(shape.shape, {"A": A, "B": chordate(G)}, {"f": f})
    add("dotted-pseudo-arrow", "dotted", shape, D, w="p")
    D = dia(cosp, {"l": FObject.from_subset(W, ["1"]), "m": chordate(C3),
                   "r": chordate(T)},
            {"l<m": thin_functor(W, C3, {"0": "0", "1": "1"}),
             "r<m": thin_functor(T, C3, {"*": "2"})})
    add("dotted-lax-cospan", "dotted",
        lim.DottedFCategory(cosp, dotted=["l", "r"]), D, w="l")
    tight_arrow = locally_discrete(W, tight=["1_0", "1_1", "a"])
    A = FObject.from_subset(W, ["1"])
    B = FObject.from_subset(C3, ["2"])
    D = dia(tight_arrow, {"0": A, "1": B},
            {"a": FMap(A, B, thin_functor(W, C3, {"0": "1", "1": "2"}))})
    add("dotted-lax-tight-arrow", "dotted",
        lim.DottedFCategory(tight_arrow, dotted=["0", "1"]), D, w="l")
    return out


# -- F-categories ------------------------------------------------------------------

def two_step_parallel():
    """``0 ⇉ 1 ⇉ 2`` with arrows ``s, t`` then ``u, v`` and four distinct
    composites."""
    mors = {"s": ("0", "1"), "t": ("0", "1"), "u": ("1", "2"),
            "v": ("1", "2")}
    for g in "uv":
        for f in "st":
            mors[g + f] = ("0", "2")
    for x in "012":
        mors[fc.identity_id(x)] = (x, x)
    table = {}
    for m, (a, b) in mors.items():
        table[(fc.identity_id(b), m)] = m
        table[(m, fc.identity_id(a))] = m
    for g in "uv":
        for f in "st":
            table[(g, f)] = g + f
    return fc.FiniteCategory(["0", "1", "2"], mors,
                             {x: fc.identity_id(x) for x in "012"}, table,
                             name="two-step")


def fcategories():
    """Named finite F-categories used by the axiom suite."""
    from .fcat import locally_discrete, locally_posetal
    W, P = fc.walking_arrow(), fc.parallel_pair()
    ids = lambda cat: [cat.identities[x] for x in cat.objects]
    two = two_step_parallel()
    order = [("s", "t"), ("u", "v"), ("us", "ut"), ("us", "vs"),
             ("ut", "vt"), ("vs", "vt")]
    return {
        "arrow-loose": locally_discrete(W, tight=ids(W), name="arrow-loose"),
        "arrow-tight": locally_discrete(W, name="arrow-tight"),
        "pair-posetal": locally_posetal(P, [("s", "t")],
                                        tight=ids(P) + ["s"],
                                        name="pair-posetal"),
        "loop-loose": locally_discrete(z2(), tight=["e"], name="loop-loose"),
        "chain-mixed": locally_discrete(fc.chain(3),
                                        tight=ids(fc.chain(3)) + ["0<1"],
                                        name="chain-mixed"),
        "two-step-posetal": locally_posetal(two, order,
                                            tight=ids(two) + ["s", "u", "us"],
                                            name="two-step-posetal"),
        "chaotic-posetal": locally_posetal(
            fc.chaotic(["x", "y"]), [], name="chaotic-posetal"),
    }


# -- word sketches and monoidal models ----------------------------------------------

POWERS = ("1", "X", "X2", "X3")


def _blocks(n, m, allow_empty, max_len):
    """``m``-tuples of words in ``x1..xn`` whose concatenation is a strictly
    increasing sequence of variables."""
    out = []

    def split(seq, m):
        if m == 0:
            if not seq:
                yield ()
            return
        for k in range(len(seq) + 1):
            head = seq[:k]
            if (not head and not allow_empty) or len(head) > max_len:
                continue
            for rest in split(seq[k:], m - 1):
                yield (head,) + rest

    for mask in range(1 << n):
        seq = tuple(i + 1 for i in range(n) if mask >> i & 1)
        out.extend(split(seq, m))
    return sorted(out)


def _word_name(words, n):
    special = {((1,), 2): "π₁", ((2,), 2): "π₂", (((1, 2),), 2): "m",
               (((),), 0): "e"}
    if len(words) == 1 and (words[0], n) in special:
        return special[(words[0], n)]
    if (words, n) in special:
        return special[(words, n)]
    text = ",".join("".join(f"x{i}" for i in w) or "ε" for w in words)
    return f"⟨{text}⟩/{n}"


def word_sketch(allow_empty=True, max_len=3, name=None, max_arity=3):
    """The sketch of strict monoidal structures on ``X``: objects are the
    powers ``X^n`` (``n ≤ max_arity``), 1-cells ``X^n → X^m`` are tuples of words
    using each variable at most once and in order, and the tight 1-cells
    are the tuples of single variables.  Products ``X^0, X^2, X^3`` are
    chosen cones; 2-cells are identities only."""
    from .fcat import locally_discrete
    from . import sketch as sk
    cells, names = {}, {}
    powers = POWERS[:max_arity + 1]
    for n in range(len(powers)):
        for m in range(len(powers)):
            for words in _blocks(n, m, allow_empty, max_len):
                f = _word_name(words, n)
                names[(words, n)] = f
                cells[f] = (POWERS[n], POWERS[m], words, n)
    table, ids = {}, {}
    for f, (a, b, words, n) in cells.items():
        if words == tuple((i,) for i in range(1, n + 1)):
            ids[a] = f
    for g, (b, c, gw, m) in cells.items():
        for f, (a, b2, fw, n) in cells.items():
            if b2 != b:
                continue
            comp = tuple(sum((fw[i - 1] for i in w), ()) for w in gw)
            table[(g, f)] = names[(comp, n)]
    tight = [f for f, (_, _, words, _) in cells.items()
             if all(len(w) == 1 for w in words)]
    base = fc.FiniteCategory(powers, {f: v[:2] for f, v in cells.items()},
                             ids, table)
    S = locally_discrete(base, tight=tight,
                         name=name or ("monoid-words" if allow_empty
                                       else "semigroup-words"))
    cones = []
    for n in (0, 2, 3)[:max_arity]:
        J = locally_discrete(fc.discrete([str(i) for i in range(1, n + 1)]),
                             name=f"discrete{n}")
        D = sk.sketch_diagram(J, S, {j: "X" for j in J.objects})
        legs = {str(i): names[(((i,),), n)] for i in range(1, n + 1)}
        cones.append(sk.conical_cone(S, J, D, POWERS[n], legs,
                                     name=f"product{n}"))
    return sk.Sketch(S, cones, name=S.name)


def product_fragment_sketch():
    """Monoid words on at most two variables: products ``X^0`` and
    ``X^2`` with tight projections."""
    return word_sketch(True, 2, name="product-fragment", max_arity=2)


def monoid_sketch():
    return word_sketch(True, 3, name="monoid-words")


def semigroup_sketch():
    return word_sketch(False, 3, name="semigroup-words")


def pointed_sketch():
    return word_sketch(True, 1, name="pointed-words")


class StrictMonoidal:
    """A finite strict monoidal category: ``tensor_ob``/``tensor_mor`` act
    on objects and morphisms and ``unit`` is the unit object."""

    def __init__(self, cat, tensor_ob, tensor_mor, unit, name=None):
        self.cat = cat
        self.tensor_ob = tensor_ob
        self.tensor_mor = tensor_mor
        self.unit = unit
        self.name = name or cat.name

    def __repr__(self):
        return f"<StrictMonoidal {self.name}>"

    def word_ob(self, xs):
        out = self.unit
        for x in xs:
            out = self.tensor_ob(out, x)
        return out

    def word_mor(self, ms):
        out = self.cat.identities[self.unit]
        for m in ms:
            out = self.tensor_mor(out, m)
        return out


def _thin_tensor(cat, op):
    def mor(f, g):
        s = op(cat.src[f], cat.src[g])
        d = op(cat.dst[f], cat.dst[g])
        (h,) = cat.hom(s, d)
        return h
    return mor


def monoidal_categories():
    """Small strict monoidal categories on at most two objects."""
    xor = lambda a, b: str(int(a) ^ int(b))
    W = fc.walking_arrow()
    order = {"0": 0, "1": 1}

    def arrow_op(pick):
        return lambda a, b: pick(a, b, key=order.get)

    Z2 = z2()
    idem = idempotent_monoid()
    d2 = fc.discrete(["0", "1"], name="discrete2")
    ch = fc.chaotic(["0", "1"], name="chaotic2")
    return {
        "discrete-xor": StrictMonoidal(
            d2, xor, lambda f, g: fc.identity_id(
                xor(d2.src[f], d2.src[g])), "0", name="discrete-xor"),
        "arrow-max": StrictMonoidal(W, arrow_op(max),
                                    _thin_tensor(W, arrow_op(max)), "0",
                                    name="arrow-max"),
        "arrow-min": StrictMonoidal(W, arrow_op(min),
                                    _thin_tensor(W, arrow_op(min)), "1",
                                    name="arrow-min"),
        "BZ2": StrictMonoidal(Z2, lambda a, b: "*",
                              lambda f, g: Z2.table[(f, g)], "*",
                              name="BZ2"),
        "B-idempotent": StrictMonoidal(
            idem, lambda a, b: "*", lambda f, g: idem.table[(f, g)], "*",
            name="B-idempotent"),
        "chaotic-xor": StrictMonoidal(ch, xor, _thin_tensor(ch, xor), "0",
                                      name="chaotic-xor"),
    }


def _word_functor(M, words, n, powers):
    A, B = powers[n], powers[len(words)]
    obs = {x: tuple(M.word_ob([x[i - 1] for i in w]) for w in words)
           for x in A.objects}
    mors = {f: tuple(M.word_mor([f[i - 1] for i in w]) for w in words)
            for f in A.morphisms}
    return fc.FiniteFunctor(A, B, obs, mors, check=False)


def word_model(sketch, M):
    """The model of a word sketch in the strict monoidal category ``M``:
    ``X^n`` goes to the product category ``C^n`` and a tuple of words acts
    by the tensor product."""
    from .fcat import FCell, FFunctor, FMap, chordate
    from .limits import AMBIENT
    S = sketch.carrier
    powers = [fc.product(*([M.cat] * n), name=f"{M.name}^{n}")
              for n in range(len(S.objects))]
    fobs = [chordate(P) for P in powers]
    index = {p: n for n, p in enumerate(POWERS)}
    words = _cell_words(S)
    ob = {x: fobs[index[x]] for x in S.objects}
    one = {}
    for f in S.one_cells:
        n = index[S.src1(f)]
        F = _word_functor(M, words[f], n, powers)
        one[f] = FMap(fobs[n], fobs[index[S.dst1(f)]], F, check=False)
    two = {}
    for a in S.two_cells:
        f = one[S.src2(a)]
        two[a] = FCell(f, f, fc.identity_transformation(f.loose))
    return FFunctor(S, AMBIENT, ob, one, two, name=f"model-{M.name}")


def _cell_words(S):
    """Recover the word tuple of each 1-cell of a word sketch from its
    action on the generic objects."""
    index = {p: n for n, p in enumerate(POWERS)}
    out = {}
    for f in S.one_cells:
        n, m = index[S.src1(f)], index[S.dst1(f)]
        out[f] = _parse_words(f, n, m)
    return out


def _parse_words(f, n, m):
    special = {"π₁": ((1,),), "π₂": ((2,),), "m": ((1, 2),), "e": ((),)}
    if f in special:
        return special[f]
    body = f[1:f.index("⟩")]
    if m == 0:
        return ()
    words = []
    for part in body.split(","):
        if part == "ε":
            words.append(())
        else:
            words.append(tuple(int(v) for v in part.split("x")[1:]))
    return tuple(words)


# -- small sketches with computable colimits -----------------------------------------

def arrow_cone_sketch():
    """``0 → 1`` with the cone over the point at ``1`` with apex ``0``:
    its models invert the arrow."""
    from .fcat import locally_discrete
    from . import sketch as sk
    S = locally_discrete(fc.walking_arrow(), name="arrow-cone")
    J = locally_discrete(fc.terminal(), name="point")
    D = sk.sketch_diagram(J, S, {"*": "1"})
    return sk.Sketch(S, [sk.conical_cone(S, J, D, "0", {"*": "a"},
                                         name="iso")], name="arrow-cone")


def binary_product_sketch():
    """``A ← P → B`` with ``P`` the chosen product."""
    from .fcat import locally_discrete
    from . import sketch as sk
    base = fc.preorder(["A", "B", "P"], [("P", "A"), ("P", "B")],
                       name="span")
    S = locally_discrete(base, name="binary-product")
    J = locally_discrete(fc.discrete(["A", "B"]), name="discrete2")
    D = sk.sketch_diagram(J, S, {"A": "A", "B": "B"})
    return sk.Sketch(S, [sk.conical_cone(S, J, D, "P",
                                         {"A": "P<A", "B": "P<B"},
                                         name="product")],
                     name="binary-product")


def cotensor_sketch():
    """``u ⇒ v: 0 → 1`` with ``0`` the cotensor of ``1`` by the walking
    arrow."""
    from .fcat import FFunctor, chordate, locally_discrete, locally_posetal
    from .limits import AMBIENT
    from . import sketch as sk
    S = locally_posetal(fc.parallel_pair("u", "v"), [("u", "v")],
                        name="cotensor")
    J = locally_discrete(fc.terminal(), name="point")
    A = chordate(fc.walking_arrow())
    W = FFunctor(J, AMBIENT, {"*": A}, {"1_*": AMBIENT.id1(A)},
                 {"=1_*": AMBIENT.id2(AMBIENT.id1(A))})
    D = sk.sketch_diagram(J, S, {"*": "1"})
    c = sk.cone(S, W, D, "0", {"*": {"0": "u", "1": "v"}},
                {"*": {"a": "u=>v"}}, name="cotensor")
    return sk.Sketch(S, [c], name="cotensor")


def loop_gluing_sketch():
    """An equalizer cone whose colimit glues two parallel 1-cells related
    by a 2-cell, producing a free loop."""
    from .fcat import locally_discrete, locally_posetal
    from . import sketch as sk
    mors = {"e": ("E", "A"), "s'": ("A", "B"), "t'": ("A", "B"),
            "h": ("B", "C"), "f": ("A", "C"), "g": ("A", "C"),
            "d": ("E", "B"), "hd": ("E", "C")}
    objs = ["E", "A", "B", "C"]
    ids = {x: fc.identity_id(x) for x in objs}
    for x in objs:
        mors[ids[x]] = (x, x)
    table = {}
    for m, (a, b) in mors.items():
        table[(ids[b], m)] = m
        table[(m, ids[a])] = m
    table.update({("s'", "e"): "d", ("t'", "e"): "d", ("h", "s'"): "f",
                  ("h", "t'"): "g", ("h", "d"): "hd", ("f", "e"): "hd",
                  ("g", "e"): "hd"})
    base = fc.FiniteCategory(objs, mors, ids, table, name="loop-gluing")
    S = locally_posetal(base, [("f", "g")], name="loop-gluing")
    J = locally_discrete(fc.parallel_pair("u", "v"), name="parallel-pair")
    D = sk.sketch_diagram(J, S, {"0": "A", "1": "B"},
                          {"u": "s'", "v": "t'"})
    c = sk.conical_cone(S, J, D, "E", {"0": "e", "1": "d"},
                        name="equalizer")
    return sk.Sketch(S, [c], name="loop-gluing")


def sigma_sketches():
    """Sketches whose colimits ``W * yo D`` are finite."""
    return {"arrow-cone": arrow_cone_sketch(),
            "binary-product": binary_product_sketch(),
            "cotensor": cotensor_sketch()}


def sigma_models():
    """``(sketch name, label, F-functor)`` triples on the sketches of
    :func:`sigma_sketches`, covering models and non-models."""
    from .fcat import FCell, FMap, chordate
    from .limits import diagram
    sketches = sigma_sketches()
    W, T = fc.walking_arrow(), fc.terminal()
    D2 = fc.discrete(["x", "y"], name="discrete2")
    out = []

    S = sketches["arrow-cone"].carrier
    iso = fc.walking_iso()
    for label_, src, dst, F in [
            ("identity", W, W, fc.identity_functor(W)),
            ("collapse", W, T, fc.constant_functor(W, T, "*")),
            ("swap", D2, D2, fc.FiniteFunctor(
                D2, D2, {"x": "y", "y": "x"}, {"1_x": "1_y", "1_y": "1_x"})),
            ("inclusion", T, W, fc.FiniteFunctor(T, W, {"*": "0"},
                                                 {"1_*": "1_0"})),
            ("iso-collapse", iso, T, fc.constant_functor(iso, T, "*"))]:
        out.append(("arrow-cone", label_,
                    diagram(S, {"0": src, "1": dst}, {"a": F})))

    S = sketches["binary-product"].carrier
    P = fc.product(W, D2)
    for label_, apex, a, b, pa, pb in [
            ("product", P, W, D2, fc.projection(P, [W, D2], 0),
             fc.projection(P, [W, D2], 1)),
            ("diagonal", W, W, W, fc.identity_functor(W),
             fc.identity_functor(W)),
            ("terminal", T, T, T, fc.identity_functor(T),
             fc.identity_functor(T)),
            ("empty-factor", fc.empty(), W, fc.empty(),
             fc.FiniteFunctor(fc.empty(), W, {}, {}),
             fc.identity_functor(fc.empty()))]:
        out.append(("binary-product", label_,
                    diagram(S, {"P": apex, "A": a, "B": b},
                            {"P<A": pa, "P<B": pb})))

    S = sketches["cotensor"].carrier
    for label_, C in [("arrow", W), ("point", T), ("discrete", D2)]:
        arrows = fc.functor_category(W, C)
        ev0 = fc.FiniteFunctor(arrows, C, {n: arrows.payload[n].ob["0"]
                                           for n in arrows.objects},
                               {m: arrows.payload[m].components["0"]
                                for m in arrows.morphisms})
        ev1 = fc.FiniteFunctor(arrows, C, {n: arrows.payload[n].ob["1"]
                                           for n in arrows.objects},
                               {m: arrows.payload[m].components["1"]
                                for m in arrows.morphisms})
        A, B = chordate(arrows), chordate(C)
        u, v = FMap(A, B, ev0), FMap(A, B, ev1)
        cell = FCell(u, v, fc.NaturalTransformation(
            ev0, ev1, {n: arrows.payload[n].mor["a"]
                       for n in arrows.objects}, check=True))
        out.append(("cotensor", label_,
                    diagram(S, {"0": A, "1": B}, {"u": u, "v": v},
                            {"u=>v": cell})))
    U = fc.FiniteFunctor(W, W, {"0": "0", "1": "1"},
                         {"1_0": "1_0", "1_1": "1_1", "a": "a"})
    out.append(("cotensor", "identity-cell",
                diagram(S, {"0": W, "1": W}, {"u": U, "v": U})))
    return out


def obstruction():
    """Two monoidal models on the product fragment and a transformation
    that is lax at every 1-cell, including the projection ``π₁``, where
    its 2-component is not an identity.  ``(sketch, M, N, phi)``."""
    from .fcat import LooseTransformation
    from .limits import AMBIENT
    from .sketch import enumerate_loose_transformations
    S = product_fragment_sketch()
    cats = monoidal_categories()
    M = word_model(S, cats["arrow-min"])
    N = word_model(S, cats["arrow-max"])
    for phi in enumerate_loose_transformations(M, N, "l", w1="l"):
        if not AMBIENT.is_identity2(phi.cells["π₁"]):
            return S, M, N, LooseTransformation(
                M, N, phi.components, phi.cells, ("s", "l"),
                name="lax-at-projection")
    raise AssertionError("no transformation with a non-trivial projection cell")


# -- generalised adjunctions -------------------------------------------------------

def _identity_cells(S, one):
    return {S.id2(f): S.id2(g) for f, g in one.items()}


def adjunction_fixtures():
    """``name → (U, F_ob, F_one, eta)`` for generalised adjunctions.

    * ``reflection``: the chain ``0 → 1 → 2`` reflected onto ``{1, 2}``;
      an honest adjunction.
    * ``chaotic-unit``: ``U`` collapses a chaotic hom ``{1, s}`` onto a
      point, so the hom composites are equivalences but not isomorphisms.
    * ``unnatural``: a left-zero monoid with unit ``a``; naturality fails
      at ``b``.
    """
    from .fcat import FFunctor, locally_discrete, locally_posetal
    out = {}

    chain = fc.chain(3)
    C = locally_discrete(chain, name="chain")
    sub = fc.full_subcategory(chain, ["1", "2"])
    D = locally_discrete(sub, name="upper")
    one = {f: f for f in D.one_cells}
    U = FFunctor(D, C, {x: x for x in D.objects}, one,
                 _identity_cells(D, one), name="inclusion")
    F_ob = {"0": "1", "1": "1", "2": "2"}
    F_one = {}
    for f in C.one_cells:
        a, b = C.src1(f), C.dst1(f)
        F_one[f] = chain.hom(F_ob[a], F_ob[b])[0]
    eta = {c: chain.hom(c, F_ob[c])[0] for c in C.objects}
    out["reflection"] = (U, F_ob, F_one, eta)

    base = fc.preorder(["c", "e"], [("c", "e")], name="c<e")
    C = locally_discrete(base, name="c<e")
    p = base.hom("c", "e")[0]
    group = z2()
    D = locally_posetal(group, [("e", "s"), ("s", "e")], name="chaotic-Z2")
    ie = C.id1("e")
    one = {"e": ie, "s": ie}
    two = {a: C.id2(ie) for a in D.two_cells}
    U = FFunctor(D, C, {"*": "e"}, one, two, name="collapse")
    F_ob = {"c": "*", "e": "*"}
    F_one = {f: "e" for f in C.one_cells}
    eta = {"c": p, "e": ie}
    out["chaotic-unit"] = (U, F_ob, F_one, eta)

    left_zero = fc.monoid(["1", "a", "b"],
                          lambda g, f: f if g == "1" else g, "1",
                          name="left-zero")
    C = locally_discrete(left_zero, name="left-zero")
    one = {f: f for f in C.one_cells}
    U = FFunctor(C, C, {"*": "*"}, one, _identity_cells(C, one),
                 name="identity")
    out["unnatural"] = (U, {"*": "*"}, dict(one), {"*": "a"})
    return out


# -- monads, algebras and adjunctions of models ----------------------------------------

SQUARE = ["00", "01", "10", "11"]


def _square():
    return fc.preorder(SQUARE, [("00", "01"), ("00", "10"), ("01", "11"),
                                ("10", "11")], name="square")


def lattice_monoidal_categories():
    """The 2×2 lattice with componentwise join (unit ``00``) and with
    componentwise meet (unit ``11``)."""
    sq = _square()

    def pointwise(pick):
        return lambda a, b: "".join(pick(x, y) for x, y in zip(a, b))

    return {
        "square-join": StrictMonoidal(sq, pointwise(max),
                                      _thin_tensor(sq, pointwise(max)), "00",
                                      name="square-join"),
        "square-meet": StrictMonoidal(sq, pointwise(min),
                                      _thin_tensor(sq, pointwise(min)), "11",
                                      name="square-meet"),
    }


def _thin_hom(cat, x, y):
    (h,) = cat.hom(x, y)
    return h


def thin_fmap(A, B, on_objects):
    """The FMap between thin FObjects determined by an object map."""
    from .fcat import FMap
    P, Q = A.loose, B.loose
    ob = {x: on_objects(x) for x in P.objects}
    mor = {m: _thin_hom(Q, ob[P.src[m]], ob[P.dst[m]]) for m in P.morphisms}
    return FMap(A, B, fc.FiniteFunctor(P, Q, ob, mor))


def thin_cell(f, g):
    """The unique FCell ``f ⇒ g`` between maps into a thin FObject."""
    from .fcat import FCell
    Q = f.target.loose
    return FCell(f, g, fc.NaturalTransformation(
        f.loose, g.loose, {y: _thin_hom(Q, f.loose.ob[y], g.loose.ob[y])
                           for y in f.source.loose.objects}, check=True))


def _thin_adjunction(M, N, to_n, to_m, w):
    """``(alpha, beta, eta, eps)`` between word models in thin monoidal
    categories: ``alpha`` applies ``to_n`` letterwise and ``beta`` applies
    ``to_m``; ``beta`` is the right adjoint for ``w = l`` and the left
    adjoint for ``w = c``."""
    from .fcat import LooseTransformation
    from .limits import AMBIENT as K
    S = M.source
    alpha, beta = {}, {}
    for x in S.objects:
        alpha[x] = thin_fmap(M.ob[x], N.ob[x],
                             lambda t: tuple(to_n[c] for c in t))
        beta[x] = thin_fmap(N.ob[x], M.ob[x],
                            lambda t: tuple(to_m[c] for c in t))
    alpha = LooseTransformation(M, N, alpha, {}, ("s", "s"), name="alpha")
    eta, eps = {}, {}
    for x in S.objects:
        a, b = alpha.components[x], beta[x]
        if w == "c":
            eta[x] = thin_cell(K.id1(N.ob[x]), K.comp1(a, b))
            eps[x] = thin_cell(K.comp1(b, a), K.id1(M.ob[x]))
        else:
            eta[x] = thin_cell(K.id1(M.ob[x]), K.comp1(b, a))
            eps[x] = thin_cell(K.comp1(a, b), K.id1(N.ob[x]))
    return alpha, beta, eta, eps


def tight_iso_sketch():
    """An isomorphism ``u: 0 → 1`` whose inverse ``v`` is loose; no
    cones.  Models are tight maps that are invertible as loose maps."""
    from .fcat import locally_discrete
    from . import sketch as sk
    S = locally_discrete(fc.walking_iso(), tight=["1_0", "1_1", "u"],
                         name="tight-iso")
    return sk.Sketch(S, [], name="tight-iso")


def _inverse_functor(F):
    ob = {y: x for x, y in F.ob.items()}
    mor = {n: m for m, n in F.mor.items()}
    return fc.FiniteFunctor(F.target, F.source, ob, mor)


def tight_iso_model(S, A0, A1, u):
    """The model sending ``u`` to the FMap ``A0 → A1`` with loose part
    ``u`` (an isomorphism of categories)."""
    from .fcat import FFunctor, FMap
    from .limits import AMBIENT as K
    one = {"1_0": K.id1(A0), "1_1": K.id1(A1), "u": FMap(A0, A1, u),
           "v": FMap(A1, A0, _inverse_functor(u))}
    return FFunctor(S.carrier, K, {"0": A0, "1": A1}, one,
                    {S.carrier.id2(f): K.id2(g) for f, g in one.items()})


def tight_arrow_model(T, A0, A1, u):
    """A model of the tight part: a single tight FMap ``A0 → A1``."""
    from .fcat import FFunctor, FMap
    from .limits import AMBIENT as K
    one = {"1_0": K.id1(A0), "1_1": K.id1(A1), "u": FMap(A0, A1, u)}
    return FFunctor(T, K, {"0": A0, "1": A1}, one,
                    {T.id2(f): K.id2(g) for f, g in one.items()})


def _closure_on_models(T):
    """Constructions for the monad that makes the tight objects of the
    target of ``u`` exactly the image of the tight objects of its source,
    with ``u`` replaced by an identity."""
    from .fcat import FCell, FMap, FObject, LooseTransformation, Modification
    from .limits import AMBIENT as K

    def on_models(F):
        A1, u = F.ob["1"], F.one["u"].loose
        A0 = FObject.from_subset(A1.loose, [u.ob[y] for y in
                                            F.ob["0"].tight_objects])
        return tight_arrow_model(T, A0, A1, fc.identity_functor(A1.loose))

    def on_transformations(phi, TM, TN):
        p = phi.components["1"]
        return LooseTransformation(
            TM, TN, {"0": FMap(TM.ob["0"], TN.ob["0"], p.loose, check=False),
                     "1": p}, {}, ("s", "s"))

    def on_modifications(m, Tphi, Tpsi):
        c = m.components["1"]
        return Modification(Tphi, Tpsi, {
            "0": FCell(Tphi.components["0"], Tpsi.components["0"],
                       c.transformation), "1": c})

    def unit(F, TF):
        return LooseTransformation(
            F, TF, {"0": FMap(F.ob["0"], TF.ob["0"], F.one["u"].loose),
                    "1": K.id1(F.ob["1"])}, {}, ("s", "s"))

    def multiplication(F, TF, TTF):
        return LooseTransformation(
            TTF, TF, {x: FMap(TTF.ob[x], TF.ob[x],
                              fc.identity_functor(TF.ob[x].loose))
                      for x in ("0", "1")}, {}, ("s", "s"))

    return on_models, on_transformations, on_modifications, unit, \
        multiplication


def monad_fixtures():
    """``name → (sketch, models, monad, correspondence)`` with the monad
    living on the restrictions of models to the tight part.

    * ``identity``: the arrow-cone sketch, whose carrier is all tight, and
      the identity monad.
    * ``idempotent``: the tight-iso sketch; the monad replaces ``u`` by
      the identity of its target with the image of the tight objects as
      tight part.  Its algebras are the models.
    """
    from .fcat import FObject, chordate, loose_only
    from . import monad as mo
    out = {}

    S = arrow_cone_sketch()
    T, inc = S.tight_part()
    models = {label_: F for name, label_, F in sigma_models()
              if name == "arrow-cone" and label_ in ("identity", "swap")}
    base = mo.ModelCategory({n: F.restrict(inc) for n, F in models.items()},
                            "s", name="restricted")
    monad = mo.identity_monad(base.fcat, base=base)
    corr = {n: mo.TAlgebra(n, base.fcat.id1(n)) for n in models}
    out["identity"] = (S, models, monad, corr)

    S = tight_iso_sketch()
    T, inc = S.tight_part()
    T = T.carrier
    W, P = fc.walking_arrow(), fc.terminal()
    D2 = fc.discrete(["p", "q"])
    idW = fc.identity_functor(W)
    half = FObject.from_subset(W, ["0"])
    models = {
        "arrow": tight_iso_model(S, chordate(W), chordate(W), idW),
        "half-arrow": tight_iso_model(S, half, chordate(W), idW),
        "loose-point": tight_iso_model(S, loose_only(P), chordate(P),
                                       fc.identity_functor(P)),
    }
    restricted = {n: F.restrict(inc) for n, F in models.items()}
    restricted["point-into-arrow"] = tight_arrow_model(
        T, chordate(P), chordate(W),
        fc.FiniteFunctor(P, W, {"*": "0"}, {"1_*": "1_0"}))
    restricted["pair-onto-arrow"] = tight_arrow_model(
        T, chordate(D2), chordate(W),
        fc.FiniteFunctor(D2, W, {"p": "0", "q": "1"},
                         {"1_p": "1_0", "1_q": "1_1"}))
    base = mo.ModelCategory(restricted, "s", name="restricted")
    monad = mo.model_monad(base, *_closure_on_models(T), name="closure")
    corr = {n: mo.TAlgebra(n, base.fcat.id1(n)) for n in models}
    out["idempotent"] = (S, models, monad, corr)
    return out


def closure_monad():
    """The idempotent monad on ``a → b`` (locally posetal, all tight)
    sending both objects to ``b``."""
    from .fcat import FFunctor, locally_posetal
    from . import monad as mo
    base = fc.preorder(["a", "b"], [("a", "b")], name="a<b")
    A = locally_posetal(base, [], name="a<b")
    ab = base.hom("a", "b")[0]
    ob = {"a": "b", "b": "b"}
    one = {f: A.id1("b") for f in A.one_cells}
    T = FFunctor(A, A, ob, one, {c: A.id2(one[A.src2(c)])
                                 for c in A.two_cells}, name="closure")
    eta = {"a": ab, "b": A.id1("b")}
    mu = {"a": A.id1("b"), "b": A.id1("b")}
    return mo.EnhancedMonad(A, T, mu, eta, name="closure")


def action_monad(M):
    """The monad ``M × −`` on 𝔽 for a strict monoidal category ``M``:
    ``T(A)`` has objects ``(m, a)``, tight when ``a`` is.  Laws are
    checked on a few small test objects."""
    import functools
    from .fcat import FCell, FMap, FObject, chordate
    from .limits import AMBIENT as K
    from . import monad as mo
    C = M.cat

    @functools.lru_cache(maxsize=None)
    def on_objects(A):
        P = fc.product(C, A.loose, name=None)
        return FObject.from_subset(P, [(m, a) for m in C.objects
                                       for a in A.tight_objects])

    def on_one_cells(f):
        F = f.loose
        TA, TB = on_objects(f.source), on_objects(f.target)
        return FMap(TA, TB, fc.FiniteFunctor(
            TA.loose, TB.loose, {(m, a): (m, F.ob[a]) for m, a in
                                 TA.loose.objects},
            {(n, g): (n, F.mor[g]) for n, g in TA.loose.morphisms},
            check=False), check=False)

    def on_two_cells(c):
        f, g = on_one_cells(c.source), on_one_cells(c.target)
        comps = {(m, a): (C.identities[m], c.components[a])
                 for m, a in f.source.loose.objects}
        return FCell(f, g, fc.NaturalTransformation(f.loose, g.loose, comps))

    def mu(A):
        TA = on_objects(A)
        TTA = on_objects(TA)
        return FMap(TTA, TA, fc.FiniteFunctor(
            TTA.loose, TA.loose,
            {(m, (n, a)): (M.tensor_ob(m, n), a) for m, (n, a) in
             TTA.loose.objects},
            {(p, (q, g)): (M.tensor_mor(p, q), g) for p, (q, g) in
             TTA.loose.morphisms}, check=False), check=False)

    def eta(A):
        TA = on_objects(A)
        return FMap(A, TA, fc.FiniteFunctor(
            A.loose, TA.loose, {a: (M.unit, a) for a in A.loose.objects},
            {g: (C.identities[M.unit], g) for g in A.loose.morphisms},
            check=False), check=False)

    W = fc.walking_arrow()
    tests = [chordate(fc.terminal()), chordate(W),
             FObject.from_subset(W, ["0"])]
    T = mo.Endofunctor(K, on_objects, on_one_cells, on_two_cells,
                       name=f"{M.name}×-")
    return mo.EnhancedMonad(K, T, mu, eta, objects=tests,
                            name=f"action-{M.name}")


def action_algebras(monad, M):
    """Algebras of :func:`action_monad` on the walking arrow (``M`` must
    be ``arrow-max``): the trivial action and the action by join."""
    from .fcat import chordate
    from . import monad as mo
    W = chordate(fc.walking_arrow())
    TW = monad.T.ob[W]
    trivial = thin_fmap(TW, W, lambda t: t[1])
    join = thin_fmap(TW, W, lambda t: M.tensor_ob(t[0], t[1]))
    return {"trivial": mo.TAlgebra(W, trivial, name="trivial"),
            "join": mo.TAlgebra(W, join, name="join")}


def mate_fixtures():
    """``name → (alpha, beta, eta, eps, w)``.

    * ``identity``: identities on the word model of ``arrow-max``.
    * ``iso``: on the tight-iso sketch, ``alpha`` an isomorphism and
      ``beta`` its inverse.
    * ``join-right-adjoint``: the strict monoidal inclusion of
      ``arrow-max`` into ``square-join`` and its right adjoint (``w = l``).
    * ``meet-left-adjoint``: the inclusion of ``arrow-min`` into
      ``square-meet`` and its left adjoint (``w = c``).
    """
    from .fcat import LooseTransformation, chordate, identity_transformation
    from .limits import AMBIENT as K
    out = {}
    S = product_fragment_sketch()
    cats = monoidal_categories()
    lattices = lattice_monoidal_categories()
    M = word_model(S, cats["arrow-max"])
    alpha = identity_transformation(M, ("s", "s"))
    ids = {x: K.id1(M.ob[x]) for x in S.carrier.objects}
    cells = {x: K.id2(f) for x, f in ids.items()}
    out["identity"] = (alpha, ids, cells, dict(cells), "l")

    T = tight_iso_sketch()
    D2 = fc.discrete(["p", "q"])
    A = chordate(D2)
    swap = fc.FiniteFunctor(D2, D2, {"p": "q", "q": "p"},
                            {"1_p": "1_q", "1_q": "1_p"})
    idD = fc.identity_functor(D2)
    Ms = tight_iso_model(T, A, A, swap)
    Ns = tight_iso_model(T, A, A, idD)
    from .fcat import FMap
    a = {"0": K.id1(A), "1": FMap(A, A, swap)}
    alpha = LooseTransformation(Ms, Ns, a, {}, ("s", "s"), name="swap")
    beta = {"0": K.id1(A), "1": FMap(A, A, swap)}
    cells = {x: K.id2(K.id1(A)) for x in ("0", "1")}
    out["iso"] = (alpha, beta, cells, dict(cells), "l")

    up = {"0": "00", "1": "11"}
    M = word_model(S, cats["arrow-max"])
    N = word_model(S, lattices["square-join"])
    right = {d: "1" if d == "11" else "0" for d in SQUARE}
    out["join-right-adjoint"] = _thin_adjunction(M, N, up, right, "l") + \
        ("l",)
    M = word_model(S, cats["arrow-min"])
    N = word_model(S, lattices["square-meet"])
    left = {d: "0" if d == "00" else "1" for d in SQUARE}
    out["meet-left-adjoint"] = _thin_adjunction(M, N, up, left, "c") + \
        ("c",)
    return out
