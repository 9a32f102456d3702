"""Lifting and orthogonality with respect to a class of maps.

Two bases are supported: ``"cat"`` (finite categories and functors) and
``"f"`` (full embeddings and tight FMaps).  Hom-objects are functor
categories, with tight parts of FMaps in the second case; ``Cat`` is
handled as the chordate part of 𝔽.
"""

import random
import warnings

from . import fincat as fc
from .fcat import (FMap, FObject, chordate, hom_ambient_f, is_iso_fmap,
                   loose_only, postcompose_map, precompose_map)
from .fincat import FiniteFunctor, violation
from .sketch import EQUIVALENCE, ISO, RClass, precompose_hom, r_class

BASES = ("cat", "f")


class BridgeViolation(RuntimeWarning):
    """Orthogonality and lifting against ``!_K`` disagreed."""


def _base_of(f, base):
    if base is not None:
        if base not in BASES:
            raise ValueError(f"unknown base {base!r}")
        return base
    return "f" if isinstance(f, FMap) else "cat"


def _as_fmap(f):
    """A functor as a map between chordate FObjects."""
    if isinstance(f, FMap):
        return f
    return FMap(chordate(f.source), chordate(f.target), f, check=False)


def _as_fobject(x):
    return x if isinstance(x, FObject) else chordate(x)


def _unwrap(f, base):
    return f if base == "f" else f.loose


def _in_class(R, f, base):
    R = r_class(R)
    if base == "cat" and R in (ISO, EQUIVALENCE):
        return fc.is_isomorphism(f) if R is ISO else fc.is_equivalence(f)
    return R.contains(f)


def terminal_map(K):
    """``!_K: K → 1`` in the base of ``K``."""
    if isinstance(K, FObject):
        one = chordate(fc.terminal())
        return FMap(K, one, fc.constant_functor(K.loose, one.loose, "*"))
    return fc.constant_functor(K, fc.terminal(), "*")


def _pullback_fobject(u, v):
    """Pullback of a cospan of tight FMaps, componentwise."""
    P, p1, p2 = fc.pullback_category(u.loose, v.loose)
    tight = [x for x in P.objects if u.source.is_tight_object(x[0])
             and v.source.is_tight_object(x[1])]
    S = FObject.from_subset(P, tight)
    return (S, FMap(S, u.source, p1, check=False),
            FMap(S, v.source, p2, check=False))


class GapProblem:
    """The square ``K(f, D)·K(B, g) = K(A, g)·K(f, C)`` for ``f: A → B``
    and ``g: C → D``, its pullback ``Sq(f, g)`` with projections ``p1`` to
    ``K(B, D)`` and ``p2`` to ``K(A, C)``, and the induced map ``gap``."""

    def __init__(self, f, g, base, homs, maps, square, p1, p2, gap):
        self.f, self.g, self.base = f, g, base
        self.homs = homs
        self.maps = maps
        self.square = square
        self.p1, self.p2 = p1, p2
        self.gap = gap

    def __repr__(self):
        n = len(self.square.loose.objects)
        return f"<GapProblem over {self.base}: Sq with {n} objects>"

    def violations(self):
        """Failures of the square and of the factorization through it."""
        m = self.maps
        out = []
        left = fc.compose_key(m["B,g"].loose, m["f,D"].loose)
        right = fc.compose_key(m["f,C"].loose, m["A,g"].loose)
        if left != right:
            out.append(violation("square", ("f,D", "B,g")))
        if fc.compose_key(self.gap.loose, self.p1.loose) != \
                m["B,g"].loose.key:
            out.append(violation("gap-first", ("B,g",)))
        if fc.compose_key(self.gap.loose, self.p2.loose) != \
                m["f,C"].loose.key:
            out.append(violation("gap-second", ("f,C",)))
        return out


def gap_map(f, g, base=None, bound=fc.DEFAULT_BOUND):
    """Build ``⟨f, g⟩: K(B, C) → Sq(f, g)``."""
    base = _base_of(f, base)
    F, G = _as_fmap(f), _as_fmap(g)
    A, B, C, D = F.source, F.target, G.source, G.target
    homs = {"B,C": hom_ambient_f(B, C, bound),
            "A,C": hom_ambient_f(A, C, bound),
            "B,D": hom_ambient_f(B, D, bound),
            "A,D": hom_ambient_f(A, D, bound)}
    maps = {
        "f,C": precompose_map(F, C, bound, (homs["B,C"], homs["A,C"])),
        "f,D": precompose_map(F, D, bound, (homs["B,D"], homs["A,D"])),
        "B,g": postcompose_map(B, G, bound, (homs["B,C"], homs["B,D"])),
        "A,g": postcompose_map(A, G, bound, (homs["A,C"], homs["A,D"])),
    }
    square, p1, p2 = _pullback_fobject(maps["f,D"], maps["A,g"])
    H, Q = homs["B,C"].loose, square.loose
    bg, fc_ = maps["B,g"].loose, maps["f,C"].loose
    obs = {n: (bg.ob[n], fc_.ob[n]) for n in H.objects}
    mors = {m: (bg.mor[m], fc_.mor[m]) for m in H.morphisms}
    gap = FMap(homs["B,C"], square, FiniteFunctor(H, Q, obs, mors,
                                                  check=False), check=False)
    return GapProblem(f, g, base, homs, maps, square, p1, p2, gap)


def has_lifting(f, g, R=ISO, base=None, bound=fc.DEFAULT_BOUND):
    """``f`` has the left lifting property against ``g`` relative to ``R``:
    the gap map lies in ``R``."""
    base = _base_of(f, base)
    p = gap_map(f, g, base, bound)
    return _in_class(R, _unwrap(p.gap, base), base)


def orthogonality_map(K, m, bound=fc.DEFAULT_BOUND):
    """Precomposition ``K(m, K): K(M₂, K) → K(M₁, K)``."""
    return precompose_map(_as_fmap(m), _as_fobject(K), bound)


def is_orthogonal(K, m, R=ISO, base=None, bound=fc.DEFAULT_BOUND):
    """``K`` is orthogonal to ``m`` relative to ``R``."""
    base = _base_of(m, base)
    return _in_class(R, _unwrap(orthogonality_map(K, m, bound), base), base)


def bridge_factorization(K, m, bound=fc.DEFAULT_BOUND):
    """Whether the projection ``Sq(m, !_K) → K(M₁, K)`` is an isomorphism
    whose composite with ``⟨m, !_K⟩`` is ``K(m, K)``."""
    p = gap_map(m, terminal_map(K), bound=bound)
    direct = orthogonality_map(K, m, bound)
    return is_iso_fmap(p.p2) and \
        fc.compose_key(p.gap.loose, p.p2.loose) == direct.loose.key


def verify_bridge(K, m, R=ISO, base=None, bound=fc.DEFAULT_BOUND):
    """Compare orthogonality of ``K`` to ``m`` with lifting of ``m``
    against ``!_K``; a disagreement is warned about and returns False."""
    base = _base_of(m, base)
    left = is_orthogonal(K, m, R, base, bound)
    right = has_lifting(m, terminal_map(K), R, base, bound)
    if left != right:
        warnings.warn(f"orthogonality {left} but lifting {right}",
                      BridgeViolation, stacklevel=2)
    return left == right


# -- the generating set -------------------------------------------------------------

def _generator_pairs():
    e, pt = fc.empty(), fc.terminal()
    two = fc.discrete(["0", "1"], name="two")
    arrow = fc.walking_arrow()
    pair = fc.parallel_pair()
    out = [("empty-point", e, pt, fc.FiniteFunctor(e, pt, {}, {})),
           ("boundary-arrow", two, arrow,
            fc.FiniteFunctor(two, arrow, {"0": "0", "1": "1"},
                             {"1_0": "1_0", "1_1": "1_1"})),
           ("pair-arrow", pair, arrow,
            fc.FiniteFunctor(pair, arrow, {"0": "0", "1": "1"},
                             {"1_0": "1_0", "1_1": "1_1", "s": "a",
                              "t": "a"})),
           ("two-point", two, pt, fc.constant_functor(two, pt, "*"))]
    return out


def generators():
    """The eight generating FMaps, named: the four functors ``∅ → •``,
    ``• • → •→•``, ``⇉ → →`` and ``• • → •`` between chordate objects,
    then the same four between objects with empty tight part."""
    out = []
    for kind, wrap in (("chordate", chordate), ("loose", loose_only)):
        for name, A, B, F in _generator_pairs():
            out.append((f"{name}/{kind}", FMap(wrap(A), wrap(B), F)))
    return out


def in_right_class(phi):
    """Both components of a tight FMap are isomorphisms."""
    if not phi.is_tight:
        return False
    return fc.is_isomorphism(phi.tight) and fc.is_isomorphism(phi.loose)


def lifting_report(phi, bound=fc.DEFAULT_BOUND):
    """Per-generator lifting verdicts (``R`` = iso) for a tight FMap."""
    return {name: has_lifting(G, phi, ISO, "f", bound)
            for name, G in generators()}


# -- random fixtures -------------------------------------------------------------------

def _small_categories():
    return [fc.empty(), fc.terminal(), fc.discrete(["p", "q"]),
            fc.walking_arrow(), fc.walking_iso(), fc.parallel_pair(),
            fc.chain(3), fc.discrete(["p", "q", "r"])]


def random_fobject(rng, max_objects=3):
    """A random FObject with at most ``max_objects`` loose objects."""
    cats = [C for C in _small_categories()
            if len(C.objects) <= max_objects]
    C = rng.choice(cats)
    tight = [x for x in C.objects if rng.random() < 0.6]
    return FObject.from_subset(C, tight)


def random_fmap(rng, max_objects=3, bound=fc.DEFAULT_BOUND):
    """A random tight FMap; about half are isomorphisms or differ from
    one only in their tight part."""
    while True:
        A = random_fobject(rng, max_objects)
        roll = rng.random()
        if roll < 0.5:
            C = A.loose
            autos = [F for F in fc.enumerate_functors(C, C, bound)
                     if fc.is_isomorphism(F)]
            F = rng.choice(autos)
            image = {F.ob[x] for x in A.tight_objects}
            extra = [x for x in C.objects
                     if x not in image and rng.random() < 0.3]
            B = FObject.from_subset(C, sorted(image | set(extra),
                                              key=fc.sort_key))
        else:
            B = random_fobject(rng, max_objects)
            maps = [F for F in fc.enumerate_functors(A.loose, B.loose, bound)
                    if all(B.is_tight_object(F.ob[x])
                           for x in A.tight_objects)]
            if not maps:
                continue
            F = rng.choice(maps)
        return FMap(A, B, F)


def random_category_functor(rng, max_objects=3, bound=fc.DEFAULT_BOUND):
    """A random functor between small categories."""
    while True:
        A = rng.choice(_small_categories())
        B = rng.choice(_small_categories())
        if len(A.objects) > max_objects or len(B.objects) > max_objects:
            continue
        maps = fc.enumerate_functors(A, B, bound)
        if maps:
            return rng.choice(maps)


def random_orthogonality_pair(rng, base, max_objects=3,
                              bound=fc.DEFAULT_BOUND):
    """A random ``(K, m)`` in the given base."""
    if base == "f":
        return random_fobject(rng, max_objects), \
            random_fmap(rng, max_objects, bound)
    K = rng.choice([C for C in _small_categories()
                    if len(C.objects) <= max_objects])
    return K, random_category_functor(rng, max_objects, bound)


def wfs_audit(n, seed=0, bound=fc.DEFAULT_BOUND):
    """Check lifting against all generators ⇔ right class on ``n`` random
    FMaps; returns the list of per-map records."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        phi = random_fmap(rng, bound=bound)
        lifts = lifting_report(phi, bound)
        right = in_right_class(phi)
        out.append({"index": i, "in_right_class": right,
                    "lifts_all": all(lifts.values()),
                    "failed_generators": sorted(k for k, v in lifts.items()
                                                if not v),
                    "agree": all(lifts.values()) == right})
    return out


# -- generalised adjunctions ----------------------------------------------------------

class AdjunctionReport:
    """Failures of naturality of ``η`` and of the hom composites."""

    def __init__(self, r, failures, checked):
        self.r = r
        self.failures = failures
        self.checked = checked

    @property
    def valid(self):
        return not self.failures

    def __bool__(self):
        return self.valid

    def __repr__(self):
        state = "certified" if self.valid else f"{len(self.failures)} failures"
        return f"<AdjunctionReport {self.r.tag}: {state}>"

    def to_json(self):
        return {"r": self.r.tag, "valid": self.valid,
                "failures": self.failures, "pairs_checked": self.checked}


def adjunction_composite(U, F_ob, eta, c, d):
    """``D(Fc, d) → C(UFc, Ud) → C(c, Ud)`` as an FMap."""
    C, D = U.target, U.source
    Hd = D.hom(F_ob[c], d)
    Hc = C.hom(U.ob[F_ob[c]], U.ob[d])
    act = FiniteFunctor(Hd.loose, Hc.loose,
                        {f: U.one[f] for f in Hd.loose.objects},
                        {a: U.two[a] for a in Hd.loose.morphisms},
                        check=False)
    first = FMap(Hd, Hc, act, check=False)
    return first.then(precompose_hom(C, eta[c], U.ob[d]))


def check_generalized_adjunction(U, F_ob, F_one, eta, R=ISO,
                                 bound=fc.DEFAULT_BOUND, base="f"):
    """Check that ``F`` (objects ``F_ob``, 1-cells ``F_one``) is a
    generalised left adjoint of the F-functor ``U: D → C`` relative to
    ``R``, with unit 1-cells ``eta[c]: c → UFc``.

    Verifies naturality of ``η`` on every 1-cell of ``C`` and membership of
    every hom composite in ``R``; with ``base="cat"`` only loose parts of
    hom-objects are compared.
    """
    R = r_class(R)
    C, D = U.target, U.source
    failures = []
    for u in C.one_cells:
        a, b = C.src1(u), C.dst1(u)
        Fu = F_one[u]
        if D.src1(Fu) != F_ob[a] or D.dst1(Fu) != F_ob[b]:
            failures.append({"kind": "functor-type", "at": [fc.label(u)]})
            continue
        if C.comp1(U.one[Fu], eta[a]) != C.comp1(eta[b], u):
            failures.append({"kind": "unit-naturality",
                             "at": [fc.label(u)]})
    checked = 0
    for c in C.objects:
        for d in D.objects:
            checked += 1
            if checked > bound:
                raise fc.EnumerationBoundExceeded(bound, "object pairs")
            comp = adjunction_composite(U, F_ob, eta, c, d)
            ok = _in_class(R, comp.loose, "cat") if base == "cat" else \
                R.contains(comp)
            if not ok:
                failures.append({"kind": f"composite-not-{R.tag}",
                                 "at": [fc.label(c), fc.label(d)]})
    return AdjunctionReport(R, failures, checked)


__all__ = [
    "BASES", "BridgeViolation", "GapProblem", "gap_map", "has_lifting",
    "orthogonality_map", "is_orthogonal", "bridge_factorization",
    "verify_bridge", "terminal_map", "generators", "in_right_class",
    "lifting_report", "random_fobject", "random_fmap",
    "random_category_functor", "random_orthogonality_pair", "wfs_audit",
    "AdjunctionReport", "adjunction_composite",
    "check_generalized_adjunction", "RClass", "ISO", "EQUIVALENCE",
]
