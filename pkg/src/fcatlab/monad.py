"""Enhanced 2-monads, their algebras and weak morphisms, the mate
construction behind doctrinal adjunction, and finite equivalence witnesses
between models of a sketch and algebras of a monad.

A monad lives on a 2-category ``carrier`` with the interface of
:class:`~fcatlab.fcat.FiniteFCategory` (or the ambient 𝔽).  On a finite
carrier every law is checked exhaustively; on 𝔽 the laws are checked on a
supplied list of test objects and every 1- and 2-cell between them.
"""

import collections
import itertools

from . import fincat as fc
from .fincat import (CategoryError, EnumerationBoundExceeded, NotComposable,
                     ShapeMismatch, label, violation)
from .fcat import (FFunctor, FiniteFCategory, LooseTransformation,
                   Modification, WEAKNESS, check_loose_natural,
                   check_modification, compose_transformations,
                   identity_transformation, restrict_transformation,
                   whisker_l, whisker_r)
from .limits import AMBIENT
from .sketch import enumerate_loose_transformations


class NotAnAdjunction(CategoryError):
    """Adjunction data failing a triangle identity or a tightness
    precondition; ``witness`` names the component."""


class CommutationFailure(CategoryError):
    """A correspondence whose algebras do not sit over the restricted
    models."""


# -- carrier access ------------------------------------------------------------

def _one_cells(K, x, y):
    if hasattr(K, "one_cells_between"):
        return K.one_cells_between(x, y)
    return K.one_cells(x, y)


def _two_cells(K, f, g):
    if hasattr(K, "two_cells_between"):
        return K.two_cells_between(f, g)
    return K.two_cells(f, g)


class _Lazy:
    """A read-only mapping computed on demand from a function."""

    def __init__(self, fn):
        self.fn = fn
        self._cache = {}

    def __getitem__(self, x):
        try:
            return self._cache[x]
        except KeyError:
            v = self._cache[x] = self.fn(x)
            return v
        except TypeError:
            return self.fn(x)


def _mapping(m):
    return _Lazy(m) if callable(m) and not hasattr(m, "__getitem__") else m


class Endofunctor:
    """A 2-functor ``K → K`` given by three functions, for carriers such
    as 𝔽 that are not enumerated up front."""

    def __init__(self, carrier, on_objects, on_one_cells, on_two_cells,
                 name=None):
        self.source = self.target = carrier
        self.ob = _Lazy(on_objects)
        self.one = _Lazy(on_one_cells)
        self.two = _Lazy(on_two_cells)
        self.name = name


# -- monads -----------------------------------------------------------------------

class EnhancedMonad:
    """A monad ``(T, μ, η)`` on ``carrier``; ``mu[x]: TTx → Tx`` and
    ``eta[x]: x → Tx`` are tight 1-cells.

    ``objects`` are the objects on which laws and enumerations run; they
    default to all objects of a finite carrier.  ``base`` optionally holds
    the :class:`ModelCategory` the carrier was built from.
    """

    def __init__(self, carrier, T, mu, eta, objects=None, name=None,
                 base=None):
        self.carrier = carrier
        self.T = T
        self.mu = _mapping(mu)
        self.eta = _mapping(eta)
        if objects is None:
            objects = getattr(carrier, "objects", None)
            if objects is None:
                raise ShapeMismatch("an infinite carrier needs test objects")
        self.objects = list(objects)
        self.name = name
        self.base = base

    def __repr__(self):
        n = f" {self.name}" if self.name else ""
        return f"<EnhancedMonad{n} on {len(self.objects)} objects>"

    def one_cells(self, tight_only=False):
        K = self.carrier
        out = []
        for x in self.objects:
            for y in self.objects:
                out.extend(f for f in _one_cells(K, x, y)
                           if not tight_only or K.is_tight(f))
        return out

    def two_cells(self, f, g):
        return _two_cells(self.carrier, f, g)

    def violations(self):
        return check_monad(self).violations


class MonadReport:
    def __init__(self, violations):
        self.violations = violations

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def to_json(self):
        return {"valid": self.valid, "violations": self.violations}


def identity_monad(carrier, objects=None, base=None):
    """``T = 1`` with identity unit and multiplication."""
    if isinstance(carrier, FiniteFCategory):
        T = FFunctor(carrier, carrier, {x: x for x in carrier.objects},
                     {f: f for f in carrier.one_cells},
                     {a: a for a in carrier.two_cells}, check=False)
    else:
        T = Endofunctor(carrier, lambda x: x, lambda f: f, lambda a: a)
    return EnhancedMonad(carrier, T, carrier.id1, carrier.id1,
                         objects=objects, name="identity", base=base)


def check_monad(T, mu=None, eta=None, objects=None):
    """Every violated monad law instance.  Ill-typed components raise
    :class:`ShapeMismatch`."""
    if isinstance(T, EnhancedMonad):
        monad = T
    else:
        monad = EnhancedMonad(T.source, T, mu, eta, objects=objects)
    K, F = monad.carrier, monad.T
    mu, eta = monad.mu, monad.eta
    out = []

    def report(kind, at, detail=""):
        out.append(violation(kind, at, detail))

    for x in monad.objects:
        Tx = F.ob[x]
        TTx = F.ob[Tx]
        if (K.src1(eta[x]), K.dst1(eta[x])) != (x, Tx):
            raise ShapeMismatch(f"unit component at {label(x)} is mistyped",
                                violation("component-type", ("eta", x)))
        if (K.src1(mu[x]), K.dst1(mu[x])) != (TTx, Tx):
            raise ShapeMismatch(
                f"multiplication component at {label(x)} is mistyped",
                violation("component-type", ("mu", x)))
        for name, c in (("eta", eta[x]), ("mu", mu[x])):
            if not K.is_tight(c):
                report("component-not-tight", (name, x))
    ones = monad.one_cells()
    for f in ones:
        x, y = K.src1(f), K.dst1(f)
        Tf = F.one[f]
        if (K.src1(Tf), K.dst1(Tf)) != (F.ob[x], F.ob[y]):
            raise ShapeMismatch(f"T({label(f)}) is mistyped",
                                violation("functor-type", (f,)))
        if K.is_tight(f) and not K.is_tight(Tf):
            report("functor-tightness", (f,))
        if K.comp1(Tf, eta[x]) != K.comp1(eta[y], f):
            report("eta-naturality", (f,))
        if K.comp1(Tf, mu[x]) != K.comp1(mu[y], F.one[F.one[f]]):
            report("mu-naturality", (f,))
    for x in monad.objects:
        if F.one[K.id1(x)] != K.id1(F.ob[x]):
            report("functor-unit", (x,))
    by_end = collections.defaultdict(list)
    by_src = collections.defaultdict(list)
    for f in ones:
        by_end[(K.src1(f), K.dst1(f))].append(f)
        by_src[K.src1(f)].append(f)
    for f in ones:
        for g in by_src[K.dst1(f)]:
            if F.one[K.comp1(g, f)] != K.comp1(F.one[g], F.one[f]):
                report("functor-composition", (g, f))
    for f in ones:
        x, y = K.src1(f), K.dst1(f)
        for g in by_end[(x, y)]:
            for a in monad.two_cells(f, g):
                Ta = F.two[a]
                if whisker_r(K, Ta, eta[x]) != whisker_l(K, eta[y], a):
                    report("eta-2-naturality", (a,))
                if whisker_r(K, Ta, mu[x]) != \
                        whisker_l(K, mu[y], F.two[Ta]):
                    report("mu-2-naturality", (a,))
    for x in monad.objects:
        Tx = F.ob[x]
        if K.comp1(mu[x], F.one[mu[x]]) != K.comp1(mu[x], mu[Tx]):
            report("associativity", (x,))
        if K.comp1(mu[x], F.one[eta[x]]) != K.id1(Tx):
            report("left-unit", (x,))
        if K.comp1(mu[x], eta[Tx]) != K.id1(Tx):
            report("right-unit", (x,))
    return MonadReport(out)


# -- algebras and their morphisms -----------------------------------------------

class TAlgebra:
    """A strict algebra: ``structure: T(carrier) → carrier`` tight."""

    def __init__(self, carrier, structure, name=None):
        self.carrier = carrier
        self.structure = structure
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, TAlgebra):
            return NotImplemented
        return self.carrier == other.carrier and \
            self.structure == other.structure

    def __hash__(self):
        return hash((self.carrier, self.structure))

    def __repr__(self):
        return f"TAlgebra({label(self.name or self.carrier)})"


def check_algebra(monad, alg):
    """Failures of the unit and associativity laws of ``alg``."""
    K, F = monad.carrier, monad.T
    A, a = alg.carrier, alg.structure
    if (K.src1(a), K.dst1(a)) != (F.ob[A], A):
        return [violation("structure-type", (A,))]
    out = []
    if not K.is_tight(a):
        out.append(violation("structure-not-tight", (A,)))
    if K.comp1(a, monad.eta[A]) != K.id1(A):
        out.append(violation("unit", (A,)))
    if K.comp1(a, F.one[a]) != K.comp1(a, monad.mu[A]):
        out.append(violation("associativity", (A,)))
    return out


def enumerate_algebras(monad, objects=None, bound=fc.DEFAULT_BOUND):
    """Every algebra structure on the given objects."""
    K, F = monad.carrier, monad.T
    out = []
    for A in (monad.objects if objects is None else objects):
        for a in _one_cells(K, F.ob[A], A):
            if not K.is_tight(a):
                continue
            alg = TAlgebra(A, a)
            if not check_algebra(monad, alg):
                out.append(alg)
                if len(out) > bound:
                    raise EnumerationBoundExceeded(bound, "algebras")
    return out


class WTMorphism:
    """A ``w``-morphism ``(f, fbar)`` of algebras.  For ``w`` in
    ``l, p, s`` the cell runs ``b·T(f) ⇒ f·a``; for ``c`` it is reversed."""

    def __init__(self, w, f, fbar, source, target):
        if w not in WEAKNESS:
            raise ValueError(f"unknown weakness {w!r}")
        self.w = w
        self.f = f
        self.fbar = fbar
        self.source = source
        self.target = target

    def __eq__(self, other):
        if not isinstance(other, WTMorphism):
            return NotImplemented
        return (self.w, self.f, self.fbar, self.source, self.target) == \
            (other.w, other.f, other.fbar, other.source, other.target)

    def __hash__(self):
        return hash((self.w, self.f, self.fbar))

    def __repr__(self):
        return f"WTMorphism({self.w}, {label(self.f)})"


def square_endpoints(monad, f, source, target, w):
    """Source and target 1-cells of the structure cell of ``f``."""
    K = monad.carrier
    lax_src = K.comp1(target.structure, monad.T.one[f])
    lax_dst = K.comp1(f, source.structure)
    return (lax_dst, lax_src) if w == "c" else (lax_src, lax_dst)


def w_morphism_failures(monad, m, require_tight=True):
    """Every failed condition of ``m``: cell type, the unit and
    multiplication pastings, and the weakness constraints.  A strict
    morphism must have a tight underlying 1-cell unless
    ``require_tight`` is false (strict squares between loose 1-cells)."""
    K, F = monad.carrier, monad.T
    A, B = m.source, m.target
    f, fbar = m.f, m.fbar
    at = (label(A.carrier), label(B.carrier))
    if (K.src1(f), K.dst1(f)) != (A.carrier, B.carrier):
        return [violation("underlying-type", at)]
    if (K.src2(fbar), K.dst2(fbar)) != \
            square_endpoints(monad, f, A, B, m.w):
        return [violation("cell-type", at)]
    out = []
    a, b = A.structure, B.structure
    if whisker_r(K, fbar, monad.eta[A.carrier]) != K.id2(f):
        out.append(violation("unit-pasting", at))
    lhs = whisker_r(K, fbar, monad.mu[A.carrier])
    over_a = whisker_r(K, fbar, F.one[a])
    over_b = whisker_l(K, b, F.two[fbar])
    rhs = K.vcomp(over_b, over_a) if m.w == "c" else K.vcomp(over_a, over_b)
    if lhs != rhs:
        out.append(violation("multiplication-pasting", at))
    if m.w == "s":
        if not K.is_identity2(fbar):
            out.append(violation("not-identity", at))
        if require_tight and not K.is_tight(f):
            out.append(violation("not-tight", at))
    elif m.w == "p" and K.inverse2(fbar) is None:
        out.append(violation("not-invertible", at))
    return out


def check_w_morphism(monad, m, require_tight=True):
    return not w_morphism_failures(monad, m, require_tight)


def identity_w_morphism(monad, alg, w):
    K = monad.carrier
    return WTMorphism(w, K.id1(alg.carrier), K.id2(alg.structure), alg, alg)


def compose_w_morphisms(m2, m1, monad):
    """``m2 ∘ m1`` with the pasted structure cell."""
    K, F = monad.carrier, monad.T
    if m1.target != m2.source:
        raise NotComposable("algebra morphisms not composable")
    if m1.w != m2.w:
        raise ValueError("weaknesses differ")
    first = whisker_r(K, m2.fbar, F.one[m1.f])
    second = whisker_l(K, m2.f, m1.fbar)
    cell = K.vcomp(first, second) if m1.w == "c" else K.vcomp(second, first)
    return WTMorphism(m1.w, K.comp1(m2.f, m1.f), cell, m1.source, m2.target)


def check_t_cell(monad, rho, m1, m2):
    """Whether ``rho: m1.f ⇒ m2.f`` is compatible with the structure
    cells."""
    K, F = monad.carrier, monad.T
    b = m1.target.structure
    on_b = whisker_l(K, b, F.two[rho])
    on_a = whisker_r(K, rho, m1.source.structure)
    if m1.w == "c":
        return K.vcomp(on_b, m1.fbar) == K.vcomp(m2.fbar, on_a)
    return K.vcomp(m2.fbar, on_b) == K.vcomp(on_a, m1.fbar)


def enumerate_w_morphisms(monad, A, B, w, bound=fc.DEFAULT_BOUND,
                          require_tight=False):
    """All ``w``-morphisms ``A → B``; strict ones may have loose
    underlying 1-cells unless ``require_tight``."""
    K = monad.carrier
    out = []
    for f in _one_cells(K, A.carrier, B.carrier):
        if w == "s" and require_tight and not K.is_tight(f):
            continue
        src, dst = square_endpoints(monad, f, A, B, w)
        cells = [K.id2(src)] if w == "s" and src == dst else \
            ([] if w == "s" else _two_cells(K, src, dst))
        for fbar in cells:
            m = WTMorphism(w, f, fbar, A, B)
            if not w_morphism_failures(monad, m, require_tight):
                out.append(m)
                if len(out) > bound:
                    raise EnumerationBoundExceeded(bound, "T-morphisms")
    return out


class AlgebraCategory:
    """The F-category of the given algebras: loose 1-cells are
    ``w``-morphisms, tight ones the strict morphisms with a tight
    underlying 1-cell, 2-cells the compatible 2-cells of the carrier.
    Objects are the indices of ``algebras``."""

    def __init__(self, monad, algebras, w, bound=fc.DEFAULT_BOUND):
        K = monad.carrier
        self.monad = monad
        self.algebras = list(algebras)
        self.w = w
        n = len(self.algebras)
        self.morphisms = {}
        self.homs = {}
        index = {}
        for i, j in itertools.product(range(n), repeat=2):
            ids = []
            for k, m in enumerate(enumerate_w_morphisms(
                    monad, self.algebras[i], self.algebras[j], w, bound)):
                mid = (i, j, k)
                self.morphisms[mid] = m
                index[(i, j, m.f, m.fbar)] = mid
                ids.append(mid)
            self.homs[(i, j)] = ids
            if len(self.morphisms) > bound:
                raise EnumerationBoundExceeded(bound, "T-morphisms")
        self.tight = [mid for mid, m in self.morphisms.items()
                      if K.is_tight(m.f) and K.is_identity2(m.fbar)]
        self.cells = {}
        cell_index = {}
        for (i, j), ids in self.homs.items():
            for p, q in itertools.product(ids, repeat=2):
                m1, m2 = self.morphisms[p], self.morphisms[q]
                for k, rho in enumerate(
                        r for r in _two_cells(K, m1.f, m2.f)
                        if check_t_cell(monad, r, m1, m2)):
                    cid = (p, q, k)
                    self.cells[cid] = rho
                    cell_index[(p, q, rho)] = cid
            if len(self.cells) > bound:
                raise EnumerationBoundExceeded(bound, "T-cells")

        def find(i, j, m):
            return index[(i, j, m.f, m.fbar)]

        id1 = {i: find(i, i, identity_w_morphism(monad, self.algebras[i], w))
               for i in range(n)}
        comp1 = {}
        for (i, j), fs in self.homs.items():
            for (j2, k), gs in self.homs.items():
                if j2 != j:
                    continue
                for f in fs:
                    for g in gs:
                        gf = compose_w_morphisms(self.morphisms[g],
                                                 self.morphisms[f], monad)
                        comp1[(g, f)] = find(i, k, gf)
        id2 = {mid: cell_index[(mid, mid, K.id2(m.f))]
               for mid, m in self.morphisms.items()}
        vcomp, hcomp = {}, {}
        by_src = collections.defaultdict(list)
        for cid in self.cells:
            by_src[cid[0]].append(cid)
        for cid, rho in self.cells.items():
            p, q, _ = cid
            for did in by_src[q]:
                vcomp[(did, cid)] = cell_index[
                    (p, did[1], K.vcomp(self.cells[did], rho))]
        for cid, rho in self.cells.items():
            p, q, _ = cid
            for did, sigma in self.cells.items():
                if (did[0], p) not in comp1:
                    continue
                hcomp[(did, cid)] = cell_index[
                    (comp1[(did[0], p)], comp1[(did[1], q)],
                     K.hcomp(sigma, rho))]
        self.fcat = FiniteFCategory(
            range(n), {mid: (mid[0], mid[1]) for mid in self.morphisms},
            {cid: (cid[0], cid[1]) for cid in self.cells}, id1, id2, comp1,
            vcomp, hcomp, tight=self.tight, name=f"T-Alg[{w}]", check=False)


def isomorphic_algebras(monad, A, B):
    """An invertible strict morphism ``A → B`` with tight underlying
    1-cell, or ``None``."""
    K, F = monad.carrier, monad.T
    for f in _one_cells(K, A.carrier, B.carrier):
        if not K.is_tight(f):
            continue
        if K.comp1(B.structure, F.one[f]) != K.comp1(f, A.structure):
            continue
        for g in _one_cells(K, B.carrier, A.carrier):
            if K.is_tight(g) and K.comp1(g, f) == K.id1(A.carrier) and \
                    K.comp1(f, g) == K.id1(B.carrier):
                return f
    return None


# -- mates and doctrinal adjunction ----------------------------------------------

def _components(x):
    return dict(x.components) if hasattr(x, "components") else dict(x)


def _roles(M, N, alpha, beta, w):
    """``(left, right, unit side, counit side)``; for ``c`` the supplied
    ``beta`` is the left adjoint."""
    if w == "c":
        return beta, alpha, N, M
    return alpha, beta, M, N


def triangle_failures(left, right, unit, counit, objects, K=AMBIENT):
    """Componentwise triangle identities of ``left ⊣ right``."""
    out = []
    for x in objects:
        L, R, e, c = left[x], right[x], unit[x], counit[x]
        if K.vcomp(whisker_r(K, c, L), whisker_l(K, L, e)) != K.id2(L):
            out.append(violation("triangle-left", (x,)))
        if K.vcomp(whisker_l(K, R, c), whisker_r(K, e, R)) != K.id2(R):
            out.append(violation("triangle-right", (x,)))
    return out


def _check_adjunction(alpha, beta, eta, eps, w):
    M, N = alpha.source, alpha.target
    S, K = M.source, M.target
    a = alpha.components
    if not all(K.is_tight(c) for c in a.values()) or \
            not all(K.is_identity2(alpha.cells[f]) for f in S.one_cells):
        raise NotAnAdjunction("the left transformation is not F-natural",
                              violation("not-f-natural", ()))
    for x in S.objects:
        if (K.src1(beta[x]), K.dst1(beta[x])) != (N.ob[x], M.ob[x]):
            raise NotAnAdjunction("component of the adjoint is mistyped",
                                  violation("component-type", (x,)))
    left, right, U, C = _roles(M, N, a, beta, w)
    for x in S.objects:
        LR, RL = K.comp1(left[x], right[x]), K.comp1(right[x], left[x])
        if (K.src2(eta[x]), K.dst2(eta[x])) != (K.id1(U.ob[x]), RL):
            raise NotAnAdjunction("unit component is mistyped",
                                  violation("unit-type", (x,)))
        if (K.src2(eps[x]), K.dst2(eps[x])) != (LR, K.id1(C.ob[x])):
            raise NotAnAdjunction("counit component is mistyped",
                                  violation("counit-type", (x,)))
    bad = triangle_failures(left, right, eta, eps, S.objects, K)
    if bad:
        raise NotAnAdjunction(f"triangle identity fails at {bad[0]['at']}",
                              bad[0])
    for t in S.tight:
        x, y = S.src1(t), S.dst1(t)
        if K.comp1(M.one[t], beta[x]) != K.comp1(beta[y], N.one[t]):
            raise NotAnAdjunction("adjoint is not natural at a tight 1-cell",
                                  violation("adjoint-naturality", (t,)))
        for cell, side in ((eta, U), (eps, C)):
            if whisker_l(K, side.one[t], cell[x]) != \
                    whisker_r(K, cell[y], side.one[t]):
                kind = "unit" if cell is eta else "counit"
                raise NotAnAdjunction(
                    f"{kind} is not a modification on the tight part",
                    violation(kind + "-modification", (t,)))


def mate_transformation(alpha, beta, eta, eps, w="l"):
    """The transformation ``β̄: N ⇒ M`` with components ``β`` and, at each
    1-cell ``t``, the mate of the (identity) cell of ``alpha`` at ``t``.

    For ``w`` in ``l, p, s`` the data is an adjunction ``α ⊣ β`` with
    ``eta: 1 ⇒ β·α`` and ``eps: α·β ⇒ 1``; for ``c`` it is ``β ⊣ α`` with
    ``eta: 1 ⇒ α·β`` and ``eps: β·α ⇒ 1``.  Raises
    :class:`NotAnAdjunction` when the data is not an adjunction whose
    pieces are natural on the tight part.
    """
    beta, eta, eps = _components(beta), _components(eta), _components(eps)
    _check_adjunction(alpha, beta, eta, eps, w)
    M, N = alpha.source, alpha.target
    S, K = M.source, M.target
    cells = {}
    for t in S.one_cells:
        x, y = S.src1(t), S.dst1(t)
        if w == "c":
            route = K.comp1(beta[y], N.one[t])
            first = whisker_l(K, route, eta[x])
            last = whisker_r(K, eps[y], K.comp1(M.one[t], beta[x]))
        else:
            first = whisker_r(K, eta[y], K.comp1(M.one[t], beta[x]))
            last = whisker_l(K, K.comp1(beta[y], N.one[t]), eps[x])
        cells[t] = K.vcomp(last, first)
    mate = LooseTransformation(N, M, beta, cells, ("s", w), name="mate")
    report = check_loose_natural(mate)
    if not report.valid:
        raise CategoryError("mate is not natural", report.violations[0])
    return mate


def doctrinal_lift_failures(alpha, beta_bar, eta, eps):
    """Failures of ``α ⊣ β̄`` among ``(s, w)`` transformations: the
    naturality of ``β̄``, the triangle identities and the modification
    axioms for the unit and counit."""
    eta, eps = _components(eta), _components(eps)
    M, N = alpha.source, alpha.target
    S, K = M.source, M.target
    w = beta_bar.w
    out = [dict(v, kind="mate-" + v["kind"])
           for v in check_loose_natural(beta_bar).violations]
    if out:
        return out
    a = LooseTransformation(M, N, alpha.components, alpha.cells, ("s", w))
    left, right, U, C = _roles(M, N, a, beta_bar, w)
    for x in S.objects:
        L, R = left.components[x], right.components[x]
        if (K.src2(eta[x]), K.dst2(eta[x])) != \
                (K.id1(U.ob[x]), K.comp1(R, L)):
            out.append(violation("unit-type", (x,)))
        if (K.src2(eps[x]), K.dst2(eps[x])) != \
                (K.comp1(L, R), K.id1(C.ob[x])):
            out.append(violation("counit-type", (x,)))
    if out:
        return out
    out += triangle_failures(left.components, right.components, eta, eps,
                             S.objects, K)
    unit = Modification(identity_transformation(U, ("s", w)),
                        compose_transformations(right, left), eta)
    counit = Modification(compose_transformations(left, right),
                          identity_transformation(C, ("s", w)), eps)
    for name, m in (("unit", unit), ("counit", counit)):
        out += [dict(v, kind=f"{name}-{v['kind']}")
                for v in check_modification(m)]
    return out


def check_doctrinal_lift(alpha, beta_bar, eta, eps):
    return not doctrinal_lift_failures(alpha, beta_bar, eta, eps)


# -- finite categories of models --------------------------------------------------

def transformation_key(phi):
    S = phi.source.source
    return (tuple(phi.components[x].loose.key for x in S.objects),
            tuple(phi.cells[f].transformation.key if f in phi.cells
                  else None for f in S.one_cells))


def modification_key(m):
    S = m.source.source.source
    return tuple(m.components[x].transformation.key for x in S.objects)


def _modifications(phi, psi, bound):
    S = phi.source.source
    pools = [AMBIENT.two_cells(phi.components[x], psi.components[x])
             for x in S.objects]
    out = []
    for cells in itertools.product(*pools):
        m = Modification(phi, psi, dict(zip(S.objects, cells)))
        if not check_modification(m, first=True):
            out.append(m)
            if len(out) > bound:
                raise EnumerationBoundExceeded(bound, "modifications")
    return out


class ModelCategory:
    """The F-category on the named models with every ``(s, w)``
    transformation between them as loose 1-cells, the F-natural ones with
    tight components as tight 1-cells, and every modification."""

    def __init__(self, models, w="s", bound=fc.DEFAULT_BOUND, name=None):
        self.models = dict(models)
        self.w = w
        names = list(self.models)
        self.one, self.homs, self._index1 = {}, {}, {}
        for a, b in itertools.product(names, repeat=2):
            ids = []
            for n, phi in enumerate(enumerate_loose_transformations(
                    self.models[a], self.models[b], w, bound)):
                fid = (a, b, n)
                self.one[fid] = phi
                self._index1[(a, b, transformation_key(phi))] = fid
                ids.append(fid)
            self.homs[(a, b)] = ids
            if len(self.one) > bound:
                raise EnumerationBoundExceeded(bound, "transformations")
        self.two, self._index2 = {}, {}
        for ids in self.homs.values():
            for f, g in itertools.product(ids, repeat=2):
                for n, m in enumerate(_modifications(self.one[f], self.one[g],
                                                     bound)):
                    cid = (f, g, n)
                    self.two[cid] = m
                    self._index2[(f, g, modification_key(m))] = cid
            if len(self.two) > bound:
                raise EnumerationBoundExceeded(bound, "modifications")
        K = AMBIENT
        id1 = {a: self.lookup1(identity_transformation(self.models[a],
                                                       ("s", w)), a, a)
               for a in names}
        comp1 = {}
        for (a, b), fs in self.homs.items():
            for (b2, c), gs in self.homs.items():
                if b2 != b:
                    continue
                for f in fs:
                    for g in gs:
                        comp1[(g, f)] = self.lookup1(compose_transformations(
                            self.one[g], self.one[f]), a, c)
        id2, vcomp, hcomp = {}, {}, {}
        by_src = collections.defaultdict(list)
        for cid in self.two:
            by_src[cid[0]].append(cid)
        for f, phi in self.one.items():
            id2[f] = self._index2[(f, f, modification_key(Modification(
                phi, phi, {x: K.id2(c) for x, c in phi.components.items()})))]
        for cid, m in self.two.items():
            for did in by_src[cid[1]]:
                n = self.two[did]
                vcomp[(did, cid)] = self.lookup2(Modification(
                    m.source, n.target,
                    {x: K.vcomp(n.components[x], c)
                     for x, c in m.components.items()}), cid[0], did[1])
        for cid, m in self.two.items():
            for did, n in self.two.items():
                if (did[0], cid[0]) not in comp1:
                    continue
                f2, g2 = comp1[(did[0], cid[0])], comp1[(did[1], cid[1])]
                hcomp[(did, cid)] = self.lookup2(Modification(
                    self.one[f2], self.one[g2],
                    {x: K.hcomp(n.components[x], c)
                     for x, c in m.components.items()}), f2, g2)
        tight = [f for f, phi in self.one.items()
                 if all(K.is_tight(c) for c in phi.components.values())
                 and all(K.is_identity2(c) for c in phi.cells.values())]
        self.fcat = FiniteFCategory(
            names, {f: (f[0], f[1]) for f in self.one},
            {c: (c[0], c[1]) for c in self.two}, id1, id2, comp1, vcomp,
            hcomp, tight=tight, name=name or f"Mod[{w}]", check=False)

    def name_of(self, F):
        for n, M in self.models.items():
            if M == F:
                return n
        raise KeyError("model not among the objects")

    def lookup1(self, phi, a=None, b=None):
        a = self.name_of(phi.source) if a is None else a
        b = self.name_of(phi.target) if b is None else b
        return self._index1[(a, b, transformation_key(phi))]

    def lookup2(self, m, f, g):
        return self._index2[(f, g, modification_key(m))]


def model_monad(base, on_models, on_transformations, on_modifications, unit,
                multiplication, name=None):
    """A monad on ``base.fcat`` from constructions on models.

    ``on_models(M)`` gives ``TM``; ``on_transformations(phi, TM, TN)`` and
    ``on_modifications(m, Tphi, Tpsi)`` act on cells; ``unit(M, TM)`` and
    ``multiplication(M, TM, TTM)`` give the components.  Every result must
    already be an object or cell of ``base``.
    """
    A = base.fcat
    ob = {x: base.name_of(on_models(base.models[x])) for x in A.objects}
    one = {}
    for f in A.one_cells:
        a, b = ob[A.src1(f)], ob[A.dst1(f)]
        one[f] = base.lookup1(on_transformations(
            base.one[f], base.models[a], base.models[b]), a, b)
    two = {}
    for c in A.two_cells:
        f, g = one[A.src2(c)], one[A.dst2(c)]
        two[c] = base.lookup2(on_modifications(
            base.two[c], base.one[f], base.one[g]), f, g)
    T = FFunctor(A, A, ob, one, two, name=name)
    eta = {x: base.lookup1(unit(base.models[x], base.models[ob[x]]),
                           x, ob[x]) for x in A.objects}
    mu = {x: base.lookup1(multiplication(
        base.models[x], base.models[ob[x]], base.models[ob[ob[x]]]),
        ob[ob[x]], ob[x]) for x in A.objects}
    return EnhancedMonad(A, T, mu, eta, name=name, base=base)


# -- equivalence witnesses -----------------------------------------------------------

class EquivalenceReport:
    def __init__(self, failures, counts, bound):
        self.failures = failures
        self.counts = counts
        self.bound = bound

    @property
    def certified(self):
        return not self.failures

    @property
    def label(self):
        if self.certified:
            return f"certified up to bound {self.bound}"
        return "failed"

    def __bool__(self):
        return self.certified

    def to_json(self):
        return {"certified": self.certified, "label": self.label,
                "bound": self.bound, "failures": self.failures,
                "counts": self.counts}


def _restrict_modification(m, inc, phi, psi):
    return Modification(phi, psi, {x: m.components[y]
                                   for x, y in inc.ob.items()})


def equivalence_witness(sketch, monad, models, correspondence,
                        ws=("l", "c", "p", "s"), bound=fc.DEFAULT_BOUND,
                        categories=None):
    """Check that ``correspondence`` (model name ↦ algebra on the carrier
    of ``monad``) is an equivalence on the given models.

    The monad must come from :func:`model_monad` (or carry a ``base``) on
    restrictions of models to the tight part of ``sketch``.  Raises
    :class:`CommutationFailure` when an algebra does not sit over the
    restriction of its model.  Otherwise every algebra must be isomorphic
    to one in the image, and for each ``w`` the tight homs, the loose homs
    and the 2-cells on both sides must correspond bijectively over the
    underlying cells of the carrier.  ``categories`` may supply the model
    categories per ``w``.
    """
    base = monad.base
    if base is None:
        raise ShapeMismatch("monad is not built on a category of models")
    _, inc = sketch.tight_part()
    names = list(models)
    for n in names:
        alg = correspondence.get(n)
        if alg is None:
            raise CommutationFailure(f"no algebra for {label(n)}",
                                     violation("missing", (n,)))
        R = models[n].restrict(inc)
        if base.models.get(alg.carrier) != R:
            raise CommutationFailure(
                f"algebra for {label(n)} does not lie over its restriction",
                violation("commutation", (n,)))
        bad = check_algebra(monad, alg)
        if bad:
            raise CommutationFailure(f"{label(n)} is sent to a non-algebra",
                                     bad[0])
    failures = []
    image = [correspondence[n] for n in names]
    algebras = enumerate_algebras(monad, bound=bound)
    for B in algebras:
        if not any(isomorphic_algebras(monad, A, B) is not None
                   for A in image):
            failures.append(violation("not-essentially-surjective",
                                      (B.carrier, B.structure)))
    counts = {"algebras": len(algebras)}
    for w in ws:
        mod = (categories or {}).get(w) or ModelCategory(models, w, bound)
        alg = AlgebraCategory(monad, image, w, bound)
        tally = {"tight": 0, "loose": 0, "cells": 0}
        for (i, a), (j, b) in itertools.product(enumerate(names), repeat=2):
            ca, cb = image[i].carrier, image[j].carrier
            under = {f: base.lookup1(restrict_transformation(mod.one[f], inc),
                                     ca, cb) for f in mod.homs[(a, b)]}
            left = {"loose": collections.Counter(under.values()),
                    "tight": collections.Counter(
                        u for f, u in under.items() if f in mod.fcat.tight)}
            ms = alg.homs[(i, j)]
            right = {"loose": collections.Counter(alg.morphisms[m].f
                                                  for m in ms),
                     "tight": collections.Counter(
                         alg.morphisms[m].f for m in ms if m in alg.tight)}
            cells_l = collections.Counter()
            for cid, m in mod.two.items():
                if cid[0] not in under:
                    continue
                p, q = under[cid[0]], under[cid[1]]
                cells_l[(p, q, base.lookup2(_restrict_modification(
                    m, inc, base.one[p], base.one[q]), p, q))] += 1
            keep = set(ms)
            cells_r = collections.Counter(
                (alg.morphisms[cid[0]].f, alg.morphisms[cid[1]].f, rho)
                for cid, rho in alg.cells.items() if cid[0] in keep)
            left["cells"], right["cells"] = cells_l, cells_r
            for kind in ("tight", "loose", "cells"):
                tally[kind] += sum(left[kind].values())
                if left[kind] != right[kind]:
                    failures.append(violation(
                        f"{kind}-hom" if kind != "cells" else "two-cells",
                        (w, a, b),
                        f"{sum(left[kind].values())} model-side against "
                        f"{sum(right[kind].values())} algebra-side"))
        counts[w] = tally
    return EquivalenceReport(failures, counts, bound)
