"""Brute-force reference implementations.

Nothing here shares code with the package beyond the plain data held in
its objects: every check is re-derived from the raw tables by exhaustive
search, so agreement with the package is meaningful.
"""

import itertools


# -- categories -------------------------------------------------------------

def category_ok(cat):
    objs = set(cat.objects)
    src, dst, table, ids = cat.src, cat.dst, cat.table, cat.identities
    mors = list(cat.morphisms)
    if any(src[m] not in objs or dst[m] not in objs for m in mors):
        return False
    for x in objs:
        i = ids.get(x)
        if i not in src or src[i] != x or dst[i] != x:
            return False
    for (g, f) in table:
        if g not in src or f not in src or dst[f] != src[g]:
            return False
    for g, f in itertools.product(mors, repeat=2):
        if dst[f] != src[g]:
            continue
        gf = table.get((g, f))
        if gf not in src or src[gf] != src[f] or dst[gf] != dst[g]:
            return False
    for m in mors:
        if table[(m, ids[src[m]])] != m or table[(ids[dst[m]], m)] != m:
            return False
    for h, g, f in itertools.product(mors, repeat=3):
        if dst[f] == src[g] and dst[g] == src[h]:
            if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]:
                return False
    return True


def functor_ok(A, B, ob, mor):
    for m in A.morphisms:
        if B.src[mor[m]] != ob[A.src[m]] or B.dst[mor[m]] != ob[A.dst[m]]:
            return False
    for x in A.objects:
        if mor[A.identities[x]] != B.identities[ob[x]]:
            return False
    for (g, f), gf in A.table.items():
        if B.table[(mor[g], mor[f])] != mor[gf]:
            return False
    return True


def all_functors(A, B):
    """Every functor as a pair of dicts, by blind product enumeration."""
    out = []
    for obs in itertools.product(B.objects, repeat=len(A.objects)):
        ob = dict(zip(A.objects, obs))
        pools = [B.hom(ob[A.src[m]], ob[A.dst[m]]) for m in A.morphisms]
        for ms in itertools.product(*pools):
            mor = dict(zip(A.morphisms, ms))
            if functor_ok(A, B, ob, mor):
                out.append((ob, mor))
    return out


def all_transformations(A, B, P, Q):
    """``P, Q`` given as ``(ob, mor)`` dict pairs."""
    out = []
    pools = [B.hom(P[0][x], Q[0][x]) for x in A.objects]
    for cs in itertools.product(*pools):
        comp = dict(zip(A.objects, cs))
        if all(B.table[(Q[1][m], comp[A.src[m]])] ==
               B.table[(comp[A.dst[m]], P[1][m])] for m in A.morphisms):
            out.append(comp)
    return out


def isomorphic(A, B):
    """Search every bijection of objects and morphisms."""
    if len(A.objects) != len(B.objects) or \
            len(A.morphisms) != len(B.morphisms):
        return False
    for perm in itertools.permutations(B.objects):
        ob = dict(zip(A.objects, perm))
        pools = [B.hom(ob[A.src[m]], ob[A.dst[m]]) for m in A.morphisms]
        if any(len(B.hom(ob[x], ob[y])) != len(A.hom(x, y))
               for x in A.objects for y in A.objects):
            continue
        for ms in itertools.product(*pools):
            if len(set(ms)) != len(ms):
                continue
            mor = dict(zip(A.morphisms, ms))
            if functor_ok(A, B, ob, mor):
                return True
    return False


def is_equivalence(A, B, ob, mor):
    for x in A.objects:
        for y in A.objects:
            images = [mor[m] for m in A.hom(x, y)]
            if len(set(images)) != len(images):
                return False
            if len(images) != len(B.hom(ob[x], ob[y])):
                return False
    image = set(ob.values())
    for y in B.objects:
        if y in image:
            continue
        found = False
        for x in image:
            for u in B.hom(x, y):
                for v in B.hom(y, x):
                    if B.table[(v, u)] == B.identities[x] and \
                            B.table[(u, v)] == B.identities[y]:
                        found = True
        if not found:
            return False
    return True


# -- cones -------------------------------------------------------------------

def _compose_maps(A, F, G):
    """``G∘F`` for ``(ob, mor)`` pairs ``F: A → B`` and ``G: B → C``."""
    return ({x: G[0][F[0][x]] for x in A.objects},
            {m: G[1][F[1][m]] for m in A.morphisms})


def _cells_ok(shape, D, w, marked, K, legs, cells):
    """Coherence of a w-cone from ``K``, checked pointwise at each object."""
    for f in shape.one_cells:
        a, b = shape.src1(f), shape.dst1(f)
        C = D.ob[b].loose
        for k in K.objects:
            c = cells[f][k]
            image = D.one[f].loose.ob[legs[a][0][k]]
            s, d = legs[b][0][k], image
            if w != "c":
                s, d = d, s
            if C.src[c] != s or C.dst[c] != d:
                return False
            if (f in marked or w == "s" or f == shape.id1(a)) and \
                    c != C.identities[s]:
                return False
            if w == "p" and not any(
                    C.table[(c, v)] == C.identities[C.src[v]] and
                    C.table[(v, c)] == C.identities[C.src[c]]
                    for v in C.hom(d, s)):
                return False
    for (g, h), gh in shape._comp1.items():
        C = D.ob[shape.dst1(g)].loose
        a = shape.src1(h)
        for k in K.objects:
            mid = D.one[g].loose.mor[cells[h][k]]
            want = C.table[(mid, cells[g][k])] if w == "c" else \
                C.table[(cells[g][k], mid)]
            if want != cells[gh][k]:
                return False
    for al in shape.two_cells:
        f, f2 = shape.src2(al), shape.dst2(al)
        a = shape.src1(f)
        C = D.ob[shape.dst1(f)].loose
        for k in K.objects:
            comp = D.two[al].transformation.components[legs[a][0][k]]
            if w == "c":
                ok = C.table[(comp, cells[f][k])] == cells[f2][k]
            else:
                ok = C.table[(cells[f2][k], comp)] == cells[f][k]
            if not ok:
                return False
    return True


def cones_from(K, tight_objects, shape, D, w, marked, dotted):
    """All w-cones from the category ``K`` into ``D``.

    Returns ``(cones, tight_flags)``; a cone is ``(legs, cells)`` with legs
    ``(ob, mor)`` pairs and cells dicts of components.  A cone is tight when
    its legs at dotted objects send ``tight_objects`` to tight objects.
    """
    shape_obs = list(shape.objects)
    leg_pools = [all_functors(K, D.ob[a].loose) for a in shape_obs]
    out, flags = [], []
    for choice in itertools.product(*leg_pools):
        legs = dict(zip(shape_obs, choice))
        pools = []
        for f in shape.one_cells:
            a, b = shape.src1(f), shape.dst1(f)
            pushed = _compose_maps(K, legs[a], (D.one[f].loose.ob,
                                                D.one[f].loose.mor))
            P, Q = (legs[b], pushed) if w == "c" else (pushed, legs[b])
            pools.append(all_transformations(K, D.ob[b].loose, P, Q))
        for cs in itertools.product(*pools):
            cells = dict(zip(shape.one_cells, cs))
            if _cells_ok(shape, D, w, marked, K, legs, cells):
                out.append((legs, cells))
                flags.append(all(D.ob[a].is_tight_object(legs[a][0][k])
                                 for a in dotted for k in tight_objects))
    return out, flags


def cone_morphism_count(K, shape, D, w, x, y):
    """Families of natural transformations ``x_a ⇒ y_a`` satisfying the
    modification condition at every 1-cell."""
    pools = [all_transformations(K, D.ob[a].loose, x[0][a], y[0][a])
             for a in shape.objects]
    count = 0
    for ms in itertools.product(*pools):
        m = dict(zip(shape.objects, ms))
        ok = True
        for f in shape.one_cells:
            a, b = shape.src1(f), shape.dst1(f)
            C = D.ob[b].loose
            for k in K.objects:
                image = D.one[f].loose.mor[m[a][k]]
                xf, yf = x[1][f][k], y[1][f][k]
                if w == "c":
                    ok = C.table[(image, xf)] == C.table[(yf, m[b][k])]
                else:
                    ok = C.table[(yf, image)] == C.table[(m[b][k], xf)]
                if not ok:
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def point_cone_ids(shape, D, w, marked):
    """Cones from the point, serialized as the package serializes them."""
    one = _Point()
    cones, _ = cones_from(one, (), shape, D, w, marked, ())
    return sorted((tuple(legs[a][0]["*"] for a in shape.objects) +
                   tuple(cells[f]["*"] for f in shape.one_cells))
                  for legs, cells in cones)


class _Point:
    objects = ("*",)
    morphisms = ("1",)
    src = {"1": "*"}
    dst = {"1": "*"}
    identities = {"*": "1"}
    table = {("1", "1"): "1"}

    def hom(self, x, y):
        return ["1"]


def _product(K, A):
    objs = [(k, a) for k in K.objects for a in A.objects]
    mors = [(m, n) for m in K.morphisms for n in A.morphisms]
    src = {(m, n): (K.src[m], A.src[n]) for m, n in mors}
    dst = {(m, n): (K.dst[m], A.dst[n]) for m, n in mors}
    table = {}
    for g in mors:
        for f in mors:
            if dst[f] == src[g]:
                table[(g, f)] = (K.table[(g[0], f[0])], A.table[(g[1], f[1])])

    class P:
        pass
    P.objects, P.morphisms, P.src, P.dst, P.table = objs, mors, src, dst, table
    P.identities = {(k, a): (K.identities[k], A.identities[a])
                    for k, a in objs}
    P.hom = lambda self, x, y: [m for m in mors
                                if src[m] == x and dst[m] == y]
    return P()


def weighted_cones_from(K, tight_objects, W, D):
    """Weighted cones from ``K``: families ``K × W(j) → D(j)`` natural in
    the shape; returns ``(count, tight_count)``."""
    J = W.source
    js = list(J.objects)
    prods = {j: _product(K, W.ob[j].loose) for j in js}
    pools = [all_functors(prods[j], D.ob[j].loose) for j in js]
    count = tight = 0
    for choice in itertools.product(*pools):
        x = dict(zip(js, choice))
        ok = True
        for u in J.one_cells:
            a, b = J.src1(u), J.dst1(u)
            Du, Wu = D.one[u].loose, W.one[u].loose
            Pa = prods[a]
            for (k, v) in Pa.objects:
                if Du.ob[x[a][0][(k, v)]] != x[b][0][(k, Wu.ob[v])]:
                    ok = False
            for (m, n) in Pa.morphisms:
                if Du.mor[x[a][1][(m, n)]] != x[b][1][(m, Wu.mor[n])]:
                    ok = False
        for al in J.two_cells:
            u = J.src2(al)
            a, b = J.src1(u), J.dst1(u)
            for (k, v) in prods[a].objects:
                lhs = D.two[al].transformation.components[x[a][0][(k, v)]]
                rhs = x[b][1][(K.identities[k],
                               W.two[al].transformation.components[v])]
                if lhs != rhs:
                    ok = False
        if not ok:
            continue
        count += 1
        if all(D.ob[j].is_tight_object(x[j][0][(k, v)])
               for j in js for k in tight_objects
               for v in W.ob[j].tight_objects):
            tight += 1
    return count, tight


# -- F-categories and transformations -------------------------------------------

def fcategory_ok(T):
    """Strict 2-category axioms plus tightness, straight from the tables."""
    obs, ones, twos = T.objects, T.one_cells, T.two_cells
    s1, d1, s2, d2 = T._src1, T._dst1, T._src2, T._dst2
    c1, vc, hc, i1, i2 = T._comp1, T._vcomp, T._hcomp, T._id1, T._id2

    class Base:
        pass
    base = Base()
    base.objects, base.morphisms = obs, ones
    base.src, base.dst, base.identities, base.table = s1, d1, i1, c1
    try:
        if not category_ok(base):
            return False
        for a in twos:
            if s1[s2[a]] != s1[d2[a]] or d1[s2[a]] != d1[d2[a]]:
                return False
        for f in ones:
            if s2[i2[f]] != f or d2[i2[f]] != f:
                return False
        for b in twos:
            for a in twos:
                if d2[a] == s2[b]:
                    ba = vc[(b, a)]
                    if s2[ba] != s2[a] or d2[ba] != d2[b]:
                        return False
        for a in twos:
            if vc[(i2[d2[a]], a)] != a or vc[(a, i2[s2[a]])] != a:
                return False
        for c, b, a in itertools.product(twos, repeat=3):
            if d2[a] == s2[b] and d2[b] == s2[c]:
                if vc[(c, vc[(b, a)])] != vc[(vc[(c, b)], a)]:
                    return False
        for b in twos:
            for a in twos:
                if s1[s2[b]] != d1[s2[a]]:
                    continue
                ba = hc[(b, a)]
                if s2[ba] != c1[(s2[b], s2[a])] or \
                        d2[ba] != c1[(d2[b], d2[a])]:
                    return False
        for g in ones:
            for f in ones:
                if s1[g] == d1[f] and hc[(i2[g], i2[f])] != i2[c1[(g, f)]]:
                    return False
        for b, b2, a, a2 in itertools.product(twos, repeat=4):
            if d2[a] == s2[a2] and d2[b] == s2[b2] and \
                    s1[s2[b]] == d1[s2[a]]:
                if hc[(vc[(b2, b)], vc[(a2, a)])] != \
                        vc[(hc[(b2, a2)], hc[(b, a)])]:
                    return False
        for c, b, a in itertools.product(twos, repeat=3):
            if s1[s2[b]] == d1[s2[a]] and s1[s2[c]] == d1[s2[b]]:
                if hc[(hc[(c, b)], a)] != hc[(c, hc[(b, a)])]:
                    return False
    except KeyError:
        return False
    if any(i1[x] not in T.tight for x in obs):
        return False
    for (g, f), gf in c1.items():
        if g in T.tight and f in T.tight and gf not in T.tight:
            return False
    return True


def transformation_ok(S, K, M, N, comps, cells, w1, w):
    """Loose (w1, w)-naturality into a finite F-category ``K``, with the
    lax and colax formulas written out separately."""
    c1, vc, hc, i2 = K._comp1, K._vcomp, K._hcomp, K._id2

    def wl(g, a):
        return hc[(i2[g], a)]

    def wr(a, f):
        return hc[(a, i2[f])]

    for f in S.one_cells:
        a, b = S.src1(f), S.dst1(f)
        lax = (c1[(N.one[f], comps[a])], c1[(comps[b], M.one[f])])
        want = lax if w != "c" else lax[::-1]
        if (K.src2(cells[f]), K.dst2(cells[f])) != want:
            return False
    for x in S.objects:
        if cells[S.id1(x)] != i2[c1[(comps[x], M.one[S.id1(x)])]]:
            return False
    for (g, h), gh in S._comp1.items():
        if w == "c":
            pasted = vc[(wl(N.one[g], cells[h]), wr(cells[g], M.one[h]))]
        else:
            pasted = vc[(wr(cells[g], M.one[h]), wl(N.one[g], cells[h]))]
        if pasted != cells[gh]:
            return False
    for al in S.two_cells:
        f, f2 = S.src2(al), S.dst2(al)
        a, b = S.src1(f), S.dst1(f)
        m_side = wl(comps[b], M.two[al])
        n_side = wr(N.two[al], comps[a])
        if w == "c":
            if vc[(cells[f2], m_side)] != vc[(n_side, cells[f])]:
                return False
        elif vc[(m_side, cells[f])] != vc[(cells[f2], n_side)]:
            return False
    for f in S.one_cells:
        need = w1 if f in S.tight else w
        cell = cells[f]
        is_id = K.src2(cell) == K.dst2(cell) and cell == i2[K.src2(cell)]
        if need == "s" and not is_id:
            return False
        if need == "p" and not any(
                vc.get((v, cell)) == i2[K.src2(cell)] and
                vc.get((cell, v)) == i2[K.dst2(cell)] for v in K.two_cells):
            return False
    return True


# -- monoidal functors ------------------------------------------------------------

def monoidal_functors(C, tC, mC, uC, D, tD, mD, uD, kind="lax"):
    """Every lax (``kind='lax'``), colax or strict monoidal functor between
    strict monoidal categories, as ``(ob, mor, F2, F0)``.  ``tC``/``mC``
    tensor objects/morphisms of ``C``; likewise for ``D``."""
    out = []
    pairs = [(a, b) for a in C.objects for b in C.objects]
    comp = D.table
    one = D.identities

    def tens(f, g):
        return mD(f, g)

    for ob, mor in all_functors(C, D):
        if kind == "strict":
            if all(tD(ob[a], ob[b]) == ob[tC(a, b)] for a, b in pairs) and \
                    ob[uC] == uD and all(
                        mor[mC(f, g)] == mD(mor[f], mor[g])
                        for f in C.morphisms for g in C.morphisms):
                out.append((ob, mor,
                            {p: one[ob[tC(*p)]] for p in pairs},
                            one[uD]))
            continue
        if kind == "lax":
            pools = [D.hom(tD(ob[a], ob[b]), ob[tC(a, b)]) for a, b in pairs]
            units = D.hom(uD, ob[uC])
        else:
            pools = [D.hom(ob[tC(a, b)], tD(ob[a], ob[b])) for a, b in pairs]
            units = D.hom(ob[uC], uD)
        for choice in itertools.product(*pools):
            F2 = dict(zip(pairs, choice))
            for F0 in units:
                if _monoidal_ok(C, tC, mC, uC, D, tens, ob, mor, F2, F0,
                                kind, comp, one):
                    out.append((ob, mor, F2, F0))
    return out


def _monoidal_ok(C, tC, mC, uC, D, tens, ob, mor, F2, F0, kind, comp, one):
    lax = kind == "lax"
    for f in C.morphisms:
        for g in C.morphisms:
            a, a2 = C.src[f], C.dst[f]
            b, b2 = C.src[g], C.dst[g]
            if lax:
                left = comp[(mor[mC(f, g)], F2[(a, b)])]
                right = comp[(F2[(a2, b2)], tens(mor[f], mor[g]))]
            else:
                left = comp[(tens(mor[f], mor[g]), F2[(a, b)])]
                right = comp[(F2[(a2, b2)], mor[mC(f, g)])]
            if left != right:
                return False
    for a in C.objects:
        for b in C.objects:
            for c in C.objects:
                ia, ic = one[ob[a]], one[ob[c]]
                if lax:
                    left = comp[(F2[(tC(a, b), c)], tens(F2[(a, b)], ic))]
                    right = comp[(F2[(a, tC(b, c))], tens(ia, F2[(b, c)]))]
                else:
                    left = comp[(tens(F2[(a, b)], ic), F2[(tC(a, b), c)])]
                    right = comp[(tens(ia, F2[(b, c)]), F2[(a, tC(b, c))])]
                if left != right:
                    return False
    for a in C.objects:
        ia = one[ob[a]]
        if lax:
            l1 = comp[(F2[(uC, a)], tens(F0, ia))]
            l2 = comp[(F2[(a, uC)], tens(ia, F0))]
        else:
            l1 = comp[(tens(F0, ia), F2[(uC, a)])]
            l2 = comp[(tens(ia, F0), F2[(a, uC)])]
        if l1 != ia or l2 != ia:
            return False
    return True


# -- strict transformations between functors into categories of categories ----------

def strict_transformations(S, M, N, functors=None):
    """Families of functors ``φ_x: M(x) → N(x)`` with ``N(f)·φ_a = φ_b·M(f)``
    for every 1-cell and ``N(α)*φ_a = φ_b*M(α)`` for every 2-cell, found by
    blind product enumeration.  ``M``/``N`` give, per object, a category,
    per 1-cell an ``(ob, mor)`` pair and per 2-cell a component dict."""
    objs = list(S.objects)
    pools = []
    for x in objs:
        A, B = M["ob"][x], N["ob"][x]
        pools.append(all_functors(A, B))
    out = []
    for fam in itertools.product(*pools):
        phi = dict(zip(objs, fam))
        ok = True
        for f in S.one_cells:
            a, b = S.src1(f), S.dst1(f)
            Mo, Mm = M["one"][f]
            No, Nm = N["one"][f]
            po, pm = phi[a]
            qo, qm = phi[b]
            A = M["ob"][a]
            if any(No[po[y]] != qo[Mo[y]] for y in A.objects) or \
                    any(Nm[pm[m]] != qm[Mm[m]] for m in A.morphisms):
                ok = False
                break
        if ok:
            for al in S.two_cells:
                f = S.src2(al)
                a, b = S.src1(f), S.dst1(f)
                po, _ = phi[a]
                _, qm = phi[b]
                for y in M["ob"][a].objects:
                    if N["two"][al][po[y]] != qm[M["two"][al][y]]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out.append(phi)
    return out


# -- lifting ------------------------------------------------------------------------

def _then(A, F, G):
    """``G∘F`` on ``(ob, mor)`` pairs out of ``A``."""
    return _compose_maps(A, F, G)


def _key(A, F):
    return (tuple(F[0][x] for x in A.objects),
            tuple(F[1][m] for m in A.morphisms))


def unique_lifting(A, B, C, D, f, g, tight=None):
    """Every commuting square from ``f: A → B`` to ``g: C → D`` has exactly
    one diagonal, and so does every square of natural transformations.

    ``f`` and ``g`` are ``(ob, mor)`` pairs.  ``tight`` optionally gives the
    tight object sets ``(tA, tB, tC, tD)``; then a diagonal must be tight
    exactly when both sides of its square are.
    """
    def is_tight(X, tX, tY, F):
        return tight is None or all(F[0][x] in tY for x in tX)

    fillers = all_functors(B, C)
    squares = []
    for u in all_functors(A, C):
        for v in all_functors(B, D):
            if _key(A, _then(A, u, g)) != _key(A, _then(A, f, v)):
                continue
            hs = [h for h in fillers
                  if _key(A, _then(A, f, h)) == _key(A, u)
                  and _key(B, _then(B, h, g)) == _key(B, v)]
            if len(hs) != 1:
                return False
            if tight is not None:
                tA, tB, tC, tD = tight
                both = is_tight(A, tA, tC, u) and is_tight(B, tB, tD, v)
                if both != is_tight(B, tB, tC, hs[0]):
                    return False
            squares.append((u, v, hs[0]))
    for (u, v, h), (u2, v2, h2) in itertools.product(squares, repeat=2):
        thetas = all_transformations(B, C, h, h2)
        for al in all_transformations(A, C, u, u2):
            for be in all_transformations(B, D, v, v2):
                if any(g[1][al[a]] != be[f[0][a]] for a in A.objects):
                    continue
                found = [t for t in thetas
                         if all(t[f[0][a]] == al[a] for a in A.objects)
                         and all(g[1][t[b]] == be[b] for b in B.objects)]
                if len(found) != 1:
                    return False
    return True


# -- mates ----------------------------------------------------------------------

def mate_cells(S, M, N, beta, eta, eps, w):
    """Cells of the mate by pasting components directly.

    ``M``/``N`` give per object a category and per 1-cell an ``(ob, mor)``
    pair; ``beta`` gives per object an ``(ob, mor)`` pair ``N(x) → M(x)``
    and ``eta``/``eps`` per object a component dict.  For ``w = c`` the
    adjoint ``beta`` is on the left.  Returns ``t ↦ {d: morphism}``."""
    out = {}
    for t in S.one_cells:
        x, y = S.src1(t), S.dst1(t)
        Mo, _ = M["one"][t]
        No, Nm = N["one"][t]
        bxo, _ = beta[x]
        byo, bym = beta[y]
        table = M["ob"][y].table
        comps = {}
        for d in N["ob"][x].objects:
            if w == "c":
                first = bym[Nm[eta[x][d]]]
                last = eps[y][Mo[bxo[d]]]
            else:
                first = eta[y][Mo[bxo[d]]]
                last = bym[Nm[eps[x][d]]]
            comps[d] = table[(last, first)]
        out[t] = comps
    return out
