"""Seeded table mutations that always break an axiom."""

from fcatlab.fincat import FiniteCategory
from fcatlab.fcat import FiniteFCategory


def _copy(cat, table=None, identities=None):
    return FiniteCategory(cat.objects,
                          {m: (cat.src[m], cat.dst[m]) for m in cat.morphisms},
                          identities or cat.identities,
                          cat.table if table is None else table,
                          check=False)


def perturb_category(cat, rng):
    """A copy of ``cat`` with one defect; returns ``(kind, broken)``."""
    kinds = ["drop"]
    if len(cat.morphisms) > 1:
        kinds.append("identity-law")
    pairs = sorted(cat.table, key=repr)
    outside = lambda g, f: [m for m in cat.morphisms
                            if (cat.src[m], cat.dst[m]) !=
                            (cat.src[f], cat.dst[g])]
    if any(outside(g, f) for g, f in pairs):
        kinds.append("retype")
    spurious = [(g, f) for g in cat.morphisms for f in cat.morphisms
                if cat.dst[f] != cat.src[g]]
    if spurious:
        kinds.append("spurious")
    if len(cat.morphisms) > len(cat.objects):
        kinds.append("identity")
    kind = rng.choice(kinds)
    table = dict(cat.table)
    if kind == "identity-law":
        m = rng.choice(cat.morphisms)
        i = cat.identities[cat.src[m]]
        others = [n for n in cat.morphisms if n != m]
        table[(m, i)] = rng.choice(others)
        return kind, _copy(cat, table)
    if kind == "drop":
        del table[rng.choice(pairs)]
        return kind, _copy(cat, table)
    if kind == "retype":
        g, f = rng.choice([p for p in pairs if outside(*p)])
        table[(g, f)] = rng.choice(outside(g, f))
        return kind, _copy(cat, table)
    if kind == "spurious":
        g, f = rng.choice(spurious)
        table[(g, f)] = rng.choice(cat.morphisms)
        return kind, _copy(cat, table)
    x = rng.choice([x for x in cat.objects
                    if len(cat.morphisms) > len(cat.objects)])
    idents = dict(cat.identities)
    idents[x] = rng.choice([m for m in cat.morphisms
                            if m != cat.identities[x]])
    return kind, _copy(cat, identities=idents)


def _rebuild(T, **changes):
    data = dict(
        objects=T.objects,
        one_cells={f: (T.src1(f), T.dst1(f)) for f in T.one_cells},
        two_cells={a: (T.src2(a), T.dst2(a)) for a in T.two_cells},
        id1=T._id1, id2=T._id2, comp1=T._comp1, vcomp=T._vcomp,
        hcomp=T._hcomp, tight=T.tight)
    data.update(changes)
    return FiniteFCategory(check=False, **data)


def perturb_fcategory(T, rng):
    """One defect in an F-category's tables or tightness marking."""
    kinds = ["loose-identity", "hcomp-identity", "comp1"]
    if len(T.two_cells) > len(T.one_cells):
        kinds.append("vcomp")
    closable = [(g, f) for (g, f), gf in T._comp1.items()
                if g in T.tight and f in T.tight and gf not in (g, f)]
    if closable:
        kinds.append("tight-closure")
    kind = rng.choice(kinds)
    if kind == "loose-identity":
        x = rng.choice(T.objects)
        return kind, _rebuild(T, tight=T.tight - {T.id1(x)})
    if kind == "hcomp-identity":
        g, f = rng.choice(sorted(T._comp1, key=repr))
        key = (T.id2(g), T.id2(f))
        others = [a for a in T.two_cells if a != T.hcomp(*key)]
        hcomp = dict(T._hcomp)
        if others:
            hcomp[key] = rng.choice(others)
        else:
            del hcomp[key]
        return kind, _rebuild(T, hcomp=hcomp)
    if kind == "comp1":
        cat = T.underlying_category()
        _, broken = perturb_category(cat, rng)
        return kind, _rebuild(T, comp1=broken.table, id1=broken.identities)
    if kind == "tight-closure":
        g, f = rng.choice(sorted(closable, key=repr))
        return kind, _rebuild(T, tight=T.tight - {T.comp1(g, f)})
    vcomp = dict(T._vcomp)
    del vcomp[rng.choice(sorted(vcomp, key=repr))]
    return kind, _rebuild(T, vcomp=vcomp)
