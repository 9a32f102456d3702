"""JSON documents for the command-line front end.

Every document is a JSON object.  Wherever a nested document is expected
a string may be given instead; it is read as a path relative to the file
that contains it.  Identifiers that were tuples come back as their string
labels.
"""

import json
import os

from . import fincat as fc
from .fcat import (FCell, FiniteFCategory, FMap, FObject, LooseTransformation,
                   chordate)
from .fincat import CategoryError, FiniteCategory, FiniteFunctor, label
from .limits import AMBIENT
from .sketch import Sketch, ffunctor_from_json, ffunctor_to_json


class ParseError(ValueError):
    """A file could not be read or is not the expected kind of document."""

    def __init__(self, message, path=None, line=None):
        where = path or "<input>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class ValidationError(ValueError):
    """A document parsed but describes malformed data."""

    def __init__(self, message, path=None, witness=None):
        super().__init__(f"{path or '<input>'}: {message}")
        self.path = path
        self.witness = witness


class Doc:
    """A parsed JSON value with the directory used to resolve references."""

    def __init__(self, value, path):
        self.value = value
        self.path = path

    @property
    def base(self):
        return os.path.dirname(self.path) if self.path else "."

    def child(self, key, required=True):
        if key not in self.value:
            if required:
                raise ParseError(f"missing field {key!r}", self.path)
            return None
        v = self.value[key]
        if isinstance(v, str) and v.endswith(".json"):
            return load(os.path.join(self.base, v))
        return Doc(v, self.path)

    def get(self, key, default=None):
        return self.value.get(key, default)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ParseError(err.strerror or str(err), path) from err
    try:
        value = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, path, err.lineno) from err
    if not isinstance(value, dict):
        raise ParseError("expected a JSON object", path)
    return Doc(value, path)


def dumps(doc):
    """Deterministic serialisation."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _build(doc, what, fn):
    try:
        return fn()
    except CategoryError as err:
        raise ValidationError(f"invalid {what}: {err}", doc.path,
                              err.witness) from err
    except (KeyError, TypeError, IndexError) as err:
        raise ParseError(f"malformed {what}: {err!r}", doc.path) from err


# -- detection -----------------------------------------------------------------

def kind_of(value):
    """The kind of document: category, fobject, fcategory, sketch, model,
    fmap, transformation or monad."""
    if "tight_cat" in value:
        return "fobject"
    if "cones" in value and "carrier" in value:
        return "sketch"
    if "T" in value and "carrier" in value:
        return "monad"
    if "components" in value and "weakness" in value:
        return "transformation"
    if "one_cells" in value and "comp1" in value:
        return "fcategory"
    if "source" in value and "one_cells" in value:
        return "model"
    if "source" in value and "target" in value and "objects" in value:
        return "fmap"
    if "morphisms" in value and "compose" in value:
        return "category"
    raise ParseError("unrecognised document")


# -- readers -------------------------------------------------------------------

def read_category(doc):
    return _build(doc, "category", lambda: FiniteCategory.from_json(
        doc.value, check=False))


def read_fobject(doc):
    """An FObject, or a category read as chordate."""
    if "tight_cat" in doc.value:
        return _build(doc, "F-object", lambda: FObject.from_json(doc.value))
    return chordate(read_category(doc))


def read_fcategory(doc):
    return _build(doc, "F-category", lambda: FiniteFCategory.from_json(
        doc.value, check=False))


def read_sketch(doc):
    return _build(doc, "sketch", lambda: Sketch.from_json(doc.value))


def read_model(doc, source=None):
    """An F-functor into 𝔽; ``source`` replaces an omitted source."""
    if source is not None and "source" not in doc.value:
        return _build(doc, "model", lambda: ffunctor_from_json(
            doc.value, source=source))
    return _build(doc, "model", lambda: ffunctor_from_json(doc.value))


def read_functor(doc, A, B):
    return _build(doc, "functor", lambda: FiniteFunctor(
        A, B, doc.value["objects"], doc.value["morphisms"]))


def read_fmap(doc):
    """``{source, target, objects, morphisms}``; returns an FMap when the
    endpoints are F-objects and a functor when both are categories."""
    src, dst = doc.child("source"), doc.child("target")
    if "tight_cat" not in src.value and "tight_cat" not in dst.value:
        A, B = read_category(src), read_category(dst)
        return read_functor(doc, A, B)
    A, B = read_fobject(src), read_fobject(dst)
    F = read_functor(doc, A.loose, B.loose)
    return _build(doc, "F-map", lambda: FMap(A, B, F))


def read_cell(doc, f, g):
    comps = doc.value
    return _build(doc, "2-cell", lambda: FCell(f, g, fc.NaturalTransformation(
        f.loose, g.loose, comps, check=True)))


def read_transformation(doc, source=None, target=None):
    """``{source, target, weakness, components, cells}``."""
    M = source or read_model(doc.child("source"))
    N = target or read_model(doc.child("target"), source=M.source)
    S = M.source

    def build():
        comps = {}
        for x, v in doc.value["components"].items():
            comps[x] = FMap(M.ob[x], N.ob[x], FiniteFunctor(
                M.ob[x].loose, N.ob[x].loose, v["objects"], v["morphisms"]))
        w1, w = doc.value["weakness"]
        cells = {}
        for f, v in doc.value.get("cells", {}).items():
            a, b = S.src1(f), S.dst1(f)
            lax_src = AMBIENT.comp1(N.one[f], comps[a])
            lax_dst = AMBIENT.comp1(comps[b], M.one[f])
            s, d = (lax_dst, lax_src) if w == "c" else (lax_src, lax_dst)
            cells[f] = FCell(s, d, fc.NaturalTransformation(
                s.loose, d.loose, v, check=True))
        return LooseTransformation(M, N, comps, cells, (w1, w),
                                   name=doc.get("name"))
    return _build(doc, "transformation", build)


def read_monad(doc):
    """``{carrier, T: {objects, one_cells, two_cells}, mu, eta}`` on a
    finite F-category; returns ``(monad, algebras)``."""
    from . import monad as mo
    from .fcat import FFunctor
    A = read_fcategory(doc.child("carrier"))
    t = doc.child("T").value

    def build():
        T = FFunctor(A, A, t["objects"], t["one_cells"], t["two_cells"],
                     check=False)
        monad = mo.EnhancedMonad(A, T, doc.value["mu"], doc.value["eta"],
                                 name=doc.get("name"))
        algs = [mo.TAlgebra(a["carrier"], a["structure"], name=a.get("name"))
                for a in doc.get("algebras", [])]
        return monad, algs
    return _build(doc, "monad", build)


# -- writers -------------------------------------------------------------------

def functor_json(F):
    return {"objects": {label(k): label(v) for k, v in F.ob.items()},
            "morphisms": {label(k): label(v) for k, v in F.mor.items()}}


def fmap_json(f):
    return dict(functor_json(f.loose), source=f.source.to_json(),
                target=f.target.to_json(), tight=f.is_tight)


def cell_json(c):
    return {label(k): label(v)
            for k, v in c.transformation.components.items()}


def transformation_json(phi, source=None, target=None):
    """``source``/``target`` may be file names to reference instead of
    inlining the models."""
    return {
        "source": source or ffunctor_to_json(phi.source),
        "target": target or ffunctor_to_json(phi.target),
        "weakness": list(phi.weakness),
        "components": {label(x): functor_json(c.loose)
                       for x, c in phi.components.items()},
        "cells": {label(f): cell_json(c) for f, c in phi.cells.items()},
    }


def monad_json(monad, algebras=()):
    T, A = monad.T, monad.carrier
    return {
        "name": monad.name,
        "carrier": A.to_json(),
        "T": {"objects": {label(k): label(v) for k, v in T.ob.items()},
              "one_cells": {label(k): label(v) for k, v in T.one.items()},
              "two_cells": {label(k): label(v) for k, v in T.two.items()}},
        "mu": {label(x): label(monad.mu[x]) for x in monad.objects},
        "eta": {label(x): label(monad.eta[x]) for x in monad.objects},
        "algebras": [{"carrier": label(a.carrier),
                      "structure": label(a.structure), "name": a.name}
                     for a in algebras],
    }


def ffunctor_json(F):
    return ffunctor_to_json(F)


__all__ = [
    "ParseError", "ValidationError", "Doc", "load", "dumps", "kind_of",
    "read_category", "read_fobject", "read_fcategory", "read_sketch",
    "read_model", "read_functor", "read_fmap", "read_cell",
    "read_transformation", "read_monad", "functor_json", "fmap_json",
    "cell_json", "transformation_json", "monad_json", "ffunctor_json",
]
