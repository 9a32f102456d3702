"""Write the built-in fixtures as JSON job files for the command line."""

import os

from . import fincat as fc
from . import fixtures as fx
from . import serial
from .fcat import FObject, chordate
from .fincat import label
from .monad import enumerate_algebras
from .sketch import ffunctor_to_json


def _write(directory, name, doc):
    path = os.path.join(directory, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serial.dumps(doc))
    return path


def fixture_documents():
    """``relative path → JSON document``."""
    docs = {}
    W = fc.walking_arrow()
    docs["walking-arrow.json"] = W.to_json()

    S, M, N, phi = fx.obstruction()
    docs["obstruction/sketch.json"] = S.to_json()
    docs["obstruction/source.json"] = ffunctor_to_json(M)
    docs["obstruction/target.json"] = ffunctor_to_json(N)
    docs["obstruction/transformation.json"] = serial.transformation_json(
        phi, "source.json", "target.json")

    point = chordate(fc.terminal())
    half = FObject.from_subset(W, ["0"])
    docs["loose-arrow-limit.json"] = {
        "kind": "dotted-lax", "shape": "loose-arrow", "w": "l",
        "diagram": {"objects": {"A": point.to_json(), "B": half.to_json()},
                    "one_cells": {"f": {"objects": {"*": "1"},
                                        "morphisms": {"1_*": "1_1"}}}}}

    T = fx.closure_monad()
    docs["closure-monad.json"] = serial.monad_json(T, enumerate_algebras(T))

    point_cat = fc.full_subcategory(W, ["0"])
    docs["orthogonal/arrow.json"] = W.to_json()
    docs["orthogonal/point-into-arrow.json"] = {
        "source": point_cat.to_json(), "target": W.to_json(),
        "objects": {"0": "0"}, "morphisms": {"1_0": "1_0"}}

    for name, (alpha, beta, eta, eps, w) in fx.mate_fixtures().items():
        docs[f"mates/{name}.json"] = {
            "w": w, "alpha": serial.transformation_json(alpha),
            "beta": {label(x): serial.functor_json(b.loose)
                     for x, b in beta.items()},
            "eta": {label(x): serial.cell_json(c) for x, c in eta.items()},
            "eps": {label(x): serial.cell_json(c) for x, c in eps.items()}}
    docs["equiv-idempotent.json"] = {"fixture": "idempotent"}
    docs["equiv-identity.json"] = {"fixture": "identity"}
    return docs


def write_fixture_files(directory):
    return sorted(_write(directory, n, d)
                  for n, d in fixture_documents().items())


if __name__ == "__main__":
    import sys
    for p in write_fixture_files(sys.argv[1] if len(sys.argv) > 1
                                 else "data"):
        print(p)
