"""Command-line front end: JSON in, JSON report out.

Exit status 0 means certified or valid, 1 a mathematical failure (the
report carries a witness), 2 an exhausted bound and 3 unreadable or
malformed input.
"""

import argparse
import sys

from . import fincat as fc
from . import limits as lim
from . import monad as mo
from . import orthogonal as orth
from . import serial
from . import sketch as sk
from .fcat import FMap, check_loose_natural
from .fincat import CategoryError, EnumerationBoundExceeded, FinitenessExceeded
from .limits import AMBIENT as K

OK, FAILED, EXHAUSTED, BAD_INPUT = 0, 1, 2, 3
DEFAULT_APEX_BOUND = 3
DEFAULT_COLIMIT_BOUND = 2000
EQUIV_BOUND = 10 ** 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- validate ----------------------------------------------------------------------

def cmd_validate(args):
    doc = serial.load(args.file)
    kind = serial.kind_of(doc.value)
    if kind == "category":
        bad = serial.read_category(doc).violations()
    elif kind == "fobject":
        bad = serial.read_fobject(doc).violations()
    elif kind == "fcategory":
        bad = serial.read_fcategory(doc).violations()
    elif kind == "sketch":
        bad = serial.read_sketch(doc).violations()
    elif kind == "model":
        bad = serial.read_model(doc).violations()
    elif kind == "fmap":
        f = serial.read_fmap(doc)
        bad = f.violations()
    elif kind == "transformation":
        bad = check_loose_natural(serial.read_transformation(doc)).violations
    else:
        monad, algs = serial.read_monad(doc)
        bad = monad.carrier.violations() or mo.check_monad(monad).violations
    return (FAILED if bad else OK), {
        "type": kind, "valid": not bad, "violations": bad}


# -- limits ------------------------------------------------------------------------

def _read_shape(doc):
    v = doc.get("shape")
    if v == "loose-arrow":
        return lim.loose_arrow_shape()
    shape = serial.read_fcategory(doc.child("shape"))
    marked = doc.get("marked")
    return lim.DottedFCategory(shape, marked, doc.get("dotted", ()))


def _read_diagram(doc, shape):
    d = doc.child("diagram")
    if "source" in d.value:
        return serial.read_model(d)
    obs = {x: serial.read_fobject(d.child("objects").child(x))
           for x in d.value["objects"]}
    ones = {}
    for f, v in d.value.get("one_cells", {}).items():
        a, b = obs[shape.src1(f)], obs[shape.dst1(f)]
        F = serial.read_functor(serial.Doc(v, d.path), a.loose, b.loose)
        ones[f] = FMap(a, b, F, check=False)
    twos = {}
    for al, v in d.value.get("two_cells", {}).items():
        twos[al] = serial.read_cell(serial.Doc(v, d.path),
                                    ones[shape.src2(al)], ones[shape.dst2(al)])
    try:
        return lim.diagram(shape, obs, ones, twos)
    except CategoryError as err:
        raise serial.ValidationError(f"invalid diagram: {err}", d.path,
                                     err.witness) from err


def cmd_limit(args):
    doc = serial.load(args.job)
    kind = args.kind or doc.get("kind")
    w = args.w or doc.get("w", "l")
    tests = lim.default_test_objects(args.apex_bound)
    report = {"kind": kind, "w": w}
    if kind == "pointwise":
        phi = serial.read_transformation(doc.child("transformation"))
        sketch = serial.read_sketch(doc.child("sketch")) \
            if "sketch" in doc.value else None
        P = lim.pointwise_model_limit(phi.source, phi.target, phi, w,
                                      sketch=sketch, bound=args.bound)
        report["limit"] = serial.ffunctor_json(P.functor)
        certs = {fc.label(x): lim.check_limit_universal(r, tests, args.bound)
                 for x, r in P.limits.items()}
        report["certificates"] = {x: c.to_json() for x, c in certs.items()}
        ok = all(certs.values())
        if sketch is not None:
            m = sk.check_model(P.functor, sketch, bound=args.bound)
            report["model"] = m.to_json()
            ok = ok and m.valid
        return (OK if ok else FAILED), report
    if kind == "weighted":
        W = serial.read_model(doc.child("weight"))
        D = _read_diagram(doc, W.source)
        res = lim.weighted_limit_end(W, D, args.bound)
    elif kind in ("marked-lax", "dotted-lax"):
        shape = _read_shape(doc)
        D = _read_diagram(doc, shape.shape)
        if kind == "marked-lax":
            res = lim.marked_lax_limit(shape, D, w, args.bound)
        else:
            res = lim.dotted_lax_limit(shape, D, w, args.bound)
    else:
        raise UsageError(f"unknown limit kind {kind!r}")
    cert = lim.check_limit_universal(res, tests, args.bound)
    report["limit"] = res.to_json()
    report["certificate"] = cert.to_json()
    return (OK if cert else FAILED), report


# -- models and transformations ----------------------------------------------------

def _sigma_verdicts(F, sketch, R, args):
    out = []
    for i in range(len(sketch.cones)):
        try:
            out.append(sk.orthogonal_to_sigma(
                F, sketch, i, R, lim.default_test_objects(args.apex_bound),
                args.colimit_bound))
        except FinitenessExceeded:
            out.append(None)
    return out


def cmd_model_check(args):
    S = serial.read_sketch(serial.load(args.sketch))
    F = serial.read_model(serial.load(args.model), source=S.carrier)
    tests = lim.default_test_objects(args.apex_bound) \
        if args.r == "equiv" else None
    rep = sk.check_model(F, S, args.r, args.bound, tests)
    report = {"r": args.r, "model": rep.to_json()}
    ok = rep.valid
    if args.sigma:
        report["sigma"] = _sigma_verdicts(F, S, args.r, args)
    if args.transformation:
        phi = serial.read_transformation(serial.load(args.transformation))
        others = [G for G in (phi.source, phi.target) if G != F]
        for G in others:
            extra = sk.check_model(G, S, args.r, args.bound, tests)
            if not extra.valid:
                report.setdefault("other_models", []).append(extra.to_json())
                ok = False
        nat = check_loose_natural(phi)
        report["transformation"] = nat.to_json()
        ok = ok and nat.valid
    witnesses = rep.failures or report.get("transformation", {}).get(
        "violations", [])
    if witnesses:
        report["witness"] = witnesses[0]
    return (OK if ok else FAILED), report


def cmd_nat_check(args):
    phi = serial.read_transformation(serial.load(args.transformation))
    if args.w and args.w != phi.w:
        raise UsageError(f"transformation has weakness {phi.w}, not {args.w}")
    rep = check_loose_natural(phi)
    report = {"weakness": list(phi.weakness), "naturality": rep.to_json(),
              "tight": sk.is_tight_transformation(phi)}
    if rep.violations:
        report["witness"] = rep.violations[0]
    return (OK if rep.valid else FAILED), report


# -- monads --------------------------------------------------------------------------

def cmd_monad_check(args):
    monad, algs = serial.read_monad(serial.load(args.monad))
    bad = monad.carrier.violations()
    report = {"carrier_violations": bad}
    rep = mo.check_monad(monad)
    report["monad"] = rep.to_json()
    report["algebras"] = [{"carrier": fc.label(a.carrier),
                           "structure": fc.label(a.structure),
                           "violations": mo.check_algebra(monad, a)}
                          for a in algs]
    found = mo.enumerate_algebras(monad, bound=args.bound)
    report["all_algebras"] = [[fc.label(a.carrier), fc.label(a.structure)]
                              for a in found]
    ok = not bad and rep.valid and \
        not any(a["violations"] for a in report["algebras"])
    return (OK if ok else FAILED), report


def _adjunction_cells(alpha, beta, doc, w):
    M, N = alpha.source, alpha.target
    left, right, U, C = mo._roles(M, N, alpha.components, beta, w)
    eta, eps = {}, {}
    for x in M.source.objects:
        lx = fc.label(x)
        L, R = left[x], right[x]
        eta[x] = serial.read_cell(doc.child("eta").child(lx),
                                  K.id1(U.ob[x]), K.comp1(R, L))
        eps[x] = serial.read_cell(doc.child("eps").child(lx),
                                  K.comp1(L, R), K.id1(C.ob[x]))
    return eta, eps


def cmd_mate(args):
    doc = serial.load(args.job)
    w = args.w or doc.get("w", "l")
    alpha = serial.read_transformation(doc.child("alpha"))
    M, N = alpha.source, alpha.target
    beta = {}
    for x in M.source.objects:
        v = doc.child("beta").child(fc.label(x))
        beta[x] = FMap(N.ob[x], M.ob[x], serial.read_functor(
            v, N.ob[x].loose, M.ob[x].loose))
    eta, eps = _adjunction_cells(alpha, beta, doc, w)
    try:
        mate = mo.mate_transformation(alpha, beta, eta, eps, w)
    except mo.NotAnAdjunction as err:
        return FAILED, {"w": w, "adjunction": False, "error": str(err),
                        "witness": err.witness}
    S = M.source
    tight_ids = all(K.is_identity2(mate.cells[t]) for t in S.tight)
    nat = check_loose_natural(mate)
    lift = mo.doctrinal_lift_failures(alpha, mate, eta, eps)
    report = {"w": w, "adjunction": True,
              "mate": serial.transformation_json(mate, "alpha.target",
                                                 "alpha.source"),
              "tight_cells_identities": tight_ids,
              "naturality": nat.to_json(), "doctrinal_lift": not lift,
              "lift_failures": lift}
    ok = tight_ids and nat.valid and not lift
    return (OK if ok else FAILED), report


def cmd_equiv_witness(args):
    from . import fixtures as fx
    name = args.fixture
    if name.endswith(".json"):
        name = serial.load(name).get("fixture")
    table = fx.monad_fixtures()
    if name not in table:
        raise UsageError(f"unknown fixture {name!r}; choose from "
                         f"{', '.join(sorted(table))}")
    S, models, monad, corr = table[name]
    ws = tuple(args.w) if args.w else ("l", "c", "p", "s")
    rep = mo.equivalence_witness(S, monad, models, corr, ws, args.bound)
    return (OK if rep.certified else FAILED), dict(rep.to_json(),
                                                   fixture=name, ws=list(ws))


# -- orthogonality -----------------------------------------------------------------

def _read_k(doc):
    if serial.kind_of(doc.value) == "category":
        return serial.read_category(doc)
    return serial.read_fobject(doc)


def cmd_orthogonal(args):
    if args.wfs_audit is not None:
        records = orth.wfs_audit(args.wfs_audit, args.seed, args.bound)
        bad = [r for r in records if not r["agree"]]
        return (FAILED if bad else OK), {
            "wfs_audit": args.wfs_audit, "disagreements": len(bad),
            "records": records}
    if not (args.k and args.m):
        raise UsageError("orthogonal needs --k and --m, or --wfs-audit N")
    Kx = _read_k(serial.load(args.k))
    m = serial.read_fmap(serial.load(args.m))
    verdict = orth.is_orthogonal(Kx, m, args.r, bound=args.bound)
    lifting = orth.has_lifting(m, orth.terminal_map(Kx), args.r,
                               bound=args.bound)
    pre = orth.orthogonality_map(Kx, m, args.bound).loose
    report = {"r": args.r, "orthogonal": verdict,
              "lifting_against_terminal": lifting,
              "precomposition": {
                  "source_objects": len(pre.source.objects),
                  "target_objects": len(pre.target.objects),
                  "source_morphisms": len(pre.source.morphisms),
                  "target_morphisms": len(pre.target.morphisms)}}
    if not verdict:
        report["witness"] = _orthogonality_witness(pre)
    if lifting != verdict:
        report["bridge_disagreement"] = True
    return (OK if verdict and lifting == verdict else FAILED), report


def _orthogonality_witness(F):
    """A first place where precomposition fails to be bijective."""
    seen = {}
    for x in F.source.objects:
        y = F.ob[x]
        if y in seen:
            return {"kind": "not-injective", "at": [fc.label(seen[y]),
                                                    fc.label(x)]}
        seen[y] = x
    missing = [y for y in F.target.objects if y not in seen]
    if missing:
        return {"kind": "not-surjective", "at": [fc.label(missing[0])]}
    return {"kind": "not-fully-faithful", "at": []}


# -- enumeration ---------------------------------------------------------------------

def cmd_enumerate(args):
    what = args.what
    if what == "functors":
        A = serial.read_category(serial.load(args.source))
        B = serial.read_category(serial.load(args.target))
        items = fc.enumerate_functors(A, B, args.bound)
        listing = [serial.functor_json(F) for F in items]
    elif what == "transformations":
        M = serial.read_model(serial.load(args.source))
        N = serial.read_model(serial.load(args.target), source=M.source)
        w = args.w or "l"
        items = sk.enumerate_loose_transformations(M, N, w, args.bound)
        listing = [serial.transformation_json(p, args.source, args.target)
                   for p in items]
    elif what == "algebras":
        monad, _ = serial.read_monad(serial.load(args.source))
        items = mo.enumerate_algebras(monad, bound=args.bound)
        listing = [[fc.label(a.carrier), fc.label(a.structure)]
                   for a in items]
    else:
        raise UsageError(f"cannot enumerate {what!r}")
    return OK, {"what": what, "count": len(listing), "items": listing}


# -- plumbing ----------------------------------------------------------------------

COMMANDS = {
    "validate": cmd_validate, "limit": cmd_limit,
    "model-check": cmd_model_check, "nat-check": cmd_nat_check,
    "monad-check": cmd_monad_check, "mate": cmd_mate,
    "equiv-witness": cmd_equiv_witness, "orthogonal": cmd_orthogonal,
    "enumerate": cmd_enumerate,
}


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--bound", type=_positive, default=None,
                        help="enumeration bound (default 100000; 10000 "
                        "for equiv-witness)")
    common.add_argument("--apex-bound", type=_positive,
                        default=DEFAULT_APEX_BOUND,
                        help="largest test apex (objects)")
    common.add_argument("--colimit-bound", type=_positive,
                        default=DEFAULT_COLIMIT_BOUND,
                        help="generation bound for colimits")
    common.add_argument("--r", choices=["iso", "equiv"], default="iso")
    common.add_argument("--w", choices=["s", "p", "l", "c"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write the report here")

    p = _Parser(prog="fcatlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("validate", parents=[common])
    v.add_argument("file")
    li = sub.add_parser("limit", parents=[common])
    li.add_argument("job")
    li.add_argument("--kind", choices=["weighted", "marked-lax", "dotted-lax",
                                       "pointwise"])
    mc = sub.add_parser("model-check", parents=[common])
    mc.add_argument("--sketch", required=True)
    mc.add_argument("--model", required=True)
    mc.add_argument("--transformation")
    mc.add_argument("--sigma", action="store_true",
                    help="also test orthogonality against each σ")
    nc = sub.add_parser("nat-check", parents=[common])
    nc.add_argument("transformation")
    mn = sub.add_parser("monad-check", parents=[common])
    mn.add_argument("monad")
    ma = sub.add_parser("mate", parents=[common])
    ma.add_argument("job")
    eq = sub.add_parser("equiv-witness", parents=[common])
    eq.add_argument("fixture", help="fixture name or a job naming one")
    ort = sub.add_parser("orthogonal", parents=[common])
    ort.add_argument("--k")
    ort.add_argument("--m")
    ort.add_argument("--wfs-audit", type=_positive)
    en = sub.add_parser("enumerate", parents=[common])
    en.add_argument("what", choices=["functors", "transformations",
                                     "algebras"])
    en.add_argument("--source", required=True)
    en.add_argument("--target")
    return p


def _bounds(args):
    return {"bound": args.bound, "apex_bound": args.apex_bound,
            "colimit_bound": args.colimit_bound}


def _inputs(args):
    keys = ("file", "job", "sketch", "model", "transformation", "monad",
            "fixture", "k", "m", "source", "target")
    return {k: getattr(args, k) for k in keys
            if getattr(args, k, None) is not None}


def _summary(command, status, report):
    word = {OK: "ok", FAILED: "failed", EXHAUSTED: "bound exhausted",
            BAD_INPUT: "bad input"}[status]
    extra = ""
    for key in ("witness", "error"):
        if key in report:
            extra = f": {report[key]}"
    return f"{command}: {word}{extra}"


def run(argv=None):
    """Run one job; returns ``(status, report, output path or None)``."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        return BAD_INPUT, {"command": None, "error": str(err),
                           "status": BAD_INPUT}, None
    if args.bound is None:
        args.bound = EQUIV_BOUND if args.command == "equiv-witness" \
            else fc.DEFAULT_BOUND
    report = {"command": args.command, "inputs": _inputs(args),
              "bounds": _bounds(args), "seed": args.seed,
              "r": args.r, "w": args.w}
    try:
        status, body = COMMANDS[args.command](args)
        report.update(body)
    except (EnumerationBoundExceeded, FinitenessExceeded) as err:
        status = EXHAUSTED
        report.update(error=str(err), exhausted=True)
    except serial.ValidationError as err:
        status = BAD_INPUT
        report.update(error=str(err), witness=err.witness)
    except (serial.ParseError, UsageError) as err:
        status = BAD_INPUT
        report.update(error=str(err))
    except CategoryError as err:
        status = FAILED
        report.update(error=str(err), witness=err.witness)
    report["status"] = status
    return status, report, args.output


def main(argv=None):
    status, report, output = run(argv)
    text = serial.dumps(report)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(_summary(report.get("command") or "fcatlab", status, report),
          file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
