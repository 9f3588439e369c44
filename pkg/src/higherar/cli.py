"""Command-line front end: ``higherar <group> <command> [options]``.

Algebras come from a JSON document (``--algebra FILE``) with keys
``vertices``, ``arrows`` (objects with ``id``, ``src``, ``tgt``),
``relations`` (lists of ``{"coef", "path", "vertex"}`` terms) and
``nilpotency``, or from a built-in name (``--named``):

    A<m>          path algebra of the linear quiver 1 -> ... -> m
    A3ss          path algebra of 1 -> 2 <- 3
    lambda<n>     linear quiver 0 -> ... -> n modulo all paths of length two
    k[t]/t^<m>    truncated polynomial ring
    aus:<name>    Auslander algebra of a built-in representation-finite algebra

Modules are JSON documents ``{"dim_vector": [...], "action": {arrow id: rows}}``
or standard modules written ``P:v``, ``I:v``, ``S:v`` for a vertex id ``v``.

Output is JSON on stdout (``--dot`` switches to DOT where a quiver is
produced).  Exit codes: 0 success, 1 negative verdict, 2 usage or input
error, 3 computation could not finish (caps, truncation, knitting).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import algebra as alg
from . import arquiver, cluster, coxpre, highergrid, homology, mfhyper, rep
from .linalg import qstr

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class Negative(Exception):
    """Carries a computed result whose verdict is false."""

    def __init__(self, payload):
        super().__init__("negative verdict")
        self.payload = payload


# ---------------------------------------------------------------- inputs

def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from None


def _source_sink_a3():
    q = alg.Quiver([1, 2, 3], [alg.Arrow("a", 1, 2), alg.Arrow("b", 3, 2)])
    return alg.path_algebra(q)


def named_algebra(name):
    if name.startswith("aus:"):
        base = named_algebra(name[4:])
        return alg.endomorphism_presentation(arquiver.additive_generator(base)).algebra
    if name == "A3ss":
        return _source_sink_a3()
    if name.startswith("lambda") and name[6:].isdigit():
        return alg.lambda_n(int(name[6:]))
    if name.startswith("A") and name[1:].isdigit() and int(name[1:]) >= 1:
        return alg.path_algebra(alg.linear_quiver(int(name[1:])))
    if name.startswith("k[t]/t^") and name[7:].isdigit():
        return alg.truncated_polynomial(int(name[7:]))
    raise UsageError(f"unknown built-in algebra {name!r}")


def load_algebra(args):
    if getattr(args, "algebra", None):
        return alg.algebra_from_json(_read_json(args.algebra), N=args.nilpotency)
    if getattr(args, "named", None):
        return named_algebra(args.named)
    raise UsageError("give --algebra FILE or --named NAME")


def _vertex_id(A, text):
    for v in A.quiver.vertices:
        if str(v) == text:
            return v
    raise UsageError(f"unknown vertex {text!r}")


def load_module(A, item):
    if len(item) > 2 and item[1] == ":" and item[0] in "PIS":
        v = _vertex_id(A, item[2:])
        return {"P": rep.projective, "I": rep.injective, "S": rep.simple}[item[0]](A, v)
    doc = _read_json(item)
    if "modules" in doc:
        raise UsageError(f"{item} holds several modules; pass it to --modules")
    return rep.rep_from_json(A, doc)


def load_modules(A, items):
    out = []
    for item in items:
        if item.endswith(".json"):
            doc = _read_json(item)
            if isinstance(doc, dict) and "modules" in doc:
                out.extend(rep.rep_from_json(A, d) for d in doc["modules"])
                continue
        out.append(load_module(A, item))
    return out


def _sum(A, mods):
    return rep.direct_sum(mods, A)[0]


def _quiver_arg(text):
    if text.startswith("cyclic") and text[6:].isdigit():
        return coxpre.cyclic_quiver(int(text[6:]))
    try:
        return highergrid.dynkin_quiver(text)
    except ValueError:
        pass
    doc = _read_json(text)
    return alg.Quiver(doc["vertices"], [alg.Arrow(a["id"], a["src"], a["tgt"], a.get("label"))
                                         for a in doc["arrows"]])


def _word(text):
    return coxpre.parse_word(text)


# ---------------------------------------------------------------- outputs

def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if isinstance(x, homology.AtLeast):
        return x.to_json()
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return x
    try:
        return qstr(x)
    except (TypeError, ValueError):
        return str(x)


def emit(payload, args):
    if isinstance(payload, str):
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        sys.stdout.write(json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n")


def _verdict(payload, ok):
    if not ok:
        raise Negative(payload)
    return payload


def _dims(M):
    return list(M.dims)


# ---------------------------------------------------------------- algebra / rep / homology

def cmd_algebra_build(args):
    A = load_algebra(args)
    doc = A.to_json()
    doc["dim"] = A.dim
    doc["basis"] = [{"source": A.quiver.vertices[p[0]], "path": A.quiver.path_ids(p)} for p in A.basis]
    return doc


def cmd_algebra_info(args):
    A = load_algebra(args)
    g = homology.gl_dim(A, args.cap)
    return {"vertices": A.n_vertices, "arrows": A.quiver.n_arrows, "dim": A.dim,
            "loewy_length": A.loewy_length(), "cartan": alg.cartan_matrix(A),
            "gl_dim": g, "dom_dim": homology.dom_dim(A, args.cap)}


def cmd_rep_decompose(args):
    A = load_algebra(args)
    M = load_module(A, args.module)
    parts = rep.decompose(M, seed=args.seed)
    return {"dim_vector": _dims(M),
            "summands": [{"dim_vector": _dims(X), "multiplicity": m, "module": X.to_json()}
                         for X, m in parts]}


def cmd_rep_hom(args):
    A = load_algebra(args)
    X, Y = load_module(A, args.source), load_module(A, args.target)
    return {"hom_dim": rep.hom_dim(X, Y), "stable_hom_dim": homology.stable_hom_dim(X, Y),
            "costable_hom_dim": homology.costable_hom_dim(X, Y)}


def cmd_homology_resolve(args):
    A = load_algebra(args)
    M = load_module(A, args.module)
    res = (homology.injective_coresolution if args.injective else homology.projective_resolution)(M, args.cap)
    return {"terms": [_dims(T) for T in res.terms], "length": res.length}


def cmd_homology_dims(args):
    A = load_algebra(args)
    out = {"gl_dim": homology.gl_dim(A, args.cap), "dom_dim": homology.dom_dim(A, args.cap)}
    if args.module:
        M = load_module(A, args.module)
        out["pd"] = homology.pd(M, args.cap)
        out["id"] = homology.injective_dimension(M, args.cap)
    return out


def cmd_homology_conditions(args):
    A = load_algebra(args)
    g = homology.gl_dim(A, args.cap)
    if not homology.finite(g):
        raise homology.HomologyError("global dimension is not finite within the cap")
    out = {"gl_dim": g,
           "restricted_gorenstein": homology.gorenstein_condition(A, True, args.cap),
           # the (0,0)-condition is empty
           "two_sided_nn": g == 0 or homology.mn_condition(A, g, g, two_sided=True, cap=args.cap)}
    if g == 2:
        d = homology.dom_dim(A, args.cap)
        if not homology.finite(d) or d >= 2:
            # an Auslander algebra
            out["small_pd_simples"] = homology.small_pd_simples_report(A, args.cap)
    return out


# ---------------------------------------------------------------- AR theory

def cmd_ar_knit(args):
    A = load_algebra(args)
    ar = arquiver.knit(A, args.dim_cap)
    return ar.to_dot() if args.dot else ar.to_json()


def cmd_ar_ass(args):
    A = load_algebra(args)
    X = load_module(A, args.module)
    if args.ending:
        s = arquiver.almost_split_ending_at(X)
    else:
        s = arquiver.almost_split_starting_at(X)
    return {"terms": [_dims(T) for T in s.seq.terms]}


# ---------------------------------------------------------------- cluster tilting

def _cluster_module(A, args):
    if args.mn:
        entries, _ = cluster.m_n_subcategory(A, args.mn)
        return _sum(A, [e.module for e in entries])
    if not args.modules:
        raise UsageError("give --modules or --mn")
    return _sum(A, load_modules(A, args.modules))


def _ambient(A, args):
    if args.ambient == "perp":
        if not args.tilting:
            raise UsageError("the perp ambient needs --tilting")
        return cluster.Ambient("perp", _sum(A, load_modules(A, args.tilting)))
    return cluster.Ambient(args.ambient)


def cmd_cluster_verify(args):
    A = load_algebra(args)
    M = _cluster_module(A, args)
    cert = cluster.is_n_cluster_tilting(M, args.n, _ambient(A, args), args.criterion,
                                        dim_cap=args.dim_cap)
    return _verdict(cert.to_json(), cert.holds)


def cmd_cluster_mn(args):
    A = load_algebra(args)
    M, Mp = cluster.m_n_subcategory(A, args.n)
    return {"n": args.n,
            "M": [{"dim_vector": _dims(e.module), "depth": e.depth} for e in M],
            "M_prime": [{"dim_vector": _dims(e.module), "depth": e.depth} for e in Mp],
            "profile": cluster.orbit_profile(M), "profile_prime": cluster.orbit_profile(Mp)}


def cmd_cluster_nass(args):
    A = load_algebra(args)
    M = _cluster_module(A, args)
    X = load_module(A, args.end)
    s = cluster.n_almost_split(X, M, args.n)
    return _verdict({"terms": [_dims(T) for T in s.seq.terms], "hom_exact": s.hom_exact,
                     "start_is_tau_n": s.start_is_tau_n}, s.hom_exact and s.start_is_tau_n)


def cmd_cluster_cone(args):
    A = load_algebra(args)
    report = cluster.is_n_complete(A, args.n)
    if not report["complete"]:
        raise Negative({"complete": False, "report": report})
    B = cluster.cone(A, args.n, check=False)
    if args.dot:
        return B.quiver.to_dot("cone")
    doc = B.to_json()
    doc["dim"] = B.dim
    return doc


def cmd_cluster_exchange(args):
    A = load_algebra(args)
    M = _cluster_module(A, args)
    X = load_module(A, args.summand)
    ex = cluster.exchange_summand(M, X, two_cy=True, ambient=_ambient(A, args))
    return {"new": ex.new.to_json(), "new_dim_vector": _dims(ex.new),
            "module_dim_vector": _dims(ex.module)}


# ---------------------------------------------------------------- grids

def cmd_higher_qn(args):
    g = highergrid.build_grid(highergrid.dynkin_quiver(args.type), args.n)
    return g.to_dot() if args.dot else g.to_json()


def cmd_higher_crosscheck(args):
    report = highergrid.crosscheck_cone(highergrid.dynkin_quiver(args.type), args.k)
    ok = any(m["quiver"] or m["opposite_quiver"] for m in report["matches"].values())
    return _verdict(report, ok)


# ---------------------------------------------------------------- Coxeter / preprojective

def cmd_cox_reduce(args):
    W = coxpre.CoxeterSystem(_quiver_arg(args.quiver))
    w = _word(args.word)
    r = W.reduce(w)
    return {"word": list(w), "reduced": list(r), "is_reduced": W.is_reduced(w), "length": len(r),
            "normal_form": list(W.normal_form(w))}


def cmd_cox_equal(args):
    W = coxpre.CoxeterSystem(_quiver_arg(args.quiver))
    words = [_word(t) for t in args.words]
    forms = [W.normal_form(w) for w in words]
    same = all(f == forms[0] for f in forms)
    return _verdict({"equal": same, "normal_forms": [list(f) for f in forms]}, same)


def cmd_cox_exprs(args):
    W = coxpre.CoxeterSystem(_quiver_arg(args.quiver))
    return {"expressions": [list(e) for e in W.all_reduced_expressions(_word(args.word), args.cap)]}


def _expression(args):
    return coxpre.expression_data(_quiver_arg(args.quiver), _word(args.word), args.truncation)


def cmd_prepro_tw(args):
    d = _expression(args)
    return {"word": list(d.word), "truncation": d.N, "lambda_w_dim": d.lambda_w.dim,
            "new_summands": [{"step": k + 1, "top": v, "dim": X.dim, "dim_vector": _dims(X)}
                             for k, (X, v) in enumerate(d.new)]}


def cmd_prepro_quiver(args):
    Q = _quiver_arg(args.quiver)
    w = _word(args.word)
    q = (coxpre.underline_quiver if args.underline else coxpre.quiver_of_expression)(Q, w)
    return q.to_dot("Qw") if args.dot else q.to_json()


def cmd_prepro_certify(args):
    d = _expression(args)
    cert = coxpre.verify_t_cluster_tilting(d)
    cmp = coxpre.compare_expression_quiver(d)
    payload = {"certificate": cert.to_json(), "truncation": d.N,
               "quiver_matches": cmp["equal"] or cmp["equal_opposite"]}
    return _verdict(payload, cert.holds)


# ---------------------------------------------------------------- matrix factorizations

def _matrix(text, variables):
    rows = json.loads(text) if text.strip().startswith("[") else [[text]]
    return [[mfhyper.MPoly.parse(str(e), variables) for e in row] for row in rows]


def _mf_from_args(args):
    f = mfhyper.MPoly.parse(args.f)
    A = _matrix(args.A, None)
    B = _matrix(args.B, None)
    ring = mfhyper._ring([f] + [x for m in (A, B) for r in m for x in r])
    return mfhyper.MatFac(f.extend(ring), [[x.extend(ring) for x in r] for r in A],
                          [[x.extend(ring) for x in r] for r in B])


def random_factorization(rng, size, variables=("x", "y")):
    """A random square matrix and its adjugate, factoring the determinant."""
    def poly():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(0, 2), rng.randint(0, 2))] = rng.randint(-3, 3)
        return mfhyper.MPoly(variables, terms)

    if size == 1:
        a, b = poly(), poly()
        return mfhyper.one_by_one(a * b, a, b)
    a = [[poly(), poly()], [poly(), poly()]]
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    adj = [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
    return mfhyper.MatFac(det, a, adj)


def cmd_mf_verify(args):
    if args.random:
        rng = random.Random(args.seed)
        results = []
        for k in range(args.random):
            mf = random_factorization(rng, 1 + k % 2)
            results.append(mfhyper.verify_mf(mf) and mfhyper.verify_mf(mfhyper.knorrer(mf)))
        return _verdict({"checked": len(results), "all_hold": all(results)}, all(results))
    mf = _mf_from_args(args)
    ok = mfhyper.verify_mf(mf)
    return _verdict({"holds": ok, "size": mf.size}, ok)


def cmd_mf_knorrer(args):
    mf = _mf_from_args(args)
    if not mfhyper.verify_mf(mf):
        raise Negative({"holds": False, "reason": "input is not a matrix factorization"})
    out = mf
    for _ in range(args.times):
        out = mfhyper.knorrer(out)
    doc = out.to_json()
    doc["holds"] = mfhyper.verify_mf(out)
    return doc


def cmd_mf_classify(args):
    data = mfhyper.HypersurfaceData.parse(args.factors)
    report = mfhyper.classify_cluster_tilting(data)
    if args.complexes and report["has_cluster_tilting"]:
        report["complexes"] = [mfhyper.two_almost_split_complex(data, i) for i in range(1, data.n + 1)]
    return _verdict(report, report["has_cluster_tilting"])


def cmd_mf_quiver(args):
    data = mfhyper.HypersurfaceData.parse(args.factors)
    w = tuple(int(t) for t in args.perm.replace(",", " ").split()) if args.perm else None
    q = mfhyper.stable_end_quiver(data, w)
    return q.to_dot("StableEnd") if args.dot else q.to_json()


def cmd_mf_simple(args):
    r = mfhyper.simple_singularity_has_ct(args.type[0].upper(), int(args.type[1:]))
    return _verdict(r, r["verdict"])


def cmd_mckay(args):
    def parse(tok):
        parts = [int(p) for p in tok.split(":")]
        return parts[0] if len(parts) == 1 else tuple(parts)

    weights = [parse(t) for t in args.weights.replace(",", " ").split()]
    orders = [int(t) for t in args.order.split(":")]
    order = orders[0] if len(orders) == 1 else tuple(orders)
    q = mfhyper.mckay_quiver(weights, order, args.d)
    return q.to_dot("McKay") if args.dot else q.to_json()


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _algebra_opts(p):
    p.add_argument("--algebra", help="algebra JSON file")
    p.add_argument("--named", help="built-in algebra name")
    p.add_argument("--nilpotency", type=int, help="override the nilpotency bound of the file")
    p.add_argument("--cap", type=int, default=homology.DEFAULT_CAP, help="resolution depth cap")


def _cluster_opts(p):
    _algebra_opts(p)
    p.add_argument("--modules", nargs="+", help="module files or P:v / I:v / S:v")
    p.add_argument("--mn", type=int, help="use the M_n subcategory instead of --modules")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--ambient", choices=["module", "perp", "sub"], default="module")
    p.add_argument("--tilting", nargs="+", help="summands of the tilting module for --ambient perp")
    p.add_argument("--dim-cap", type=int, default=40)


def build_parser():
    top = _Parser(prog="higherar", description="Exact computations in higher Auslander-Reiten theory.")
    top.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    top.add_argument("--dot", action="store_true", help="emit DOT where a quiver is produced")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def group(name, help_text):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(sub, name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        p.add_argument("--dot", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return p

    g = group("algebra", "bound quiver algebras")
    _algebra_opts(command(g, "build", cmd_algebra_build, "normalize and print the basis"))
    _algebra_opts(command(g, "info", cmd_algebra_info, "dimensions and homological data"))

    g = group("rep", "representations")
    p = command(g, "decompose", cmd_rep_decompose, "Krull-Schmidt decomposition")
    _algebra_opts(p)
    p.add_argument("module")
    p = command(g, "hom", cmd_rep_hom, "dimensions of Hom spaces")
    _algebra_opts(p)
    p.add_argument("source")
    p.add_argument("target")

    g = group("homology", "resolutions and homological dimensions")
    p = command(g, "resolve", cmd_homology_resolve, "minimal (co)resolution")
    _algebra_opts(p)
    p.add_argument("module")
    p.add_argument("--injective", action="store_true")
    p = command(g, "dims", cmd_homology_dims, "global, dominant and module dimensions")
    _algebra_opts(p)
    p.add_argument("--module")
    _algebra_opts(command(g, "conditions", cmd_homology_conditions, "Gorenstein-type conditions"))

    g = group("ar", "Auslander-Reiten theory")
    p = command(g, "knit", cmd_ar_knit, "AR quiver by knitting")
    _algebra_opts(p)
    p.add_argument("--dim-cap", type=int, default=40)
    p = command(g, "ass", cmd_ar_ass, "almost split sequence")
    _algebra_opts(p)
    p.add_argument("module")
    p.add_argument("--ending", action="store_true", help="sequence ending at the module")

    g = group("cluster", "n-cluster tilting")
    _cluster_opts(p := command(g, "verify", cmd_cluster_verify, "certify cluster tilting"))
    p.add_argument("--criterion", choices=["auto", "definition", "one_sided", "lemma"], default="auto")
    _cluster_opts(command(g, "mn", cmd_cluster_mn, "orbit subcategories of the higher translate"))
    p = command(g, "nass", cmd_cluster_nass, "n-almost split sequence")
    _cluster_opts(p)
    p.add_argument("end", help="right end term")
    _cluster_opts(command(g, "cone", cmd_cluster_cone, "cone of an n-complete algebra"))
    p = command(g, "exchange", cmd_cluster_exchange, "exchange one summand")
    _cluster_opts(p)
    p.add_argument("summand")

    g = group("higher", "grid quivers")
    p = command(g, "qn", cmd_higher_qn, "grid quiver of a Dynkin quiver")
    p.add_argument("--type", required=True)
    p.add_argument("--n", type=int, required=True)
    p = command(g, "crosscheck", cmd_higher_crosscheck, "compare with the iterated cone")
    p.add_argument("--type", required=True)
    p.add_argument("--k", type=int, required=True)

    g = group("cox", "Coxeter groups of quivers")
    p = command(g, "reduce", cmd_cox_reduce, "reduced word and normal form")
    p.add_argument("word")
    p.add_argument("--quiver", required=True)
    p = command(g, "equal", cmd_cox_equal, "compare words as group elements")
    p.add_argument("words", nargs="+")
    p.add_argument("--quiver", required=True)
    p = command(g, "exprs", cmd_cox_exprs, "all reduced expressions")
    p.add_argument("word")
    p.add_argument("--quiver", required=True)
    p.add_argument("--cap", type=int, default=10)

    g = group("prepro", "preprojective algebras")
    for name, fn, text in (("tw", cmd_prepro_tw, "cluster tilting summands"),
                           ("quiver", cmd_prepro_quiver, "quiver of a reduced expression"),
                           ("certify", cmd_prepro_certify, "certify the cluster tilting object")):
        p = command(g, name, fn, text)
        p.add_argument("word")
        p.add_argument("--quiver", required=True)
        p.add_argument("--truncation", type=int)
        if name == "quiver":
            p.add_argument("--underline", action="store_true")

    g = group("mf", "matrix factorizations")
    p = command(g, "verify", cmd_mf_verify, "check A B = B A = f")
    for key in ("--f", "--A", "--B"):
        p.add_argument(key)
    p.add_argument("--random", type=int, default=0, help="check a random battery instead")
    p = command(g, "knorrer", cmd_mf_knorrer, "doubled factorization of f + uv")
    for key in ("--f", "--A", "--B"):
        p.add_argument(key, required=True)
    p.add_argument("--times", type=int, default=1)
    p = command(g, "classify", cmd_mf_classify, "2-cluster tilting objects of S/(f)")
    p.add_argument("--factors", required=True)
    p.add_argument("--complexes", action="store_true")
    p = command(g, "quiver", cmd_mf_quiver, "quiver of the stable endomorphism algebra")
    p.add_argument("--factors", required=True)
    p.add_argument("--perm")
    p = command(g, "simple", cmd_mf_simple, "verdict for a simple curve singularity")
    p.add_argument("--type", required=True)

    p = groups.add_parser("mckay", help="McKay quiver of a diagonal abelian group")
    p.set_defaults(fn=cmd_mckay)
    p.add_argument("--weights", required=True, help="e.g. '1,1,1' or '1:0,0:1' for product groups")
    p.add_argument("--order", required=True, help="e.g. '3' or '2:2'")
    p.add_argument("--d", type=int)
    p.add_argument("--dot", action="store_true", default=argparse.SUPPRESS)
    return top


def _fail(code, kind, message, stream=None):
    (stream or sys.stderr).write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.group in ("mf",) and args.command == "verify" and not args.random:
            if not (args.f and args.A and args.B):
                raise UsageError("mf verify needs --f, --A and --B (or --random N)")
        payload = args.fn(args)
    except Negative as neg:
        emit(neg.payload, args)
        return EXIT_NEGATIVE
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except (alg.AlgebraError, rep.RepError, mfhyper.MFError, coxpre.CoxeterError, ValueError) as exc:
        return _fail(EXIT_USAGE, type(exc).__name__, str(exc))
    except (arquiver.KnitError, homology.HomologyError, cluster.ClusterError,
            coxpre.TruncationError, RuntimeError) as exc:
        return _fail(EXIT_FAILURE, type(exc).__name__, str(exc))
    emit(payload, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
