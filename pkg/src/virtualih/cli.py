"""Command line front end.

    virtualih validate FILE
    virtualih hvector FILE [--relative] [--local CONE] [--assume-qc]
    virtualih quasiconvex FILE
    virtualih sheaf FILE [--max-degree D] [--seed S] [--model-out PATH]
    virtualih verify (FILE | --corpus)

Every command accepts ``--format text|structured`` and ``--timing``.  A
cone is named by its ray indices ("0,1,2,3") or by ``top`` for the unique
maximal cone.  Exit status: 0 when everything passes, 1 when a check or
verdict fails, 2 on unusable input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .fan import Fan, FanError, is_complete, is_simplicial
from .fanfile import (FanDocument, corpus_paths, dumps_canonical, file_hash, load_document)
from .fansheaf import (cochain_complex, diamond_check, links_are_points,
                       link_homology_profile, quasiconvexity_test)
from .hvector import (PoincarePolynomial, assumes_v, duality_check, global_poincare,
                      kalai_check, local_poincare)
from .mes import (acyclicity_check, check_lme, check_v_condition, construct_mes,
                  decompose_direct_image, duality_dims_check, flabby_decomposition_check,
                  freeness_probe, hard_lefschetz_check, model_to_dict, reduced_dims,
                  simplicial_pd_pairing, split_cone_check)


@dataclass
class Report:
    command: str
    input: str = ""
    sha256: str = ""
    ok: bool = True
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    max_degree: int | None = None
    seed: int | None = None
    timing: dict | None = None

    def check(self, name: str, ok: bool, detail="") -> bool:
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})
        self.ok = self.ok and bool(ok)
        return bool(ok)

    def to_dict(self) -> dict:
        out = {"command": self.command, "input": self.input, "sha256": self.sha256,
               "ok": self.ok, "results": self.results}
        if self.checks:
            out["checks"] = self.checks
        if self.max_degree is not None:
            out["max_degree"] = self.max_degree
        if self.seed is not None:
            out["seed"] = self.seed
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.input:
            lines += [f"input: {self.input}", f"sha256: {self.sha256}"]
        for k, v in self.results.items():
            if k == "details":
                continue
            lines.append(f"{k}: {_compact(v)}")
        for c in self.checks:
            tag = "PASS" if c["ok"] else "FAIL"
            detail = f"  {_compact(c['detail'])}" if c["detail"] not in ("", None, [], {}) else ""
            lines.append(f"{tag} {c['name']}{detail}")
        if self.max_degree is not None:
            lines.append(f"max_degree: {self.max_degree}")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        if self.timing is not None:
            lines.append("timing: " + ", ".join(f"{k}={v:.2f}s" for k, v in self.timing.items()))
        lines.append(f"status: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(lines) + "\n"


def _compact(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True, separators=(",", ":"))


def _rays(f: Fan, cid: int) -> list[int]:
    return list(f.cones[cid].rays)


def _poly(p: PoincarePolynomial) -> list[int]:
    return p.to_list()


def resolve_cone(f: Fan, spec: str) -> int:
    if spec in ("top", "sigma_top"):
        tops = f.maximal
        if len(tops) != 1:
            raise FanError(f"'top' needs a fan with one maximal cone, found {len(tops)}")
        return tops[0]
    if spec in ("o", "0cone", ""):
        return 0
    try:
        rays = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError as exc:
        raise FanError(f"cannot read cone {spec!r}") from exc
    return f.cone_by_rays(rays)


def _start(command: str, path) -> tuple[Report, FanDocument, Fan]:
    rep = Report(command)
    rep.input = str(path)
    rep.sha256 = file_hash(path)
    doc = load_document(path)
    return rep, doc, doc.build()


# -- commands ----------------------------------------------------------------

def cmd_validate(path) -> Report:
    rep, doc, f = _start("validate", path)
    rep.results = {"valid": True, "ambient_dim": f.ambient_dim, "field": doc.field,
                   "cones": len(f.cones), "f_vector": f.f_vector(), "pure": f.is_pure(),
                   "complete": is_complete(f), "simplicial": is_simplicial(f)}
    return rep


def cmd_hvector(path, relative: bool = False, local: str | None = None,
                assume_qc: bool = False) -> Report:
    rep, doc, f = _start("hvector", path)
    poset = f.poset()
    rational = doc.field == "Q"
    if local is not None:
        sigma = resolve_cone(f, local)
        rep.results = {"cone": _rays(f, sigma), "local": _poly(local_poincare(poset, sigma)),
                       "provenance": "assumes V" if assumes_v(poset, sigma, rational)
                       else "unconditional"}
        return rep
    if not assume_qc:
        verdict = quasiconvexity_test(f)
        if not verdict.quasi_convex:
            rep.ok = False
            rep.results = {"refused": "fan is not quasi-convex",
                           "witnesses": [_rays(f, w) for w in verdict.witnesses]}
            return rep
    p = global_poincare(poset, "relative" if relative else "absolute")
    flag = any(assumes_v(poset, s.id, rational) for s in f.cones)
    rep.results = {"mode": "relative" if relative else "absolute", "poincare": _poly(p),
                   "provenance": "assumes V" if flag else "unconditional"}
    return rep


def cmd_quasiconvex(path) -> Report:
    rep, doc, f = _start("quasiconvex", path)
    v = quasiconvexity_test(f)
    rep.ok = v.quasi_convex
    rep.results = {"quasi_convex": v.quasi_convex,
                   "witnesses": [_rays(f, w) for w in v.witnesses]}
    if v.witnesses and not is_complete(f):
        rep.results["links"] = [dict(link_homology_profile(f, w), cone=_rays(f, w))
                                for w in v.witnesses]
    return rep


def cmd_sheaf(path, max_degree: int | None = None, seed: int = 0,
              model_out: str | None = None) -> Report:
    rep, doc, f = _start("sheaf", path)
    D = 2 * f.ambient_dim + 4 if max_degree is None else max_degree
    rep.max_degree, rep.seed = D, seed
    model = construct_mes(f, seed=seed)
    cones = []
    for c in f.cones:
        counts = model.degree_counts(c.id)
        cones.append({"rays": list(c.rays), "dim": c.dim,
                      "generators": {str(k): v for k, v in counts.items()}})
    maxc = f.maximal
    rep.results = {"cones": cones,
                   "generators": {str(k): v for k, v in model.degree_counts(maxc[0]).items()}
                   if len(maxc) == 1 else None,
                   "reduced_dims": reduced_dims(model, max_degree=D).as_list()}
    if f.is_pure():
        rep.results["relative_reduced_dims"] = reduced_dims(
            model, vanish=f.boundary_ids(), max_degree=D).as_list()
    lme = check_lme(model)
    rep.check("local minimal extension", all(lme.values()),
              [_rays(f, c) for c, ok in lme.items() if not ok])
    if model_out:
        Path(model_out).write_text(dumps_canonical(model_to_dict(model)))
    return rep


# -- verification ---------------------------------------------------------------

def verify_document(doc: FanDocument, rep: Report, max_degree: int | None = None,
                    alt_seed: int = 1) -> None:
    """Run the property suite on one fan, comparing with its expected block."""
    exp = doc.expected
    f = doc.build()
    n = f.ambient_dim
    D = 2 * n + 4 if max_degree is None else max_degree
    rep.max_degree = D
    poset = f.poset()
    rational = doc.field == "Q"
    rep.check("fan axioms", True, f"{len(f.cones)} cones")
    if "cones" in exp:
        rep.check("cone count", len(f.cones) == exp["cones"], [len(f.cones), exp["cones"]])
    complete = is_complete(f)
    if "complete" in exp:
        rep.check("completeness", complete == exp["complete"])
    if "simplicial" in exp:
        rep.check("simpliciality", is_simplicial(f) == exp["simplicial"])

    qc = quasiconvexity_test(f)
    if "quasi_convex" in exp:
        rep.check("quasi-convexity verdict", qc.quasi_convex == exp["quasi_convex"],
                  [_rays(f, w) for w in qc.witnesses])
    if "witness_rays" in exp:
        rep.check("quasi-convexity witnesses",
                  sorted(_rays(f, w) for w in qc.witnesses) == sorted(exp["witness_rays"]))
    if not complete:
        rep.check("links are homology points iff quasi-convex",
                  links_are_points(f) == qc.quasi_convex)

    model = construct_mes(f)
    relative = acyclicity_check(model, "relative", D)
    probe = freeness_probe(model, D)
    rep.check("three-way equivalence (topology, acyclicity, freeness)",
              qc.quasi_convex == relative["exact"] == probe["free"],
              {"topology": qc.quasi_convex, "acyclic": relative["exact"],
               "free": probe["free"]})
    rep.check("local minimal extension", all(check_lme(model).values()))
    rep.check("diamond condition", all(not diamond_check(model.sheaf(), d)
                                        for d in range(0, 2 * n + 1, 2)))
    rep.check("d o d = 0", all(cochain_complex(f, model.sheaf(), d, relative=True).check_dd()
                               for d in range(0, 2 * n + 1, 2)))
    rep.check("flabby decomposition", all(flabby_decomposition_check(model, d)["holds"]
                                          for d in range(0, 2 * n + 1, 2)))

    bad_gens, bad_trivial, bad_bound, bad_v = [], [], [], []
    for c in f.cones:
        counts = model.degree_counts(c.id)
        vec = [counts.get(2 * q, 0) for q in range(max(counts) // 2 + 1)]
        if PoincarePolynomial(tuple(vec)) != local_poincare(poset, c.id):
            bad_gens.append(list(c.rays))
        if model.is_trivial(c.id) != c.is_simplicial:
            bad_trivial.append(list(c.rays))
        if c.id and max(model.gens[c.id]) > 2 * c.dim - 2:
            bad_bound.append(list(c.rays))
        if c.id and not check_v_condition(model, c.id)["literal"]:
            bad_v.append(list(c.rays))
    rep.check("generator degrees match local polynomials", not bad_gens, bad_gens)
    rep.check("single degree-0 generator iff simplicial", not bad_trivial, bad_trivial)
    rep.check("generator degree bound", not bad_bound, bad_bound)
    rep.check("vanishing condition", not bad_v, bad_v)
    splits = split_cone_check(model)
    rep.check("split cones", all(s["holds"] for s in splits), len(splits))
    for item in exp.get("generators", []):
        cid = f.cone_by_rays(item["rays"])
        rep.check(f"generators of {item['rays']}",
                  sorted(model.gens[cid]) == sorted(item["degrees"]), list(model.gens[cid]))
    for item in exp.get("local", []):
        cid = f.cone_by_rays(item["rays"])
        got = _poly(local_poincare(poset, cid))
        rep.check(f"local polynomial of {item['rays']}", got == item["p"], got)

    bad_kalai = []
    for c in f.cones:
        for t in f.faces[c.id]:
            if not kalai_check(poset, c.id, t)["holds"]:
                bad_kalai.append([list(c.rays), _rays(f, t)])
    rep.check("Kalai inequality", not bad_kalai, bad_kalai[:5])
    bad_deg = [list(c.rays) for c in f.cones[1:]
               if local_poincare(poset, c.id).degree > 2 * c.dim - 2]
    rep.check("local degree bound", not bad_deg, bad_deg)

    other = construct_mes(f, seed=alt_seed)
    subfans = [(frozenset(f.faces[c.id]), frozenset()) for c in f.cones]
    subfans += [(frozenset(f.faces[c.id]) - {c.id}, frozenset()) for c in f.cones[1:]]
    if f.is_pure():
        subfans.append((frozenset(range(len(f.cones))), f.boundary_ids()))
    same = other.gens == model.gens
    for sub, van in subfans:
        for d in range(0, 2 * n + 1, 2):
            a = model.sheaf().section_space(sub, d, van).dim
            b = other.sheaf().section_space(sub, d, van).dim
            same = same and a == b
    same = same and (reduced_dims(model, max_degree=2 * n).dims
                     == reduced_dims(other, max_degree=2 * n).dims)
    rep.check(f"construction independent of seed ({alt_seed})", same)

    if qc.quasi_convex:
        absolute = global_poincare(poset, "absolute")
        rel = global_poincare(poset, "relative")
        if "h" in exp:
            rep.check("h-vector", _poly(absolute) == exp["h"], _poly(absolute))
        if "h_relative" in exp:
            rep.check("relative h-vector", _poly(rel) == exp["h_relative"], _poly(rel))
        red = reduced_dims(model, max_degree=2 * n)
        rep.check("residue dims equal h-vector",
                  red.as_list() == [absolute[q] for q in range(n + 1)], red.as_list())
        rep.check("duality of polynomials", duality_check(poset)["holds"])
        rep.check("duality of residue dims", duality_dims_check(model)["holds"])
        rep.check("relative polynomial monic of degree 2n",
                  rel.degree == 2 * n and rel.leading() == 1)
        if not complete:
            rep.check("absolute degree below 2n-1", absolute.degree <= 2 * n - 2)
        rep.check("freeness matches series", probe["matches_series"])
        rep.check("absolute complex exact in positive degrees",
                  acyclicity_check(model, "absolute", D)["exact"])
        if is_simplicial(f) and f.is_pure():
            pd = simplicial_pd_pairing(f)
            rep.check("simplicial duality pairing", pd["nondegenerate"])
            rep.check("evaluation map matches euclidean formula",
                      pd["euclidean_ratio_consistent"], pd["euclidean_ratio"])
    if complete and "support" in doc.functions:
        hl = hard_lefschetz_check(model, doc.function(f))
        rep.check("Hard Lefschetz", hl["passed"],
                  [[r["degree"], r["rank"]] for r in hl["degrees"]])

    base = doc.refined_base()
    if base is not None:
        bf = base.build()
        dec = decompose_direct_image(bf, f)
        got = sorted([{"rays": _rays(bf, s), "K": [k.get(2 * q, 0) for q in range(max(k) // 2 + 1)]}
                      for s, k in dec.items() if s and k], key=lambda x: x["rays"])
        if "decomposition" in exp:
            rep.check("decomposition multiplicities",
                      got == sorted(exp["decomposition"], key=lambda x: x["rays"]), got)
        rep.check("multiplicity at the zero cone", dec[0] == {0: 1}, dec[0])
        rep.check("quasi-convexity invariant under refinement",
                  quasiconvexity_test(bf).quasi_convex == qc.quasi_convex)

    if "twin" in exp:
        tdoc = _sibling(doc, exp["twin"])
        tf = tdoc.build()
        tm = construct_mes(tf)
        same = (sorted(tm.gens[tf.maximal[0]]) == sorted(model.gens[f.maximal[0]])
                and local_poincare(tf.poset(), tf.maximal[0]) == local_poincare(poset, f.maximal[0])
                and check_v_condition(tm, tf.maximal[0]) == dict(
                    check_v_condition(model, f.maximal[0]), cone=tf.maximal[0]))
        rep.check(f"agrees with twin {exp['twin']}", same)


def _sibling(doc: FanDocument, name: str) -> FanDocument:
    from .fanfile import load_corpus_document
    if doc.path is not None and (doc.path.parent / name).exists():
        return load_document(doc.path.parent / name)
    return load_corpus_document(name)


def cmd_verify(path=None, corpus: bool = False, max_degree: int | None = None) -> Report:
    if corpus:
        rep = Report("verify")
        rep.input = "corpus"
        files = corpus_paths()
        per = {}
        for p in files:
            sub = Report("verify", str(p.name), file_hash(p))
            try:
                verify_document(load_document(p), sub, max_degree)
            except (FanError, ArithmeticError, ValueError) as exc:
                sub.check("error", False, str(exc))
            per[p.stem] = sub
            rep.check(p.stem, sub.ok, [c["name"] for c in sub.checks if not c["ok"]])
        rep.results = {"files": len(files),
                       "checks": sum(len(s.checks) for s in per.values())}
        rep.results["details"] = {k: v.checks for k, v in per.items()}
        return rep
    rep, doc, _ = _start("verify", path)
    verify_document(doc, rep, max_degree)
    return rep


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing")
    p = argparse.ArgumentParser(prog="virtualih", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common], help="check fan axioms")
    s.add_argument("path")
    s = sub.add_parser("hvector", parents=[common], help="generalized h-vector")
    s.add_argument("path")
    s.add_argument("--relative", action="store_true")
    s.add_argument("--local", metavar="CONE")
    s.add_argument("--assume-qc", action="store_true")
    s = sub.add_parser("quasiconvex", parents=[common], help="topological quasi-convexity test")
    s.add_argument("path")
    s = sub.add_parser("sheaf", parents=[common], help="construct the minimal extension sheaf")
    s.add_argument("path")
    s.add_argument("--max-degree", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--model-out")
    s = sub.add_parser("verify", parents=[common], help="run the property suite")
    s.add_argument("path", nargs="?")
    s.add_argument("--corpus", action="store_true")
    s.add_argument("--max-degree", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "validate":
            rep = cmd_validate(args.path)
        elif args.command == "hvector":
            rep = cmd_hvector(args.path, args.relative, args.local, args.assume_qc)
        elif args.command == "quasiconvex":
            rep = cmd_quasiconvex(args.path)
        elif args.command == "sheaf":
            rep = cmd_sheaf(args.path, args.max_degree, args.seed, args.model_out)
        else:
            if not args.corpus and not args.path:
                raise FanError("verify needs a file or --corpus")
            rep = cmd_verify(args.path, args.corpus, args.max_degree)
    except (FanError, OSError, ValueError) as exc:
        err = {"command": args.command, "ok": False, "error": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness:
            err["witness"] = witness
        if args.format == "structured":
            sys.stdout.write(dumps_canonical(err))
        else:
            sys.stdout.write(f"error: {exc}\n" + (f"witness: {witness}\n" if witness else ""))
        return 2
    if args.timing:
        rep.timing = {"total": time.perf_counter() - start}
    if args.format == "structured":
        sys.stdout.write(dumps_canonical(rep.to_dict()))
    else:
        sys.stdout.write(rep.to_text())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
