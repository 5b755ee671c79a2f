"""Acceptance criteria, one test each.  Every test prints a single
PASS/FAIL line (visible in the tee'd pytest log) before asserting."""
import time

import pytest

from virtualih.cli import cmd_verify
from virtualih.fan import is_complete, is_simplicial
from virtualih.fanfile import corpus_paths, load_corpus_document
from virtualih.fansheaf import quasiconvexity_test
from virtualih.hvector import (classical_h_from_f, duality_check, global_poincare, kalai_check,
                               local_poincare)
from virtualih.mes import (acyclicity_check, check_v_condition, construct_mes,
                           decompose_direct_image, duality_dims_check, freeness_probe,
                           hard_lefschetz_check, reduced_dims, simplicial_pd_pairing)

from conftest import corpus_doc, corpus_fan, corpus_model

NAMES = [p.stem for p in corpus_paths()]


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"
    return emit


def quasi_convex_names():
    return [n for n in NAMES if quasiconvexity_test(corpus_fan(n)).quasi_convex]


def test_c01_simplicial_agreement(report):
    rows = []
    for name in NAMES:
        f = corpus_fan(name)
        if not (is_complete(f) and is_simplicial(f)):
            continue
        t = time.perf_counter()
        got = global_poincare(f.poset())
        dt = time.perf_counter() - t
        rows.append((name, got == classical_h_from_f(f.f_vector()), dt))
    octa = global_poincare(corpus_fan("octahedron").poset()).to_list()
    ok = all(r[1] and r[2] < 1.0 for r in rows) and octa == [1, 3, 3, 1] and len(rows) >= 9
    report("1 simplicial agreement", ok, f"{len(rows)} fans, max {max(r[2] for r in rows):.3f}s")


def test_c02_cube_cross_validation(report):
    t = time.perf_counter()
    f = corpus_fan("cube")
    h = global_poincare(f.poset()).to_list()
    dims = reduced_dims(construct_mes(f), max_degree=10).as_list()
    dt = time.perf_counter() - t
    ok = h == [1, 5, 5, 1] and dims == [1, 5, 5, 1, 0, 0] and dt < 120
    report("2 cube cross-validation", ok, f"hvector {h}, residues {dims}, {dt:.1f}s")


def test_c03_duality(report):
    bad = []
    for name in quasi_convex_names():
        if not duality_check(corpus_fan(name).poset())["holds"]:
            bad.append(name)
    half = duality_check(corpus_fan("half_plane").poset())
    ok = not bad and half["absolute"].to_list() == [1, 1] and half["relative"].to_list() == [0, 1, 1]
    report("3 duality of polynomials", ok, f"failures {bad}")


def test_c04_three_way_equivalence(report):
    verdicts = {}
    for name in NAMES:
        m = corpus_model(name)
        verdicts[name] = (quasiconvexity_test(corpus_fan(name)).quasi_convex,
                          acyclicity_check(m, "relative")["exact"],
                          freeness_probe(m)["free"])
    agree = all(len(set(v)) == 1 for v in verdicts.values())
    prism = verdicts["prism_sides"] == (False, False, False)
    accepted = all(verdicts[n] == (True, True, True) for n in NAMES
                   if is_complete(corpus_fan(n)) or len(corpus_fan(n).maximal) == 1)
    report("4 quasi-convexity three-way equivalence", agree and prism and accepted,
           f"{len(verdicts)} fans, rejected {[n for n, v in verdicts.items() if not v[0]]}")


def test_c05_construction_uniqueness(report):
    bad = []
    for name in NAMES:
        f = corpus_fan(name)
        a, b = corpus_model(name), construct_mes(f, seed=11)
        if sorted(map(sorted, a.gens.values())) != sorted(map(sorted, b.gens.values())) \
                or a.gens != b.gens:
            bad.append(name)
            continue
        subfans = [frozenset(f.faces[c.id]) for c in f.cones]
        subfans += [frozenset(f.faces[c.id]) - {c.id} for c in f.cones[1:]]
        for sub in subfans:
            for d in range(0, 2 * f.ambient_dim + 1, 2):
                if a.sheaf().section_space(sub, d).dim != b.sheaf().section_space(sub, d).dim:
                    bad.append((name, d))
        if reduced_dims(a).dims != reduced_dims(b).dims:
            bad.append(name)
    report("5 construction uniqueness across seeds", not bad, f"failures {bad[:3]}")


def test_c06_simplicial_iff_trivial(report):
    bad, count = [], 0
    for name in NAMES:
        f, m = corpus_fan(name), corpus_model(name)
        for c in f.cones:
            count += 1
            if m.is_trivial(c.id) != c.is_simplicial:
                bad.append((name, c.rays))
    f = corpus_fan("sqrt5_square_cone")
    rays_ok = all(corpus_model("sqrt5_square_cone").is_trivial(c.id)
                  for c in f.cones if c.is_simplicial)
    report("6 single degree-0 generator iff simplicial", not bad and rays_ok,
           f"{count} cones, failures {bad[:3]}")


def test_c07_degree_bounds(report):
    bad = []
    for name in NAMES:
        f = corpus_fan(name)
        p = f.poset()
        n = f.ambient_dim
        for c in f.cones[1:]:
            if local_poincare(p, c.id).degree > 2 * c.dim - 2:
                bad.append((name, c.rays))
        if name in quasi_convex_names():
            rel = global_poincare(p, "relative")
            if rel.degree != 2 * n or rel.leading() != 1:
                bad.append((name, "relative"))
            if not is_complete(f) and global_poincare(p).degree > 2 * n - 2:
                bad.append((name, "absolute"))
    report("7 degree bounds", not bad, f"failures {bad[:3]}")


def test_c08_hard_lefschetz(report):
    t = time.perf_counter()
    rows = {}
    for name in ("p1", "p1xp1", "cube", "octahedron"):
        f = corpus_fan(name)
        res = hard_lefschetz_check(construct_mes(f), corpus_doc(name).function(f))
        rows[name] = (res["passed"], [r["rank"] for r in res["degrees"]])
    dt = time.perf_counter() - t
    ok = all(v[0] for v in rows.values()) and dt < 300
    report("8 Hard Lefschetz", ok, f"ranks {rows}, {dt:.1f}s")


def test_c09_residue_duality(report):
    bad = [n for n in quasi_convex_names() if not duality_dims_check(corpus_model(n))["holds"]]
    report("9 residue dimension duality", not bad, f"failures {bad}")


def test_c10_simplicial_pairing(report):
    rows = {n: simplicial_pd_pairing(corpus_fan(n)) for n in ("p1", "p1xp1", "quadrant",
                                                                "orthant3")}
    ok = all(r["nondegenerate"] for r in rows.values())
    mid = [b["determinant"] for b in rows["p1xp1"]["blocks"]]
    report("10 simplicial duality pairing", ok, f"p1xp1 block determinants {mid}")


def test_c11_decomposition(report):
    base = corpus_fan("square_cone")
    top = base.maximal[0]
    diag = decompose_direct_image(base, corpus_fan("square_cone_diagonal"))
    star = decompose_direct_image(base, corpus_fan("square_cone_star"))
    diag_zero = all(not k for s, k in diag.items() if s)
    star_ok = star[top].get(2) == 1 and all(not k for s, k in star.items() if s not in (0, top))
    report("11 decomposition multiplicities", diag_zero and star_ok,
           f"star K at top {star[top]}")


def test_c12_kalai(report):
    bad, pairs = [], 0
    for name in NAMES:
        f = corpus_fan(name)
        p = f.poset()
        for c in f.cones:
            for t in f.faces[c.id]:
                pairs += 1
                if not kalai_check(p, c.id, t)["holds"]:
                    bad.append((name, c.rays, t))
    report("12 Kalai inequality", not bad, f"{pairs} face pairs")


def test_c13_non_rational_twin(report):
    t = time.perf_counter()
    a, b = corpus_fan("sqrt5_square_cone"), corpus_fan("square_cone")
    ma, mb = construct_mes(a), construct_mes(b)
    ta, tb = a.maximal[0], b.maximal[0]
    pa = local_poincare(a.poset(), ta).to_list()
    va = check_v_condition(ma, ta)
    vb = check_v_condition(mb, tb)
    dt = time.perf_counter() - t
    ok = (sorted(ma.gens[ta]) == sorted(mb.gens[tb]) == [0, 2] and pa == [1, 1]
          and pa == local_poincare(b.poset(), tb).to_list()
          and (va["literal"], va["halved"]) == (vb["literal"], vb["halved"]) and dt < 60)
    report("13 non-rational twin", ok, f"generators {list(ma.gens[ta])}, P {pa}, {dt:.2f}s")


@pytest.mark.slow
def test_c14_corpus_verify_runtime(report):
    t = time.perf_counter()
    rep = cmd_verify(corpus=True)
    dt = time.perf_counter() - t
    failed = [c["name"] for c in rep.checks if not c["ok"]]
    report("corpus verify under 15 minutes", rep.ok and dt < 900,
           f"{rep.results['checks']} checks, {dt:.1f}s, failing {failed}")
