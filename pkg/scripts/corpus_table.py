"""Print h-vectors, residue dimensions and verdicts for every corpus fan.

    python3 scripts/corpus_table.py [--max-degree D]
"""
import argparse
import time

from virtualih.fan import is_complete
from virtualih.fanfile import corpus_paths, load_document
from virtualih.fansheaf import quasiconvexity_test
from virtualih.hvector import global_poincare
from virtualih.mes import construct_mes, freeness_probe, reduced_dims


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int)
    args = ap.parse_args()
    print(f"{'fan':24} {'n':>2} {'cones':>5} {'qc':>5} {'free':>5} {'h':>14} {'residues':>18} {'sec':>6}")
    for p in corpus_paths():
        t = time.perf_counter()
        f = load_document(p).build()
        n = f.ambient_dim
        qc = quasiconvexity_test(f).quasi_convex
        m = construct_mes(f)
        h = str(global_poincare(f.poset())) if qc else "-"
        red = reduced_dims(m, max_degree=args.max_degree or 2 * n).as_list()
        free = freeness_probe(m, args.max_degree)["free"]
        dt = time.perf_counter() - t
        tag = "cpl" if is_complete(f) else ""
        print(f"{p.stem + ' ' + tag:24} {n:>2} {len(f.cones):>5} {str(qc):>5} {str(free):>5} "
              f"{h:>14} {str(red):>18} {dt:6.2f}")


if __name__ == "__main__":
    main()
