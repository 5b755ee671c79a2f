"""Time section spaces and residue computations as the degree bound grows.

    python3 scripts/bench_sections.py cube cube_cone --max-degree 12
"""
import argparse
import time

from virtualih.fanfile import load_corpus_document
from virtualih.mes import construct_mes, graded_quotient


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=["cube", "cube_cone", "octahedron_cone"])
    ap.add_argument("--max-degree", type=int, default=12)
    args = ap.parse_args()
    for name in args.names:
        f = load_corpus_document(name).build()
        t = time.perf_counter()
        m = construct_mes(f)
        built = time.perf_counter() - t
        t = time.perf_counter()
        q = graded_quotient(m.sheaf(), range(len(f.cones)), args.max_degree)
        dt = time.perf_counter() - t
        print(f"{name}: construct {built:.2f}s, degrees <= {args.max_degree} in {dt:.2f}s")
        print("  dim E^d   ", list(q.dims().values()))
        print("  dim E^d/m ", list(q.reduced().values()))


if __name__ == "__main__":
    main()
