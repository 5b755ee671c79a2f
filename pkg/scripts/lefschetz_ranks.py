"""Rank tables for multiplication by the corpus support functions.

    python3 scripts/lefschetz_ranks.py
"""
from virtualih.fanfile import corpus_paths, load_document
from virtualih.fan import is_complete
from virtualih.mes import construct_mes, hard_lefschetz_check


def main():
    for p in corpus_paths():
        doc = load_document(p)
        if "support" not in doc.functions:
            continue
        f = doc.build()
        if not is_complete(f):
            continue
        res = hard_lefschetz_check(construct_mes(f), doc.function(f))
        print(f"{doc.name}: residues {res['reduced_dims']} passed={res['passed']}")
        for r in res["degrees"]:
            print(f"  degree {r['degree']}: {r['source_dim']} -> {r['target_dim']}, rank {r['rank']}"
                  f"  injective={r['injective']} surjective={r['surjective']}")


if __name__ == "__main__":
    main()
