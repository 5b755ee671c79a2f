"""Write the reference corpus into src/virtualih/corpus/.

Expected values below are worked out by hand (face counts, h-vectors from
the Dehn-Sommerville relations or the local recursion evaluated on paper);
they are not produced by the library.  Re-running the script is idempotent.
"""
from __future__ import annotations

import itertools
import math
from pathlib import Path

from virtualih.fanfile import dumps_canonical

OUT = Path(__file__).resolve().parents[1] / "src" / "virtualih" / "corpus"
PHI = "1/2+1/2*sqrt(5)"


def s(x) -> str:
    return str(x)


def doc(name, rays, cones, expected, *, field="Q", description="", functions=None,
        refines=None):
    n = len(rays[0])
    out = {"name": name, "ambient_dim": n, "field": field,
           "rays": [[s(x) for x in r] for r in rays],
           "cones": [sorted(c) for c in cones], "expected": expected}
    if description:
        out["description"] = description
    if functions:
        out["functions"] = {k: [[s(x) for x in f] for f in v] for k, v in functions.items()}
    if refines:
        out["refines"] = refines
    return out


def reversed_poly(p, n):
    c = list(p) + [0] * (n + 1 - len(p))
    c = c[::-1]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def complete(h, cones, simplicial, n):
    return {"cones": cones, "complete": True, "simplicial": simplicial,
            "quasi_convex": True, "h": h, "h_relative": h}


def affine(p, cones, n, simplicial, top_rays, degrees):
    return {"cones": cones, "complete": False, "simplicial": simplicial,
            "quasi_convex": True, "h": p, "h_relative": reversed_poly(p, n),
            "local": [{"rays": top_rays, "p": p}],
            "generators": [{"rays": top_rays, "degrees": degrees}]}


def polygon(m):
    pool = [(1, 0), (1, 1), (0, 1), (-1, 0), (0, -1), (-1, -1), (1, -1), (-1, 1)]
    picks = {3: [(1, 0), (0, 1), (-1, -1)],
             4: [(1, 0), (0, 1), (-1, 0), (0, -1)]}.get(m, pool[:m])
    rays = sorted(picks, key=lambda v: math.atan2(v[1], v[0]) % (2 * math.pi))
    cones = [[i, (i + 1) % m] for i in range(m)]
    return doc(f"polygon_m{m}", rays, cones, complete([1, m - 2, 1], 1 + 2 * m, True, 2),
               description=f"complete 2-fan with {m} rays")


def corpus():
    out = []
    out.append(doc("p1", [(1,), (-1,)], [[0], [1]], complete([1, 1], 3, True, 1),
                   functions={"support": [(1,), (-1,)]},
                   description="complete fan of the projective line"))
    out.append(doc("p1xp1", [(1, 0), (0, 1), (-1, 0), (0, -1)],
                   [[0, 1], [1, 2], [2, 3], [3, 0]], complete([1, 2, 1], 9, True, 2),
                   functions={"support": [(1, 1), (-1, 1), (-1, -1), (1, -1)]},
                   description="product fan; support function of the diamond |x|+|y|"))
    out.append(doc("square_face", [(1, 1), (-1, 1), (-1, -1), (1, -1)],
                   [[0, 1], [1, 2], [2, 3], [3, 0]], complete([1, 2, 1], 9, True, 2),
                   functions={"support": [(0, 1), (-1, 0), (0, -1), (1, 0)]},
                   description="face fan of the square"))
    out.append(doc("half_plane", [(1, 0), (0, 1), (-1, 0)], [[0, 1], [1, 2]],
                   {"cones": 6, "complete": False, "simplicial": True, "quasi_convex": True,
                    "h": [1, 1], "h_relative": [0, 1, 1]},
                   description="two quadrants covering the upper half plane"))
    for m in range(3, 9):
        out.append(polygon(m))

    cube_rays = list(itertools.product((1, -1), repeat=3))
    cube_cones, cube_forms = [], []
    for k in range(3):
        for sgn in (1, -1):
            cube_cones.append([i for i, v in enumerate(cube_rays) if v[k] == sgn])
            cube_forms.append(tuple(sgn if j == k else 0 for j in range(3)))
    out.append(doc("cube", cube_rays, cube_cones, complete([1, 5, 5, 1], 27, False, 3),
                   functions={"support": cube_forms},
                   description="face fan of the 3-cube; support function max |x_i|"))

    octa_rays = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    octa_cones, octa_forms = [], []
    for signs in itertools.product((1, -1), repeat=3):
        octa_cones.append([2 * k + (0 if sg > 0 else 1) for k, sg in enumerate(signs)])
        octa_forms.append(signs)
    out.append(doc("octahedron", octa_rays, octa_cones, complete([1, 3, 3, 1], 27, True, 3),
                   functions={"support": octa_forms},
                   description="face fan of the octahedron; support function |x|+|y|+|z|"))

    sq = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    out.append(doc("square_cone", sq, [[0, 1, 2, 3]],
                   affine([1, 1], 10, 3, False, [0, 1, 2, 3], [0, 2]),
                   description="cone over a square"))
    out.append(doc("quadrant", [(1, 0), (0, 1)], [[0, 1]],
                   affine([1], 4, 2, True, [0, 1], [0]), description="simplicial 2-cone"))
    out.append(doc("orthant3", [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [[0, 1, 2]],
                   affine([1], 8, 3, True, [0, 1, 2], [0]), description="simplicial 3-cone"))
    # (1 - t^2)(1 + 5t^2 + 5t^4 + t^6) truncated below t-degree 4
    cc = [v + (1,) for v in cube_rays]
    out.append(doc("cube_cone", cc, [list(range(8))],
                   affine([1, 4], 28, 4, False, list(range(8)), [0, 2, 2, 2, 2]),
                   description="4-cone over the 3-cube"))
    oc = [v + (1,) for v in octa_rays]
    out.append(doc("octahedron_cone", oc, [list(range(6))],
                   affine([1, 2], 28, 4, False, list(range(6)), [0, 2, 2]),
                   description="4-cone over the octahedron"))
    sqr = [v + (0,) for v in sq] + [(0, 0, 0, 1)]
    e = affine([1, 1], 20, 4, False, [0, 1, 2, 3, 4], [0, 2])
    e["local"].append({"rays": [0, 1, 2, 3], "p": [1, 1]})
    out.append(doc("square_cone_times_ray", sqr, [[0, 1, 2, 3, 4]], e,
                   description="sum of the square cone and a transversal ray"))

    e = affine([1, 1], 10, 3, False, [0, 1, 2, 3], [0, 2])
    e["twin"] = "square_cone.fan"
    out.append(doc("sqrt5_square_cone",
                   [("1", "0", "1"), ("0", "1", "1"), ("-" + PHI.replace("+", "-"), "0", "1"),
                    ("0", "-1", "1")],
                   [[0, 1, 2, 3]], e, field="Q(sqrt 5)",
                   description="non-rational cone over a quadrilateral, twin of square_cone"))
    out.append(doc("pentagon_sqrt5",
                   [("1", "0"), ("1", PHI), ("-" + PHI.replace("+", "-"), "1"),
                    ("-1", "-" + PHI.replace("+", "-")), (PHI, "-1")],
                   [[i, (i + 1) % 5] for i in range(5)], complete([1, 3, 1], 11, True, 2),
                   field="Q(sqrt 5)", description="complete 2-fan with Q(sqrt 5) rays"))

    prism = [(2, 0, 1), (-1, 1, 1), (-1, -1, 1), (2, 0, -1), (-1, 1, -1), (-1, -1, -1)]
    bad = {"complete": False, "quasi_convex": False, "witness_rays": [[]]}
    out.append(doc("prism_sides", prism, [[0, 1, 3, 4], [1, 2, 4, 5], [2, 0, 5, 3]],
                   dict(bad, cones=19, simplicial=False),
                   description="cones over the three vertical facets of a triangular prism"))
    out.append(doc("prism_sides_refined", prism,
                   [[0, 1, 4], [0, 4, 3], [1, 2, 5], [1, 5, 4], [2, 0, 3], [2, 3, 5]],
                   dict(bad, cones=25, simplicial=True), refines="prism_sides.fan",
                   description="diagonal triangulation of prism_sides"))
    out.append(doc("two_opposite_cones", [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [2, 3]],
                   dict(bad, cones=7, simplicial=True),
                   description="two 2-cones meeting only at the origin"))
    e = {"cones": 12, "complete": False, "simplicial": True, "quasi_convex": True,
         "h": [1, 1], "h_relative": [0, 0, 1, 1], "decomposition": []}
    out.append(doc("square_cone_diagonal", sq, [[0, 1, 2], [0, 2, 3]], e,
                   refines="square_cone.fan",
                   description="square cone cut along a diagonal"))
    # interior cones: 4 three-cones, 4 two-cones, 1 ray -> 4 + 4(t^2-1) + (t^2-1)^2
    e = {"cones": 18, "complete": False, "simplicial": True, "quasi_convex": True,
         "h": [1, 2, 1], "h_relative": [0, 1, 2, 1],
         "decomposition": [{"rays": [0, 1, 2, 3], "K": [0, 1, 1]}]}
    out.append(doc("square_cone_star", sq + [(0, 0, 1)],
                   [[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]], e, refines="square_cone.fan",
                   description="square cone subdivided by its central ray"))
    return out


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "__init__.py").write_text('"""Reference fan files shipped with the package."""\n')
    for d in corpus():
        (OUT / f"{d['name']}.fan").write_text(dumps_canonical(d))
        print("wrote", d["name"])


if __name__ == "__main__":
    main()
