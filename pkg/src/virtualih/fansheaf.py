"""Sheaves on fan spaces as finite data, and their cellular cochain complexes.

A sheaf is described by its value on every cone (a graded vector space,
queried one degree at a time) and by the restriction map along each
covering relation ``tau < sigma``.  Matrices are stored column-sparse: one
``dict`` per basis vector of the source, mapping target indices to scalars.

The cellular complex of a purely n-dimensional fan puts the cones of
dimension n - k in degree k; the coboundary sends a value on sigma to its
restrictions on the facets of sigma, weighted by the incidence signs.  The
augmented complexes prepend sections on the whole fan vanishing on the
complementary subfan, as needed for reduced cohomology.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath.linalg import RowReducer
from .fan import Fan, FanError, is_complete, transversal_fan

SparseCols = list  # list of dict


class FanSheafData:
    """Interface: values per cone and restrictions per covering relation."""

    is_constant = False
    characteristic_of: int | None = None

    def __init__(self, fan: Fan):
        self.fan = fan

    def dim(self, cid: int, d: int) -> int:  # pragma: no cover - interface
        raise NotImplementedError

    def restriction(self, tau: int, sigma: int, d: int) -> SparseCols:  # pragma: no cover
        raise NotImplementedError


class ConstantSheaf(FanSheafData):
    is_constant = True

    def dim(self, cid, d):
        self.fan.cone(cid)
        return 1 if d == 0 else 0

    def restriction(self, tau, sigma, d):
        return [{0: Fraction(1)}] if d == 0 else []


class CharacteristicSheaf(FanSheafData):
    """The ground field on every cone having ``sigma`` as a face, else zero."""

    def __init__(self, fan: Fan, sigma: int):
        super().__init__(fan)
        fan.cone(sigma)
        self.characteristic_of = sigma
        self.is_constant = sigma == 0

    def dim(self, cid, d):
        return 1 if d == 0 and self.characteristic_of in self.fan.faces[cid] else 0

    def restriction(self, tau, sigma, d):
        if self.dim(sigma, d) == 0:
            return []
        if self.dim(tau, d) == 0:
            return [{}]
        return [{0: Fraction(1)}]


def constant_sheaf(f: Fan) -> ConstantSheaf:
    return ConstantSheaf(f)


def characteristic_sheaf(f: Fan, sigma: int) -> CharacteristicSheaf:
    return CharacteristicSheaf(f, sigma)


def compose(a: SparseCols, b: SparseCols) -> SparseCols:
    """Column-sparse product a @ b."""
    out = []
    for col in b:
        acc: dict = {}
        for k, x in col.items():
            for i, y in a[k].items():
                v = acc.get(i, 0) + y * x
                if v:
                    acc[i] = v
                else:
                    acc.pop(i, None)
        out.append(acc)
    return out


def cols_rank(cols: Iterable[dict], nrows: int) -> int:
    red = RowReducer(nrows)
    for c in cols:
        red.add(c)
    return red.rank


def diamond_check(sheaf: FanSheafData, d: int) -> list[tuple]:
    """Pairs of facet chains sigma > tau > nu whose composites disagree."""
    f = sheaf.fan
    bad = []
    for s in f.cones:
        for nu in {nu for t in f.facets[s.id] for nu in f.facets[t]}:
            paths = [t for t in f.facets[s.id] if nu in f.facets[t]]
            comps = [compose(sheaf.restriction(nu, t, d), sheaf.restriction(t, s.id, d))
                     for t in paths]
            for c in comps[1:]:
                if c != comps[0]:
                    bad.append((s.id, nu))
                    break
    return bad


# -- sections -----------------------------------------------------------------

@dataclass
class SectionSpace:
    """Compatible families over a subfan in one degree.

    ``layout[c] = (offset, size)`` locates the value on cone c inside a
    section vector; ``basis`` holds sparse section vectors.
    """

    subfan: frozenset
    vanish: frozenset
    degree: int
    layout: dict
    ncols: int
    basis: list = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def component(self, vec: dict, cid: int) -> dict:
        off, size = self.layout.get(cid, (0, 0))
        return {k - off: x for k, x in vec.items() if off <= k < off + size}

    def assemble(self, parts: dict) -> dict:
        out = {}
        for cid, comp in parts.items():
            if cid not in self.layout:
                continue
            off = self.layout[cid][0]
            for k, x in comp.items():
                if x:
                    out[off + k] = x
        return out


def sections(sheaf: FanSheafData, subfan: Iterable[int], d: int,
             vanish: Iterable[int] = ()) -> SectionSpace:
    """Sections over ``subfan`` in degree d vanishing on ``vanish``."""
    f = sheaf.fan
    subfan = frozenset(subfan)
    vanish = frozenset(vanish) & subfan
    layout = {}
    off = 0
    for c in sorted(subfan):
        if c in vanish:
            continue
        k = sheaf.dim(c, d)
        if k:
            layout[c] = (off, k)
            off += k
    red = RowReducer(off)
    for g in sorted(subfan):
        if g not in layout:
            continue
        goff, _ = layout[g]
        for t in f.facets[g]:
            if t not in subfan:
                continue
            tdim = sheaf.dim(t, d)
            if not tdim:
                continue
            R = sheaf.restriction(t, g, d)
            rows = [dict() for _ in range(tdim)]
            for j, col in enumerate(R):
                for i, x in col.items():
                    rows[i][goff + j] = x
            if t in layout:
                toff = layout[t][0]
                for i in range(tdim):
                    rows[i][toff + i] = rows[i].get(toff + i, 0) - 1
            for r in rows:
                red.add(r)
    return SectionSpace(subfan, vanish, d, layout, off, red.kernel())


# -- cochain complexes --------------------------------------------------------

@dataclass
class CochainComplex:
    """C^start -> ... -> C^n with column-sparse coboundaries.

    ``maps[i]`` goes from degree ``start + i`` to ``start + i + 1``.
    """

    start: int
    dims: list
    maps: list = field(repr=False)
    cones: list = field(repr=False)

    def degrees(self) -> range:
        return range(self.start, self.start + len(self.dims))

    def check_dd(self) -> bool:
        for a, b in zip(self.maps, self.maps[1:]):
            if any(compose(b, a)):
                return False
        return True


def _cellular(f: Fan, sheaf: FanSheafData, d: int, included: frozenset) -> CochainComplex:
    n = f.ambient_dim
    cones = []
    offsets = []
    dims = []
    for k in range(n + 1):
        ids = [c.id for c in f.cones if c.dim == n - k and c.id in included]
        pos = {}
        off = 0
        for c in ids:
            size = sheaf.dim(c, d)
            pos[c] = (off, size)
            off += size
        cones.append(ids)
        offsets.append(pos)
        dims.append(off)
    maps = []
    for k in range(n):
        cols = [dict() for _ in range(dims[k])]
        for s in cones[k]:
            soff, ssize = offsets[k][s]
            if not ssize:
                continue
            for t in f.facets[s]:
                if t not in offsets[k + 1]:
                    continue
                toff, tsize = offsets[k + 1][t]
                if not tsize:
                    continue
                sgn = f.orientation[(t, s)]
                R = sheaf.restriction(t, s, d)
                for j, col in enumerate(R):
                    tgt = cols[soff + j]
                    for i, x in col.items():
                        v = tgt.get(toff + i, 0) + sgn * x
                        if v:
                            tgt[toff + i] = v
                        else:
                            tgt.pop(toff + i, None)
        maps.append(cols)
    return CochainComplex(0, dims, maps, cones), offsets


def cochain_complex(f: Fan, sheaf: FanSheafData, d: int, *, relative: bool = False,
                    augmented: bool = True) -> CochainComplex:
    """Cellular complex of ``f`` with coefficients in ``sheaf`` (degree d).

    ``relative=True`` quotients by the boundary fan; the augmentation then
    uses all global sections.  With ``relative=False`` the augmentation uses
    sections vanishing on the boundary fan.
    """
    if not f.is_pure():
        raise FanError("cellular complex needs a purely n-dimensional fan")
    if sheaf.fan is not f:
        for c in f.cones:
            sheaf.dim(c.id, d)
    boundary = f.boundary_ids()
    all_ids = frozenset(c.id for c in f.cones)
    included = all_ids - boundary if relative else all_ids
    cx, offsets = _cellular(f, sheaf, d, included)
    if not augmented:
        return cx
    secs = sections(sheaf, all_ids, d, vanish=() if relative else boundary)
    top = offsets[0]
    cols = []
    for v in secs.basis:
        col = {}
        for s, (off, size) in top.items():
            for k, x in secs.component(v, s).items():
                col[off + k] = x
        cols.append(col)
    return CochainComplex(-1, [secs.dim] + cx.dims, [cols] + cx.maps,
                          [["sections"]] + cx.cones)


def cohomology_dims(c: CochainComplex) -> dict:
    """dim H^k for every degree k of the complex."""
    ranks = [cols_rank(m, c.dims[i + 1]) for i, m in enumerate(c.maps)]
    out = {}
    for i, k in enumerate(c.degrees()):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out[k] = c.dims[i] - r_out - r_in
    return out


def is_exact(c: CochainComplex) -> bool:
    return not any(cohomology_dims(c).values())


# -- quasi-convexity ----------------------------------------------------------

@dataclass
class QuasiConvexityVerdict:
    quasi_convex: bool
    witnesses: list
    per_cone: dict

    def to_dict(self) -> dict:
        return {"quasi_convex": self.quasi_convex, "witnesses": self.witnesses,
                "per_cone": {str(k): v for k, v in sorted(self.per_cone.items())}}


def quasiconvexity_test(f: Fan) -> QuasiConvexityVerdict:
    """Check H~(Delta_sigma, boundary; R) = 0 for every cone sigma."""
    if not f.is_pure():
        raise FanError("quasi-convexity needs a purely n-dimensional fan")
    n = f.ambient_dim
    boundary = f.boundary_ids()
    per_cone = {}
    witnesses = []
    for c in f.cones:
        if c.dim >= n - 1:
            per_cone[c.id] = {"status": "skipped", "reason": "dim >= n-1"}
            continue
        if c.id not in boundary:
            per_cone[c.id] = {"status": "skipped", "reason": "interior cone"}
            continue
        tf, _ = transversal_fan(f, c.id)
        if is_complete(tf):
            per_cone[c.id] = {"status": "skipped", "reason": "complete transversal fan"}
            continue
        h = cohomology_dims(cochain_complex(tf, ConstantSheaf(tf), 0, relative=True))
        failing = [k for k, v in h.items() if v]
        per_cone[c.id] = {"status": "fails" if failing else "exact",
                          "failing_degrees": failing,
                          "dims": {str(k): v for k, v in h.items()}}
        if failing:
            witnesses.append(c.id)
    return QuasiConvexityVerdict(not witnesses, witnesses, per_cone)


def _homology_from(cx: CochainComplex, k: int) -> dict:
    """Reduced homology H_j = H^{k-1-j} of a cellular complex of a k-fan."""
    h = cohomology_dims(cx)
    return {k - 1 - q: v for q, v in h.items()}


def link_homology_profile(f: Fan, sigma: int) -> dict:
    """Reduced homology of the link L_sigma, of its boundary, and of the pair."""
    if is_complete(f):
        raise FanError("links of boundary cones need a non-complete fan")
    if not f.is_pure():
        raise FanError("link profile needs a purely n-dimensional fan")
    boundary = f.boundary_ids()
    if sigma != 0 and sigma not in boundary:
        raise FanError(f"cone {sigma} is not in the boundary fan")
    tf, _ = transversal_fan(f, sigma)
    k = tf.ambient_dim
    sheaf = ConstantSheaf(tf)
    all_ids = frozenset(c.id for c in tf.cones)
    tb = tf.boundary_ids() if tf.is_pure() else frozenset()
    link, _ = _cellular(tf, sheaf, 0, all_ids)
    blink, _ = _cellular(tf, sheaf, 0, tb)
    rel, _ = _cellular(tf, sheaf, 0, all_ids - tb)
    hl = _homology_from(link, k)
    hb = _homology_from(blink, k)
    hr = _homology_from(rel, k)
    point = not any(hl.values())
    sphere = all(v == (1 if j == k - 2 else 0) for j, v in hb.items())
    return {"cone": sigma, "link_dim": k - 1,
            "link": {str(j): v for j, v in sorted(hl.items())},
            "boundary": {str(j): v for j, v in sorted(hb.items())},
            "pair": {str(j): v for j, v in sorted(hr.items())},
            "homology_point": point, "boundary_sphere": sphere}


def links_are_points(f: Fan) -> bool:
    boundary = f.boundary_ids()
    return all(link_homology_profile(f, s)["homology_point"] for s in sorted(boundary))
