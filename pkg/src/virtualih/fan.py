"""Polyhedral cones and fans over an exact ordered field.

A fan is given by ray generators and cones listed as sets of ray indices.
:func:`build_fan` validates every listed cone (strict convexity, extremality
of the listed rays), closes the collection under faces and checks the fan
axiom pairwise.  Cone ids are assigned by sorting on ``(dim, rays)``, so the
zero cone ``o`` always has id 0.

Facets are found by brute force: every ``(d-1)``-subset of rays spanning a
hyperplane of ``V_sigma`` is a candidate, kept when all rays lie on one side.
This is quadratic-to-cubic in the number of rays and fine at desk scale.

Coordinates.  Every cone carries a basis of its span ``V_sigma``: the
standard basis for n-dimensional cones and the lexicographically first
independent subset of its rays otherwise.  That basis also fixes the
orientation used for the incidence signs ``or(tau, sigma)``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field as _f
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath.field import Field, RationalField, sign
from .exactmath.linalg import RowReducer, annihilator, determinant, inverse, to_dense


class FanError(ValueError):
    """Invalid cone or fan; ``witness`` names the offending cones."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def _sparse(v: Sequence) -> dict:
    return {j: x for j, x in enumerate(v) if x}


def _independent_subset(vectors: Sequence[Sequence], n: int) -> list[int]:
    red = RowReducer(n)
    return [i for i, v in enumerate(vectors) if red.add(_sparse(v))]


def _matvec(M, v):
    out = []
    for row in M:
        acc = Fraction(0)
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _kernel_line(rows: Sequence[Sequence], d: int) -> list:
    red = RowReducer(d)
    for r in rows:
        red.add(_sparse(r))
    ker = red.kernel()
    if len(ker) != 1:
        raise ArithmeticError("expected a one-dimensional kernel")
    return to_dense(ker[0], d)


def _positive_multiple(u: Sequence, v: Sequence) -> bool:
    """True iff u = c v for some c > 0."""
    ratio = None
    for a, b in zip(u, v):
        if bool(a) != bool(b):
            return False
        if a:
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is not None and sign(ratio) > 0


@dataclass(frozen=True)
class ConeGeometry:
    """Coordinates and facets of a single cone (private helper record)."""

    rays: tuple                  # sorted ray indices
    dim: int
    basis: tuple                 # ambient vectors spanning V_sigma
    coord_map: tuple             # dim x n matrix L with L @ basis = I
    ray_coords: tuple            # per ray, coordinates in ``basis``
    facets: tuple                # (frozenset of rays, normal in basis coords)


def analyze_cone(ray_ids: Sequence[int], vectors: Sequence[Sequence], n: int) -> ConeGeometry:
    """Validate one cone and compute its span, coordinates and facets."""
    ray_ids = tuple(sorted(ray_ids))
    vecs = [vectors[i] for i in ray_ids]
    indep = _independent_subset(vecs, n)
    d = len(indep)
    if d == n:
        basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        coord_map = basis
    else:
        basis = tuple(tuple(vecs[i]) for i in indep)
        # invert on a set of d independent coordinates
        cols = [[basis[k][j] for k in range(d)] for j in range(n)]
        rows = _independent_subset(cols, d) if d else []
        sub = [cols[j] for j in rows]
        inv = inverse(sub) if d else []
        cm = [[Fraction(0)] * n for _ in range(d)]
        for a in range(d):
            for b, j in enumerate(rows):
                cm[a][j] = inv[a][b]
        coord_map = tuple(tuple(r) for r in cm)
    ray_coords = tuple(tuple(_matvec(coord_map, v)) for v in vecs)
    facets = _facets(ray_ids, ray_coords, d)
    _check_pointed(ray_ids, ray_coords, facets, d)
    return ConeGeometry(ray_ids, d, basis, coord_map, ray_coords, facets)


def _facets(ray_ids, coords, d):
    if d == 0:
        return ()
    if d == 1:
        if len(ray_ids) != 1:
            raise FanError(f"cone {list(ray_ids)} is not strictly convex", witness=[list(ray_ids)])
        s = sign(coords[0][0])
        return ((frozenset(), (Fraction(s),)),)
    found = {}
    for subset in itertools.combinations(range(len(ray_ids)), d - 1):
        rows = [coords[i] for i in subset]
        red = RowReducer(d)
        if sum(red.add(_sparse(r)) for r in rows) < d - 1:
            continue
        normal = to_dense(red.kernel()[0], d)
        vals = [sum((a * b for a, b in zip(normal, c)), Fraction(0)) for c in coords]
        signs = {sign(v) for v in vals} - {0}
        if len(signs) != 1:
            continue
        if signs == {-1}:
            normal = [-x for x in normal]
        on = frozenset(ray_ids[i] for i, v in enumerate(vals) if not v)
        if on not in found:
            found[on] = tuple(normal)
    return tuple(sorted(found.items(), key=lambda kv: sorted(kv[0])))


def _check_pointed(ray_ids, coords, facets, d):
    if d <= 1:
        return
    red = RowReducer(d)
    for _, nrm in facets:
        red.add(_sparse(nrm))
    if red.rank < d:
        raise FanError(f"cone {list(ray_ids)} is not strictly convex", witness=[list(ray_ids)])
    for r in ray_ids:
        red = RowReducer(d)
        for on, nrm in facets:
            if r in on:
                red.add(_sparse(nrm))
        if red.rank != d - 1:
            raise FanError(f"ray {r} is not an extremal ray of cone {list(ray_ids)}",
                           witness=[list(ray_ids)])


def face_sets(geom: ConeGeometry) -> set[frozenset]:
    """All faces of a cone as ray sets (intersection closure of facets)."""
    faces = {frozenset(geom.rays)}
    frontier = {on for on, _ in geom.facets}
    faces |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in faces:
                c = a & b
                if c not in faces:
                    new.add(c)
        faces |= new
        frontier = new
    return faces


def _h_rep(geom: ConeGeometry, n: int):
    """Ambient inequalities and equations describing the cone."""
    # normal @ coord_map is an ambient form
    ineqs = []
    for _, nrm in geom.facets:
        form = [Fraction(0)] * n
        for a, c in enumerate(nrm):
            if c:
                for j in range(n):
                    if geom.coord_map[a][j]:
                        form[j] = form[j] + c * geom.coord_map[a][j]
        ineqs.append(form)
    eqs = annihilator(geom.basis, n) if geom.dim < n else []
    return ineqs, eqs


def _extreme_rays(ineqs, eqs, n):
    red = RowReducer(n)
    for e in eqs:
        red.add(_sparse(e))
    r_e = red.rank
    need = n - 1 - r_e
    if need < 0:
        return []
    out = []
    for subset in itertools.combinations(range(len(ineqs)), need):
        rr = red.copy()
        ok = all(rr.add(_sparse(ineqs[i])) for i in subset)
        if not ok or rr.rank != n - 1:
            continue
        x = to_dense(rr.kernel()[0], n)
        for cand in (x, [-v for v in x]):
            if all(sign(sum((a * b for a, b in zip(h, cand)), Fraction(0))) >= 0 for h in ineqs):
                if not any(_positive_multiple(cand, y) for y in out):
                    out.append(cand)
    return out


@dataclass(frozen=True)
class Cone:
    """A cone of a fan, with its span basis and facet normals."""

    id: int
    rays: tuple
    dim: int
    basis: tuple = _f(repr=False)
    coord_map: tuple = _f(repr=False)
    facet_normals: tuple = _f(repr=False)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def coords(self, v: Sequence) -> list:
        """Coordinates of an ambient vector of ``V_sigma`` in ``basis``."""
        return _matvec(self.coord_map, v)


@dataclass(frozen=True, eq=False)
class Fan:
    """A validated fan with its face lattice and incidence signs."""

    ambient_dim: int
    field: Field = _f(repr=False)
    rays: tuple = _f(repr=False)
    cones: tuple = _f(repr=False)
    index: Mapping = _f(repr=False)          # frozenset(rays) -> id
    facets: tuple = _f(repr=False)           # id -> ids of covered faces
    cofacets: tuple = _f(repr=False)         # id -> ids of covering cones
    faces: tuple = _f(repr=False)            # id -> frozenset of all face ids
    orientation: Mapping = _f(repr=False)    # (tau, sigma) -> +1 / -1
    name: str = ""

    # -- basic queries -------------------------------------------------
    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def cone(self, cid: int) -> Cone:
        try:
            return self.cones[cid]
        except (IndexError, TypeError):
            raise KeyError(f"unknown cone id {cid!r}") from None

    def cone_by_rays(self, rays: Iterable[int]) -> int:
        return self.index[frozenset(rays)]

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cones)

    def ids_of_dim(self, k: int) -> list[int]:
        return [c.id for c in self.cones if c.dim == k]

    @property
    def maximal(self) -> list[int]:
        return [c.id for c in self.cones if not self.cofacets[c.id]]

    def is_pure(self) -> bool:
        n = self.ambient_dim
        return all(self.cones[m].dim == n for m in self.maximal)

    def is_face(self, tau: int, sigma: int) -> bool:
        return tau in self.faces[sigma]

    def ray_vector(self, i: int) -> tuple:
        return self.rays[i]

    def f_vector(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for c in self.cones:
            out[c.dim] += 1
        return out[1:]

    def restriction_matrix(self, tau: int, sigma: int) -> list[list]:
        """Matrix M with basis(tau) = basis(sigma) M, i.e. coordinates of the
        tau-basis vectors in sigma coordinates (dim sigma x dim tau)."""
        s, t = self.cones[sigma], self.cones[tau]
        cols = [s.coords(b) for b in t.basis]
        return [[cols[j][i] for j in range(t.dim)] for i in range(s.dim)]

    def form_on(self, form: Sequence, cid: int) -> list:
        """Restrict an ambient linear form to ``V_cid`` in its coordinates."""
        c = self.cones[cid]
        return [sum((a * b for a, b in zip(form, v)), Fraction(0)) for v in c.basis]

    # -- subfans -------------------------------------------------------
    def closure(self, ids: Iterable[int]) -> frozenset:
        out = set()
        for i in ids:
            out |= self.faces[i]
        return frozenset(out)

    def boundary_ids(self) -> frozenset:
        """Cones of the boundary fan (requires a pure fan)."""
        if not self.is_pure():
            raise FanError("boundary fan needs a purely n-dimensional fan")
        n = self.ambient_dim
        walls = [w for w in self.ids_of_dim(n - 1)
                 if sum(1 for s in self.cofacets[w] if self.cones[s].dim == n) == 1]
        return self.closure(walls)

    def interior_ids(self) -> list[int]:
        b = self.boundary_ids()
        return [c.id for c in self.cones if c.id not in b]

    def star(self, sigma: int) -> frozenset:
        self.cone(sigma)
        return frozenset(c.id for c in self.cones if sigma in self.faces[c.id])

    def subfan(self, ids: Iterable[int], name: str = "") -> "Fan":
        ids = self.closure(ids)
        gens = [self.cones[i].rays for i in ids]
        return build_fan(self.rays, gens, field=self.field, check=False, name=name)

    def poset(self) -> "FanPoset":
        return FanPoset.from_fan(self)

    def __repr__(self):
        return (f"Fan(name={self.name!r}, n={self.ambient_dim}, "
                f"cones={len(self.cones)}, f={self.f_vector()})")


def build_fan(rays: Sequence[Sequence], cones: Iterable[Iterable[int]], *,
              field: Field | None = None, check: bool = True, name: str = "") -> Fan:
    """Validate and close a fan given by rays and generating cones.

    ``check=False`` skips the pairwise fan-axiom test (used for fans derived
    from an already validated one); cones are still analysed.
    """
    field = field or RationalField()
    rays = tuple(tuple(field(x) for x in r) for r in rays)
    if not rays and any(cones):
        raise FanError("cones given without rays")
    n = len(rays[0]) if rays else 0
    for i, r in enumerate(rays):
        if len(r) != n:
            raise FanError(f"ray {i} has dimension {len(r)}, expected {n}")
        if not any(r):
            raise FanError(f"ray {i} is zero", witness=[[i]])
    if check:
        for i, j in itertools.combinations(range(len(rays)), 2):
            if _positive_multiple(rays[i], rays[j]):
                raise FanError(f"rays {i} and {j} are duplicates", witness=[[i], [j]])

    gens = []
    for c in cones:
        c = frozenset(c)
        for i in c:
            if not 0 <= i < len(rays):
                raise FanError(f"cone {sorted(c)} references unknown ray {i}")
        gens.append(c)
    if not gens:
        gens = [frozenset()]

    geoms: dict[frozenset, ConeGeometry] = {}

    def geom(s: frozenset) -> ConeGeometry:
        g = geoms.get(s)
        if g is None:
            g = geoms[s] = analyze_cone(sorted(s), rays, n)
        return g

    all_sets: set[frozenset] = set()
    face_cache: dict[frozenset, set] = {}
    for g in gens:
        fs = face_sets(geom(g))
        face_cache[g] = fs
        all_sets |= fs
    maximal = [g for g in set(gens) if not any(g < h for h in gens)]
    if check:
        _check_axioms(sorted(maximal, key=lambda s: (len(s), sorted(s))),
                      {g: geom(g) for g in maximal}, face_cache, rays, n)

    order = sorted(all_sets, key=lambda s: (geom(s).dim, sorted(s)))
    index = {s: i for i, s in enumerate(order)}
    cone_objs = []
    for i, s in enumerate(order):
        g = geom(s)
        cone_objs.append(Cone(i, g.rays, g.dim, g.basis, g.coord_map,
                              tuple(nrm for _, nrm in g.facets)))
    facets = [[] for _ in order]
    cofacets = [[] for _ in order]
    for i, s in enumerate(order):
        for on, _ in geom(s).facets:
            j = index[on]
            facets[i].append(j)
            cofacets[j].append(i)
    faces: list = [None] * len(order)
    for i in range(len(order)):
        acc = {i}
        for j in facets[i]:
            acc |= faces[j]
        faces[i] = frozenset(acc)
    orientation = {}
    for i, s in enumerate(order):
        for j in facets[i]:
            orientation[(j, i)] = _incidence(cone_objs[j], cone_objs[i], rays)
    return Fan(n, field, rays, tuple(cone_objs), index,
               tuple(tuple(sorted(f)) for f in facets),
               tuple(tuple(sorted(f)) for f in cofacets),
               tuple(faces), orientation, name)


def _check_axioms(maximal, geoms, face_cache, rays, n):
    hreps = {g: _h_rep(geoms[g], n) for g in maximal}
    for a, b in itertools.combinations(maximal, 2):
        common = a & b
        ia, ea = hreps[a]
        ib, eb = hreps[b]
        extreme = _extreme_rays(ia + ib, ea + eb, n)
        bad = any(not any(_positive_multiple(x, rays[r]) for r in common) for x in extreme)
        if bad or common not in face_cache[a] or common not in face_cache[b]:
            raise FanError(
                f"cones {sorted(a)} and {sorted(b)} intersect in a non-face",
                witness=[sorted(a), sorted(b)])


def _incidence(tau: Cone, sigma: Cone, rays) -> int:
    """+1 iff (basis of V_tau, inward normal) is positively oriented in V_sigma."""
    w = next(rays[r] for r in sigma.rays if r not in tau.rays)
    cols = [sigma.coords(b) for b in tau.basis] + [sigma.coords(w)]
    det = determinant([[cols[j][i] for j in range(sigma.dim)] for i in range(sigma.dim)])
    s = sign(det)
    if s == 0:
        raise ArithmeticError("degenerate incidence")
    return s


def orientation_coefficient(f: Fan, tau: int, sigma: int) -> int:
    try:
        return f.orientation[(tau, sigma)]
    except KeyError:
        raise FanError(f"cone {tau} is not a facet of cone {sigma}") from None


def boundary_fan(f: Fan) -> Fan:
    ids = f.boundary_ids()
    return f.subfan(ids, name=f"boundary({f.name})" if f.name else "")


def skeleton(f: Fan, k: int) -> Fan:
    if not 0 <= k <= f.ambient_dim:
        raise ValueError(f"skeleton dimension {k} out of range")
    return f.subfan([c.id for c in f.cones if c.dim <= k])


def star(f: Fan, sigma: int) -> frozenset:
    return f.star(sigma)


def is_simplicial(f: Fan) -> bool:
    return all(c.is_simplicial for c in f.cones)


def is_simplicial_cone(c: Cone) -> bool:
    return c.is_simplicial


def facet_connected_components(f: Fan) -> list[list[int]]:
    """Components of the graph on n-cones joined along shared facets."""
    if not f.is_pure():
        raise FanError("facet connectivity needs a purely n-dimensional fan")
    n = f.ambient_dim
    tops = f.ids_of_dim(n)
    parent = {t: t for t in tops}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in f.ids_of_dim(n - 1):
        cof = [s for s in f.cofacets[w] if f.cones[s].dim == n]
        for s in cof[1:]:
            parent[find(s)] = find(cof[0])
    groups = defaultdict(list)
    for t in tops:
        groups[find(t)].append(t)
    return sorted(groups.values())


def is_complete(f: Fan) -> bool:
    """|f| = V, via pure + two cofaces per wall + facet-connected."""
    n = f.ambient_dim
    if n == 0:
        return True
    if not f.is_pure():
        return False
    for w in f.ids_of_dim(n - 1):
        if sum(1 for s in f.cofacets[w] if f.cones[s].dim == n) != 2:
            return False
    return len(facet_connected_components(f)) == 1


def transversal_fan(f: Fan, sigma: int) -> tuple[Fan, dict]:
    """The fan of images of the star of ``sigma`` in ``V / V_sigma``.

    Returns the fan and a map from its cone ids to the cone ids of ``f``.
    """
    s = f.cone(sigma)
    n = f.ambient_dim
    forms = annihilator(s.basis, n) if s.dim else [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    up = [g for g in f.cofacets[sigma]]
    new_rays = []
    for g in up:
        r = next(i for i in f.cones[g].rays if i not in s.rays)
        v = f.rays[r]
        new_rays.append([sum((a * b for a, b in zip(phi, v)), Fraction(0)) for phi in forms])
    pos = {g: k for k, g in enumerate(up)}
    st = sorted(f.star(sigma))
    gens = []
    for g in st:
        gens.append(frozenset(pos[h] for h in up if h in f.faces[g]))
    if not forms:
        tf = build_fan([], [], field=f.field, check=False)
        return tf, {0: sigma}
    tf = build_fan(new_rays, gens, field=f.field, check=False,
                   name=f"{f.name}/{sigma}" if f.name else "")
    back = {tf.index[gset]: g for g, gset in zip(st, gens)}
    return tf, back


@dataclass(frozen=True)
class PiecewiseLinear:
    """A function given by one ambient linear form per maximal cone."""

    forms: Mapping   # cone id -> tuple of coefficients

    def on(self, cid: int):
        return self.forms[cid]


def check_strictly_convex(f: Fan, pl: PiecewiseLinear) -> tuple[bool, list]:
    """Continuity plus strict wall inequalities on a complete fan.

    Convexity is of max type: on each wall with cofaces sigma, sigma', the
    form of sigma exceeds that of sigma' at rays of sigma off the wall.
    Returns (verdict, failing walls).
    """
    n = f.ambient_dim
    tops = f.ids_of_dim(n)
    missing = [t for t in tops if t not in pl.forms]
    if missing:
        return False, [("missing", t) for t in missing]

    def ev(form, r):
        return sum((a * b for a, b in zip(form, f.rays[r])), Fraction(0))

    bad = []
    values = {}
    for t in tops:
        for r in f.cones[t].rays:
            v = ev(pl.forms[t], r)
            if r in values and values[r] != v:
                bad.append(("discontinuous", r))
            values.setdefault(r, v)
    for w in f.ids_of_dim(n - 1):
        cof = [s for s in f.cofacets[w] if f.cones[s].dim == n]
        if len(cof) != 2:
            continue
        a, b = cof
        for x, y in ((a, b), (b, a)):
            diff = [p - q for p, q in zip(pl.forms[x], pl.forms[y])]
            off = [r for r in f.cones[x].rays if r not in f.cones[w].rays]
            if any(sign(sum((c * v for c, v in zip(diff, f.rays[r])), Fraction(0))) <= 0
                   for r in off):
                bad.append(("wall", w))
                break
    return not bad, bad


def flattened_boundary_fan(f: Fan, sigma: int) -> tuple[Fan, PiecewiseLinear]:
    """The complete fan obtained by projecting the boundary of ``sigma``
    along the line through the sum of its ray generators.

    Ray i of the result is the image of ray ``sigma.rays[i]``; the returned
    piecewise linear function is T composed with the inverse projection,
    with T the dot product against that sum in ``V_sigma`` coordinates.
    """
    s = f.cone(sigma)
    d = s.dim
    if d < 1:
        raise FanError("flattening needs a cone of positive dimension")
    coords = [s.coords(f.rays[r]) for r in s.rays]
    ell = [sum((c[i] for c in coords), Fraction(0)) for i in range(d)]
    proj = annihilator([ell], d)          # d-1 forms
    new_rays = [[sum((a * b for a, b in zip(p, c)), Fraction(0)) for p in proj] for c in coords]
    local = {r: k for k, r in enumerate(s.rays)}
    gens = [frozenset(local[r] for r in f.cones[t].rays) for t in f.facets[sigma]]
    if d == 1:
        lam = build_fan([], [], field=f.field, check=False)
        return lam, PiecewiseLinear({0: ()})
    lam = build_fan(new_rays, gens, field=f.field, check=False)
    forms = {}
    for t in f.facets[sigma]:
        K = [f.cones[sigma].coords(b) for b in f.cones[t].basis]   # columns of K_tau
        PK = [[sum((p[i] * K[j][i] for i in range(d)), Fraction(0)) for j in range(d - 1)]
              for p in proj]
        PKinv = inverse(PK)
        TK = [sum((ell[i] * K[j][i] for i in range(d)), Fraction(0)) for j in range(d - 1)]
        form = tuple(sum((TK[j] * PKinv[j][k] for j in range(d - 1)), Fraction(0))
                     for k in range(d - 1))
        forms[lam.index[frozenset(local[r] for r in f.cones[t].rays)]] = form
    return lam, PiecewiseLinear(forms)


@dataclass(frozen=True)
class FanPoset:
    """Face poset of a fan without coordinates.

    Elements are 0..N-1 with ranks ``dims``; ``below[i]`` is the set of all
    faces of i (including i).  Element 0 is the zero cone.
    """

    ambient_dim: int
    dims: tuple
    below: tuple

    @classmethod
    def from_fan(cls, f: Fan) -> "FanPoset":
        return cls(f.ambient_dim, tuple(c.dim for c in f.cones), f.faces)

    def __len__(self):
        return len(self.dims)

    def atoms(self, i: int) -> frozenset:
        return frozenset(j for j in self.below[i] if self.dims[j] == 1)

    def covers(self, i: int) -> list[int]:
        return [j for j in self.below[i] if self.dims[j] == self.dims[i] - 1]

    @property
    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not any(
            i in self.below[j] and j != i for j in range(len(self)))]

    def is_pure(self) -> bool:
        return all(self.dims[m] == self.ambient_dim for m in self.maximal)

    def boundary(self) -> frozenset:
        n = self.ambient_dim
        if not self.is_pure():
            raise FanError("boundary needs a purely n-dimensional poset")
        tops = [i for i in range(len(self)) if self.dims[i] == n]
        out = set()
        for w in range(len(self)):
            if self.dims[w] != n - 1:
                continue
            if sum(1 for t in tops if w in self.below[t]) == 1:
                out |= self.below[w]
        return frozenset(out)

    def interval(self, lo: int, hi: int) -> "FanPoset":
        """The interval [lo, hi] re-graded so that lo has rank 0."""
        if lo not in self.below[hi]:
            raise FanError(f"element {lo} is not a face of {hi}")
        elems = sorted((j for j in self.below[hi] if lo in self.below[j]),
                       key=lambda j: (self.dims[j], j))
        pos = {j: k for k, j in enumerate(elems)}
        base = self.dims[lo]
        return FanPoset(self.dims[hi] - base,
                        tuple(self.dims[j] - base for j in elems),
                        tuple(frozenset(pos[x] for x in self.below[j] if x in pos)
                              for j in elems))

    def cone_poset(self, i: int) -> "FanPoset":
        return self.interval(0, i)
