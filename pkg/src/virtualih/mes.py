"""The minimal extension sheaf as explicit finite data.

For every cone sigma the model stores generator degrees d_1 <= d_2 <= ...
and, for each facet tau of sigma, the restriction of each generator written
in the generators of tau with polynomial coefficients on V_tau.  In degree d
the value E^d_sigma has the basis (i, m) with m a monomial of degree
(d - d_i)/2 on V_sigma, listed generator by generator.

Construction follows the inductive recipe: the generators of sigma are
representatives of E_{boundary}/m E_{boundary}, searched up to degree
2 dim(sigma) - 2.  The submodule m E^d is spanned by products of lower
degree generators with monomials, which needs far fewer vectors than all
products A^2 E^{d-2} and spans the same space.

Sections over a subfan are stored by their values on the maximal cones of
the subfan; that restriction is injective and keeps vectors short.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath.field import format_scalar, sign
from .exactmath.linalg import RowReducer, determinant
from .exactmath.poly import (Substitution, dim_sym, evaluate, linear_form, monomial_basis,
                             poly_mul)
from .fan import Fan, FanError, PiecewiseLinear, check_strictly_convex, is_complete
from .fansheaf import (FanSheafData, SectionSpace, cochain_complex, cohomology_dims,
                       cols_rank, sections)
from .hvector import PoincareSeries, global_poincare


@dataclass
class MESModel:
    """Generator degrees per cone and restriction data per facet relation."""

    fan: Fan
    gens: dict                      # cone id -> tuple of degrees
    restr: dict                     # (tau, sigma) -> tuple over i of {j: poly}
    seed: int = 0
    log: list = field(default_factory=list, repr=False)

    def generator_degrees(self, cid: int) -> tuple:
        return self.gens[cid]

    def degree_counts(self, cid: int) -> dict:
        out: dict = {}
        for d in self.gens[cid]:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def is_trivial(self, cid: int) -> bool:
        return self.gens[cid] == (0,)

    def sheaf(self) -> "MESSheaf":
        sh = getattr(self, "_sheaf", None)
        if sh is None:
            sh = MESSheaf(self)
            object.__setattr__(self, "_sheaf", sh)
        return sh


class MESSheaf(FanSheafData):
    """A model viewed as sheaf data, with caches for bases and maps."""

    def __init__(self, model: MESModel):
        super().__init__(model.fan)
        self.model = model
        self._basis: dict = {}
        self._restr: dict = {}
        self._subst: dict = {}
        self._mult: dict = {}
        self._sections: dict = {}

    def basis(self, cid: int, d: int) -> list:
        key = (cid, d)
        got = self._basis.get(key)
        if got is None:
            got = []
            if d % 2 == 0 and d >= 0:
                k = self.fan.cones[cid].dim
                for i, di in enumerate(self.model.gens[cid]):
                    if di <= d:
                        got.extend((i, e) for e in monomial_basis(k, (d - di) // 2).basis)
            self._basis[key] = got
        return got

    def index(self, cid: int, d: int) -> dict:
        key = ("idx", cid, d)
        got = self._basis.get(key)
        if got is None:
            got = {b: n for n, b in enumerate(self.basis(cid, d))}
            self._basis[key] = got
        return got

    def dim(self, cid, d):
        if d % 2 or d < 0:
            return 0
        k = self.fan.cones[cid].dim
        return sum(dim_sym(k, (d - di) // 2) for di in self.model.gens[cid] if di <= d)

    def substitution(self, tau: int, sigma: int) -> Substitution:
        key = (tau, sigma)
        got = self._subst.get(key)
        if got is None:
            got = self._subst[key] = Substitution(self.fan.restriction_matrix(tau, sigma))
        return got

    def restriction(self, tau, sigma, d):
        key = (tau, sigma, d)
        got = self._restr.get(key)
        if got is not None:
            return got
        sub = self.substitution(tau, sigma)
        data = self.model.restr[(tau, sigma)]
        tidx = self.index(tau, d)
        cols = []
        for i, e in self.basis(sigma, d):
            m = sub.monomial(e)
            col: dict = {}
            for j, r in data[i].items():
                for e2, c in poly_mul(m, r).items():
                    k = tidx[(j, e2)]
                    v = col.get(k, 0) + c
                    if v:
                        col[k] = v
                    else:
                        col.pop(k, None)
            cols.append(col)
        self._restr[key] = cols
        return cols

    def multiplication(self, cid: int, form: tuple, d: int) -> list:
        """Column-sparse map E^d -> E^{d+2} on one cone, multiplying by the
        restriction of an ambient linear form."""
        key = (cid, form, d)
        got = self._mult.get(key)
        if got is not None:
            return got
        lf = linear_form(self.fan.form_on(form, cid))
        tidx = self.index(cid, d + 2)
        cols = []
        for i, e in self.basis(cid, d):
            col = {}
            for e2, c in poly_mul(lf, {e: Fraction(1)}).items():
                col[tidx[(i, e2)]] = c
            cols.append(col)
        self._mult[key] = cols
        return cols

    def section_space(self, subfan: frozenset, d: int, vanish: frozenset = frozenset()):
        key = (frozenset(subfan), frozenset(vanish), d)
        got = self._sections.get(key)
        if got is None:
            got = self._sections[key] = sections(self, key[0], d, key[1])
        return got


# -- top-part vectors ---------------------------------------------------------

class TopLayout:
    """Coordinates of a section on the maximal cones of a subfan."""

    def __init__(self, sheaf: MESSheaf, subfan: frozenset, vanish: frozenset):
        f = sheaf.fan
        self.sheaf = sheaf
        self.subfan = subfan
        self.vanish = vanish
        self.tops = sorted(c for c in subfan
                           if c not in vanish and not any(g in subfan for g in f.cofacets[c]))
        self._off: dict = {}

    def offsets(self, d: int) -> dict:
        got = self._off.get(d)
        if got is None:
            got = {}
            off = 0
            for c in self.tops:
                k = self.sheaf.dim(c, d)
                got[c] = (off, k)
                off += k
            got[None] = off
            self._off[d] = got
        return got

    def size(self, d: int) -> int:
        return self.offsets(d)[None]

    def from_section(self, space: SectionSpace, vec: dict) -> dict:
        offs = self.offsets(space.degree)
        out = {}
        for c in self.tops:
            if c not in space.layout:
                continue
            off = offs[c][0]
            for k, x in space.component(vec, c).items():
                out[off + k] = x
        return out

    def component(self, vec: dict, c: int, d: int) -> dict:
        off, size = self.offsets(d)[c]
        return {k - off: x for k, x in vec.items() if off <= k < off + size}

    def apply_per_cone(self, vec: dict, d_src: int, d_dst: int, maps: dict) -> dict:
        """Apply column-sparse cone maps ``maps[c]`` blockwise."""
        src = self.offsets(d_src)
        dst = self.offsets(d_dst)
        out: dict = {}
        for k, x in vec.items():
            c = self._cone_at(src, k)
            soff = src[c][0]
            doff = dst[c][0]
            for i, y in maps[c][k - soff].items():
                t = doff + i
                v = out.get(t, 0) + x * y
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return out

    def _cone_at(self, offs: dict, k: int) -> int:
        for c in self.tops:
            off, size = offs[c]
            if off <= k < off + size:
                return c
        raise IndexError(k)

    def multiply_form(self, vec: dict, form: tuple, d: int) -> dict:
        maps = {c: self.sheaf.multiplication(c, form, d) for c in self.tops}
        return self.apply_per_cone(vec, d, d + 2, maps)


@dataclass
class GradedQuotient:
    """E^d, m E^d and representatives of the quotient, degree by degree."""

    layout: TopLayout
    spaces: dict          # d -> SectionSpace
    reducers: dict        # d -> RowReducer spanning m E^d (top coordinates)
    reps: dict            # d -> list of top vectors
    max_degree: int

    def dims(self) -> dict:
        return {d: s.dim for d, s in sorted(self.spaces.items())}

    def reduced(self) -> dict:
        return {d: len(r) for d, r in sorted(self.reps.items())}


def _ambient_forms(n: int) -> list[tuple]:
    return [tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)]


def graded_quotient(sheaf: MESSheaf, subfan: Iterable[int], max_degree: int,
                    vanish: Iterable[int] = (), rng: random.Random | None = None,
                    ) -> GradedQuotient:
    """Compute E^d, m E^d and quotient representatives for even d <= max_degree."""
    subfan = frozenset(subfan)
    vanish = frozenset(vanish) & subfan
    layout = TopLayout(sheaf, subfan, vanish)
    forms = _ambient_forms(sheaf.fan.ambient_dim)
    spaces, reducers, reps = {}, {}, {}
    # products[d] = list of (top vector, last variable index) in degree d
    products: dict = {}
    for d in range(0, max_degree + 1, 2):
        space = sheaf.section_space(subfan, d, vanish)
        spaces[d] = space
        size = layout.size(d)
        red = RowReducer(size)
        cur = []
        for vec, last in products.get(d - 2, []):
            for k in range(last, len(forms)):
                p = layout.multiply_form(vec, forms[k], d - 2)
                cur.append((p, k))
                red.add(p)
        reducers[d] = red
        quo = red.copy()
        found = []
        for b in space.basis:
            r = quo.reduce(layout.from_section(space, b))
            if r:
                quo.add(r)
                found.append(r)
        if rng is not None and found:
            found = _scramble(found, red, rng)
        reps[d] = found
        products[d] = cur + [(r, 0) for r in found]
    return GradedQuotient(layout, spaces, reducers, reps, max_degree)


def _scramble(reps: list, red: RowReducer, rng: random.Random) -> list:
    """A different valid choice of representatives: shuffle, apply a unit
    triangular transform, add elements of m E."""
    reps = list(reps)
    rng.shuffle(reps)
    out = []
    extra = red.basis()
    for i, r in enumerate(reps):
        v = dict(r)
        for prev in reps[:i]:
            c = Fraction(rng.randint(-2, 2))
            if c:
                for k, x in prev.items():
                    v[k] = v.get(k, 0) + c * x
        for m in extra[:3]:
            c = Fraction(rng.randint(-1, 1))
            if c:
                for k, x in m.items():
                    v[k] = v.get(k, 0) + c * x
        scale = Fraction(rng.choice([1, 2, -1, 3]))
        out.append({k: x * scale for k, x in v.items() if x})
    return out


# -- construction ---------------------------------------------------------------

def construct_mes(f: Fan, seed: int = 0) -> MESModel:
    """Build the minimal extension sheaf cone by cone in order of dimension."""
    gens = {0: (0,)}
    restr: dict = {}
    model = MESModel(f, gens, restr, seed)
    sheaf = model.sheaf()
    rng = random.Random(seed) if seed else None
    for s in f.cones[1:]:
        boundary = f.faces[s.id] - {s.id}
        quo = graded_quotient(sheaf, boundary, 2 * s.dim - 2, rng=rng)
        degrees = []
        per_facet = {t: [] for t in f.facets[s.id]}
        for d, found in sorted(quo.reps.items()):
            for r in found:
                degrees.append(d)
                for t in f.facets[s.id]:
                    comp = quo.layout.component(r, t, d)
                    basis = sheaf.basis(t, d)
                    grouped: dict = {}
                    for k, x in comp.items():
                        j, e = basis[k]
                        grouped.setdefault(j, {})[e] = x
                    per_facet[t].append(grouped)
        gens[s.id] = tuple(degrees)
        for t, data in per_facet.items():
            restr[(t, s.id)] = tuple(data)
        model.log.append({"cone": s.id, "degrees": list(degrees),
                          "boundary_reduced": {str(d): v for d, v in quo.reduced().items()}})
    return model


def structure_sheaf_model(f: Fan) -> MESModel:
    """Piecewise polynomials on a simplicial fan: one degree-0 generator per
    cone and identity restrictions."""
    if not all(c.is_simplicial for c in f.cones):
        raise FanError("the structure sheaf model needs a simplicial fan")
    gens = {c.id: (0,) for c in f.cones}
    restr = {}
    for c in f.cones:
        for t in f.facets[c.id]:
            restr[(t, c.id)] = ({0: {(0,) * f.cones[t].dim: Fraction(1)}},)
    return MESModel(f, gens, restr)


# -- queries ------------------------------------------------------------------------

@dataclass
class GradedDims:
    dims: dict
    max_degree: int

    def as_list(self) -> list[int]:
        return [self.dims.get(d, 0) for d in range(0, self.max_degree + 1, 2)]

    def to_dict(self) -> dict:
        return {"max_degree": self.max_degree, "dims": {str(k): v for k, v in self.dims.items()}}


def _all(f: Fan) -> frozenset:
    return frozenset(c.id for c in f.cones)


def section_space(model: MESModel, subfan: Iterable[int], d: int,
                  max_degree: int | None = None) -> SectionSpace:
    if max_degree is not None and d > max_degree:
        raise ValueError(f"degree {d} above the bound {max_degree}")
    return model.sheaf().section_space(frozenset(subfan), d)


def relative_section_space(model: MESModel, subfan: Iterable[int], vanish: Iterable[int],
                           d: int, max_degree: int | None = None) -> SectionSpace:
    if max_degree is not None and d > max_degree:
        raise ValueError(f"degree {d} above the bound {max_degree}")
    vanish = frozenset(vanish)
    subfan = frozenset(subfan)
    if not vanish <= subfan:
        raise FanError("the vanishing subfan must lie in the subfan")
    return model.sheaf().section_space(subfan, d, vanish)


def reduced_dims(model: MESModel, subfan: Iterable[int] | None = None,
                 vanish: Iterable[int] = (), max_degree: int | None = None) -> GradedDims:
    f = model.fan
    subfan = _all(f) if subfan is None else frozenset(subfan)
    D = 2 * f.ambient_dim + 4 if max_degree is None else max_degree
    quo = _cached_quotient(model, subfan, frozenset(vanish), D)
    return GradedDims({d: v for d, v in quo.reduced().items() if d <= D}, D)


def _cached_quotient(model: MESModel, subfan: frozenset, vanish: frozenset, D: int):
    cache = model.__dict__.setdefault("_quotients", {})
    for (s, v, dm), q in cache.items():
        if s == subfan and v == vanish and dm >= D:
            return q
    q = graded_quotient(model.sheaf(), subfan, D, vanish)
    cache[(subfan, vanish, D)] = q
    return q


def global_quotient(model: MESModel, relative: bool = False, max_degree: int | None = None):
    f = model.fan
    D = 2 * f.ambient_dim + 4 if max_degree is None else max_degree
    vanish = f.boundary_ids() if relative else frozenset()
    return _cached_quotient(model, _all(f), vanish, D)


def _generator_image(model: MESModel, sigma: int, layout: TopLayout, i: int, d: int) -> dict:
    """Top vector of generator i of sigma restricted to the boundary."""
    f = model.fan
    sheaf = model.sheaf()
    offs = layout.offsets(d)
    out = {}
    for t in f.facets[sigma]:
        tidx = sheaf.index(t, d)
        off = offs[t][0]
        for j, poly in model.restr[(t, sigma)][i].items():
            for e, c in poly.items():
                out[off + tidx[(j, e)]] = c
    return out


def check_lme(model: MESModel, extra: int = 0) -> dict:
    """Per cone: is E_sigma/m -> E_boundary/m bijective up to the degree bound?"""
    f = model.fan
    sheaf = model.sheaf()
    out = {}
    for s in f.cones[1:]:
        boundary = f.faces[s.id] - {s.id}
        D = 2 * s.dim - 2 + extra
        quo = graded_quotient(sheaf, boundary, D)
        ok = True
        degs = model.gens[s.id]
        if any(d > D for d in degs):
            ok = False
        for d in range(0, D + 1, 2):
            idx = [i for i, di in enumerate(degs) if di == d]
            red = quo.reducers[d].copy()
            rank = sum(red.add(_generator_image(model, s.id, quo.layout, i, d)) for i in idx)
            if rank != len(idx) or rank != len(quo.reps[d]):
                ok = False
        out[s.id] = ok
    return out


def check_v_condition(model: MESModel, sigma: int) -> dict:
    """Vanishing condition for E_sigma/m: literal and halved readings."""
    if sigma == 0:
        raise FanError("the vanishing condition concerns nonzero cones")
    dim = model.fan.cones[sigma].dim
    degs = model.gens[sigma]
    return {"cone": sigma, "dim": dim, "degrees": list(degs),
            "literal": all(d < dim for d in degs),
            "halved": all(d // 2 < dim for d in degs)}


def freeness_probe(model: MESModel, max_degree: int | None = None) -> dict:
    """Compare dim E^d with the free-module count and with P/(1-t^2)^n."""
    f = model.fan
    if not f.is_pure():
        raise FanError("freeness probe needs a purely n-dimensional fan")
    n = f.ambient_dim
    D = 2 * n + 4 if max_degree is None else max_degree
    quo = global_quotient(model, False, D)
    e = quo.dims()
    r = quo.reduced()
    predicted_free = {d: sum(r[k] * dim_sym(n, (d - k) // 2) for k in r if k <= d) for d in e}
    series = PoincareSeries(global_poincare(f.poset()), n)
    predicted_p = {d: series.coefficient(d // 2) for d in e}
    deficient = [d for d in e if e[d] < predicted_free[d]]
    return {"max_degree": D,
            "dims": {str(d): v for d, v in e.items() if d <= D},
            "free_prediction": {str(d): v for d, v in predicted_free.items() if d <= D},
            "series_prediction": {str(d): v for d, v in predicted_p.items() if d <= D},
            "deficient_degrees": [d for d in deficient if d <= D],
            "matches_series": all(e[d] == predicted_p[d] for d in e if d <= D),
            "verdict": "not free" if deficient else f"consistent with free up to degree {D}",
            "free": not deficient}


def acyclicity_check(model: MESModel, mode: str = "relative",
                     max_degree: int | None = None) -> dict:
    """Cellular complexes with E coefficients, degree by degree."""
    f = model.fan
    n = f.ambient_dim
    D = 2 * n + 4 if max_degree is None else max_degree
    sheaf = model.sheaf()
    per = {}
    ok = True
    for d in range(0, D + 1, 2):
        if mode == "relative":
            h = cohomology_dims(cochain_complex(f, sheaf, d, relative=True))
            good = not any(h.values())
        elif mode == "absolute":
            h = cohomology_dims(cochain_complex(f, sheaf, d, augmented=False))
            rel = sheaf.section_space(_all(f), d, f.boundary_ids()).dim
            good = all(v == 0 for k, v in h.items() if k > 0) and h[0] == rel
        else:
            raise ValueError(f"unknown mode {mode!r}")
        per[str(d)] = {"cohomology": {str(k): v for k, v in h.items()}, "ok": good}
        ok = ok and good
    return {"mode": mode, "max_degree": D, "degrees": per, "exact": ok}


def duality_dims_check(model: MESModel) -> dict:
    f = model.fan
    n = f.ambient_dim
    absolute = global_quotient(model, False, 2 * n).reduced()
    relative = global_quotient(model, True, 2 * n).reduced()
    holds = all(absolute.get(q, 0) == relative.get(2 * n - q, 0) for q in range(0, 2 * n + 1, 2))
    return {"absolute": [absolute.get(q, 0) for q in range(0, 2 * n + 1, 2)],
            "relative": [relative.get(q, 0) for q in range(0, 2 * n + 1, 2)],
            "holds": holds}


def split_cone_check(model: MESModel) -> list[dict]:
    """For cones sigma = tau + rho with rho a ray off V_tau, compare the
    generator degrees of sigma and tau."""
    f = model.fan
    out = []
    for s in f.cones:
        for t in f.facets[s.id]:
            extra = set(s.rays) - set(f.cones[t].rays)
            if len(extra) == 1 and len(s.rays) == len(f.cones[t].rays) + 1:
                out.append({"cone": s.id, "facet": t, "ray": extra.pop(),
                            "holds": sorted(model.gens[s.id]) == sorted(model.gens[t])})
    return out


def flabby_decomposition_check(model: MESModel, d: int) -> dict:
    """dim H~(Delta, boundary; E^d) against the sum over sigma of
    dim ker(E^d_sigma -> E^d_boundary) times dim H~(Delta_sigma, boundary; R)."""
    from .fansheaf import characteristic_sheaf
    f = model.fan
    sheaf = model.sheaf()
    lhs = cohomology_dims(cochain_complex(f, sheaf, d, relative=True))
    rhs = {k: 0 for k in lhs}
    for s in f.cones:
        k = sheaf.dim(s.id, d)
        if s.id:
            k -= sheaf.section_space(f.faces[s.id] - {s.id}, d).dim
        if not k:
            continue
        h = cohomology_dims(cochain_complex(f, characteristic_sheaf(f, s.id), 0, relative=True))
        for q, v in h.items():
            rhs[q] = rhs.get(q, 0) + k * v
    return {"degree": d, "sheaf": {str(q): v for q, v in lhs.items()},
            "sum": {str(q): v for q, v in rhs.items()}, "holds": lhs == rhs}


# -- direct images ------------------------------------------------------------------

def _in_cone(f: Fan, cid: int, v: Sequence) -> bool:
    c = f.cones[cid]
    x = c.coords(v)
    back = [sum((b[i] * x[k] for k, b in enumerate(c.basis)), Fraction(0))
            for i in range(f.ambient_dim)]
    if any(p != q for p, q in zip(back, v)):
        return False
    return all(sign(sum((a * b for a, b in zip(nrm, x)), Fraction(0))) >= 0
               for nrm in c.facet_normals)


def refinement_map(f: Fan, g: Fan) -> dict:
    """Map each cone of refinement ``g`` to the smallest cone of ``f``
    containing it; raises when ``g`` does not refine ``f``."""
    if g.ambient_dim != f.ambient_dim:
        raise FanError("refinement lives in a different space")
    ray_home = [frozenset(c.id for c in f.cones if c.dim and _in_cone(f, c.id, v))
                for v in g.rays]
    everything = frozenset(c.id for c in f.cones)
    out = {}
    for c in g.cones:
        homes = everything.intersection(*(ray_home[r] for r in c.rays))
        if not homes:
            raise FanError(f"cone {list(c.rays)} of the refinement lies in no cone",
                           witness=[list(c.rays)])
        out[c.id] = min(homes, key=lambda h: f.cones[h].dim)
    # every maximal cone must be tiled: a pseudo-manifold with the right boundary
    for s in f.cones:
        if s.id == 0:
            continue
        inside = [c.id for c in g.cones if out[c.id] in f.faces[s.id]]
        tops = [c for c in inside if g.cones[c].dim == s.dim]
        walls = [c for c in inside if g.cones[c].dim == s.dim - 1]
        for w in walls:
            k = sum(1 for t in tops if w in g.faces[t])
            want = 1 if out[w] != s.id else 2
            if k != want:
                raise FanError(f"refinement does not tile cone {list(s.rays)}",
                               witness=[list(s.rays)])
        if not tops:
            raise FanError(f"refinement does not cover cone {list(s.rays)}",
                           witness=[list(s.rays)])
    return out


def decompose_direct_image(f: Fan, refinement: Fan, max_degree: int | None = None) -> dict:
    """Multiplicities K_sigma = ker(F_sigma/m -> F_boundary/m) per cone of f,
    with F the piecewise polynomials on the (simplicial) refinement."""
    if not all(c.is_simplicial for c in refinement.cones):
        raise FanError("the refinement must be simplicial")
    home = refinement_map(f, refinement)
    model = structure_sheaf_model(refinement)
    sheaf = model.sheaf()
    out = {}
    for s in f.cones:
        D = 2 * s.dim if max_degree is None else max_degree
        inside = frozenset(c for c, h in home.items() if h in f.faces[s.id])
        bnd = frozenset(c for c, h in home.items() if h in f.faces[s.id] and h != s.id)
        qs = graded_quotient(sheaf, inside, D)
        qb = graded_quotient(sheaf, bnd, D) if bnd else None
        dims = {}
        for d in range(0, D + 1, 2):
            total = len(qs.reps[d])
            if qb is None:
                dims[d] = total
                continue
            red = qb.reducers[d].copy()
            base = red.rank
            space = qs.spaces[d]
            for r in qs.reps[d]:
                red.add(_restrict_top(qs.layout, qb.layout, r, d, sheaf))
            dims[d] = total - (red.rank - base)
        out[s.id] = {d: v for d, v in dims.items() if v}
    return out


def _restrict_top(src: TopLayout, dst: TopLayout, vec: dict, d: int, sheaf: MESSheaf) -> dict:
    """Restrict a section (top coordinates over ``src``) to the subfan of ``dst``."""
    f = sheaf.fan
    offs = dst.offsets(d)
    out = {}
    for t in dst.tops:
        parent = next(c for c in src.tops if t in f.faces[c])
        comp = src.component(vec, parent, d)
        val = _push_down(sheaf, parent, t, comp, d)
        off = offs[t][0]
        for k, x in val.items():
            out[off + k] = x
    return out


def _push_down(sheaf: MESSheaf, sigma: int, tau: int, comp: dict, d: int) -> dict:
    f = sheaf.fan
    cur, vec = sigma, comp
    while cur != tau:
        nxt = next(t for t in f.facets[cur] if tau in f.faces[t])
        R = sheaf.restriction(nxt, cur, d)
        new: dict = {}
        for j, x in vec.items():
            for i, y in R[j].items():
                v = new.get(i, 0) + x * y
                if v:
                    new[i] = v
                else:
                    new.pop(i, None)
        cur, vec = nxt, new
    return vec


# -- Hard Lefschetz -------------------------------------------------------------------

def hard_lefschetz_check(model: MESModel, pl: PiecewiseLinear) -> dict:
    """Ranks of multiplication by a strictly convex function on E/mE."""
    f = model.fan
    if not is_complete(f):
        raise FanError("Hard Lefschetz needs a complete fan")
    ok, bad = check_strictly_convex(f, pl)
    if not ok:
        raise FanError(f"function is not strictly convex: {bad[:3]}")
    n = f.ambient_dim
    quo = global_quotient(model, False, max(2 * n + 2, 2))
    layout = quo.layout
    sheaf = model.sheaf()
    rows = []
    passed = True
    for q in range(0, n + 1):
        d = 2 * q
        src = quo.reps[d]
        tgt_red = quo.reducers[d + 2].copy()
        base = tgt_red.rank
        maps = {c: sheaf.multiplication(c, tuple(pl.forms[c]), d) for c in layout.tops}
        rank = 0
        for r in src:
            rank += tgt_red.add(layout.apply_per_cone(r, d, d + 2, maps))
        dim_src, dim_tgt = len(src), len(quo.reps.get(d + 2, []))
        injective = rank == dim_src
        surjective = rank == dim_tgt
        need_inj = 2 * q <= n - 1
        need_surj = 2 * q >= n - 1
        good = (injective or not need_inj) and (surjective or not need_surj)
        passed = passed and good
        rows.append({"degree": d, "source_dim": dim_src, "target_dim": dim_tgt, "rank": rank,
                     "injective": injective, "surjective": surjective,
                     "injective_required": need_inj, "surjective_required": need_surj,
                     "ok": good})
    return {"degrees": rows, "passed": passed,
            "reduced_dims": [len(quo.reps[2 * q]) for q in range(n + 1)]}


# -- simplicial Poincare duality pairing ------------------------------------------------

def _top_poly(layout: TopLayout, sheaf: MESSheaf, vec: dict, c: int, d: int) -> dict:
    basis = sheaf.basis(c, d)
    return {basis[k][1]: x for k, x in layout.component(vec, c, d).items()}


def _product(layout: TopLayout, other: TopLayout, sheaf: MESSheaf,
             a: dict, da: int, b: dict, db: int, target: TopLayout) -> dict:
    out = {}
    offs = target.offsets(da + db)
    for c in target.tops:
        pa = _top_poly(layout, sheaf, a, c, da)
        pb = _top_poly(other, sheaf, b, c, db)
        prod = poly_mul(pa, pb)
        idx = sheaf.index(c, da + db)
        off = offs[c][0]
        for e, x in prod.items():
            out[off + idx[(0, e)]] = x
    return out


def simplicial_pd_pairing(f: Fan) -> dict:
    """Pairing E/m (absolute) x E/m (relative) -> R through the evaluation map."""
    if not all(c.is_simplicial for c in f.cones):
        raise FanError("the pairing is only built for simplicial fans")
    if not f.is_pure():
        raise FanError("the pairing needs a purely n-dimensional fan")
    n = f.ambient_dim
    model = structure_sheaf_model(f)
    sheaf = model.sheaf()
    qa = graded_quotient(sheaf, _all(f), 2 * n)
    qr = graded_quotient(sheaf, _all(f), 2 * n, f.boundary_ids())
    top = qr.reps[2 * n]
    if len(top) != 1:
        return {"nondegenerate": False, "reason": f"relative top dimension {len(top)}"}
    t = top[0]
    pivot = min(t)
    red = qr.reducers[2 * n]

    def epsilon(h: dict):
        r = red.reduce(h)
        c = r.get(pivot, Fraction(0)) / t[pivot]
        if any(r.get(k, 0) != c * x for k, x in t.items()) or any(k not in t for k in r):
            raise ArithmeticError("relative top quotient is not one-dimensional")
        return c

    point = _generic_point(f)
    blocks = []
    ok = True
    ratios = set()
    for q in range(n + 1):
        A = qa.reps[2 * q]
        B = qr.reps[2 * n - 2 * q]
        M = []
        for a in A:
            row = []
            for b in B:
                h = _product(qa.layout, qr.layout, sheaf, a, 2 * q, b, 2 * n - 2 * q, qr.layout)
                e = epsilon(h)
                row.append(e)
                euclid = _euclidean_evaluation(f, qr.layout, sheaf, h, 2 * n, point)
                if e:
                    ratios.add(euclid / e)
                elif euclid:
                    ratios.add(None)
            M.append(row)
        square = len(A) == len(B)
        det = determinant(M) if square else Fraction(0)
        good = square and (len(A) == 0 or bool(det))
        ok = ok and good
        blocks.append({"degree": 2 * q, "rows": len(A), "cols": len(B),
                       "matrix": [[format_scalar(x) for x in r] for r in M],
                       "determinant": format_scalar(det), "invertible": good})
    return {"blocks": blocks, "nondegenerate": ok,
            "euclidean_ratio_consistent": len(ratios) <= 1 and None not in ratios,
            "euclidean_ratio": format_scalar(next(iter(ratios))) if len(ratios) == 1
            and None not in ratios else None}


def _generic_point(f: Fan) -> list:
    n = f.ambient_dim
    pt = [Fraction(3 + 2 * i, 7 + i) * (1 if i % 2 else -1) + Fraction(1, 11 + 5 * i)
          for i in range(n)]
    return pt


def _euclidean_evaluation(f: Fan, layout: TopLayout, sheaf: MESSheaf, h: dict, d: int,
                          point: Sequence):
    """Sum over maximal cones of h_sigma / (|det| * product of dual forms)."""
    n = f.ambient_dim
    total = Fraction(0)
    for c in layout.tops:
        cone = f.cones[c]
        if cone.dim != n:
            continue
        vecs = [f.rays[r] for r in cone.rays]
        M = [[vecs[j][i] for j in range(n)] for i in range(n)]
        det = determinant(M)
        from .exactmath.linalg import inverse
        inv = inverse(M)                   # rows are the dual forms
        denom = abs(det) if not hasattr(det, "sign") else (det if det.sign() > 0 else -det)
        for row in inv:
            denom = denom * sum((a * b for a, b in zip(row, point)), Fraction(0))
        val = evaluate(_top_poly(layout, sheaf, h, c, d), point)
        total = total + val / denom
    return total


# -- serialization ---------------------------------------------------------------------

def model_to_dict(model: MESModel) -> dict:
    f = model.fan
    cones = []
    for c in f.cones:
        entry = {"id": c.id, "rays": list(c.rays), "degrees": list(model.gens[c.id])}
        res = {}
        for t in f.facets[c.id]:
            res[str(t)] = [
                {str(j): [[list(e), format_scalar(x)] for e, x in sorted(p.items(), reverse=True)]
                 for j, p in sorted(g.items())}
                for g in model.restr[(t, c.id)]]
        if res:
            entry["restrictions"] = res
        cones.append(entry)
    return {"seed": model.seed, "cones": cones}


def model_from_dict(f: Fan, data: dict) -> MESModel:
    gens = {}
    restr = {}
    for entry in data["cones"]:
        cid = entry["id"]
        gens[cid] = tuple(entry["degrees"])
        for t, gl in entry.get("restrictions", {}).items():
            restr[(int(t), cid)] = tuple(
                {int(j): {tuple(e): f.field.parse(x) for e, x in terms}
                 for j, terms in g.items()}
                for g in gl)
    return MESModel(f, gens, restr, data.get("seed", 0))
