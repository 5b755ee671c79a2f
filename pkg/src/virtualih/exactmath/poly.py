"""Graded pieces of polynomial rings S(V*).

A polynomial is a ``dict`` mapping exponent tuples to nonzero scalars.
The homogeneous piece S^q of an n-dimensional space sits in cohomological
degree 2q.  Monomials of fixed degree are listed in graded lexicographic
order with x1 > x2 > ... > xn, e.g. x1^2, x1 x2, x1 x3, x2^2, ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .linalg import sparse_rank

Poly = dict


@lru_cache(maxsize=None)
def _monomials(n: int, q: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(n), q):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@dataclass(frozen=True)
class GradedPolySpace:
    """The space S^q of degree-q forms in n variables."""

    n: int
    q: int
    basis: tuple = field(repr=False)
    index: dict = field(repr=False, compare=False, hash=False)

    @property
    def degree(self) -> int:
        return 2 * self.q

    @property
    def size(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def to_vector(self, p: Poly) -> list:
        v = [Fraction(0)] * len(self.basis)
        for e, c in p.items():
            if sum(e) != self.q or len(e) != self.n:
                raise ValueError(f"monomial {e} not in S^{self.q} of dimension {self.n}")
            v[self.index[e]] = c
        return v

    def to_poly(self, v: Sequence) -> Poly:
        return {e: c for e, c in zip(self.basis, v) if c}


@lru_cache(maxsize=None)
def monomial_basis(n: int, q: int) -> GradedPolySpace:
    if n < 0 or q < 0:
        raise ValueError("n and q must be nonnegative")
    basis = _monomials(n, q) if (n > 0 or q == 0) else ()
    return GradedPolySpace(n, q, basis, {e: i for i, e in enumerate(basis)})


def dim_sym(n: int, q: int) -> int:
    """dim S^q of an n-dimensional space."""
    if q < 0:
        return 0
    if n == 0:
        return int(q == 0)
    return comb(n + q - 1, q)


def poly_add(p: Poly, r: Poly, scale=1) -> Poly:
    out = dict(p)
    for e, c in r.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def poly_scale(p: Poly, s) -> Poly:
    if not s:
        return {}
    return {e: c * s for e, c in p.items()}


def poly_mul(p: Poly, r: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def linear_form(coeffs: Sequence) -> Poly:
    n = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = c
    return out


def constant(n: int, c=Fraction(1)) -> Poly:
    return {(0,) * n: c} if c else {}


def evaluate(p: Poly, point: Sequence):
    acc = Fraction(0)
    for e, c in p.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term = term * x ** k
        acc = acc + term
    return acc


class Substitution:
    """The pull-back y = M z of polynomials in y to polynomials in z.

    ``M`` has one row per y-variable and one column per z-variable.  Images
    of monomials are cached, so repeated restrictions stay cheap.
    """

    def __init__(self, M: Sequence[Sequence]):
        self.M = [list(r) for r in M]
        self.src = len(self.M)
        self.dst = len(self.M[0]) if self.M else 0
        self._vars = [linear_form(r) if self.dst else {} for r in self.M]
        self._cache: dict = {}

    def monomial(self, e: tuple) -> Poly:
        got = self._cache.get(e)
        if got is not None:
            return got
        if sum(e) == 0:
            out = constant(self.dst)
        else:
            i = next(k for k, a in enumerate(e) if a)
            rest = list(e)
            rest[i] -= 1
            out = poly_mul(self._vars[i], self.monomial(tuple(rest)))
        self._cache[e] = out
        return out

    def __call__(self, p: Poly) -> Poly:
        out: Poly = {}
        for e, c in p.items():
            out = poly_add(out, self.monomial(e), c)
        return out


def restrict_polynomial(p: Sequence, q: int, subspace: Sequence[Sequence]) -> list:
    """Restrict a degree-q form, given as a coefficient vector over
    ``monomial_basis(n, q)``, to the span of ``subspace``.

    The result is a coefficient vector over ``monomial_basis(k, q)`` in the
    coordinates defined by the given basis vectors of the subspace.
    """
    k = len(subspace)
    if not k:
        # the zero subspace: only constants survive
        return [p[0]] if q == 0 else []
    n = len(subspace[0])
    if sparse_rank([{j: x for j, x in enumerate(v) if x} for v in subspace], n) < k:
        raise ValueError("subspace basis is linearly dependent")
    src = monomial_basis(n, q)
    if len(p) != len(src):
        raise ValueError("coefficient vector does not match S^q")
    # x_i = sum_j subspace[j][i] * t_j
    M = [[subspace[j][i] for j in range(k)] for i in range(n)]
    image = Substitution(M)(src.to_poly(p))
    return monomial_basis(k, q).to_vector(image)
