"""Generalized h-vectors from face posets.

Polynomials live in t^2: ``PoincarePolynomial((b0, b2, b4, ...))`` stands for
b0 + b2 t^2 + b4 t^4 + ...  The local recursion

    P_sigma = 1                                  (sigma simplicial)
    P_sigma = trunc_{< dim sigma}((1 - t^2) P_{Lambda_sigma})

with P_{Lambda_sigma} = sum over proper faces tau of
(t^2 - 1)^{dim sigma - 1 - dim tau} P_tau, and the local-to-global sum

    P_Delta = sum_{sigma interior} (t^2 - 1)^{n - dim sigma} P_sigma

only need the face poset.  Outside the simplicial and rational cases the
recursion presumes the vanishing condition V; results carry a flag.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .fan import FanError, FanPoset


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer polynomial in t^2; ``coeffs[q]`` multiplies t^(2q)."""

    coeffs: tuple = (0,)

    def __post_init__(self):
        c = list(int(x) for x in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0,))

    @classmethod
    def one(cls) -> "PoincarePolynomial":
        return cls((1,))

    @classmethod
    def t2(cls, k: int = 1) -> "PoincarePolynomial":
        return cls((0,) * k + (1,))

    @classmethod
    def parse(cls, text: str) -> "PoincarePolynomial":
        body = text.strip().lstrip("[").rstrip("]")
        return cls(tuple(int(x) for x in body.split(",") if x.strip()))

    def __getitem__(self, q: int) -> int:
        return self.coeffs[q] if 0 <= q < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree in t (twice the top index); -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return 2 * (len(self.coeffs) - 1)

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def leading(self) -> int:
        return self.coeffs[-1]

    def __add__(self, other):
        m = max(len(self), len(other))
        return PoincarePolynomial(tuple(self[i] + other[i] for i in range(m)))

    def __neg__(self):
        return PoincarePolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return PoincarePolynomial(tuple(other * x for x in self.coeffs))
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PoincarePolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PoincarePolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def truncate_below(self, k: int) -> "PoincarePolynomial":
        return truncate_below(self, k)

    def reversed(self, n: int) -> "PoincarePolynomial":
        """t^(2n) P(1/t)."""
        if len(self) > n + 1:
            raise ValueError(f"degree {self.degree} exceeds 2n = {2 * n}")
        c = list(self.coeffs) + [0] * (n + 1 - len(self))
        return PoincarePolynomial(tuple(reversed(c)))

    def dominates(self, other: "PoincarePolynomial") -> bool:
        """Coefficientwise self >= other."""
        m = max(len(self), len(other))
        return all(self[i] >= other[i] for i in range(m))

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.coeffs) + "]"

    def pretty(self) -> str:
        terms = []
        for q, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if q == 0 else ("t^2" if q == 1 else f"t^{2 * q}")
            terms.append(mono if (c == 1 and q) else (f"{c}" if q == 0 else f"{c}{mono}"))
        return " + ".join(terms) if terms else "0"


T2_MINUS_1 = PoincarePolynomial((-1, 1))
ONE_MINUS_T2 = PoincarePolynomial((1, -1))


def truncate_below(p: PoincarePolynomial, k: int) -> PoincarePolynomial:
    """Keep monomials of t-degree < k."""
    if k < 0:
        raise ValueError("truncation degree must be nonnegative")
    return PoincarePolynomial(tuple(c for q, c in enumerate(p.coeffs) if 2 * q < k) or (0,))


@dataclass(frozen=True)
class PoincareSeries:
    """The rational function P(t) / (1 - t^2)^k."""

    numerator: PoincarePolynomial
    k: int

    def coefficient(self, q: int) -> int:
        """Coefficient of t^(2q) in the expansion."""
        return sum(c * comb(q - i + self.k - 1, self.k - 1) if self.k else
                   (c if i == q else 0)
                   for i, c in enumerate(self.numerator.coeffs) if i <= q)

    def expand(self, max_q: int) -> list[int]:
        return [self.coefficient(q) for q in range(max_q + 1)]


# -- local recursion --------------------------------------------------------

_memo: dict = {}
_memo_lock = threading.Lock()


def _canonical(poset: FanPoset, top: int) -> tuple[frozenset, int]:
    """Faces of ``top`` as atom sets, atoms relabelled 0..k-1."""
    atoms = sorted(poset.atoms(top))
    pos = {a: i for i, a in enumerate(atoms)}
    key = frozenset(frozenset(pos[a] for a in poset.atoms(j)) for j in poset.below[top])
    return key, poset.dims[top]


def _local_from_key(key: frozenset, dim: int) -> PoincarePolynomial:
    with _memo_lock:
        got = _memo.get((key, dim))
    if got is not None:
        return got
    atoms = frozenset().union(*key)
    if len(atoms) == dim:
        result = PoincarePolynomial.one()
    else:
        result = truncate_below(ONE_MINUS_T2 * _boundary_sum(key, dim), dim)
    with _memo_lock:
        _memo.setdefault((key, dim), result)
    return result


def _ranks(key: frozenset) -> dict:
    """Rank of each face: longest chain from the empty face."""
    order = sorted(key, key=len)
    rank = {}
    for x in order:
        below = [rank[y] for y in order if y < x and y in rank]
        rank[x] = 1 + max(below) if below else 0
    return rank


def _boundary_sum(key: frozenset, dim: int) -> PoincarePolynomial:
    ranks = _ranks(key)
    top = frozenset().union(*key)
    acc = PoincarePolynomial((0,))
    for face in key:
        if face == top:
            continue
        sub = frozenset(g for g in key if g <= face)
        acc = acc + (T2_MINUS_1 ** (dim - 1 - ranks[face])) * _local_from_key(
            _relabel(sub), ranks[face])
    return acc


def _relabel(sub: frozenset) -> frozenset:
    atoms = sorted(frozenset().union(*sub))
    pos = {a: i for i, a in enumerate(atoms)}
    return frozenset(frozenset(pos[a] for a in g) for g in sub)


def local_poincare(poset: FanPoset, sigma: int) -> PoincarePolynomial:
    """Local polynomial of cone ``sigma`` in ``poset``."""
    if not 0 <= sigma < len(poset):
        raise FanError(f"unknown cone {sigma}")
    key, dim = _canonical(poset, sigma)
    return _local_from_key(key, dim)


def boundary_poincare(poset: FanPoset, sigma: int) -> PoincarePolynomial:
    """P of the flattened boundary fan of ``sigma``."""
    key, dim = _canonical(poset, sigma)
    return _boundary_sum(key, dim)


def assumes_v(poset: FanPoset, sigma: int, rational: bool) -> bool:
    """Whether the local value of ``sigma`` leans on condition V.

    The recursion is unconditional when every face of ``sigma`` that is not
    simplicial sits in a rational fan.
    """
    if rational:
        return False
    return any(len(poset.atoms(j)) != poset.dims[j] for j in poset.below[sigma])


def global_poincare(poset: FanPoset, mode: str = "absolute") -> PoincarePolynomial:
    """Local-to-global sum; ``mode`` is ``"absolute"`` or ``"relative"``."""
    if not poset.is_pure():
        raise FanError("global polynomial needs a purely n-dimensional fan")
    n = poset.ambient_dim
    if mode == "absolute":
        skip = poset.boundary()
    elif mode == "relative":
        skip = frozenset()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    acc = PoincarePolynomial((0,))
    for s in range(len(poset)):
        if s in skip:
            continue
        acc = acc + (T2_MINUS_1 ** (n - poset.dims[s])) * local_poincare(poset, s)
    return acc


def classical_h_from_f(f_vector: Sequence[int]) -> PoincarePolynomial:
    """h-polynomial of a complete simplicial fan from (f_1, ..., f_n)."""
    n = len(f_vector)
    f = [1] + list(f_vector)
    h = []
    for i in range(n + 1):
        h.append(sum((-1) ** (i - k) * comb(n - k, i - k) * f[k] for k in range(i + 1)))
    return PoincarePolynomial(tuple(h))


def duality_check(poset: FanPoset) -> dict:
    n = poset.ambient_dim
    absolute = global_poincare(poset, "absolute")
    relative = global_poincare(poset, "relative")
    try:
        holds = relative == absolute.reversed(n)
    except ValueError:
        holds = False
    return {"absolute": absolute, "relative": relative, "holds": holds}


def kalai_check(poset: FanPoset, sigma: int, tau: int) -> dict:
    """P_sigma >= P_tau * P_{sigma/tau} coefficientwise."""
    if tau not in poset.below[sigma]:
        raise FanError(f"cone {tau} is not a face of cone {sigma}")
    lhs = local_poincare(poset, sigma)
    p_tau = local_poincare(poset, tau)
    quotient = poset.interval(tau, sigma)
    p_q = local_poincare(quotient, len(quotient) - 1)
    rhs = p_tau * p_q
    return {"lhs": lhs, "rhs": rhs, "holds": lhs.dominates(rhs)}


def poincare_series(poset: FanPoset, sigma: int | None = None) -> PoincareSeries:
    if sigma is None:
        return PoincareSeries(global_poincare(poset), poset.ambient_dim)
    return PoincareSeries(local_poincare(poset, sigma), poset.dims[sigma])


def cones_of(poset: FanPoset) -> Iterable[int]:
    return range(len(poset))
