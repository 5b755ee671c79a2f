"""Exact ordered fields: the rationals and real quadratic extensions Q(sqrt d).

Rational scalars are plain :class:`fractions.Fraction` values.  Elements of
Q(sqrt d) are :class:`QuadraticNumber` instances; they interoperate with
``int`` and ``Fraction`` and compare by exact sign evaluation.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Scalar = Union[Fraction, "QuadraticNumber"]


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_of(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d) without floating point."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: compare a^2 with b^2 d
    lhs = a * a
    rhs = b * b * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


@total_ordering
class QuadraticNumber:
    """Element a + b*sqrt(d) of the real field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return QuadraticNumber(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def sign(self) -> int:
        return _sign_of(self.a, self.b, self.d)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadraticNumber({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Canonical text form: ``p/q`` or ``a+b*sqrt(d)``."""
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return _fmt_rational(x.a)
        tail = f"{_fmt_rational(x.b)}*sqrt({x.d})"
        if x.a == 0:
            return tail
        if x.b > 0:
            return f"{_fmt_rational(x.a)}+{tail}"
        return f"{_fmt_rational(x.a)}{tail}"
    return _fmt_rational(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*(?:(?P<a>{_RAT})(?=[+-]|\s*$))?\s*"
    rf"(?:(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<d>\d+)\))?\s*$"
)


class RationalField:
    """The field Q; scalars are ``Fraction`` instances."""

    name = "Q"
    radicand = None

    def __call__(self, x) -> Fraction:
        if isinstance(x, QuadraticNumber):
            if x.b:
                raise ValueError(f"{x} is not rational")
            return x.a
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        if "sqrt" in text:
            raise ValueError(f"irrational scalar {text!r} in field Q")
        return Fraction(text)

    def format(self, x) -> str:
        return format_scalar(Fraction(x))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class QuadraticField:
    """The real field Q(sqrt d) for a squarefree radicand d > 1."""

    def __init__(self, d: int):
        if not _is_squarefree(d):
            raise ValueError(f"radicand must be squarefree and > 1, got {d}")
        self.radicand = d
        self.name = f"Q(sqrt {d})"

    def __call__(self, x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            if x.d != self.radicand:
                raise ValueError(f"{x} not in {self.name}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return QuadraticNumber(x, 0, self.radicand)

    def parse(self, text: str) -> QuadraticNumber:
        return parse_scalar(text, self.radicand)

    def format(self, x) -> str:
        return format_scalar(self(x))

    @property
    def zero(self):
        return QuadraticNumber(0, 0, self.radicand)

    @property
    def one(self):
        return QuadraticNumber(1, 0, self.radicand)

    @property
    def sqrt(self) -> QuadraticNumber:
        return QuadraticNumber(0, 1, self.radicand)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.radicand == self.radicand

    def __hash__(self):
        return hash(("Q(sqrt)", self.radicand))

    def __repr__(self):
        return f"QuadraticField({self.radicand})"


Field = Union[RationalField, QuadraticField]


def parse_scalar(text: str, radicand: int | None = None):
    """Parse ``p/q`` or ``a+b*sqrt(d)``.

    Returns a ``Fraction`` when no radicand is involved and ``radicand`` is
    None, otherwise a :class:`QuadraticNumber`.
    """
    s = text.replace(" ", "")
    if "sqrt" not in s:
        value = Fraction(s)
        if radicand is None:
            return value
        return QuadraticNumber(value, 0, radicand)
    m = _QUAD_RE.match(s)
    if m is None:
        raise ValueError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("a") or 0)
    braw = m.group("b")
    if braw in ("", "+"):
        b = Fraction(1)
    elif braw == "-":
        b = Fraction(-1)
    else:
        b = Fraction(braw)
    d = int(m.group("d"))
    if radicand is not None and d != radicand:
        raise ValueError(f"scalar {text!r} uses sqrt({d}), field has sqrt({radicand})")
    if not _is_squarefree(d):
        raise ValueError(f"radicand must be squarefree and > 1, got {d}")
    return QuadraticNumber(a, b, d)


def field_from_spec(spec: str) -> Field:
    """``"Q"`` or ``"Q(sqrt d)"`` to a field object."""
    s = spec.replace(" ", "")
    if s == "Q":
        return RationalField()
    m = re.fullmatch(r"Q\(sqrt\(?(\d+)\)?\)", s)
    if m is None:
        raise ValueError(f"unknown field {spec!r}")
    return QuadraticField(int(m.group(1)))


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def is_rational_scalar(x) -> bool:
    return not isinstance(x, QuadraticNumber) or x.b == 0
