"""Exact arithmetic in the quadratic fields Q(sqrt d), d in {2, 3, 5}.

Rationals are plain :class:`fractions.Fraction` values.  A :class:`QuadExt`
stores ``a + b*sqrt(d)`` as three integers over a common positive
denominator, which keeps the hot paths (cross products, sign tests) in
integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Union

RADICANDS = (2, 3, 5)

RationalLike = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Raised when values from two different quadratic fields are combined."""


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str, Rational)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def rational_to_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _int_sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sign_of(p: int, q: int, d: int) -> int:
    """Sign of ``p + q*sqrt(d)`` for integers p, q and a non-square d > 0."""
    sp, sq = _int_sign(p), _int_sign(q)
    if sp == 0:
        return sq
    if sq == 0 or sp == sq:
        return sp
    # opposite signs: the term with larger magnitude wins
    lhs, rhs = p * p, d * q * q
    if lhs > rhs:
        return sp
    return sq  # lhs == rhs is impossible since sqrt(d) is irrational


class QuadExt:
    """The number ``a + b*sqrt(d)`` with rational a, b.

    Instances are immutable.  Equality and hashing are componentwise on the
    canonical form, which is sound because ``sqrt(d)`` is irrational.
    """

    __slots__ = ("_p", "_q", "_den", "_d")

    def __init__(self, a: RationalLike | str = 0, b: RationalLike | str = 0, d: int = 2) -> None:
        if d not in RADICANDS:
            raise ValueError(f"unsupported radicand {d}; expected one of {RADICANDS}")
        fa, fb = as_rational(a), as_rational(b)
        den = fa.denominator * fb.denominator // gcd(fa.denominator, fb.denominator)
        self._set(fa.numerator * (den // fa.denominator), fb.numerator * (den // fb.denominator), den, d)

    def _set(self, p: int, q: int, den: int, d: int) -> None:
        g = gcd(gcd(p, q), den)
        if g > 1:
            p, q, den = p // g, q // g, den // g
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_q", q)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, p: int, q: int, den: int, d: int) -> QuadExt:
        if den < 0:
            p, q, den = -p, -q, -den
        obj = cls.__new__(cls)
        obj._set(p, q, den, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt._raw, (self._p, self._q, self._den, self._d))

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def d(self) -> int:
        return self._d

    def _check(self, other: QuadExt) -> None:
        if other._d != self._d:
            raise FieldMismatchError(f"cannot combine Q(sqrt {self._d}) with Q(sqrt {other._d})")

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            f = Fraction(other)
            return QuadExt._raw(f.numerator, 0, f.denominator, self._d)
        return NotImplemented

    def __add__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = self._den * o._den
        return QuadExt._raw(self._p * o._den + o._p * self._den, self._q * o._den + o._q * self._den, den, self._d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt._raw(-self._p, -self._q, self._den, self._d)

    def __sub__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> QuadExt:
        return (-self) + other

    def __mul__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self._p * o._p + self._d * self._q * o._q
        q = self._p * o._q + self._q * o._p
        return QuadExt._raw(p, q, self._den * o._den, self._d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self._p, -self._q, self._den, self._d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - d*b^2`` (zero only for zero)."""
        return Fraction(self._p * self._p - self._d * self._q * self._q, self._den * self._den)

    def __truediv__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return num * Fraction(n.denominator, n.numerator)

    def __rtruediv__(self, other) -> QuadExt:
        return self._coerce(other) / self

    def sign(self) -> int:
        return sign_of(self._p, self._q, self._d)

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            return (self._p, self._q, self._den, self._d) == (other._p, other._q, other._den, other._d)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._q == 0 and Fraction(self._p, self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self._d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        # untrusted; for display only
        return (self._p + self._q * self._d ** 0.5) / self._den

    def __repr__(self) -> str:
        return f"QuadExt({rational_to_str(self.a)!r}, {rational_to_str(self.b)!r}, d={self._d})"

    def __str__(self) -> str:
        a, b = rational_to_str(self.a), rational_to_str(self.b)
        return f"{a}{'+' if self._q >= 0 else '-'}{rational_to_str(abs(self.b))}*sqrt({self._d})" if self._q else a

    def to_json(self) -> dict:
        return {"a": rational_to_str(self.a), "b": rational_to_str(self.b), "d": self._d}

    @classmethod
    def from_json(cls, obj: dict) -> QuadExt:
        return cls(obj["a"], obj["b"], int(obj["d"]))


def q_arith(x: QuadExt, y: QuadExt | None, op: str) -> QuadExt:
    """Field operation by name: ``add``, ``sub``, ``mul`` or ``neg``."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"operation {op!r} needs two operands")
    x._check(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def q_sign(x: QuadExt) -> int:
    return x.sign()
