"""Closed intervals with exact rational endpoints.

Every enclosure in the package is an :class:`Interval` whose endpoints are
``fractions.Fraction`` values, so interval arithmetic never rounds: the only
approximation is made once, when an irrational constant is enclosed.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from mpmath import iv, libmp

__all__ = [
    "Interval",
    "sqrt_interval",
    "pi_interval",
    "e_interval",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an interval endpoint")


@dataclass(frozen=True)
class Interval:
    """The closed interval ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _frac(self.lo))
        object.__setattr__(self, "hi", _frac(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = _frac(x)
        return cls(x, x)

    @classmethod
    def coerce(cls, x) -> "Interval":
        return x if isinstance(x, Interval) else cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid)

    def __contains__(self, x) -> bool:
        return self.lo <= _frac(x) <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sign(self) -> int | None:
        """Sign of every point of the interval, or None when it straddles 0."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval.coerce(other))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        other = Interval.coerce(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if not self.excludes_zero():
            raise ZeroDivisionError(f"interval {self} contains 0")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * Interval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return Interval.coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def square(self) -> "Interval":
        a = abs(self)
        return Interval(a.lo * a.lo, a.hi * a.hi)

    def max(self, other) -> "Interval":
        other = Interval.coerce(other)
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def certainly_lt(self, other) -> bool:
        return self.hi < Interval.coerce(other).lo

    def certainly_le(self, other) -> bool:
        return self.hi <= Interval.coerce(other).lo

    def __repr__(self):
        if self.lo == self.hi:
            return f"Interval({float(self.lo)!r})"
        return f"Interval([{float(self.lo)!r}, {float(self.hi)!r}])"


def sqrt_interval(x, bits: int) -> Interval:
    """Enclosure of ``sqrt(x)`` for a nonnegative rational ``x`` of width at most ``2**-bits``
    relative to the denominator scaling used."""
    x = _frac(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    n = num * den
    shift = 2 * (bits + den.bit_length())
    s = isqrt(n << shift)
    scale = 1 << (shift // 2)
    lo = Fraction(s, scale * den)
    if s * s == n << shift:
        return Interval(lo, lo)
    return Interval(lo, Fraction(s + 1, scale * den))


def _mpi_to_interval(x) -> Interval:
    lo, hi = x._mpi_
    return Interval(Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi)))


_IV_LOCK = threading.Lock()


def _constant(name: str, bits: int) -> Interval:
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits + 8
        try:
            return _mpi_to_interval(getattr(iv, name))
        finally:
            iv.prec = saved


@lru_cache(maxsize=64)
def pi_interval(bits: int) -> Interval:
    """Rigorous enclosure of pi with width below ``2**-bits``."""
    return _constant("pi", bits)


@lru_cache(maxsize=64)
def e_interval(bits: int) -> Interval:
    """Rigorous enclosure of Euler's number with width below ``2**-bits``."""
    return _constant("e", bits)
