"""Real numbers that are either exact field elements or refinable enclosures.

A :class:`Real` carries an exact :class:`~sctk.exactfield.FieldElement` when
one is available.  Otherwise it carries a function ``bits -> Interval``
returning an enclosure whose width shrinks as ``bits`` grows.  Arithmetic
stays exact as long as both operands are exact and share a field, and falls
back to composing enclosures otherwise.

Comparisons go through :func:`compare`: exact values are compared exactly;
enclosures are refined by doubling the working precision until the answer
is certain, and :class:`PrecisionExhausted` is raised past the cap instead of
guessing.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from typing import Callable, Iterator

from .exactfield import FieldElement, FieldMismatchError
from .interval import Interval, e_interval, pi_interval

__all__ = [
    "PrecisionExhausted",
    "Real",
    "compare",
    "sign",
    "START_BITS",
    "MAX_BITS",
    "precision_cap",
]

START_BITS = 64
MAX_BITS = 1 << 14


class PrecisionExhausted(ArithmeticError):
    """An interval comparison stayed undecided up to the precision cap."""


class Real:
    __slots__ = ("exact", "_enclose", "label")

    def __init__(
        self,
        exact: FieldElement | None = None,
        enclose: Callable[[int], Interval] | None = None,
        label: str | None = None,
    ):
        if exact is None and enclose is None:
            raise ValueError("a Real needs an exact value or an enclosure")
        self.exact = exact
        self._enclose = enclose
        self.label = label

    @classmethod
    def of(cls, x) -> "Real":
        if isinstance(x, Real):
            return x
        if isinstance(x, FieldElement):
            return cls(exact=x)
        if isinstance(x, (int, Fraction)):
            return cls(exact=FieldElement(x))
        if isinstance(x, float):
            return cls(exact=FieldElement(Fraction(x)))
        if isinstance(x, Interval):
            return cls(enclose=lambda bits, iv=x: iv)
        raise TypeError(f"cannot make a Real from {type(x).__name__}")

    @classmethod
    def pi(cls) -> "Real":
        return cls(enclose=pi_interval, label="pi")

    @classmethod
    def e(cls) -> "Real":
        return cls(enclose=e_interval, label="e")

    def is_exact(self) -> bool:
        return self.exact is not None

    def interval(self, bits: int = START_BITS) -> Interval:
        if self.exact is not None:
            return self.exact.interval(bits)
        return self._enclose(bits)

    def __float__(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float(self.interval(80).mid)

    def _combine(self, other, exact_op, iv_op) -> "Real":
        other = Real.of(other)
        if self.exact is not None and other.exact is not None:
            try:
                return Real(exact=exact_op(self.exact, other.exact))
            except FieldMismatchError:
                pass
        a, b = self, other
        return Real(enclose=lambda bits: iv_op(a.interval(bits), b.interval(bits)))

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y, lambda x, y: x - y)

    def __rsub__(self, other):
        return Real.of(other) - self

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y, lambda x, y: x * y)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, lambda x, y: x / y, _iv_div)

    def __rtruediv__(self, other):
        return Real.of(other) / self

    def __neg__(self):
        if self.exact is not None:
            return Real(exact=-self.exact)
        a = self
        return Real(enclose=lambda bits: -a.interval(bits))

    def __abs__(self):
        if self.exact is not None:
            return Real(exact=abs(self.exact))
        a = self
        return Real(enclose=lambda bits: abs(a.interval(bits)))

    def __repr__(self):
        if self.exact is not None:
            return f"Real({self.exact})"
        if self.label:
            return f"Real({self.label})"
        return f"Real(~{float(self)!r})"

    def __str__(self):
        if self.exact is not None:
            return str(self.exact)
        return self.label or repr(float(self))


def _iv_div(x: Interval, y: Interval) -> Interval:
    # an enclosure of a nonzero divisor eventually excludes 0; until then
    # report an unbounded-looking interval so comparisons stay undecided
    if not y.excludes_zero():
        big = Fraction(1 << 64)
        return Interval(-big * (abs(x).hi + 1), big * (abs(x).hi + 1))
    return x / y


@contextmanager
def precision_cap(bits: int) -> Iterator[None]:
    """Temporarily change the default refinement cap."""
    global MAX_BITS
    if bits < START_BITS:
        raise ValueError(f"precision cap must be >= {START_BITS} bits")
    saved, MAX_BITS = MAX_BITS, bits
    try:
        yield
    finally:
        MAX_BITS = saved


def sign(x, max_bits: int | None = None) -> int:
    """Exact sign of ``x``; raises PrecisionExhausted if undecidable up to ``max_bits``."""
    if max_bits is None:
        max_bits = MAX_BITS
    x = Real.of(x)
    if x.exact is not None:
        return x.exact.sign()
    bits = START_BITS
    while bits <= max_bits:
        s = x.interval(bits).sign()
        if s is not None and (s != 0 or x.interval(bits).width == 0):
            return s
        bits *= 2
    raise PrecisionExhausted(f"sign of {x!r} undecided at {max_bits} bits")


def compare(x, y, max_bits: int | None = None) -> int:
    """Return -1, 0 or 1 as ``x`` is below, equal to or above ``y``."""
    return sign(Real.of(x) - Real.of(y), max_bits)
