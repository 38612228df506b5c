"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

An element is stored as ``(A + B*sqrt(d)) / D`` with integers ``A, B, D``,
``D > 0`` and ``gcd(A, B, D) = 1``.  That canonical form makes equality and
hashing structural, and keeps multiplication down to a handful of integer
products and one gcd.

Heights follow the usual conventions: the naive height ``H`` is the largest
absolute coefficient of the primitive integer minimal polynomial, the
logarithmic Weil height ``h`` is ``log M(f) / deg f`` where ``M`` is the
Mahler measure.  For degree at most two the roots of the minimal polynomial
are the field conjugates, so ``M`` is itself an exact field element.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .interval import Interval, sqrt_interval

__all__ = [
    "FieldError",
    "FieldMismatchError",
    "FieldDescriptor",
    "QQ",
    "quadratic_field",
    "FieldElement",
    "IntegerPolynomial",
    "Matrix2",
    "arith",
    "sign",
    "embed_all",
    "minimal_polynomial",
    "naive_height",
    "mahler_measure",
    "weil_height",
    "HeightBoundCheck",
    "check_naive_height_bound",
    "check_weil_quotient_bound",
    "golden_ratio",
    "parse_field_element",
]


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    """Operands live in different quadratic fields."""


def _is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Q when ``d == 1``, otherwise the real quadratic field Q(sqrt(d))."""

    d: int = 1

    def __post_init__(self):
        if self.d != 1 and (self.d < 2 or not _is_squarefree(self.d)):
            raise FieldError(f"d={self.d} is not a square-free integer >= 2")

    @property
    def kind(self) -> str:
        return "rational" if self.d == 1 else "quadratic"

    @property
    def degree(self) -> int:
        return 1 if self.d == 1 else 2

    def __repr__(self):
        return "QQ" if self.d == 1 else f"Q(sqrt({self.d}))"


QQ = FieldDescriptor(1)


@lru_cache(maxsize=None)
def quadratic_field(d: int) -> FieldDescriptor:
    return FieldDescriptor(d)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


class FieldElement:
    """The real number ``(A + B*sqrt(d)) / D`` in a field of degree <= 2."""

    __slots__ = ("_A", "_B", "_D", "field", "_hash")

    def __init__(self, a=0, b=0, field: FieldDescriptor = QQ):
        a = _as_fraction(a)
        b = _as_fraction(b)
        if b and field.d == 1:
            raise FieldError("irrational part given for the rational field")
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, field)

    def _set(self, A: int, B: int, D: int, field: FieldDescriptor):
        g = gcd(gcd(A, B), D)
        if g > 1:
            A //= g
            B //= g
            D //= g
        self._A, self._B, self._D, self.field = A, B, D, field
        self._hash = None

    @classmethod
    def _raw(cls, A: int, B: int, D: int, field: FieldDescriptor) -> "FieldElement":
        obj = cls.__new__(cls)
        if D < 0:
            A, B, D = -A, -B, -D
        obj._set(A, B, D, field)
        return obj

    @classmethod
    def coerce(cls, x, field: FieldDescriptor = QQ) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        return cls(x, 0, field if field is not None else QQ)

    # components -----------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._A, self._D)

    @property
    def b(self) -> Fraction:
        return Fraction(self._B, self._D)

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def descriptor(self) -> FieldDescriptor:
        return self.field

    def is_rational(self) -> bool:
        return self._B == 0

    @property
    def degree(self) -> int:
        """Degree of the element over Q (not of its field)."""
        return 1 if self._B == 0 else 2

    def as_fraction(self) -> Fraction:
        if self._B:
            raise FieldError(f"{self} is irrational")
        return Fraction(self._A, self._D)

    # arithmetic -----------------------------------------------------------

    def _common(self, other: "FieldElement") -> FieldDescriptor:
        if self.field == other.field:
            return self.field
        if other._B == 0:
            return self.field
        if self._B == 0:
            return other.field
        raise FieldMismatchError(f"{self.field} vs {other.field}")

    def _other(self, other):
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(other, 0, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        f = self._common(other)
        D = self._D * other._D
        return FieldElement._raw(
            self._A * other._D + other._A * self._D,
            self._B * other._D + other._B * self._D,
            D,
            f,
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(-self._A, -self._B, self._D, self.field)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        f = self._common(other)
        d = f.d
        return FieldElement._raw(
            self._A * other._A + self._B * other._B * d,
            self._A * other._B + self._B * other._A,
            self._D * other._D,
            f,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self._A == 0 and self._B == 0:
            raise ZeroDivisionError("inverse of zero")
        # D / (A + B sqrt d) = D (A - B sqrt d) / (A^2 - B^2 d)
        n = self._A * self._A - self._B * self._B * self.field.d
        return FieldElement._raw(self._D * self._A, -self._D * self._B, n, self.field)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement._raw(1, 0, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "FieldElement":
        """Image under the nontrivial automorphism sqrt(d) -> -sqrt(d)."""
        return FieldElement._raw(self._A, -self._B, self._D, self.field)

    def conjugates(self) -> list["FieldElement"]:
        """Images under all embeddings, identity first, as elements of the field."""
        if self.field.d == 1:
            return [self]
        return [self, self.conjugate()]

    def trace(self) -> Fraction:
        return Fraction(2 * self._A, self._D) if self.field.d != 1 else self.a

    def norm(self) -> Fraction:
        if self.field.d == 1:
            return self.a
        return Fraction(self._A * self._A - self._B * self._B * self.field.d, self._D * self._D)

    def is_algebraic_integer(self) -> bool:
        """Membership in the ring of integers of the field."""
        if self.field.d == 1 or self._B == 0:
            return self._D == 1
        d = self.field.d
        if d % 4 == 1:
            return self._D in (1, 2) and (self._D == 1 or (self._A - self._B) % 2 == 0)
        return self._D == 1

    # order ----------------------------------------------------------------

    def sign(self) -> int:
        A, B = self._A, self._B
        if B == 0:
            return (A > 0) - (A < 0)
        if A == 0:
            return (B > 0) - (B < 0)
        if (A > 0) == (B > 0):
            return 1 if A > 0 else -1
        if A * A > B * B * self.field.d:
            return 1 if A > 0 else -1
        return 1 if B > 0 else -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self._A != 0 or self._B != 0

    def _cmp(self, other) -> int:
        other = self._other(other)
        if other is NotImplemented:
            raise TypeError
        return (self - other).sign()

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._B == 0 and Fraction(self._A, self._D) == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self._A != other._A or self._B != other._B or self._D != other._D:
            return False
        return self._B == 0 or self.field == other.field

    def __hash__(self):
        if self._hash is None:
            if self._B == 0:
                self._hash = hash(Fraction(self._A, self._D))
            else:
                self._hash = hash((self._A, self._B, self._D, self.field.d))
        return self._hash

    # real approximations ----------------------------------------------------

    def interval(self, bits: int = 64) -> Interval:
        """Enclosure of the identity embedding of width <= 2**-bits * max(1, |x|)."""
        if self._B == 0:
            return Interval.point(Fraction(self._A, self._D))
        b = Fraction(self._B, self._D)
        extra = max(0, abs(b.numerator).bit_length() - b.denominator.bit_length() + 1)
        s = sqrt_interval(self.field.d, bits + extra + 1)
        return Fraction(self._A, self._D) + s * b

    def __float__(self) -> float:
        if self._B == 0:
            return float(Fraction(self._A, self._D))
        return float(self.interval(64).mid)

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0 or self.field.d == 1:
            return str(a)
        bs = f"{abs(b)}*sqrt({self.field.d})"
        if a == 0:
            return bs if b > 0 else f"-{bs}"
        return f"{a} {'+' if b > 0 else '-'} {bs}"


def golden_ratio() -> FieldElement:
    return FieldElement(Fraction(1, 2), Fraction(1, 2), quadratic_field(5))


# ---------------------------------------------------------------------------
# module-level operations


def arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "div"} exactly."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if not y:
            raise ZeroDivisionError("division by zero field element")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sign(x: FieldElement) -> int:
    return FieldElement.coerce(x).sign()


def embed_all(x: FieldElement, precision: int = 53) -> list[Interval]:
    """One enclosure per real embedding, identity first."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    x = FieldElement.coerce(x)
    return [c.interval(precision) for c in x.conjugates()]


@dataclass(frozen=True)
class IntegerPolynomial:
    """Integer polynomial with coefficients listed from the constant term up."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def __call__(self, x):
        acc = FieldElement.coerce(0) if isinstance(x, FieldElement) else 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = str(mag) if k == 0 or mag != 1 else ""
            body = f"{body}{mono}" if body and mono else (body or mono)
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, t in terms[1:]:
            out += f" {s} {t}"
        return out


def _primitive(coeffs: Sequence[Fraction]) -> IntegerPolynomial:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntegerPolynomial(tuple(ints))


def minimal_polynomial(x: FieldElement) -> IntegerPolynomial:
    x = FieldElement.coerce(x)
    if x.is_rational():
        return _primitive([-x.a, Fraction(1)])
    return _primitive([x.norm(), -x.trace(), Fraction(1)])


def naive_height(x: FieldElement) -> int:
    return minimal_polynomial(x).height()


def mahler_measure(x: FieldElement) -> FieldElement:
    """Mahler measure of the minimal polynomial, as an exact field element."""
    x = FieldElement.coerce(x)
    f = minimal_polynomial(x)
    m = FieldElement.coerce(abs(f.leading), x.field)
    one = FieldElement.coerce(1, x.field)
    roots = [x] if x.is_rational() else x.conjugates()
    for r in roots:
        r = abs(r)
        m = m * (r if r > one else one)
    return m


def weil_height(x: FieldElement) -> float:
    """Logarithmic Weil height in nats (``log M(f) / deg f``)."""
    x = FieldElement.coerce(x)
    if not x:
        raise FieldError("the Weil height is not defined at 0 here")
    m = mahler_measure(x)
    if m.is_rational():
        q = m.as_fraction()
        value = math.log(q.numerator) - math.log(q.denominator)
    else:
        iv = m.interval(80)
        value = math.log(float(iv.mid))
    return value / x.degree


@dataclass(frozen=True)
class HeightBoundCheck:
    """One height inequality, with both sides as enclosures of their logarithms."""

    lhs: Interval
    rhs: Interval
    passed: bool
    decided_exactly: bool


def _log_interval(x: FieldElement, bits: int = 64) -> Interval:
    iv = x.interval(bits)
    return Interval(Fraction(math.log(float(iv.lo))) - Fraction(1, 1 << 40),
                    Fraction(math.log(float(iv.hi))) + Fraction(1, 1 << 40))


def _le(small: FieldElement, big: FieldElement) -> tuple[bool, bool]:
    a, b = small.interval(64), big.interval(64)
    if a.hi < b.lo:
        return True, False
    if a.lo > b.hi:
        return False, False
    return small <= big, True


def check_naive_height_bound(x: FieldElement) -> HeightBoundCheck:
    """``log H(x) <= deg(x) * (h(x) + log 2)``.

    Multiplying out, this is ``H <= 2**deg * M``, which is what gets compared.
    """
    x = FieldElement.coerce(x)
    if not x:
        raise FieldError("heights of 0 are not considered")
    H = FieldElement.coerce(naive_height(x), x.field)
    rhs = mahler_measure(x) * (2 ** x.degree)
    ok, exact = _le(H, rhs)
    return HeightBoundCheck(_log_interval(H), _log_interval(rhs), ok, exact)


def check_weil_quotient_bound(alpha: FieldElement, beta: FieldElement) -> HeightBoundCheck:
    """``h(alpha/beta) <= (1/D) * sum over embeddings of log+ max(|s(alpha)|, |s(beta)|)``.

    ``D`` is the field degree.  Raising both sides to the power ``D`` gives
    ``M(alpha/beta)**(D/deg) <= prod max(1, |s(alpha)|, |s(beta)|)``, which is
    compared exactly after an interval pass.
    """
    if not beta:
        raise ZeroDivisionError("beta must be nonzero")
    alpha, beta = FieldElement.coerce(alpha), FieldElement.coerce(beta)
    field = alpha._common(beta)
    alpha, beta = _into(alpha, field), _into(beta, field)
    ratio = alpha / beta
    if not ratio:
        raise FieldError("alpha must be nonzero")
    D = field.degree
    lhs = mahler_measure(ratio) ** (D // ratio.degree)
    one = FieldElement.coerce(1, field)
    rhs = one
    for sa, sb in zip(_embeddings(alpha, D), _embeddings(beta, D)):
        m = max(one, abs(sa), abs(sb))
        rhs = rhs * m
    ok, exact = _le(lhs, rhs)
    return HeightBoundCheck(_log_interval(lhs), _log_interval(rhs), ok, exact)


def _into(x: FieldElement, field: FieldDescriptor) -> FieldElement:
    return x if x.field == field else FieldElement._raw(x._A, x._B, x._D, field)


def _embeddings(x: FieldElement, D: int) -> list[FieldElement]:
    return x.conjugates() if D > 1 else [x]


# ---------------------------------------------------------------------------
# 2x2 matrices


class Matrix2:
    """2x2 matrix over a field of degree <= 2, entries ``((a, b), (c, d))``."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, field: FieldDescriptor | None = None):
        f = field or QQ
        self.a = FieldElement.coerce(a, f)
        self.b = FieldElement.coerce(b, f)
        self.c = FieldElement.coerce(c, f)
        self.d = FieldElement.coerce(d, f)

    @classmethod
    def from_rows(cls, rows, field: FieldDescriptor | None = None) -> "Matrix2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, field)

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FieldElement:
        return self.a + self.d

    def is_sl2(self) -> bool:
        return self.det() == 1

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det == 1:
            return Matrix2(self.d, -self.b, -self.c, self.a)
        inv = det.inverse()
        return Matrix2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def __matmul__(self, other):
        if isinstance(other, Matrix2):
            return Matrix2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        x, y = other
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __neg__(self):
        return Matrix2(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def projective_key(self):
        """Hashable key identifying the matrix up to sign (an element of PSL2)."""
        for e in self.entries():
            if e:
                return self.entries() if e.sign() > 0 else (-self).entries()
        return self.entries()

    def __repr__(self):
        return f"Matrix2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


# ---------------------------------------------------------------------------
# parsing exact literals

_RAT = r"[+-]?\d+(?:\.\d+)?(?:/\d+)?"
_QUAD = re.compile(
    rf"^(?P<a>{_RAT})\s*(?P<op>[+-])\s*(?:(?P<b>\d+(?:\.\d+)?(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<d>\d+)\s*\)$"
)
_PURE_SQRT = re.compile(rf"^(?:(?P<b>{_RAT})\s*\*\s*)?(?P<neg>-)?sqrt\(\s*(?P<d>\d+)\s*\)$")
_PAREN = re.compile(r"^\((?P<inner>[^()]*(?:\([^()]*\))?[^()]*)\)\s*/\s*(?P<c>\d+)$")


def _sqrt_element(d: int, coeff: Fraction) -> FieldElement:
    if d < 0:
        raise FieldError("negative radicand")
    r = math.isqrt(d)
    if r * r == d:
        return FieldElement(coeff * r)
    # pull out square factors so the field is square-free
    k, m = 1, d
    p = 2
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return FieldElement(0, coeff * k, quadratic_field(m))


def parse_field_element(text: str) -> FieldElement:
    """Parse ``r``, ``sqrt(k)``, ``a+b*sqrt(d)`` or ``(a+b*sqrt(d))/c`` with rational a, b."""
    s = text.strip().replace(" ", "")
    m = _PAREN.match(s)
    if m:
        return parse_field_element(m.group("inner")) / int(m.group("c"))
    if re.fullmatch(_RAT, s):
        return FieldElement(Fraction(s))
    m = _PURE_SQRT.match(s)
    if m:
        coeff = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("neg"):
            coeff = -coeff
        return _sqrt_element(int(m.group("d")), coeff)
    m = _QUAD.match(s)
    if m:
        coeff = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("op") == "-":
            coeff = -coeff
        return FieldElement(Fraction(m.group("a"))) + _sqrt_element(int(m.group("d")), coeff)
    raise FieldError(f"malformed field element literal {text!r}")
