"""Arithmetic diagnostics for Veech groups, saddle vectors and expansions.

Domination of conjugates: in a real quadratic field every element has two
real images, itself and its Galois conjugate.  The checks here compare an
element with its images, exactly.  The growth detector evaluates the
transcendence criterion ``limsup log log q_n / n > log(2D - 1)`` on a finite
window of heights, which is all a finite computation can do.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactfield import FieldElement, Matrix2, naive_height
from .surface import GroupOrbitModel, SaddleVector, _group_letters, orbit_vectors
from .zexp import ConvergentRecord

__all__ = [
    "TraceReport",
    "trace_domination",
    "EntryReport",
    "entry_domination",
    "c1_from_parabolic",
    "parabolic_parameter",
    "DominationReport",
    "vector_domination",
    "StabilityReport",
    "vector_domination_stability",
    "group_words",
    "HeightRow",
    "HeightCheckReport",
    "convergent_height_check",
    "GrowthReport",
    "growth_indicator",
]


def _dominates(x: FieldElement, y: FieldElement, factor=1) -> bool:
    """``|x| >= factor * |y|``, by intervals when they separate and exactly otherwise."""
    lhs = abs(FieldElement.coerce(x))
    rhs = abs(FieldElement.coerce(y)) * factor
    a, b = lhs.interval(64), rhs.interval(64)
    if a.lo > b.hi:
        return True
    if a.hi < b.lo:
        return False
    return lhs >= rhs


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class TraceReport:
    matrix: Matrix2
    trace: FieldElement
    conjugates: list[FieldElement]
    kind: str
    dominates: bool

    @property
    def passed(self) -> bool:
        # domination is only claimed for hyperbolic elements
        return self.dominates or self.kind != "hyperbolic"


def _kind(t: FieldElement) -> str:
    a = abs(t)
    if a > 2:
        return "hyperbolic"
    if a == 2:
        return "parabolic"
    return "elliptic"


def trace_domination(M: Matrix2) -> TraceReport:
    """Whether ``|tr M| >= |s(tr M)|`` for every embedding ``s``.

    Only hyperbolic elements are covered by the domination property.
    Parabolic and elliptic elements are classified, their ``dominates`` flag
    is still reported, and they count as passes.
    """
    if M.det() != 1:
        raise ValueError("matrix must have determinant 1")
    t = M.trace()
    conj = t.conjugates()
    ok = all(_dominates(t, c) for c in conj)
    return TraceReport(M, t, conj, _kind(t), ok)


@dataclass(frozen=True)
class EntryCheck:
    i: int
    j: int
    value: FieldElement
    conjugate: FieldElement
    factor: FieldElement
    passed: bool


@dataclass(frozen=True)
class EntryReport:
    checks: list[EntryCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def entry_domination(A: Matrix2, c1) -> EntryReport:
    """Off-diagonal entries must satisfy ``|a| >= c1 |s(a)|``, diagonal ones ``|a| >= c1^2 |s(a)|``."""
    c1 = FieldElement.coerce(c1)
    checks = []
    for (i, j), a in zip(((0, 0), (0, 1), (1, 0), (1, 1)), A.entries()):
        factor = c1 * c1 if i == j else c1
        for s in a.conjugates()[1:] or [a]:
            ok = True if not a else _dominates(a, s, factor)
            checks.append(EntryCheck(i, j, a, s, factor, ok))
    return EntryReport(checks)


def parabolic_parameter(model: GroupOrbitModel) -> FieldElement:
    """``lam`` for the first generator of the form ``[[1, lam], [0, 1]]``."""
    for g in model.generators:
        if g.a == 1 and g.d == 1 and g.c == 0 and g.b:
            return g.b
    raise ValueError("no generator of the form [[1, lam], [0, 1]]")


def c1_from_parabolic(lam) -> FieldElement:
    """``min |s(lam) / lam|`` over all embeddings ``s`` (the identity included)."""
    lam = FieldElement.coerce(lam)
    if not lam:
        raise ValueError("lam must be nonzero")
    return min(abs(s / lam) for s in lam.conjugates())


def group_words(model: GroupOrbitModel, max_length: int) -> list[Matrix2]:
    """Distinct elements (up to sign) given by words of length <= max_length in the generators and inverses."""
    letters = _group_letters(model)
    ident = Matrix2.identity()
    seen = {ident.projective_key()}
    out = [ident]
    frontier = [ident]
    for _ in range(max_length):
        nxt = []
        for m in frontier:
            for g in letters:
                w = m @ g
                key = w.projective_key()
                if key not in seen:
                    seen.add(key)
                    nxt.append(w)
        out.extend(nxt)
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# saddle vectors


@dataclass(frozen=True)
class DominationReport:
    c_emp: FieldElement
    worst_vector: SaddleVector | None
    worst_component: int | None
    count: int

    @property
    def passed(self) -> bool:
        return self.c_emp > 0


def vector_domination(V: Sequence[SaddleVector]) -> DominationReport:
    """Smallest ratio ``|v_i| / |s(v_i)|`` over vectors, nonzero components and embeddings.

    Over a quadratic field ``s`` is the Galois conjugation; over Q the only
    embedding is the identity and every ratio is 1.
    """
    best = None
    worst_v = worst_i = None
    for v in V:
        for i, comp in enumerate((v.x, v.y)):
            if not comp:
                continue
            for s in comp.conjugates()[1:] or [comp]:
                r = abs(comp) / abs(s)
                if best is None or r < best:
                    best, worst_v, worst_i = r, v, i
    if best is None:
        best = FieldElement(1)
    return DominationReport(best, worst_v, worst_i, len(V))


@dataclass(frozen=True)
class StabilityReport:
    radius: float
    small: DominationReport
    large: DominationReport
    tolerance: float

    @property
    def difference(self) -> float:
        return abs(float(self.small.c_emp - self.large.c_emp))

    @property
    def stable(self) -> bool:
        return self.difference <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.small.passed and self.large.passed and self.stable


def vector_domination_stability(model: GroupOrbitModel, radius, tolerance: float = 1e-9) -> StabilityReport:
    """c_emp from the orbit at ``radius`` and at ``2 * radius``."""
    small = vector_domination(orbit_vectors(model, radius))
    large = vector_domination(orbit_vectors(model, 2 * radius))
    return StabilityReport(float(radius), small, large, tolerance)


# ---------------------------------------------------------------------------
# convergent heights


@dataclass(frozen=True)
class HeightRow:
    n: int
    ratio: FieldElement  # p/q
    H: int
    qD: FieldElement
    c2_needed: FieldElement
    passed: bool
    held_out: bool


@dataclass(frozen=True)
class HeightCheckReport:
    c2: FieldElement
    degree: int
    rows: list[HeightRow]
    integral: bool | None

    @property
    def violations(self) -> list[HeightRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.violations


def convergent_height_check(
    records: Sequence[ConvergentRecord],
    D: int,
    m=None,
    holdout: int = 5,
) -> HeightCheckReport:
    """Fit the least ``c2`` with ``H(p/q) <= c2 q^D`` and test it on the last ``holdout`` records.

    Leading height-0 records are dropped.  With ``m`` given, the report also
    says whether every ``m*p`` and ``m*q`` is an algebraic integer.
    """
    rows = list(records)
    while rows and rows[0].q == 0:
        rows.pop(0)
    if any(r.q == 0 for r in rows):
        raise ValueError("a record of height 0 follows one of positive height")
    if len(rows) <= holdout:
        raise ValueError(f"need more than {holdout} records, got {len(rows)}")
    data = []
    for r in rows:
        q = abs(r.q)
        ratio = r.p / r.q
        H = naive_height(ratio) if ratio else 1
        qD = q ** D
        data.append((r.index, ratio, H, qD, H / qD))
    fit = data[:-holdout]
    c2 = max(d[4] for d in fit)
    out = []
    for k, (n, ratio, H, qD, need) in enumerate(data):
        out.append(HeightRow(n, ratio, H, qD, need, H <= c2 * qD, k >= len(fit)))
    integral = None
    if m is not None:
        m = FieldElement.coerce(m)
        integral = all((m * r.p).is_algebraic_integer() and (m * r.q).is_algebraic_integer() for r in rows)
    return HeightCheckReport(c2, D, out, integral)


# ---------------------------------------------------------------------------
# growth detector


def _log(q) -> float:
    if isinstance(q, int):
        return math.log(q)
    if isinstance(q, Fraction):
        return math.log(q.numerator) - math.log(q.denominator)
    if isinstance(q, FieldElement):
        if q.is_rational():
            return _log(q.as_fraction())
        with mpmath.workdps(40):
            return float(mpmath.log(mpmath.mpf(q.a) + mpmath.mpf(q.b) * mpmath.sqrt(q.d)))
    return math.log(q)


@dataclass(frozen=True)
class GrowthReport:
    degree: int
    threshold: float
    margin: float
    rows: list[tuple[int, object, float]]  # (n, q_n, log log q_n / n)
    running_max: list[float]
    exponents: list[tuple[int, float]]  # (n, log q_{n+1} / log q_n)
    flagged: bool

    @property
    def window(self) -> tuple[int, int]:
        return (self.rows[0][0], self.rows[-1][0])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# sctk-format v1\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "q", "loglog_q_over_n", "running_max"])
        for (n, q, v), rm in zip(self.rows, self.running_max):
            w.writerow([n, str(q), repr(v), repr(rm)])
        return buf.getvalue()


def growth_indicator(
    heights: Sequence,
    D: int,
    margin: float = 0.05,
    start: int = 1,
    window: int | None = None,
) -> GrowthReport:
    """Evaluate ``max log log q_n / n > log(2D - 1) + margin`` over the supplied heights.

    ``heights[k]`` is ``q_{start + k}``.  Heights ``<= 1`` are skipped.  With
    ``window`` set, only the last ``window`` usable terms count.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    prev = None
    usable = []
    for k, q in enumerate(heights):
        if prev is not None and q < prev:
            raise ValueError("heights must be nondecreasing")
        prev = q
        if q <= 1:
            continue
        n = start + k
        lq = _log(q)
        usable.append((n, q, lq))
    if len(usable) < 3:
        raise ValueError("fewer than 3 usable heights")
    if window is not None:
        usable = usable[-window:]
    rows = [(n, q, math.log(lq) / n) for n, q, lq in usable]
    running, cur = [], -math.inf
    for _, _, v in rows:
        cur = max(cur, v)
        running.append(cur)
    exps = [(a[0], b[2] / a[2]) for a, b in zip(usable, usable[1:]) if a[2] > 0]
    threshold = math.log(2 * D - 1)
    return GrowthReport(D, threshold, margin, rows, running, exps, running[-1] > threshold + margin)
