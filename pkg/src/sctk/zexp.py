"""Z-expansions: approximating the ray of inverse slope theta by elements of a discrete set Z.

For ``v = (p, q)`` the *height* is ``|q|`` and the horizontal component is
``hor(v) = |q*theta - p|``.  An element of ``Z`` lying in the open half-plane
``x*theta + y > 0`` is a *Z-convergent* when no element of equal or smaller
height has a strictly smaller horizontal component.  :func:`z_expansion`
reads ``Z`` as a stream sorted by height and emits the convergents in order.

Streams
-------
:func:`z_expansion` only needs the stream to contain, for every height bound,
an element minimising ``hor`` among elements of ``Z`` up to that height.  An
omitted element ``w`` is harmless as soon as some element that *is* streamed
has height ``<= |w_2|`` and a strictly smaller ``hor``.  The streams below
exploit that:

* :func:`vectors_stream` -- a finite list (e.g. all vectors in a ball).
* :func:`tessellation_stream` -- sets of the form ``{+-s*w}`` with ``w`` the
  vertices of an invariant ideal tessellation (primitive integer vectors for
  the Farey tessellation).  Only the tiles met by the ray are subdivided: every
  vertex below an edge whose endpoints lie on the same side of the ray is
  ``a*w1 + b*w2`` with ``a, b >= 1`` and so is beaten by ``w1`` or ``w2``.
* :func:`origami_stream` -- traces only directions whose horizontal
  component does not exceed that of the shortest horizontal saddle
  connection, which beats everything outside that strip.
* :func:`origami_tree_stream` -- walks the Stern-Brocot tree of primitive
  directions in height order and drops a subtree once every direction in it
  has a larger horizontal component than an element already emitted.
* :func:`ball_stream` -- all vectors of norm <= R, cut at the largest height
  up to which nothing outside the ball can compete.
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .exactfield import FieldElement, FieldError, parse_field_element
from .interval import Interval
from .reals import PrecisionExhausted, Real, compare, sign
from .surface import (
    FAREY,
    DirectionWalker,
    Origami,
    SaddleVector,
    Tessellation,
    trace_saddle_connections,
)

__all__ = [
    "StreamOrderError",
    "HypothesisError",
    "ConvergentRecord",
    "as_direction",
    "parse_theta",
    "hor_theta",
    "signed_hor",
    "in_positive_half_plane",
    "z_expansion",
    "vectors_stream",
    "tessellation_stream",
    "lattice_stream",
    "origami_stream",
    "origami_tree_stream",
    "ball_stream",
    "termination_check",
    "TerminationReport",
    "sandwich_check",
    "SandwichStep",
    "SandwichReport",
    "last_per_height",
]


class StreamOrderError(ValueError):
    """The stream handed to z_expansion is not sorted by height."""


class HypothesisError(ValueError):
    """Z does not contain a nonzero vector on the x-axis."""


def as_direction(theta) -> Real:
    """Coerce to a :class:`Real` and check that it is positive."""
    theta = Real.of(theta)
    if sign(theta) <= 0:
        raise ValueError("theta must be positive")
    return theta


def parse_theta(text: str) -> Real:
    """``pi``, ``e``, a decimal or ``a/b``, ``sqrt(k)``, ``a+b*sqrt(d)`` or ``(a+b*sqrt(d))/c``."""
    t = text.strip()
    if t == "pi":
        return as_direction(Real.pi())
    if t == "e":
        return as_direction(Real.e())
    try:
        return as_direction(parse_field_element(t))
    except FieldError as exc:
        raise ValueError(f"cannot parse theta {text!r}: {exc}") from None


def signed_hor(v, theta) -> Real:
    x, y = v
    return Real.of(y) * theta - Real.of(x)


def hor_theta(v, theta) -> Real:
    return abs(signed_hor(v, Real.of(theta)))


def in_positive_half_plane(v, theta) -> bool:
    """Whether ``u . v > 0`` for ``u`` the unit vector along the ray, i.e. ``x*theta + y > 0``."""
    x, y = v
    s = sign(Real.of(x) * Real.of(theta) + Real.of(y))
    return s > 0


@dataclass(frozen=True)
class ConvergentRecord:
    index: int
    vector: SaddleVector
    hor: Real
    provisional: bool = False

    @property
    def p(self) -> FieldElement:
        return self.vector.x

    @property
    def q(self) -> FieldElement:
        return self.vector.y

    @property
    def height(self) -> FieldElement:
        return self.vector.height

    def hor_interval(self, bits: int = 64) -> Interval:
        return self.hor.interval(bits)


def z_expansion(
    stream: Iterable[SaddleVector],
    theta,
    max_terms: int | None = None,
    max_height=None,
    complete: bool = False,
) -> list[ConvergentRecord]:
    """Z-convergents of ``theta`` read from a height-sorted stream.

    Elements outside the positive half-plane are skipped.  Elements of equal
    height and equal ``hor`` are all emitted, lexicographically.  Reading stops
    after ``max_terms`` records or at the first element higher than
    ``max_height``.  Records from the last height group are marked
    provisional when the stream ran dry and ``complete`` is false, since a
    truncated stream may be missing competitors at that height.
    """
    theta = as_direction(theta)
    if max_height is not None:
        max_height = FieldElement.coerce(Fraction(max_height) if isinstance(max_height, (int, float)) else max_height)
    records: list[ConvergentRecord] = []
    best: Real | None = None
    group: dict = {}
    group_height = None

    def close_group(provisional: bool) -> bool:
        nonlocal best
        if not group:
            return False
        items = sorted(group.values(), key=lambda t: (t[0].x, t[0].y))
        m_vec, m_hor = items[0]
        for v, h in items[1:]:
            if _hor_cmp(v, h, m_vec, m_hor, theta) < 0:
                m_vec, m_hor = v, h
        if best is not None and compare(m_hor, best) > 0:
            return False
        # nothing can undercut hor = 0, so a record on the ray is final
        if m_hor.is_exact() and m_hor.exact == 0:
            provisional = False
        for v, h in items:
            if v is m_vec or _hor_cmp(v, h, m_vec, m_hor, theta) == 0:
                records.append(ConvergentRecord(len(records), v, h, provisional))
                if max_terms is not None and len(records) >= max_terms:
                    return True
        best = m_hor
        return False

    exhausted = True
    for v in stream:
        h = v.height
        if group_height is not None and h < group_height:
            raise StreamOrderError(f"height {h} after {group_height}")
        if max_height is not None and h > max_height:
            exhausted = False
            break
        if group_height is None or h > group_height:
            if close_group(False):
                return records
            group = {}
            group_height = h
        if v.key in group or not in_positive_half_plane(v, theta):
            continue
        hor = hor_theta(v, theta)
        if best is not None and compare(hor, best) > 0:
            continue
        group[v.key] = (v, hor)
    close_group(exhausted and not complete)
    if max_terms is not None:
        del records[max_terms:]
    return records


def _hor_cmp(v, hv: Real, w, hw: Real, theta: Real) -> int:
    # same second coordinate and same side of the ray: hor differs by p' - p exactly
    if v.y == w.y:
        sv = sign(signed_hor(v, theta))
        sw = sign(signed_hor(w, theta))
        if sv == sw:
            return (sv * (w.x - v.x)).sign()
    return compare(hv, hw)


def last_per_height(records: list[ConvergentRecord]) -> list[ConvergentRecord]:
    """Keep the last record at each height (used for consecutive-pair inequalities)."""
    out: list[ConvergentRecord] = []
    for r in records:
        if out and out[-1].height == r.height:
            out[-1] = r
        else:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# streams


def vectors_stream(vectors: Iterable[SaddleVector]) -> list[SaddleVector]:
    """A finite vector list sorted into stream order (height, then lexicographic)."""
    return sorted(vectors, key=SaddleVector.sort_key)


def tessellation_stream(theta, tessellation: Tessellation = FAREY, max_height=None) -> Iterator[SaddleVector]:
    """Height-sorted stream of the tessellation vectors relevant to the ray of ``theta``.

    Stops after the vertices on the ray when the ray ends at a cusp, or
    once every remaining vertex is higher than ``max_height``.
    """
    theta = as_direction(theta)
    if max_height is not None:
        max_height = FieldElement.coerce(Fraction(max_height) if isinstance(max_height, (int, float)) else max_height)
    one, zero = FieldElement(1), FieldElement(0)
    scales = tessellation.scales
    smallest = min(scales)
    heap: list = []
    pushed: set = set()

    def push(w):
        for s in scales:
            v = SaddleVector(s * w[0], s * w[1])
            if v.key not in pushed:
                pushed.add(v.key)
                heapq.heappush(heap, (v.sort_key(), len(pushed), v))

    def pop_below(limit, inclusive=False):
        while heap:
            k = heap[0][0][0]
            if (k > limit) if inclusive else (k >= limit):
                return
            v = heapq.heappop(heap)[2]
            if max_height is not None and v.height > max_height:
                heap.clear()
                return
            yield v

    e1, e2 = (one, zero), (zero, one)
    push(e1)
    push(e2)
    v1, v2 = e1, e2
    while True:
        new = [(a * v1[0] + b * v2[0], a * v1[1] + b * v2[1]) for a, b in tessellation.subdivision]
        for w in new:
            push(w)
        signs = [sign(signed_hor(w, theta)) for w in new]
        if 0 in signs:
            break
        chain = [v1] + new + [v2]
        signs = [-1] + signs + [1]
        i = next(j for j in range(len(signs) - 1) if signs[j] < 0 < signs[j + 1])
        v1, v2 = chain[i], chain[i + 1]
        floor = smallest * (v1[1] + v2[1])
        yield from pop_below(floor)
        if max_height is not None and floor > max_height:
            break
    # everything left is final
    while heap:
        v = heapq.heappop(heap)[2]
        if max_height is not None and v.height > max_height:
            break
        yield v


def lattice_stream(theta, max_height=None) -> Iterator[SaddleVector]:
    """Stream for Z = primitive integer vectors (the Stern-Brocot descent toward theta)."""
    return tessellation_stream(theta, FAREY, max_height)


def origami_stream(o: Origami, theta, max_height, workers: int = 1) -> list[SaddleVector]:
    """Saddle vectors of ``o`` in the positive half-plane up to ``max_height`` that can matter.

    The shortest horizontal saddle connection ``(k, 0)`` has ``hor = k`` at
    height 0, so only directions with ``hor <= k`` are traced.
    """
    theta = as_direction(theta)
    qmax = int(math.floor(max_height))
    horizontal = trace_saddle_connections(o, max(1, qmax) * 4 + 4, directions=[(1, 0)])
    if not horizontal:
        raise HypothesisError("the origami has no horizontal saddle connection in range")
    h0 = min(v.x for v in horizontal)
    h0f = float(h0)
    tf = float(theta)
    dirs = set()
    for q in range(-qmax, qmax + 1):
        lo = math.floor(q * tf - h0f) - 1
        hi = math.ceil(q * tf + h0f) + 1
        for p in range(lo, hi + 1):
            if (p or q) and math.gcd(p, q) == 1:
                dirs.add((p, q))
    dirs = sorted(dirs)
    radius = math.isqrt(qmax * qmax + (math.ceil(qmax * tf + h0f) + 2) ** 2) + 1
    traced = trace_saddle_connections(o, radius, directions=dirs, workers=workers)
    keep = []
    for v in traced:
        if v.height > qmax or not in_positive_half_plane(v, theta):
            continue
        if compare(hor_theta(v, theta), h0) <= 0:
            keep.append(v)
    return vectors_stream(keep)


def origami_tree_stream(o: Origami, theta, max_height=None) -> Iterator[SaddleVector]:
    """Height-sorted saddle vectors of ``o`` that can be Z-convergents of ``theta``.

    Every saddle vector is ``k*w`` with ``w`` primitive.  Below a tree edge
    whose endpoints lie on the same side of the ray, each direction ``w`` has
    ``hor(w) >= hor(w1) + hor(w2)``, so the subtree is dropped once that sum
    exceeds the smallest ``hor`` already emitted.  Edges outside the positive
    half-plane are dropped outright.
    """
    theta = as_direction(theta)
    walker = DirectionWalker(o)
    hmax = None if max_height is None else Fraction(max_height)
    out: list = []
    edges: list = []
    counter = 0
    best: Real | None = None

    def emit(w, hits: Counter):
        nonlocal counter
        for k, mult in hits.items():
            v = SaddleVector(k * w[0], k * w[1], mult)
            counter += 1
            heapq.heappush(out, (abs(k * w[1]), k * w[0], k * w[1], counter, v))

    def hor_int(w) -> Real:
        return hor_theta(w, theta)

    def push_edge(sx, sy, a1, E1, a2, E2):
        nonlocal counter
        counter += 1
        heapq.heappush(edges, (a1[1] + a2[1], counter, sx, sy, a1, E1, a2, E2))

    for p, q in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        emit((p, q), walker.axis(p, q))
    for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        push_edge(sx, sy, (1, 0), None, (0, 1), None)

    def release(limit):
        nonlocal best
        while out and (limit is None or out[0][0] < limit):
            v = heapq.heappop(out)[-1]
            if hmax is not None and v.height > hmax:
                out.clear()
                return
            if in_positive_half_plane(v, theta):
                h = hor_theta(v, theta)
                if best is None or compare(h, best) < 0:
                    best = h
            yield v

    while edges:
        P = edges[0][0]
        if hmax is not None and P > hmax:
            break
        yield from release(P)
        _, _, sx, sy, a1, E1, a2, E2 = heapq.heappop(edges)
        w1, w2 = (sx * a1[0], sy * a1[1]), (sx * a2[0], sy * a2[1])
        if not in_positive_half_plane(w1, theta) and not in_positive_half_plane(w2, theta):
            continue
        s1, s2 = sign(signed_hor(w1, theta)), sign(signed_hor(w2, theta))
        if s1 * s2 > 0 and best is not None and compare(hor_int(w1) + hor_int(w2), best) > 0:
            continue
        a = (a1[0] + a2[0], a1[1] + a2[1])
        E = walker.mediant(sx, sy, a1, E1, a2, E2)
        w = (sx * a[0], sy * a[1])
        hits = walker.hits(sx, sy, E)
        emit(w, hits)
        if sign(signed_hor(w, theta)) == 0:
            # only multiples of w can follow an element on the ray
            top = a[1] * max(hits)
            hmax = top if hmax is None else min(hmax, top)
        push_edge(sx, sy, a1, E1, a, E)
        push_edge(sx, sy, a, E, a2, E2)
    yield from release(None)


def ball_stream(vectors: Iterable[SaddleVector], theta, radius) -> list[SaddleVector]:
    """Stream order for all vectors of norm <= ``radius``, cut where the ball stops being conclusive.

    With ``h0`` the smallest horizontal component at height 0, an element of
    height ``y`` that could still compete has norm at most
    ``sqrt(y^2 + (y*theta + h0)^2)``; heights whose bound exceeds the radius
    are dropped.
    """
    theta = as_direction(theta)
    vs = vectors_stream(vectors)
    axis = [v for v in vs if v.y == 0 and in_positive_half_plane(v, theta)]
    if not axis:
        raise HypothesisError("no vector on the positive x-axis inside the ball")
    h0 = float(min(abs(v.x) for v in axis))
    t = float(theta) * (1 + 1e-12)
    r = float(radius)
    # largest y with y^2 + (y t + h0)^2 <= r^2
    a, b, c = 1 + t * t, 2 * t * h0, h0 * h0 - r * r
    ymax = (-b + math.sqrt(max(b * b - 4 * a * c, 0.0))) / (2 * a) * (1 - 1e-12)
    return [v for v in vs if float(v.height) <= ymax]


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class TerminationReport:
    terminating: bool
    vector: SaddleVector | None
    height_bound: FieldElement


def termination_check(stream: Iterable[SaddleVector], theta, height_bound) -> TerminationReport:
    """Look for an element of Z on the ray, up to ``height_bound``."""
    theta = as_direction(theta)
    bound = FieldElement.coerce(Fraction(height_bound) if isinstance(height_bound, (int, float)) else height_bound)
    stream = iter(stream)
    buffered = []
    saw_axis = False
    for v in stream:
        buffered.append(v)
        if v.y == 0:
            saw_axis = True
        if v.height > 0:
            break
    if not saw_axis:
        raise HypothesisError("Z has no nonzero vector on the x-axis")

    def chained():
        yield from buffered
        yield from stream

    for r in z_expansion(chained(), theta, max_height=bound, complete=True):
        if r.hor.is_exact() and r.hor.exact == 0:
            return TerminationReport(True, r.vector, bound)
    return TerminationReport(False, None, bound)


@dataclass(frozen=True)
class SandwichStep:
    n: int
    p: FieldElement
    q: FieldElement
    p_next: FieldElement
    q_next: FieldElement
    left: Interval
    middle: Interval
    right: Interval
    left_ok: bool
    right_ok: bool

    @property
    def passed(self) -> bool:
        return self.left_ok and self.right_ok

    @property
    def left_margin(self) -> float:
        return float(self.middle.mid - self.left.mid)

    @property
    def right_margin(self) -> float:
        return float(self.right.mid - self.middle.mid)


@dataclass(frozen=True)
class SandwichReport:
    steps: list[SandwichStep]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def violations(self) -> list[SandwichStep]:
        return [s for s in self.steps if not s.passed]


def sandwich_check(records: list[ConvergentRecord], theta, mu) -> SandwichReport:
    """Check ``|p q' - p' q| / (2 q q') < |theta - p/q| <= mu / (q q')`` for consecutive records.

    Records of height 0 are skipped and only the last record at each height
    is used.  Every comparison is decided exactly or by refined enclosures.
    """
    theta = as_direction(theta)
    mu = Real.of(mu)
    rows = [r for r in last_per_height(records) if r.q > 0]
    steps = []
    for n, (r, s) in enumerate(zip(rows, rows[1:])):
        p, q, p1, q1 = r.p, r.q, s.p, s.q
        left = Real.of(abs(p * q1 - p1 * q) / (2 * q * q1))
        middle = abs(theta - Real.of(p / q))
        right = mu / Real.of(q * q1)
        try:
            left_ok = compare(left, middle) < 0
        except PrecisionExhausted:
            left_ok = False
        try:
            right_ok = compare(middle, right) <= 0
        except PrecisionExhausted:
            right_ok = False
        steps.append(
            SandwichStep(n, p, q, p1, q1, left.interval(), middle.interval(), right.interval(), left_ok, right_ok)
        )
    return SandwichReport(steps)
