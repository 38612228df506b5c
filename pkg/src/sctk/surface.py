"""Translation surfaces and their saddle connection vectors.

Two models are supported:

* :class:`Origami` -- a square-tiled surface given by the right-neighbour and
  top-neighbour permutations ``h`` and ``v`` of its unit squares.  Saddle
  connections are found by tracing straight rays square by square.
* :class:`GroupOrbitModel` -- a Veech surface described by generators of its
  Veech group and the saddle connection vectors in one direction of each
  orbit of parabolic directions.  Saddle connection vectors are the orbit of
  the seeds.

Vertices of an origami are labelled by the square whose bottom-left corner
they are; the top-right corner of square ``s`` is the bottom-left corner of
both ``v(h(s))`` and ``h(v(s))``, and identifying those labels produces the
vertex classes.  A class made of ``k`` labels has cone angle ``2*pi*k``.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exactfield import QQ, FieldDescriptor, FieldElement, Matrix2, golden_ratio, quadratic_field

__all__ = [
    "SurfaceError",
    "NotTransitiveError",
    "Origami",
    "SingularityData",
    "SaddleVector",
    "Tessellation",
    "GroupOrbitModel",
    "validate_origami",
    "volume",
    "trace_saddle_connections",
    "trace_ray",
    "DirectionWalker",
    "orbit_vectors",
    "closure_defect",
    "primitive_lattice",
    "shortest_vector_check",
    "ShortestVectorReport",
    "torus",
    "l_shaped_origami",
    "theta_group_model",
    "golden_l_model",
    "FAREY",
]

MARKED_POLICIES = ("cone-points-only", "all-vertices")


class SurfaceError(ValueError):
    pass


class NotTransitiveError(SurfaceError):
    """The permutations do not act transitively: the surface is disconnected."""


# ---------------------------------------------------------------------------
# origamis


def _check_perm(images: Sequence[int], n: int, name: str) -> tuple[int, ...]:
    images = tuple(images)
    if len(images) != n or sorted(images) != list(range(n)):
        raise SurfaceError(f"{name} is not a permutation of 1..{n}")
    return images


def _perm_from_cycles(cycles, n: int, name: str) -> tuple[int, ...]:
    images = list(range(n))
    seen = set()
    for cyc in cycles:
        cyc = [int(c) for c in cyc]
        for c in cyc:
            if not 1 <= c <= n or c in seen:
                raise SurfaceError(f"{name}: bad or repeated entry {c} in cycle {cyc}")
            seen.add(c)
        for i, c in enumerate(cyc):
            images[c - 1] = cyc[(i + 1) % len(cyc)] - 1
    return tuple(images)


def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class Origami:
    """Square-tiled surface; ``h[i]`` / ``v[i]`` are the right / top neighbours of square ``i`` (0-based)."""

    n: int
    h: tuple[int, ...]
    v: tuple[int, ...]
    marked_policy: str = "cone-points-only"

    def __post_init__(self):
        if self.n < 1:
            raise SurfaceError("an origami needs at least one square")
        object.__setattr__(self, "h", _check_perm(self.h, self.n, "h"))
        object.__setattr__(self, "v", _check_perm(self.v, self.n, "v"))
        if self.marked_policy not in MARKED_POLICIES:
            raise SurfaceError(f"unknown marked_policy {self.marked_policy!r}")

    @classmethod
    def from_cycles(cls, n: int, h_cycles, v_cycles, marked_policy: str = "cone-points-only") -> "Origami":
        """Build from 1-based cycle notation, e.g. ``h=[(1, 2)]``; omitted points are fixed."""
        return cls(n, _perm_from_cycles(h_cycles, n, "h"), _perm_from_cycles(v_cycles, n, "v"), marked_policy)

    @classmethod
    def from_images(cls, h, v, marked_policy: str = "cone-points-only") -> "Origami":
        """Build from 1-based image lists ``h[i-1] = h(i)``."""
        n = len(h)
        return cls(n, tuple(int(x) - 1 for x in h), tuple(int(x) - 1 for x in v), marked_policy)

    def cycles(self, which: str) -> list[tuple[int, ...]]:
        perm = self.h if which == "h" else self.v
        out, seen = [], set()
        for i in range(self.n):
            if i in seen:
                continue
            cyc = []
            j = i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = perm[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


@dataclass(frozen=True)
class SingularityData:
    """Vertex classes (1-based labels of squares whose bottom-left corner lies there)."""

    classes: tuple[tuple[int, ...], ...]
    cone_angles: tuple[int, ...]  # multiples of 2*pi
    genus: int
    marked: tuple[bool, ...]

    def cone_point_count(self) -> int:
        return sum(1 for k in self.cone_angles if k > 1)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _is_transitive(o: Origami) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in (o.h[i], o.v[i]):
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == o.n


def _vertex_labels(o: Origami) -> list[int]:
    uf = _UnionFind(o.n)
    for s in range(o.n):
        uf.union(o.v[o.h[s]], o.h[o.v[s]])
    return [uf.find(s) for s in range(o.n)]


def validate_origami(o: Origami) -> SingularityData:
    if not _is_transitive(o):
        raise NotTransitiveError(f"h and v do not act transitively on {o.n} squares")
    labels = _vertex_labels(o)
    groups: dict[int, list[int]] = {}
    for s, lab in enumerate(labels):
        groups.setdefault(lab, []).append(s + 1)
    classes = tuple(tuple(g) for _, g in sorted(groups.items()))
    angles = tuple(len(c) for c in classes)
    n_vertices = len(classes)
    # V - E + F with E = 2n, F = n
    euler = n_vertices - o.n
    genus = (2 - euler) // 2
    if sum(k - 1 for k in angles) != 2 * genus - 2:
        raise SurfaceError("vertex data inconsistent with Gauss-Bonnet")
    if o.marked_policy == "all-vertices":
        marked = tuple(True for _ in angles)
    else:
        marked = tuple(k > 1 for k in angles)
    return SingularityData(classes, angles, genus, marked)


# ---------------------------------------------------------------------------
# saddle vectors


@dataclass(frozen=True, eq=True)
class SaddleVector:
    """Holonomy vector of a saddle connection, with its multiplicity."""

    x: FieldElement
    y: FieldElement
    multiplicity: int = field(default=1, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "x", FieldElement.coerce(self.x))
        object.__setattr__(self, "y", FieldElement.coerce(self.y))
        if not self.x and not self.y:
            raise SurfaceError("the zero vector is not a saddle connection vector")

    @property
    def height(self) -> FieldElement:
        return abs(self.y)

    @property
    def norm2(self) -> FieldElement:
        return self.x * self.x + self.y * self.y

    @property
    def norm(self) -> float:
        return math.sqrt(float(self.norm2))

    @property
    def key(self) -> tuple[FieldElement, FieldElement]:
        return (self.x, self.y)

    def sort_key(self):
        return (self.height, self.x, self.y)

    def __neg__(self):
        return SaddleVector(-self.x, -self.y, self.multiplicity)

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"SaddleVector({self.x}, {self.y})"


def _sorted_vectors(vectors: Iterable[SaddleVector]) -> list[SaddleVector]:
    return sorted(vectors, key=SaddleVector.sort_key)


def _within(norm2: FieldElement, radius) -> bool:
    r = FieldElement.coerce(Fraction(radius) if isinstance(radius, (int, float)) else radius)
    return norm2 <= r * r


# ---------------------------------------------------------------------------
# geodesic tracing on origamis


def _corner(o: Origami, labels: list[int], s: int, right: bool, top: bool) -> int:
    if right:
        s = o.h[s]
    if top:
        s = o.v[s]
    return labels[s]


def _moves(p: int, q: int) -> list[int]:
    """Crossing sequence of the segment from (0,0) to (|p|,|q|): 0 = vertical line, 1 = horizontal line."""
    ap, aq = abs(p), abs(q)
    out = []
    i = j = 1
    while i < ap or j < aq:
        # next vertical line x = i at t = i/ap, horizontal y = j at t = j/aq
        if j >= aq or (i < ap and i * aq < j * ap):
            out.append(0)
            i += 1
        else:
            out.append(1)
            j += 1
    return out


class _Tracer:
    def __init__(self, o: Origami):
        self.o = o
        self.sing = validate_origami(o)
        self.labels = _vertex_labels(o)
        marked_labels = {c[0] - 1 for c, m in zip(self.sing.classes, self.sing.marked) if m}
        self.marked = {self.labels[s] for s in marked_labels}
        self.hinv = _inverse(o.h)
        self.vinv = _inverse(o.v)

    def plan(self, p: int, q: int):
        o = self.o
        sx = (p > 0) - (p < 0)
        sy = (q > 0) - (q < 0)
        H = o.h if sx >= 0 else self.hinv
        V = o.v if sy >= 0 else self.vinv
        steps = [H if m == 0 else V for m in _moves(p, q)]
        if sy == 0:
            start, end = (sx < 0, False), (sx > 0, False)
            cont = lambda e: H[e]  # noqa: E731
        elif sx == 0:
            start, end = (False, sy < 0), (False, sy > 0)
            cont = lambda e: V[e]  # noqa: E731
        else:
            start, end = (sx < 0, sy < 0), (sx > 0, sy > 0)
            cont = lambda e: V[H[e]]  # noqa: E731
        return steps, start, end, cont

    def starts(self, start) -> list[int]:
        return [s for s in range(self.o.n) if _corner(self.o, self.labels, s, *start) in self.marked]

    def ray(self, s: int, p: int, q: int, max_k: int):
        """Yield ``(k, vertex_label, marked)`` for each lattice point the ray from ``s`` passes."""
        steps, _, end, cont = self.plan(p, q)
        for k in range(1, max_k + 1):
            e = s
            for perm in steps:
                e = perm[e]
            lab = _corner(self.o, self.labels, e, *end)
            yield k, lab, lab in self.marked
            s = cont(e)

    def direction(self, p: int, q: int, r2: Fraction) -> list[tuple[int, int, int]]:
        """Holonomies (kp, kq, 1) found from every marked start in primitive direction (p, q)."""
        max_k = math.isqrt(math.floor(r2 / (p * p + q * q)))
        if max_k == 0:
            return []
        _, start, _, _ = self.plan(p, q)
        hits = []
        for s in self.starts(start):
            for k, _, marked in self.ray(s, p, q, max_k):
                if marked:
                    hits.append((k * p, k * q))
                    break
        return hits


class DirectionWalker:
    """Saddle connections of an origami one primitive direction at a time.

    For a direction ``(p, q)`` with ``p, q != 0`` let ``E`` send a square ``s``
    to the square in which the segment of holonomy ``(p, q)`` leaving the
    matching corner of ``s`` ends.  Along the Stern-Brocot tree ``E`` of a
    mediant is ``E2 . J . E1``: the segment passes its lower parent ``w1`` on
    the upper side, so it steps up and then across (``J = H . V``) before
    following ``w2``.  Each tree node therefore costs O(n) instead of
    O(n * (|p| + |q|)).  Directions are handled quadrant by quadrant through
    ``H = h or h^-1`` and ``V = v or v^-1``.
    """

    def __init__(self, o: Origami):
        self.o = o
        self.tracer = _Tracer(o)
        self.identity = tuple(range(o.n))
        self._quads: dict = {}

    def _quad(self, sx: int, sy: int):
        key = (sx, sy)
        if key not in self._quads:
            t = self.tracer
            H = self.o.h if sx > 0 else t.hinv
            V = self.o.v if sy > 0 else t.vinv
            J = tuple(H[V[s]] for s in range(self.o.n))
            self._quads[key] = (H, V, J, t.starts((sx < 0, sy < 0)), (sx > 0, sy > 0))
        return self._quads[key]

    def mediant(self, sx: int, sy: int, w1, E1, w2, E2) -> tuple[int, ...]:
        """``E`` for ``w1 + w2`` given Farey neighbours (absolute values, ``w1`` of smaller slope)."""
        H, V, J, _, _ = self._quad(sx, sy)
        if w1 == (1, 0) and w2 == (0, 1):
            return self.identity
        if w1 == (1, 0):
            return tuple(H[e] for e in E2)
        if w2 == (0, 1):
            return tuple(V[e] for e in E1)
        return tuple(E2[J[e]] for e in E1)

    def hits(self, sx: int, sy: int, E) -> Counter:
        """Multiplicities of ``k`` such that ``k*(p, q)`` is a saddle connection (p, q from ``E``)."""
        H, V, _, starts, end = self._quad(sx, sy)
        o, labels, marked = self.o, self.tracer.labels, self.tracer.marked
        out: Counter = Counter()
        for s in starts:
            cur = s
            for k in range(1, o.n + 1):
                e = E[cur]
                if _corner(o, labels, e, *end) in marked:
                    out[k] += 1
                    break
                cur = V[H[e]]
        return out

    def axis(self, p: int, q: int) -> Counter:
        """The same for one of the four axis directions."""
        r2 = Fraction(self.o.n * self.o.n)
        return Counter(max(abs(x), abs(y)) for x, y in self.tracer.direction(p, q, r2))


def _primitive_directions(radius) -> list[tuple[int, int]]:
    r2 = Fraction(radius) ** 2
    bound = math.floor(radius)
    out = []
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p or q) and math.gcd(p, q) == 1 and p * p + q * q <= r2:
                out.append((p, q))
    return out


def _trace_chunk(args):
    o, dirs, r2 = args
    tracer = _Tracer(o)
    out = []
    for p, q in dirs:
        out.extend(tracer.direction(p, q, r2))
    return out


def trace_saddle_connections(
    o: Origami,
    radius,
    directions: Iterable[tuple[int, int]] | None = None,
    workers: int = 1,
) -> list[SaddleVector]:
    """All saddle connection holonomies of length <= radius, with multiplicities.

    ``directions`` restricts tracing to the given primitive integer directions
    (the result is then complete only for vectors in those directions).
    """
    if radius <= 0:
        raise SurfaceError("radius must be positive")
    validate_origami(o)
    r2 = Fraction(radius) ** 2
    if directions is None:
        dirs = _primitive_directions(radius)
    else:
        dirs = []
        for p, q in directions:
            if math.gcd(p, q) != 1:
                raise SurfaceError(f"direction {(p, q)} is not primitive")
            dirs.append((p, q))
    if workers > 1 and len(dirs) > 64:
        chunks = [dirs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_trace_chunk, [(o, c, r2) for c in chunks]))
        hits = [h for part in parts for h in part]
    else:
        hits = _trace_chunk((o, dirs, r2))
    counts = Counter(hits)
    return _sorted_vectors(SaddleVector(x, y, m) for (x, y), m in counts.items())


def trace_ray(o: Origami, start_square: int, direction: tuple[int, int], max_k: int):
    """Replay one ray: list of ``(k, vertex label, marked)`` at the lattice points ``k*direction``.

    ``start_square`` is 1-based; the ray leaves the corner of that square that
    the direction points away from.
    """
    p, q = direction
    if math.gcd(p, q) != 1:
        raise SurfaceError("direction must be primitive")
    tracer = _Tracer(o)
    return list(tracer.ray(start_square - 1, p, q, max_k))


def primitive_lattice(radius) -> list[SaddleVector]:
    """Primitive integer vectors of Euclidean norm in (0, radius]."""
    if radius <= 0:
        raise SurfaceError("radius must be positive")
    return _sorted_vectors(SaddleVector(p, q) for p, q in _primitive_directions(radius))


# ---------------------------------------------------------------------------
# group-orbit models


@dataclass(frozen=True)
class Tessellation:
    """Subdivision rule of an invariant ideal tessellation, used for fast directional streams.

    Each tile on the positive side of the edge ``(v1, v2)`` has the extra
    vertices ``alpha*v1 + beta*v2`` for the listed ``(alpha, beta)``.  The
    vertex vectors of the tessellation, scaled by each entry of ``scales`` and
    by +-1, are the saddle connection vectors.
    """

    subdivision: tuple[tuple[FieldElement, FieldElement], ...]
    scales: tuple[FieldElement, ...] = (FieldElement(1),)

    def __post_init__(self):
        sub = tuple((FieldElement.coerce(a), FieldElement.coerce(b)) for a, b in self.subdivision)
        object.__setattr__(self, "subdivision", sub)
        object.__setattr__(self, "scales", tuple(FieldElement.coerce(s) for s in self.scales))
        chain = [(FieldElement(1), FieldElement(0))] + list(sub) + [(FieldElement(0), FieldElement(1))]
        for (a1, b1), (a2, b2) in zip(chain, chain[1:]):
            if a1 * b2 - b1 * a2 != 1:
                raise SurfaceError("consecutive tile vertices must span determinant 1")
        if any(a < 1 or b < 1 for a, b in sub):
            raise SurfaceError("subdivision coefficients must be >= 1")
        if not self.scales or any(s <= 0 for s in self.scales):
            raise SurfaceError("scales must be positive")


FAREY = Tessellation(((FieldElement(1), FieldElement(1)),))


@dataclass
class GroupOrbitModel:
    field: FieldDescriptor
    generators: list[Matrix2]
    seeds: list[tuple[FieldElement, FieldElement]]
    volume: FieldElement
    tessellation: Tessellation | None = None
    name: str = "orbit"

    def __post_init__(self):
        self.seeds = [(FieldElement.coerce(x, self.field), FieldElement.coerce(y, self.field)) for x, y in self.seeds]
        self.volume = FieldElement.coerce(self.volume, self.field)
        if not self.seeds:
            raise SurfaceError("at least one seed vector is required")
        if any(not x and not y for x, y in self.seeds):
            raise SurfaceError("seed vectors must be nonzero")
        if self.volume <= 0:
            raise SurfaceError("volume must be positive")

    def check_generators(self):
        for g in self.generators:
            if g.det() != 1:
                raise SurfaceError(f"generator {g} has determinant {g.det()}, not 1")

    def in_standard_form(self) -> bool:
        return any(y == 0 and x > 0 for x, y in self.seeds)


SurfaceModel = Union[Origami, GroupOrbitModel]


def volume(surface: SurfaceModel) -> FieldElement:
    if isinstance(surface, Origami):
        return FieldElement(surface.n)
    return surface.volume


def _group_letters(model: GroupOrbitModel) -> list[Matrix2]:
    model.check_generators()
    letters: list[Matrix2] = []
    seen = set()
    for g in model.generators:
        for m in (g, g.inverse()):
            if m.entries() not in seen:
                seen.add(m.entries())
                letters.append(m)
    return letters


def orbit_vectors(
    model: GroupOrbitModel,
    radius,
    depth: int | None = None,
    explore_radius=None,
) -> list[SaddleVector]:
    """Distinct vectors ``+-g*s`` of norm <= radius, ``g`` a word of length <= depth.

    The breadth-first search only passes through vectors of norm at most
    ``explore_radius`` (default ``radius``); ``depth=None`` runs until no new
    vector appears.  Use :func:`closure_defect` to check the result.
    """
    if radius <= 0:
        raise SurfaceError("radius must be positive")
    if depth is not None and depth < 0:
        raise SurfaceError("depth must be >= 0")
    letters = _group_letters(model)
    explore = radius if explore_radius is None else explore_radius
    seen: set[tuple[FieldElement, FieldElement]] = set()
    frontier = []
    for x, y in model.seeds:
        for v in ((x, y), (-x, -y)):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    level = 0
    while frontier and (depth is None or level < depth):
        nxt = []
        for v in frontier:
            for g in letters:
                w = g @ v
                if w in seen:
                    continue
                if not _within(w[0] * w[0] + w[1] * w[1], explore):
                    continue
                seen.add(w)
                nxt.append(w)
        frontier = nxt
        level += 1
    return _sorted_vectors(SaddleVector(x, y) for x, y in seen if _within(x * x + y * y, radius))


def closure_defect(model: GroupOrbitModel, vectors: Iterable[SaddleVector], radius) -> list[SaddleVector]:
    """Images ``g*v`` (g a generator or inverse) inside the radius that are missing from ``vectors``."""
    letters = _group_letters(model)
    have = {v.key for v in vectors}
    missing = set()
    for key in have:
        for g in letters:
            w = g @ key
            if w not in have and _within(w[0] * w[0] + w[1] * w[1], radius):
                missing.add(w)
    return _sorted_vectors(SaddleVector(x, y) for x, y in missing)


# ---------------------------------------------------------------------------
# shortest vector


@dataclass(frozen=True)
class ShortestVectorReport:
    shortest: float
    vector: SaddleVector
    bound: float
    passed: bool


def enumerate_vectors(surface: SurfaceModel, radius) -> list[SaddleVector]:
    if isinstance(surface, Origami):
        return trace_saddle_connections(surface, radius)
    return orbit_vectors(surface, radius)


def shortest_vector_check(surface: SurfaceModel, radius=None) -> ShortestVectorReport:
    """Compare the shortest enumerated saddle vector with ``sqrt(2 vol)``, exactly."""
    vol = volume(surface)
    bound2 = 2 * vol
    if radius is None:
        radius = math.isqrt(math.ceil(float(bound2))) + 1
    if FieldElement.coerce(Fraction(radius)) ** 2 < bound2:
        raise SurfaceError("enumeration radius is below sqrt(2 vol)")
    vectors = enumerate_vectors(surface, radius)
    if not vectors:
        raise SurfaceError("no saddle connection found up to sqrt(2 vol): enumeration is broken")
    best = min(vectors, key=lambda v: v.norm2)
    return ShortestVectorReport(best.norm, best, math.sqrt(float(bound2)), best.norm2 <= bound2)


# ---------------------------------------------------------------------------
# presets


def torus() -> Origami:
    """The unit square torus with its single (regular) vertex marked."""
    return Origami(1, (0,), (0,), "all-vertices")


def l_shaped_origami() -> Origami:
    """Three squares in an L: square 2 right of square 1, square 3 on top of square 1."""
    return Origami.from_cycles(3, [(1, 2)], [(1, 3)])


def theta_group_model() -> GroupOrbitModel:
    """Orbit model of the three-square L: Veech group generated by z+2 and -1/z."""
    return GroupOrbitModel(
        field=QQ,
        generators=[Matrix2(1, 2, 0, 1), Matrix2(0, -1, 1, 0)],
        seeds=[(1, 0), (0, 1), (1, 1)],
        volume=FieldElement(3),
        tessellation=FAREY,
        name="theta",
    )


def golden_l_model() -> GroupOrbitModel:
    """The golden L: a phi x phi square with 1 x phi and phi x 1 arms on its right and top.

    Horizontal and vertical cylinders all have modulus 1/phi, which gives the
    parabolics ``[[1, phi], [0, 1]]`` and ``[[1, 0], [phi, 1]]``; cutting and
    regluing an arm shows the quarter turn is an affine automorphism too.  The
    horizontal saddle connections have holonomy (1, 0) and (phi, 0).
    """
    k = quadratic_field(5)
    phi = golden_ratio()
    one, zero = FieldElement(1, 0, k), FieldElement(0, 0, k)
    return GroupOrbitModel(
        field=k,
        generators=[
            Matrix2(one, phi, zero, one),
            Matrix2(one, zero, phi, one),
            Matrix2(zero, -one, one, zero),
        ],
        seeds=[(one, zero), (phi, zero)],
        volume=3 * phi + 1,
        tessellation=Tessellation(((phi, one), (phi, phi), (one, phi)), scales=(one, phi)),
        name="golden-L",
    )
