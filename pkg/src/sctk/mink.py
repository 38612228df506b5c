"""Minkowski constants of discrete vector sets.

The Minkowski constant of ``Z`` is a quarter of the largest area of a bounded,
convex, origin-symmetric set that misses ``Z``.  Bodies here are open images
``s*T*U`` of the unit square ``(-1, 1)^2`` or the open unit disk ``U`` under a
determinant-one matrix ``T``.

For a fixed ``T`` the best scale is explicit: ``s*T*U`` contains ``z`` exactly
when the gauge of ``U`` at ``T^-1 z`` is below ``s``, so the largest admissible
``s`` is the minimum gauge over ``Z``.  The search ranges over
``T = [[a, b], [0, 1/a]]``.  Every determinant-one matrix is such a ``T`` times
a rotation, so for disks nothing is lost; for squares the family is a genuine
restriction and the result is only an inner approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactfield import FieldElement, Matrix2
from .reals import Real, compare
from .surface import SaddleVector, SurfaceModel, volume

__all__ = [
    "InsufficientRadiusError",
    "ConvexBodyParam",
    "MinkReport",
    "mink_upper_bound",
    "body_avoids",
    "mink_lower_bound_search",
    "mink_exact_lattice",
    "SHAPES",
]

SHAPES = ("square", "disk")


class InsufficientRadiusError(ValueError):
    """The body reaches beyond the radius to which Z was enumerated."""


def _exact(x):
    if isinstance(x, float):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class ConvexBodyParam:
    shape: str
    transform: Matrix2
    scale: object

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"shape must be one of {SHAPES}")
        if self.transform.det() != 1:
            raise ValueError("transform must have determinant 1")
        if Real.of(_exact(self.scale)).interval().hi < 0:
            raise ValueError("scale must be nonnegative")

    @classmethod
    def sheared(cls, shape: str, a, b, s) -> "ConvexBodyParam":
        a, b = _exact(a), _exact(b)
        if a <= 0:
            raise ValueError("a must be positive")
        return cls(shape, Matrix2(a, b, 0, 1 / FieldElement.coerce(a)), _exact(s))

    @property
    def base_area(self) -> Real:
        return Real.of(4) if self.shape == "square" else Real.pi()

    @property
    def area(self) -> Real:
        s = Real.of(_exact(self.scale))
        return s * s * self.base_area

    @property
    def circumradius(self) -> float:
        m = np.array([[float(x) for x in row] for row in self.transform.rows()])
        if self.shape == "square":
            corners = np.array([[1, 1], [1, -1]], dtype=float).T
            r = np.max(np.linalg.norm(m @ corners, axis=0))
        else:
            r = np.linalg.norm(m, 2)
        return float(self.scale) * float(r)

    def apply(self, A: Matrix2) -> "ConvexBodyParam":
        """The image body ``A * self``."""
        return ConvexBodyParam(self.shape, A @ self.transform, self.scale)

    def contains(self, z) -> bool:
        """Exact open-body membership."""
        s = self.scale
        if s == 0:
            return False
        x, y = z
        w1, w2 = self.transform.inverse() @ (x, y)
        if self.shape == "square":
            return abs(w1) < s and abs(w2) < s
        return w1 * w1 + w2 * w2 < FieldElement.coerce(s) * s

    def describe(self) -> dict:
        t = self.transform
        return {"shape": self.shape, "a": t.a, "b": t.b, "c": t.c, "d": t.d, "s": self.scale}


@dataclass(frozen=True)
class MinkReport:
    lower_bound: Real
    upper_bound: Real | None
    witness: ConvexBodyParam | None
    radius: float

    def as_dict(self) -> dict:
        w = None
        if self.witness is not None:
            t = self.witness.transform
            w = {"shape": self.witness.shape, "a": str(t.a), "b": str(t.b), "s": str(self.witness.scale)}
        return {
            "lower_bound": float(self.lower_bound),
            "upper_bound": None if self.upper_bound is None else float(self.upper_bound),
            "witness": w,
            "radius": self.radius,
        }


def mink_upper_bound(surface: SurfaceModel) -> Real:
    """``pi * vol(S)``."""
    return Real.pi() * volume(surface)


def mink_exact_lattice() -> int:
    """The Minkowski constant of the primitive integer vectors (and of Z^2)."""
    return 1


def body_avoids(body: ConvexBodyParam, Z: Sequence[SaddleVector], radius=None) -> bool:
    """Whether no element of ``Z`` lies in the open body.

    ``radius`` is how far ``Z`` was enumerated; a body reaching past it is
    rejected since the answer would not be conclusive.
    """
    if radius is not None and body.circumradius > float(radius) * (1 + 1e-12):
        raise InsufficientRadiusError(
            f"body circumradius {body.circumradius:.6g} exceeds enumeration radius {radius}"
        )
    return not any(body.contains(z) for z in Z)


def _coords(Z: Sequence[SaddleVector]) -> tuple[np.ndarray, np.ndarray]:
    x = np.array([float(v.x) for v in Z], dtype=float)
    y = np.array([float(v.y) for v in Z], dtype=float)
    return x, y


def _best_scale(x, y, shape: str, a: float, b: float, radius: float) -> float:
    w1 = x / a - b * y
    w2 = a * y
    if shape == "square":
        g = np.maximum(np.abs(w1), np.abs(w2))
        circ = math.hypot(a + abs(b), 1 / a)
    else:
        g = np.hypot(w1, w2)
        circ = np.linalg.norm(np.array([[a, b], [0, 1 / a]]), 2)
    s = np.min(g) if len(g) else math.inf
    return float(min(s, radius / circ))


def _grid_scales(x, y, shape: str, log_a: np.ndarray, b: np.ndarray, radius: float) -> np.ndarray:
    A = np.exp(log_a)[:, None, None]
    B = b[None, :, None]
    w1 = x[None, None, :] / A - B * y[None, None, :]
    w2 = A * y[None, None, :]
    if shape == "square":
        g = np.maximum(np.abs(w1), np.abs(w2)).min(axis=2)
        circ = np.hypot(A[..., 0] + np.abs(B[..., 0]), 1 / A[..., 0])
    else:
        g = np.hypot(w1, w2).min(axis=2)
        # largest singular value of [[a, b], [0, 1/a]]
        a2 = A[..., 0] ** 2
        tr = a2 + B[..., 0] ** 2 + 1 / a2
        circ = np.sqrt((tr + np.sqrt(np.maximum(tr * tr - 4, 0))) / 2)
    return np.minimum(g, radius / circ)


def mink_lower_bound_search(
    Z: Sequence[SaddleVector],
    radius,
    grid: int = 41,
    refine: int = 60,
    shapes: Sequence[str] = SHAPES,
    log_a_range: float = 3.0,
    b_range: float = 3.0,
    upper_bound: Real | None = None,
) -> MinkReport:
    """Search shear images of squares and disks for a large body missing ``Z``.

    Grid search over ``(log a, b)``, then coordinatewise refinement of the
    best cell.  The returned witness has been rechecked exactly against all
    of ``Z``, so ``lower_bound`` is a certified lower bound for the
    Minkowski constant of any superset of ``Z`` that agrees with it inside
    ``radius``.
    """
    radius = float(radius)
    x, y = _coords(Z)
    log_a = np.linspace(-log_a_range, log_a_range, grid)
    bs = np.linspace(-b_range, b_range, grid)
    best = None
    for shape in shapes:
        base = 4.0 if shape == "square" else math.pi
        scales = _grid_scales(x, y, shape, log_a, bs, radius)
        i, j = np.unravel_index(np.argmax(scales), scales.shape)
        la, b, s = float(log_a[i]), float(bs[j]), float(scales[i, j])
        step_a = 2 * log_a_range / max(grid - 1, 1)
        step_b = 2 * b_range / max(grid - 1, 1)
        for _ in range(refine):
            improved = False
            for dla, db in ((step_a, 0), (-step_a, 0), (0, step_b), (0, -step_b)):
                cand = _best_scale(x, y, shape, math.exp(la + dla), b + db, radius)
                if cand > s:
                    la, b, s, improved = la + dla, b + db, cand, True
            if not improved:
                step_a /= 2
                step_b /= 2
        value = base * s * s / 4
        if best is None or value > best[0]:
            best = (value, shape, la, b, s)
    if best is None or best[4] <= 0:
        return MinkReport(Real.of(0), upper_bound, None, radius)
    _, shape, la, b, s = best
    a = Fraction(math.exp(la))
    b = Fraction(b)
    shrink = Fraction(1) - Fraction(1, 10**12)
    witness = None
    for _ in range(40):
        body = ConvexBodyParam.sheared(shape, a, b, Fraction(s) * shrink)
        if body_avoids(body, Z):
            witness = body
            break
        shrink *= shrink
    if witness is None:
        return MinkReport(Real.of(0), upper_bound, None, radius)
    lower = witness.area * Fraction(1, 4)
    if upper_bound is not None and compare(lower, upper_bound) > 0:
        raise AssertionError("lower bound exceeds the upper bound")
    return MinkReport(lower, upper_bound, witness, radius)
