import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sctk.exactfield import FieldElement, Matrix2
from sctk.mink import (
    ConvexBodyParam,
    InsufficientRadiusError,
    body_avoids,
    mink_exact_lattice,
    mink_lower_bound_search,
    mink_upper_bound,
)
from sctk.reals import Real, compare
from sctk.surface import (
    GroupOrbitModel,
    SaddleVector,
    l_shaped_origami,
    primitive_lattice,
    theta_group_model,
    torus,
    volume,
)

PI = math.pi


@pytest.fixture(scope="module")
def lattice20():
    return primitive_lattice(20)


def test_upper_bounds():
    assert float(mink_upper_bound(torus())) == pytest.approx(PI)
    assert float(mink_upper_bound(l_shaped_origami())) == pytest.approx(3 * PI)
    m = theta_group_model()
    scaled = GroupOrbitModel(m.field, m.generators, m.seeds, FieldElement(2))
    assert float(mink_upper_bound(scaled)) == pytest.approx(2 * PI)


def test_exact_lattice_constant():
    assert mink_exact_lattice() == 1
    assert compare(mink_exact_lattice(), mink_upper_bound(torus())) < 0
    assert volume(l_shaped_origami()) / 3 == mink_exact_lattice()


def test_body_avoids_examples(lattice20):
    square = ConvexBodyParam.sheared("square", 1, 0, 1)
    assert body_avoids(square, lattice20, 20)
    disk = ConvexBodyParam.sheared("disk", 1, 0, Fraction(11, 10))
    assert not body_avoids(disk, lattice20, 20)
    empty = ConvexBodyParam.sheared("square", 1, 0, 0)
    assert body_avoids(empty, lattice20, 20)


def test_insufficient_radius(lattice20):
    big = ConvexBodyParam.sheared("square", 1, 0, 30)
    with pytest.raises(InsufficientRadiusError):
        body_avoids(big, lattice20, 20)


def test_body_validation():
    with pytest.raises(ValueError):
        ConvexBodyParam("triangle", Matrix2.identity(), 1)
    with pytest.raises(ValueError):
        ConvexBodyParam("square", Matrix2(2, 0, 0, 1), 1)
    with pytest.raises(ValueError):
        ConvexBodyParam.sheared("disk", -1, 0, 1)


def test_search_primitive_lattice(lattice20):
    rep = mink_lower_bound_search(lattice20, 20, upper_bound=mink_upper_bound(torus()))
    assert float(rep.lower_bound) >= 0.99
    assert float(rep.lower_bound) <= 1
    assert body_avoids(rep.witness, lattice20, 20)


def test_search_disks_only(lattice20):
    rep = mink_lower_bound_search(lattice20, 20, shapes=["disk"])
    # ellipses are in the family and beat the round disk (pi/4)
    assert float(rep.lower_bound) >= PI / 4 - 1e-6
    assert float(rep.lower_bound) <= 1
    round_only = mink_lower_bound_search(lattice20, 20, shapes=["disk"], log_a_range=0, b_range=0)
    assert float(round_only.lower_bound) == pytest.approx(PI / 4, rel=1e-9)


def test_sparse_set_has_large_constant():
    Z = [SaddleVector(1, 0), SaddleVector(-1, 0)]
    rep = mink_lower_bound_search(Z, 20)
    assert float(rep.lower_bound) > 10
    assert rep.witness.circumradius <= 20 * (1 + 1e-9)


def test_search_empty_family():
    rep = mink_lower_bound_search(primitive_lattice(5), 5, shapes=[])
    assert rep.lower_bound.exact == 0
    assert rep.witness is None


def test_search_is_deterministic(lattice20):
    a = mink_lower_bound_search(lattice20, 20, grid=21, refine=20)
    b = mink_lower_bound_search(lattice20, 20, grid=21, refine=20)
    assert a.as_dict() == b.as_dict()


sl2_entry = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def sl2(draw):
    a = draw(sl2_entry.filter(lambda x: x != 0))
    b = draw(sl2_entry)
    c = draw(sl2_entry)
    return Matrix2(a, b, c, (1 + b * c) / a)


@given(sl2(), st.sampled_from(["square", "disk"]), sl2_entry, st.fractions(min_value=0, max_value=2, max_denominator=8))
@settings(max_examples=60, deadline=None)
def test_sl2_invariance_exact(A, shape, b, s):
    Z = primitive_lattice(6)
    body = ConvexBodyParam.sheared(shape, 1, b, s)
    AZ = [SaddleVector(*(A @ (v.x, v.y))) for v in Z]
    assert body_avoids(body, Z) == body_avoids(body.apply(A), AZ)


def test_monotonicity(lattice20):
    sub = [v for i, v in enumerate(lattice20) if i % 3 == 0 or (v.y == 0)]
    big = mink_lower_bound_search(lattice20, 20, grid=21, refine=30)
    small = mink_lower_bound_search(sub, 20, grid=21, refine=30)
    # the witness for the full set also avoids the subset
    assert body_avoids(big.witness, sub)
    assert float(small.lower_bound) >= float(big.lower_bound) - 1e-9


def test_report_dict(lattice20):
    rep = mink_lower_bound_search(lattice20, 20, grid=11, refine=5, upper_bound=Real.pi())
    d = rep.as_dict()
    assert set(d) == {"lower_bound", "upper_bound", "witness", "radius"}
    assert set(d["witness"]) == {"shape", "a", "b", "s"}
