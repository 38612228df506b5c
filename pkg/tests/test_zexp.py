import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles.rcf import convergents as rcf_convergents
from sctk.exactfield import FieldElement, golden_ratio, parse_field_element
from sctk.reals import Real
from sctk.surface import (
    Origami,
    SaddleVector,
    golden_l_model,
    l_shaped_origami,
    orbit_vectors,
    primitive_lattice,
    torus,
    validate_origami,
)
from sctk.zexp import (
    HypothesisError,
    StreamOrderError,
    ball_stream,
    hor_theta,
    in_positive_half_plane,
    lattice_stream,
    origami_stream,
    origami_tree_stream,
    parse_theta,
    sandwich_check,
    tessellation_stream,
    termination_check,
    vectors_stream,
    z_expansion,
)


def pq(records):
    return [(int(r.p.as_fraction()), int(r.q.as_fraction())) for r in records]


def distinct(seq):
    out = []
    for q in seq:
        if not out or out[-1] != q:
            out.append(q)
    return out


# ---------------------------------------------------------------------------
# hor and the half-plane


def test_hor_examples():
    pi = Real.pi()
    assert float(hor_theta(SaddleVector(3, 1), pi)) == pytest.approx(0.14159265358979312)
    assert float(hor_theta(SaddleVector(22, 7), pi)) == pytest.approx(0.00885142487, rel=1e-9)
    assert hor_theta(SaddleVector(22, 7), Fraction(22, 7)).exact == 0
    phi = golden_ratio()
    assert hor_theta(SaddleVector(2, 1), phi).exact == 2 - phi


def test_half_plane():
    for theta in (Fraction(1, 3), Real.pi(), golden_ratio()):
        assert in_positive_half_plane(SaddleVector(1, 0), theta)
        assert not in_positive_half_plane(SaddleVector(-1, 0), theta)
        assert in_positive_half_plane(SaddleVector(0, 1), theta)
    # exactly orthogonal to u = (theta, 1)
    assert not in_positive_half_plane(SaddleVector(-1, 3), Fraction(3))


@pytest.mark.parametrize("text", ["0", "-1", "-sqrt(2)", "1+1*sqrt(5)/2", "tau"])
def test_parse_theta_rejects(text):
    with pytest.raises(ValueError):
        parse_theta(text)


# ---------------------------------------------------------------------------
# oracle equivalence (primitive Z^2)


def test_pi_first_terms():
    theta = parse_theta("pi")
    got = pq(z_expansion(lattice_stream(theta), theta, max_terms=6))
    assert got == [(1, 0), (3, 1), (22, 7), (333, 106), (355, 113), (103993, 33102)]


def test_golden_ratio_terms():
    theta = golden_ratio()
    got = pq(z_expansion(lattice_stream(theta), theta, max_terms=8))
    assert got == [(1, 0), (2, 1), (3, 2), (5, 3), (8, 5), (13, 8), (21, 13), (34, 21)]


@pytest.mark.parametrize("name", ["pi", "sqrt(2)", "(1+sqrt(5))/2", "e"])
def test_constants_match_frozen_rcf(rcf_oracle, name):
    theta = parse_theta(name)
    got = pq(z_expansion(lattice_stream(theta), theta, max_terms=16))[1:]
    want = [tuple(c) for c in rcf_oracle[name]]
    # same convergents, with the duplicate denominator of a_1 = 1 collapsed to the better one
    assert [q for _, q in got] == distinct(q for _, q in want)[:15]
    assert set(got) <= set(want)


def test_random_quadratics_match_frozen_rcf(rcf_oracle):
    table = rcf_oracle["random_quadratics"]
    assert len(table) == 25
    for text, conv in table.items():
        theta = parse_field_element(text)
        got = [q for _, q in pq(z_expansion(lattice_stream(theta), theta, max_terms=16))[1:]]
        assert got == distinct(q for _, q in conv)[:15], text


def test_frozen_oracle_is_reproducible(rcf_oracle):
    import mpmath

    with mpmath.workdps(400):
        assert [list(c) for c in rcf_convergents(mpmath.pi, 20)] == rcf_oracle["pi"]


# ---------------------------------------------------------------------------
# brute-force Conv_Z for rational directions


def brute_conv(Z, theta):
    """Conv_Z(theta) straight from the definition, in stream order."""
    pos = [v for v in Z if v[0] * theta.denominator + v[1] * theta.numerator > 0]

    def hor(v):
        return abs(v[1] * theta - v[0])

    # min hor over all w with |w_2| <= h, for each height h present
    by_height = {}
    for w in pos:
        h = abs(w[1])
        by_height[h] = min(by_height.get(h, hor(w)), hor(w))
    bound, running = {}, None
    for h in sorted(by_height):
        running = by_height[h] if running is None else min(running, by_height[h])
        bound[h] = running
    out = [v for v in pos if hor(v) <= bound[abs(v[1])]]
    return sorted(out, key=lambda v: (abs(v[1]), v[0], v[1]))


def box(max_height, theta):
    """Primitive vectors up to the height with hor <= 2.

    (1, 0) has hor 1, so dropping vectors with hor > 2 changes neither the
    convergents nor the minima they are compared with.
    """
    out = []
    for q in range(-max_height, max_height + 1):
        c = q * theta
        for p in range(math.floor(c) - 2, math.ceil(c) + 3):
            if (p, q) != (0, 0) and math.gcd(p, q) == 1 and abs(c - p) <= 2:
                out.append((p, q))
    return out


@given(st.integers(1, 60), st.integers(1, 25))
@settings(max_examples=60, deadline=None)
def test_brute_force_rational(a, b):
    theta = Fraction(a, b)
    H = 50
    Z = box(H, theta)
    want = brute_conv(Z, theta)
    got = pq(z_expansion(lattice_stream(theta, max_height=H), theta, max_height=H, complete=True))
    assert got == want


@given(st.integers(1, 40), st.integers(1, 12), st.integers(0, 9))
@settings(max_examples=30, deadline=None)
def test_brute_force_nonprimitive_sets(a, b, seed):
    # Z need not be a lattice: a random subset of primitive vectors containing (1, 0)
    theta = Fraction(a, b)
    rng = random.Random(seed)
    H = 30
    Z = [v for v in box(H, theta) if v in ((1, 0), (-1, 0)) or rng.random() < 0.6]
    want = brute_conv(Z, theta)
    stream = vectors_stream(SaddleVector(p, q) for p, q in Z)
    got = pq(z_expansion(stream, theta, complete=True))
    assert got == want


# ---------------------------------------------------------------------------
# record properties


@st.composite
def quadratic_irrationals(draw):
    d = draw(st.sampled_from([2, 3, 5, 7, 11, 13]))
    a = draw(st.integers(-10, 10))
    b = draw(st.integers(1, 5))
    c = draw(st.integers(1, 6))
    x = FieldElement(Fraction(a, c), Fraction(b, c), parse_field_element(f"sqrt({d})").field)
    return x if x > 0 else x + (int(-float(x)) + 1)


@given(quadratic_irrationals())
@settings(max_examples=40, deadline=None)
def test_record_properties_irrational(theta):
    records = z_expansion(lattice_stream(theta), theta, max_terms=12)
    hors = [r.hor for r in records]
    assert all(a.exact > b.exact for a, b in zip(hors, hors[1:]))
    heights = [r.height for r in records]
    assert heights == sorted(heights)
    assert all(h > 0 for h in heights[1:])


def test_rational_ties_at_different_heights():
    # (3,1) and (19,6) both have hor 1/7 for theta = 22/7; the definition uses <=
    theta = Fraction(22, 7)
    got = pq(z_expansion(lattice_stream(theta), theta))
    assert got == [(1, 0), (3, 1), (19, 6), (22, 7)]
    assert z_expansion(lattice_stream(theta), theta)[-1].hor.exact == 0


def test_equal_height_ties_lexicographic():
    theta = Fraction(1, 2)
    Z = [SaddleVector(1, 0), SaddleVector(0, 1), SaddleVector(1, 1)]
    got = pq(z_expansion(vectors_stream(Z), theta, complete=True))
    assert got == [(1, 0), (0, 1), (1, 1)]


def test_provisional_flag():
    theta = golden_ratio()
    recs = z_expansion(lattice_stream(theta, max_height=5), theta)
    assert pq(recs)[-1] == (8, 5)
    assert recs[-1].provisional
    assert not any(r.provisional for r in recs[:-1])
    assert not z_expansion(lattice_stream(theta, max_height=5), theta, complete=True)[-1].provisional
    assert not z_expansion(lattice_stream(Fraction(3, 2)), Fraction(3, 2))[-1].provisional


def test_stream_order_error():
    with pytest.raises(StreamOrderError):
        z_expansion([SaddleVector(1, 2), SaddleVector(1, 1)], Fraction(1, 3))


def test_stream_chunking_does_not_matter():
    theta = parse_theta("pi")
    vs = list(lattice_stream(theta, max_height=5000))
    whole = z_expansion(iter(vs), theta, max_height=5000, complete=True)
    parts = z_expansion((v for chunk in (vs[:7], vs[7:100], vs[100:]) for v in chunk), theta, max_height=5000,
                        complete=True)
    assert pq(whole) == pq(parts)


# ---------------------------------------------------------------------------
# streams on surfaces


def test_tree_stream_matches_strip_stream_l3():
    o = l_shaped_origami()
    for theta in (golden_ratio(), parse_field_element("sqrt(3)"), Fraction(7, 5)):
        a = z_expansion(origami_stream(o, theta, 120), theta, max_height=120, complete=True)
        b = z_expansion(origami_tree_stream(o, theta, 120), theta, max_height=120, complete=True)
        assert pq(a) == pq(b)


def test_tree_stream_matches_strip_stream_random():
    rng = random.Random(11)
    thetas = [golden_ratio(), parse_field_element("(1+sqrt(3))/5"), Fraction(9, 4), parse_field_element("3*sqrt(2)")]
    done = 0
    while done < 15:
        n = rng.randint(2, 7)
        h, v = list(range(n)), list(range(n))
        rng.shuffle(h)
        rng.shuffle(v)
        o = Origami(n, tuple(h), tuple(v), rng.choice(["cone-points-only", "all-vertices"]))
        try:
            if not any(validate_origami(o).marked):
                continue
        except ValueError:
            continue
        theta = thetas[done % len(thetas)]
        a = z_expansion(origami_stream(o, theta, 40), theta, max_height=40, complete=True)
        b = z_expansion(origami_tree_stream(o, theta, 40), theta, max_height=40, complete=True)
        assert pq(a) == pq(b)
        assert [r.vector.multiplicity for r in a] == [r.vector.multiplicity for r in b]
        done += 1


def test_l3_expansion_equals_lattice_expansion():
    # same saddle vector set, so the same convergents
    theta = parse_theta("pi")
    a = z_expansion(origami_tree_stream(l_shaped_origami(), theta), theta, max_terms=12)
    b = z_expansion(lattice_stream(theta), theta, max_terms=12)
    assert pq(a) == pq(b)


def test_torus_tree_stream():
    theta = parse_theta("e")
    a = z_expansion(origami_tree_stream(torus(), theta), theta, max_terms=10)
    b = z_expansion(lattice_stream(theta), theta, max_terms=10)
    assert pq(a) == pq(b)


@pytest.fixture(scope="module")
def golden_ball():
    R = 60
    return R, orbit_vectors(golden_l_model(), R)


@pytest.mark.parametrize("text", ["pi", "sqrt(2)", "(3+sqrt(5))/7", "e", "5/3", "(1+sqrt(5))/2"])
def test_golden_l_tessellation_matches_orbit_ball(text, golden_ball):
    m = golden_l_model()
    theta = parse_theta(text)
    R, vectors = golden_ball
    ball = z_expansion(ball_stream(vectors, theta, R), theta)
    confirmed = [r for r in ball if not r.provisional]
    tess = z_expansion(tessellation_stream(theta, m.tessellation), theta, max_terms=len(confirmed))
    assert len(confirmed) >= 3
    assert [r.vector.key for r in tess] == [r.vector.key for r in confirmed]


# ---------------------------------------------------------------------------
# termination


def test_termination_rational():
    rep = termination_check(lattice_stream(Fraction(3, 2)), Fraction(3, 2), 100)
    assert rep.terminating
    assert rep.vector.key == (3, 2)


def test_termination_irrational():
    theta = parse_theta("sqrt(2)")
    rep = termination_check(lattice_stream(theta, max_height=10**4), theta, 10**4)
    assert not rep.terminating


def test_termination_golden_l_phi():
    m = golden_l_model()
    theta = golden_ratio()
    rep = termination_check(tessellation_stream(theta, m.tessellation, max_height=100), theta, 100)
    # phi is a parabolic direction: (phi, 1) is a saddle vector on the ray
    assert rep.terminating
    assert rep.vector.x / rep.vector.y == theta


def test_termination_needs_x_axis_element():
    with pytest.raises(HypothesisError):
        termination_check([SaddleVector(1, 1), SaddleVector(2, 3)], Fraction(1, 2), 10)


# ---------------------------------------------------------------------------
# sandwich


def rec(theta, vectors):
    return z_expansion(vectors_stream(SaddleVector(p, q) for p, q in vectors), theta, complete=True)


def test_sandwich_pi_example():
    theta = parse_theta("pi")
    records = z_expansion(lattice_stream(theta), theta, max_terms=3)
    rep = sandwich_check(records, theta, 1)
    step = rep.steps[0]
    assert (step.q, step.q_next) == (1, 7)
    assert float(step.left.mid) == pytest.approx(1 / 14)
    assert float(step.middle.mid) == pytest.approx(0.14159265358979)
    assert float(step.right.mid) == pytest.approx(1 / 7)
    assert rep.passed


def test_sandwich_phi_example():
    theta = golden_ratio()
    records = z_expansion(lattice_stream(theta), theta, max_terms=3)
    rep = sandwich_check(records, theta, 1)
    step = rep.steps[0]
    assert (step.p, step.q, step.p_next, step.q_next) == (2, 1, 3, 2)
    assert step.left.mid == Fraction(1, 4)
    assert rep.passed


def test_sandwich_vacuous_for_single_record():
    theta = Fraction(3, 2)
    records = z_expansion(lattice_stream(theta), theta)
    assert pq(records)[-1] == (3, 2)
    assert sandwich_check(records[-1:], theta, 1).steps == []


def test_sandwich_detects_bad_mu():
    theta = parse_theta("pi")
    records = z_expansion(lattice_stream(theta), theta, max_terms=8)
    assert not sandwich_check(records, theta, Fraction(1, 100)).passed


def test_sandwich_on_all_surfaces(pi_expansions, surfaces):
    from sctk.surface import volume

    theta = parse_theta("pi")
    for name, model in surfaces.items():
        rep = sandwich_check(pi_expansions[name], theta, Real.pi() * volume(model))
        assert rep.passed, name


def test_deterministic():
    theta = parse_theta("pi")
    o = l_shaped_origami()
    a = z_expansion(origami_tree_stream(o, theta), theta, max_terms=10)
    b = z_expansion(origami_tree_stream(o, theta), theta, max_terms=10)
    assert pq(a) == pq(b)
    assert [r.hor.interval(64) for r in a] == [r.hor.interval(64) for r in b]
