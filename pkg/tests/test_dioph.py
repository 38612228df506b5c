import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sctk.dioph import (
    c1_from_parabolic,
    convergent_height_check,
    entry_domination,
    group_words,
    growth_indicator,
    parabolic_parameter,
    trace_domination,
    vector_domination,
    vector_domination_stability,
)
from sctk.exactfield import FieldElement, Matrix2, golden_ratio, quadratic_field
from sctk.reals import Real, compare
from sctk.surface import SaddleVector, golden_l_model, l_shaped_origami, theta_group_model, trace_saddle_connections
from sctk.zexp import ConvergentRecord, lattice_stream, parse_theta, z_expansion

K5 = quadratic_field(5)
PHI = golden_ratio()
ONE = FieldElement(1, 0, K5)
ZERO = FieldElement(0, 0, K5)


def test_trace_domination_example():
    M = Matrix2(ONE, PHI, ZERO, ONE) @ Matrix2(ONE, ZERO, PHI, ONE)
    rep = trace_domination(M)
    assert rep.trace == 3 + PHI
    assert rep.kind == "hyperbolic"
    assert rep.passed and rep.dominates


def test_trace_domination_parabolic_and_identity():
    P = trace_domination(Matrix2(ONE, PHI, ZERO, ONE))
    assert P.kind == "parabolic" and P.passed
    assert trace_domination(Matrix2.identity()).passed


def test_trace_domination_detects_failure():
    # not a Veech group element: tr = 2*sqrt(5) - 2 ~ 2.47 has conjugate ~ -6.47
    t = FieldElement(-2, 2, K5)
    M = Matrix2(t, FieldElement(-1, 0, K5), ONE, ZERO)
    rep = trace_domination(M)
    assert rep.kind == "hyperbolic"
    assert not rep.passed


def test_trace_domination_rejects_det():
    with pytest.raises(ValueError):
        trace_domination(Matrix2(2, 0, 0, 1))


def test_c1():
    assert c1_from_parabolic(2) == 1
    assert c1_from_parabolic(PHI) == FieldElement(Fraction(3, 2), Fraction(-1, 2), K5)
    assert parabolic_parameter(golden_l_model()) == PHI
    assert parabolic_parameter(theta_group_model()) == 2


def test_entry_domination_examples():
    c1 = c1_from_parabolic(PHI)
    M = Matrix2(ONE, PHI, ZERO, ONE) @ Matrix2(ONE, ZERO, PHI, ONE)
    assert entry_domination(M, c1).passed
    for w in group_words(theta_group_model(), 5):
        assert entry_domination(w, 1).passed


def test_group_words_counts():
    words = group_words(golden_l_model(), 3)
    keys = {w.projective_key() for w in words}
    assert len(keys) == len(words)
    assert all(w.det() == 1 for w in words)


def test_domination_suite_short_words():
    model = golden_l_model()
    c1 = c1_from_parabolic(parabolic_parameter(model))
    for w in group_words(model, 5):
        assert trace_domination(w).passed
        assert entry_domination(w, c1).passed


def test_vector_domination_examples():
    rep = vector_domination([SaddleVector(PHI, ONE)])
    assert rep.c_emp == 1
    origami = vector_domination(trace_saddle_connections(l_shaped_origami(), 10))
    assert origami.c_emp == 1


def test_vector_domination_golden_l_stable():
    rep = vector_domination_stability(golden_l_model(), 10)
    assert rep.small.c_emp > 0
    assert rep.large.c_emp <= rep.small.c_emp
    assert rep.stable


def _record(n, p, q):
    return ConvergentRecord(n, SaddleVector(p, q), None, False)


def test_height_check_torus():
    theta = parse_theta("pi")
    records = z_expansion(lattice_stream(theta), theta, max_terms=14)
    rep = convergent_height_check(records, 1)
    assert rep.passed
    assert rep.c2 <= Fraction(22, 7)
    assert compare(rep.c2, Real.pi() + 1) < 0
    upto = [r for r in records if r.q <= 113]
    assert convergent_height_check(upto, 1, holdout=1).c2 == Fraction(22, 7)


@given(st.integers(2, 40), st.integers(1, 20))
@settings(max_examples=25, deadline=None)
def test_torus_c2_below_theta_plus_one(a, b):
    theta = Fraction(a, b) + FieldElement(0, Fraction(1, 7), quadratic_field(2))
    records = z_expansion(lattice_stream(theta), theta, max_terms=10)
    if len([r for r in records if r.q > 0]) > 2:
        rep = convergent_height_check(records, 1, holdout=1)
        assert rep.c2 <= theta + 1


def test_height_check_integer_ratio():
    rows = [_record(0, 1, 0)] + [_record(i, 3 * i, i) for i in range(1, 8)]
    rep = convergent_height_check(rows, 1, holdout=2)
    assert rep.passed


def test_height_check_golden_l(pi_expansions):
    rep = convergent_height_check(pi_expansions["golden-L"], 2, m=2)
    assert rep.passed
    assert rep.integral is True
    assert sum(r.held_out for r in rep.rows) == 5


def test_height_check_errors():
    with pytest.raises(ValueError):
        convergent_height_check([_record(0, 1, 0)] * 3, 1)
    with pytest.raises(ValueError):
        convergent_height_check([_record(0, 1, 1), _record(1, 1, 0)] + [_record(i, i, 1) for i in range(9)], 1)


def pell(n):
    q = [1, 2]
    while len(q) < n:
        q.append(2 * q[-1] + q[-2])
    return q[:n]


def test_growth_liouville_flagged():
    rep = growth_indicator([10 ** math.factorial(n) for n in range(1, 9)], 1)
    assert rep.flagged
    assert rep.threshold == 0


def test_growth_threshold_d2():
    rep = growth_indicator([2, 3, 5, 8, 13], 2)
    assert rep.threshold == pytest.approx(math.log(3))
    assert not rep.flagged


def test_growth_pell_values():
    rep = growth_indicator(pell(20), 1)
    n, q, v = rep.rows[-1]
    assert (n, q) == (20, 15994428)
    assert v == pytest.approx(math.log(math.log(15994428)) / 20)
    # log log q_n / n decreases to 0, but only slowly
    assert rep.rows[-1][2] < rep.rows[5][2]


def test_growth_errors():
    with pytest.raises(ValueError):
        growth_indicator([1, 1, 2], 1)
    with pytest.raises(ValueError):
        growth_indicator([5, 3, 8, 9], 1)
    with pytest.raises(ValueError):
        growth_indicator([2, 3, 4], 0)


def test_growth_csv():
    text = growth_indicator(pell(10), 1).to_csv()
    lines = text.splitlines()
    assert lines[0] == "# sctk-format v1"
    assert lines[1] == "n,q,loglog_q_over_n,running_max"
    assert len(lines) == 2 + 9


@pytest.mark.parametrize(
    "heights",
    [
        pell(40),
        [2 ** (2**n) for n in range(1, 23)],
        [3 ** (n * n) for n in range(1, 26)],
        [int(1.618**n) + 2 for n in range(1, 40)],
    ],
    ids=["pell", "double-exponential", "3^(n^2)", "fibonacci-like"],
)
@pytest.mark.parametrize("scale", [7, 1000, Fraction(1, 3)])
def test_growth_scale_equivariance(heights, scale):
    N = len(heights)
    assert N >= 20
    window = N // 2
    base = growth_indicator(heights, 1, window=window)
    scaled = growth_indicator([h * scale for h in heights], 1, window=window)
    assert base.flagged == scaled.flagged


def test_growth_deterministic():
    a = growth_indicator(pell(20), 1).to_csv()
    assert a == growth_indicator(pell(20), 1).to_csv()
