from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bftsurf.bft import beta_pair
from bftsurf.crf import (
    ZERO,
    CrfTriple,
    PiecewiseQuad,
    Quad,
    corrupt_piece,
    corrupt_triple,
    crf_eval,
    crf_ideal_l,
    crf_ideal_n,
    crf_semihomog,
    quad_min_on,
)
from bftsurf.errors import BelowDomain, HypothesisFailed, PerfectSquareType
from bftsurf.exact import QuadVal
from bftsurf.pell import fundamental_solution
from bftsurf.polarization import PolarizedPair

from conftest import nonsquare

P17 = PolarizedPair(4, 12, 34)
BETA = QuadVal(F(6, 17), F(-1, 17), 2)
BETA0 = QuadVal(F(6, 34), F(1, 34), 2)


def test_ideal_l_d3_values():
    t = crf_ideal_l(3)
    assert t.breakpoints == (QuadVal(F(1, 2)), QuadVal(F(2, 3)))
    mid, outer = t.h0.pieces[1], t.h0.pieces[2]
    assert mid(F(2, 3)) == outer(F(2, 3)) == F(1, 3)
    assert crf_eval(t.h0, F(1, 2)) == 0
    assert crf_eval(t.h0, 0) == 0 and crf_eval(t.h1, 0) == 1
    assert crf_eval(t.h0, 1) == 2


@pytest.mark.parametrize("d", nonsquare(2, 50))
def test_ideal_l_closed_form(d):
    s = fundamental_solution(4 * d)
    t = crf_ideal_l(d)
    assert t.h0.pieces == (
        ZERO,
        Quad(F(d * (s.x + 1), 2), -2 * d * s.y, F(s.x - 1, 2)),
        Quad(d, 0, -1),
    )
    assert not t.h0.continuity_defects() and not t.euler_defects()
    assert all(q.is_zero() for q in t.h2.pieces)
    # n = l through the general construction gives the same data
    g = crf_ideal_n(PolarizedPair(2 * d, 2 * d, 2 * d))
    assert g.breakpoints == t.breakpoints
    for h in ("h0", "h1", "h2"):
        assert getattr(g, h).pieces == getattr(t, h).pieces


def test_ideal_l_perfect_square():
    with pytest.raises(PerfectSquareType):
        crf_ideal_l(4)


def test_ideal_n_4_12_34():
    t = crf_ideal_n(P17)
    assert t.breakpoints == (BETA0, BETA)
    assert crf_eval(t.h0, 1) == 16
    # 6/17 sits above beta; 1/4 is strictly between the breakpoints
    assert BETA < F(6, 17) and BETA0 < F(1, 4) < BETA
    for x in (F(6, 17), F(1, 4)):
        assert crf_eval(t.h0, x) == crf_eval(t.h1, x) + 17 * x * x - 1
    assert crf_eval(t.h1, F(1, 4)) > 0 and crf_eval(t.h0, F(1, 4)) > 0
    assert t.h1.zero_suffix_start() == BETA
    assert t.h0.zero_prefix_end() == BETA0
    assert beta_pair(P17).beta == t.h1.zero_suffix_start()
    assert beta_pair(P17).beta0 == t.h0.zero_prefix_end()


def test_ideal_n_hypothesis_failure_carries_deficit():
    with pytest.raises(HypothesisFailed) as e:
        crf_ideal_n(PolarizedPair(4, 12, 20))
    assert e.value.deficit == 108


def test_semihomog_profiles():
    t = crf_semihomog(1, P17, 1)
    s_minus, s_plus = t.breakpoints
    mid = (s_minus + s_plus) / 2
    assert mid == F(6, 17)
    assert t.h1(mid) > 0 and t.h1(mid) == -t.chi(mid)
    assert t.h0(mid) == 0 == t.h2(mid)
    # double root when n = l at lambda = 1
    t = crf_semihomog(1, PolarizedPair(4, 4, 4), 1)
    assert t.breakpoints == (QuadVal(1),)
    assert all(q.is_zero() for q in t.h1.pieces)
    t = crf_semihomog(F(1, 2), P17, 2)
    assert t.breakpoints[1] == BETA0
    assert t.h0(1) == 23


def test_semihomog_floor_default():
    t = crf_semihomog(1, P17, 1)
    assert t.h0.domain_floor == QuadVal(F(-24, 34))
    with pytest.raises(BelowDomain):
        t.h0(-1)


def test_below_domain():
    with pytest.raises(BelowDomain):
        crf_eval(crf_ideal_l(3).h0, F(-1, 10))


def test_piecewise_validation():
    with pytest.raises(ValueError):
        PiecewiseQuad((QuadVal(1), QuadVal(1)), (ZERO, ZERO, ZERO))
    with pytest.raises(ValueError):
        PiecewiseQuad((QuadVal(1),), (ZERO,))
    jump = PiecewiseQuad((QuadVal(1),), (ZERO, Quad(0, 0, 1)))
    assert jump.continuity_defects() == [0]
    with pytest.raises(ValueError):
        jump.validate()
    neg = PiecewiseQuad((), (Quad(0, -1, 0),))
    assert neg.negative_pieces() == [0]


def test_triple_requires_shared_breakpoints():
    a = PiecewiseQuad((QuadVal(1),), (ZERO, ZERO))
    b = PiecewiseQuad((QuadVal(2),), (ZERO, ZERO))
    with pytest.raises(ValueError):
        CrfTriple(a, b, a, ZERO)


def test_quad_min_on():
    q = Quad(1, -2, 1)  # (x - 1)^2
    assert quad_min_on(q, QuadVal(0), QuadVal(3)) == 0
    assert quad_min_on(q, QuadVal(2), None) == 1
    assert quad_min_on(Quad(-1, 0, 0), QuadVal(0), None) is None


def test_corrupted_pieces_flagged():
    t = crf_ideal_l(3)
    bad = corrupt_triple(t, "h1", 1)
    assert bad.euler_defects() == [1]
    with pytest.raises(ValueError):
        bad.validate()
    f = corrupt_piece(t.h0, 2, -5)
    assert f.continuity_defects() == [1]


def test_json_shape():
    js = crf_ideal_n(P17).to_json()
    assert js["breakpoints"][1] == {"p": "6/17", "q": "-1/17", "d": 2}
    assert js["chi"] == ["17", "0", "-1"]


@given(st.sampled_from(nonsquare(2, 30)), st.integers(1, 60), st.integers(1, 60))
def test_ideal_n_identities_random(d, ln, half_n):
    n_sq = 2 * half_n
    if ln * ln < 2 * d * n_sq:
        return
    pair = PolarizedPair(2 * d, ln, n_sq)
    if pair.hypothesis_margin() < 0:
        with pytest.raises(HypothesisFailed):
            crf_ideal_n(pair)
        return
    t = crf_ideal_n(pair)
    assert not t.euler_defects()
    for f in (t.h0, t.h1, t.h2):
        assert not f.continuity_defects() and not f.negative_pieces()
    res = beta_pair(pair)
    assert t.h1.zero_suffix_start() == res.beta
    assert t.h0.zero_prefix_end() == res.beta0


@given(st.sampled_from(nonsquare(2, 30)), st.fractions(min_value=0, max_value=3, max_denominator=50))
def test_h0_monotone_ideal_l(d, x):
    t = crf_ideal_l(d)
    step = F(1, 100)
    assert t.h0(x + step) >= t.h0(x)
