from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bftsurf.errors import HodgeViolation, NonIntegralInvariant, ZeroSlope
from bftsurf.exact import QuadVal
from bftsurf.oracle import torsion_enumerate
from bftsurf.pell import fundamental_solution
from bftsurf.polarization import PolarizedPair
from bftsurf.semihomog import (
    ChernVector,
    chern_vector,
    chern_vector_raw,
    hilbert_coeffs,
    hom_euler,
    pell_pair_vectors,
    rank_r,
    roots_s,
    torsion_count_u,
    torsion_count_u_general,
    torsion_count_u_raw,
)

from conftest import nonsquare


def test_u_examples():
    assert torsion_count_u(F(2, 3), 3) == 3
    assert torsion_enumerate(2, 3, 3, squared=True) == 3
    for d in (1, 2, 7, 100):
        assert torsion_count_u(1, d) == 1
    # u on the unreduced pair (y0, (x0+1)/2)
    assert torsion_count_u_raw(2, 4, 3) == 4
    assert torsion_count_u(F(2, 4), 3) == 1


def test_u_rejects_zero_slope():
    with pytest.raises(ZeroSlope):
        torsion_count_u(0, 3)
    with pytest.raises(ZeroSlope):
        chern_vector(0, 3)


@pytest.mark.parametrize("a", range(1, 13))
def test_u_against_enumeration(a):
    for b in range(1, 13):
        for d in range(1, 11):
            size = a * a * d
            if size <= 10**5:
                assert torsion_count_u_raw(a, b, d) == torsion_enumerate(a, b, d, budget=10**5)


def test_u_squared_group_small():
    for a, b, d in [(2, 4, 3), (3, 6, 2), (2, 3, 3), (4, 2, 1)]:
        assert torsion_enumerate(a, b, d, squared=True) == torsion_count_u_raw(a, b, d)


def test_general_type_hook():
    # type (1, d) is the special case d1 = 1
    assert torsion_count_u_general(4, 6, 1, 3) == torsion_count_u_raw(4, 6, 3)
    assert torsion_count_u_general(2, 4, 2, 2) == 4 * 4


def test_chern_vector_examples():
    v = chern_vector_raw(4, 8, 3)
    assert (v.rank, v.c1, v.ch2) == (4, (F(2),), F(3))
    v = chern_vector(-1, 2)
    assert (v.rank, v.c1, v.ch2) == (1, (F(-1),), F(2))
    w = chern_vector(F(-1, 2), 2)
    assert (w.rank, w.c1, w.ch2) == (2, (F(-1),), F(1))
    diff = w - v
    assert (diff.rank, diff.c1, diff.ch2) == (1, (0,), -1)
    assert rank_r(F(2, 3), 3) == 3


@pytest.mark.parametrize("d", nonsquare(2, 100))
def test_pell_pair_vectors(d):
    s = fundamental_solution(4 * d)
    vE, vF = pell_pair_vectors(d)
    assert (vE.rank, vE.c1, vE.ch2) == ((s.x - 1) // 2, (F(-s.y),), F((s.x + 1) // 2))
    assert (vF.rank, vF.c1, vF.ch2) == ((s.x + 1) // 2, (F(-s.y),), F((s.x - 1) // 2))
    gram = [[2 * d]]
    assert hom_euler(vE, vF, gram) == 1
    assert vE.discriminant(gram) == 0 and vF.discriminant(gram) == 0


def test_hom_euler_examples():
    assert hom_euler(ChernVector(1, (F(-1),), F(2)), ChernVector(2, (F(-1),), F(1)), [[4]]) == 1
    triv = ChernVector(1, (F(0),), F(0))
    assert hom_euler(triv, triv, [[4]]) == 0
    assert hom_euler(ChernVector(3, (F(-2),), F(4)), ChernVector(4, (F(-2),), F(3)), [[6]]) == 1


def test_dual_flips_c1():
    v = chern_vector(F(2, 3), 3)
    assert v.dual().c1 == (-v.c1[0],) and v.dual().rank == v.rank


def test_roots_examples():
    pair = PolarizedPair(4, 12, 34)
    _, s_plus = roots_s(F(1, 2), pair)
    assert s_plus == QuadVal(F(6, 34), F(1, 34), 2)
    s_minus, _ = roots_s(1, pair)
    assert s_minus == QuadVal(F(6, 17), F(-1, 17), 2)
    for d in (2, 3, 7):
        assert roots_s(1, PolarizedPair(2 * d, 2 * d, 2 * d)) == (QuadVal(1), QuadVal(1))


def test_roots_are_roots_of_hilbert_polynomial():
    pair = PolarizedPair(4, 12, 34)
    c2, c1, c0 = hilbert_coeffs(F(3, 4), pair, 5)
    for s in roots_s(F(3, 4), pair):
        assert (s * c2 + c1) * s + c0 == 0


def test_hodge_violation():
    with pytest.raises(HodgeViolation):
        PolarizedPair(4, 3, 4)


def test_roots_need_positive_lambda():
    with pytest.raises(ValueError):
        roots_s(0, PolarizedPair(4, 12, 34))


@given(st.integers(-30, 30).filter(bool), st.integers(1, 30), st.integers(1, 12))
def test_discriminant_vanishes(a, b, d):
    try:
        v = chern_vector(F(a, b), d)
    except NonIntegralInvariant:
        return
    lam = F(a, b)
    assert v.c1[0] == v.rank * lam
    assert v.discriminant([[2 * d]]) == 0
    assert v.ch2 > 0


@given(st.integers(-30, 30).filter(bool), st.integers(1, 30), st.integers(1, 12), st.integers(1, 5))
def test_raw_and_reduced_agree(a, b, d, s):
    try:
        v = chern_vector_raw(a * s, b * s, d)
    except NonIntegralInvariant:
        return
    w = chern_vector(F(a, b), d)
    assert (v.rank, v.c1, v.ch2) == (w.rank, w.c1, w.ch2)
