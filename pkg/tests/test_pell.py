from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bftsurf.errors import InvalidModulus, PerfectSquareModulus
from bftsurf.oracle import pell_brute
from bftsurf.pell import (
    PellSolution,
    PerfectSquareMarker,
    fundamental_solution,
    nth_solution,
    pell_for_type,
    solutions,
)

from conftest import nonsquare


@pytest.mark.parametrize("n,xy", [(8, (3, 1)), (28, (127, 24)), (12, (7, 2)), (20, (9, 2)), (24, (5, 1))])
def test_fundamental_examples(n, xy):
    s = fundamental_solution(n)
    assert (s.x, s.y, s.index, s.n) == (*xy, 1, n)


def test_odd_modulus_and_large_period():
    assert (fundamental_solution(2).x, fundamental_solution(2).y) == (3, 2)
    s = fundamental_solution(61)
    assert (s.x, s.y) == (1766319049, 226153980)


def test_errors():
    with pytest.raises(PerfectSquareModulus):
        fundamental_solution(16)
    for bad in (1, 0, -3):
        with pytest.raises(InvalidModulus):
            fundamental_solution(bad)


def test_nth_solution():
    f8 = fundamental_solution(8)
    assert (nth_solution(f8, 2).x, nth_solution(f8, 2).y) == (17, 6)
    assert nth_solution(f8, 1) == f8
    s = nth_solution(fundamental_solution(12), 2)
    assert (s.x, s.y, s.index) == (97, 28, 2)
    assert [(p.x, p.y) for p in pell_brute(12, 30)] == [(7, 2), (97, 28)]
    with pytest.raises(ValueError):
        nth_solution(f8, 0)


def test_pell_for_type():
    m = pell_for_type(4)
    assert isinstance(m, PerfectSquareMarker) and m.root == 2 and m.beta == Fraction(1, 2)
    assert (pell_for_type(2).x, pell_for_type(2).y) == (3, 1)
    s = pell_for_type(17)
    assert (s.x, s.y) == (33, 4)
    assert pell_brute(68, 10)[0].y == 4


def test_solution_rejects_non_solutions():
    with pytest.raises(ValueError):
        PellSolution(4, 1, 1, 8)


def test_json():
    assert fundamental_solution(12).to_json() == {"x": "7", "y": "2", "index": 1, "n": 12}


@pytest.mark.parametrize("d", nonsquare(2, 200))
def test_shape_for_type(d):
    s = fundamental_solution(4 * d)
    assert s.x % 2 == 1
    assert ((s.x - 1) // 2) * ((s.x + 1) // 2) == d * s.y * s.y


@given(st.integers(2, 3000).filter(lambda n: int(n**0.5 + 0.5) ** 2 != n))
def test_sequence_increasing_and_exact(n):
    f = fundamental_solution(n)
    prev = None
    it = solutions(f)
    for _ in range(4):
        s = next(it)
        assert s.x * s.x - n * s.y * s.y == 1
        if prev:
            assert s.x > prev.x and s.y > prev.y
        prev = s


@given(st.integers(2, 400).filter(lambda n: int(n**0.5 + 0.5) ** 2 != n))
def test_fundamental_is_minimal_small(n):
    f = fundamental_solution(n)
    if f.y <= 20000:
        assert (pell_brute(n, f.y)[0].x, pell_brute(n, f.y)[0].y) == (f.x, f.y)
