from fractions import Fraction as F

import pytest

from bftsurf import oracle
from bftsurf.crf import corrupt_triple, crf_ideal_l, crf_ideal_n
from bftsurf.errors import BudgetExceeded
from bftsurf.exact import QuadVal
from bftsurf.pell import fundamental_solution, nth_solution
from bftsurf.polarization import PolarizedPair
from bftsurf.verify import run_suite

from conftest import nonsquare


def test_pell_brute_examples():
    assert [(s.x, s.y) for s in oracle.pell_brute(8, 10)] == [(3, 1), (17, 6)]
    assert [(s.x, s.y) for s in oracle.pell_brute(12, 2)] == [(7, 2)]
    assert oracle.pell_brute(8, 0) == []
    assert oracle.pell_brute_first(28) == (127, 24)
    with pytest.raises(BudgetExceeded):
        oracle.pell_brute_first(28, y_limit=10)


def test_proper_power_detection():
    f = fundamental_solution(12)
    s2 = nth_solution(f, 2)
    s3 = nth_solution(f, 3)
    assert oracle.is_proper_power(12, s2.x, s2.y)
    assert oracle.is_proper_power(12, s3.x, s3.y)
    assert not oracle.is_proper_power(12, f.x, f.y)


def test_pell_minimal_rejects_wrong_answers():
    f = fundamental_solution(4 * 199)
    s2 = nth_solution(f, 2)
    assert oracle.pell_minimal(4 * 199, f.x, f.y, scan=1000)
    assert not oracle.pell_minimal(4 * 199, s2.x, s2.y, scan=1000)
    assert not oracle.pell_minimal(4 * 199, f.x + 2, f.y, scan=1000)
    assert not oracle.pell_minimal(8, 17, 6)


def test_torsion_examples():
    assert oracle.torsion_enumerate(2, 4, 3) == 4
    assert oracle.torsion_enumerate(1, 1, 9) == 1
    assert oracle.torsion_enumerate(2, 4, 3) == 4  # (y0, (x0+1)/2) for d = 3
    with pytest.raises(BudgetExceeded):
        oracle.torsion_enumerate(100, 3, 200, budget=1000)
    with pytest.raises(ValueError):
        oracle.torsion_enumerate(0, 1, 1)


def test_valuation_examples():
    assert oracle.valuation_check(3) and oracle.valuation_check(2)
    assert all(oracle.valuation_check(d) for d in nonsquare(2, 100))
    assert oracle.vp(2, 48) == 4
    with pytest.raises(ValueError):
        oracle.vp(2, 0)


def test_sweeps_clean():
    rep = oracle.crf_consistency_sweep(crf_ideal_l(3), F(1, 50), 2)
    assert rep.ok and rep.points == 101
    rep = oracle.crf_consistency_sweep(crf_ideal_n(PolarizedPair(4, 12, 34)), F(1, 100), 1)
    assert rep.ok
    beta = QuadVal(F(6, 17), F(-1, 17), 2)
    t = crf_ideal_n(PolarizedPair(4, 12, 34))
    zeros = oracle.zero_locus_on_grid(t.h1, F(1, 100), 1)
    assert zeros == [F(k, 100) for k in range(101) if F(k, 100) > beta]


def test_sweep_detects_corruption_at_first_point_of_piece():
    t = crf_ideal_l(3)
    bad = corrupt_triple(t, "h0", 2)
    rep = oracle.crf_consistency_sweep(bad, F(1, 50), 2)
    assert not rep.ok
    # piece 2 starts at 2/3; the first grid point there is 2/3 itself (shared breakpoint reads piece 1),
    # so the first violating grid point is the next one
    assert F(rep.first_violation["x"]) == F(34, 50)
    assert rep.first_violation["check"] == "euler"


def test_sweep_flags_monotonicity_and_sign():
    t = crf_ideal_l(3)
    bad = corrupt_triple(t, "h2", 0, -1)
    rep = oracle.crf_consistency_sweep(bad, F(1, 10), 1)
    assert any(v["check"] == "h2>=0" for v in rep.violations)
    assert rep.to_json()["ok"] is False


def test_sweep_rejects_bad_step():
    with pytest.raises(ValueError):
        oracle.crf_consistency_sweep(crf_ideal_l(3), 0, 1)


def test_suite_small_range():
    res = run_suite(d_max=30, budget=10**5)
    assert all(r.passed for r in res), [r.to_json() for r in res if not r.passed]
    assert {r.name for r in res} >= {"pell_fundamental_vs_scan", "destab_candidates_vs_box_search"}
