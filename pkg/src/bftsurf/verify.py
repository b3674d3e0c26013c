"""The oracle suite: every fast path against its brute-force counterpart."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import oracle
from .bft import beta0_principal, beta_lower_bound_sup, beta_pair, beta_principal, family_matches
from .crf import corrupt_triple, crf_ideal_l, crf_ideal_n
from .errors import BudgetExceeded
from .exact import QuadVal, is_square
from .lattice import destab_candidates, realize_corollary_lattice
from .pell import fundamental_solution
from .polarization import PolarizedPair
from .semihomog import chern_vector_raw, torsion_count_u_raw

# the box search is cubic in x0; d = 7 (x0 = 127) must stay inside
DESTAB_X0_MAX = 130


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "pass": self.passed,
            "cases": self.cases,
            "skipped": self.skipped,
            "failures": self.failures[:10],
            "seconds": round(self.seconds, 3),
        }


def _nonsquare(lo: int, hi: int):
    return [d for d in range(lo, hi + 1) if not is_square(d)]


def check_pell(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("pell_fundamental_vs_scan")
    for d in _nonsquare(2, d_max):
        s = fundamental_solution(4 * d)
        res.cases += 1
        if not oracle.pell_minimal(4 * d, s.x, s.y, scan=min(budget, oracle.PELL_SCAN)):
            res.failures.append({"d": d, "x": str(s.x), "y": str(s.y)})
    return res


def check_pell_shape(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("pell_odd_x_and_product")
    for d in _nonsquare(2, d_max):
        s = fundamental_solution(4 * d)
        res.cases += 1
        if s.x % 2 == 0 or ((s.x - 1) // 2) * ((s.x + 1) // 2) != d * s.y * s.y:
            res.failures.append({"d": d})
    return res


def check_torsion(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("torsion_count_vs_enumeration")
    cases = [(a, b, d) for a in range(1, 7) for b in range(1, 13) for d in range(1, 7)]
    for d in _nonsquare(2, min(d_max, 100)):
        s = fundamental_solution(4 * d)
        cases += [(s.y, (s.x + 1) // 2, d), (s.y, (s.x - 1) // 2, d)]
    for a, b, d in cases:
        try:
            got = oracle.torsion_enumerate(a, b, d, budget=budget)
        except BudgetExceeded:
            res.skipped += 1
            continue
        res.cases += 1
        if got != torsion_count_u_raw(a, b, d):
            res.failures.append({"a": a, "b": b, "d": d, "enumerated": got})
    return res


def check_valuations(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("valuation_identity")
    for d in _nonsquare(2, min(d_max, 100)):
        res.cases += 1
        if not oracle.valuation_check(d):
            res.failures.append({"d": d})
    return res


def check_chern(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("pell_pair_chern_vectors")
    for d in _nonsquare(2, min(d_max, 100)):
        s = fundamental_solution(4 * d)
        res.cases += 1
        vp = chern_vector_raw(s.y, (s.x + 1) // 2, d)
        vm = chern_vector_raw(s.y, (s.x - 1) // 2, d)
        ok = (
            (vp.rank, vp.c1, vp.ch2) == ((s.x + 1) // 2, (Fraction(s.y),), Fraction((s.x - 1) // 2))
            and (vm.rank, vm.c1, vm.ch2) == ((s.x - 1) // 2, (Fraction(s.y),), Fraction((s.x + 1) // 2))
        )
        diff = vp - vm
        if not ok or (diff.rank, diff.c1, diff.ch2) != (1, (0,), -1):
            res.failures.append({"d": d})
    return res


def check_principal(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("principal_threshold")
    for d in _nonsquare(2, d_max):
        s = fundamental_solution(4 * d)
        beta = Fraction(2 * s.y, s.x - 1)
        b0 = beta0_principal(d)
        res.cases += 1
        ok = (
            beta_principal(d) == beta
            and beta_lower_bound_sup(d, beta) == beta
            and beta * b0 == Fraction(1, d)
            and b0 * b0 * d < 1 < beta * beta * d
        )
        if not ok:
            res.failures.append({"d": d})
    return res


def check_families(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("family_closed_forms")
    for d in _nonsquare(2, d_max):
        for m in family_matches(d):
            res.cases += 1
            if beta_principal(d) != m.beta:
                res.failures.append({"d": d, "family": m.family})
    return res


def check_principal_pairs(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("pair_formula_at_n_equals_l")
    for d in _nonsquare(2, d_max):
        s = fundamental_solution(4 * d)
        t = beta_pair(PolarizedPair(2 * d, 2 * d, 2 * d))
        res.cases += 1
        if t.beta != Fraction(2 * s.y, s.x - 1) or t.beta0 != Fraction(2 * s.y, s.x + 1):
            res.failures.append({"d": d})
    return res


def check_destab(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("destab_candidates_vs_box_search")
    for d in (d for d in _nonsquare(2, min(d_max, 200)) if fundamental_solution(4 * d).x <= DESTAB_X0_MAX):
        s = fundamental_solution(4 * d)
        res.cases += 1
        fast = sorted((c.r, c.lh, c.h_sq) for c in destab_candidates(d))
        if fast != sorted(oracle.destab_brute(d, s.x, s.y)):
            res.failures.append({"d": d})
    return res


def check_crf_sweeps(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("crf_grid_sweeps")
    jobs = [(f"ideal_l({d})", crf_ideal_l(d), Fraction(1, 50), 2) for d in _nonsquare(2, min(d_max, 20))]
    jobs.append(("ideal_n(4,12,34)", crf_ideal_n(PolarizedPair(4, 12, 34)), Fraction(1, 100), 1))
    for name, t, step, hi in jobs:
        rep = oracle.crf_consistency_sweep(t, step, hi)
        res.cases += 1
        if not rep.ok:
            res.failures.append({"profile": name, "first_violation": rep.first_violation})
    # h1 along n vanishes exactly past the irrational breakpoint
    t = crf_ideal_n(PolarizedPair(4, 12, 34))
    beta = QuadVal(Fraction(6, 17), Fraction(-1, 17), 2)
    zeros = set(oracle.zero_locus_on_grid(t.h1, Fraction(1, 100), 1))
    grid = [Fraction(k, 100) for k in range(0, 101)]
    res.cases += 1
    if any((x in zeros) != (x > beta) for x in grid if x > 0):
        res.failures.append({"profile": "ideal_n(4,12,34)", "what": "h1 zero locus"})
    return res


def check_fault_injection(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("fault_injection_detected")
    t = crf_ideal_l(3)
    for which in ("h0", "h1", "h2"):
        for i in range(len(t.h0.pieces)):
            bad = corrupt_triple(t, which, i)
            res.cases += 1
            rep = oracle.crf_consistency_sweep(bad, Fraction(1, 50), 2)
            if rep.ok:
                res.failures.append({"which": which, "piece": i})
    return res


def check_corollary(d_max: int, budget: int) -> CheckResult:
    res = CheckResult("corollary_lattice")
    _, _, _, cert = realize_corollary_lattice()
    res.cases = 1
    expect = QuadVal(Fraction(6, 17), Fraction(-1, 17), 2)
    if not (cert.triple == (4, 12, 34) and abs(cert.basis_det) == 1 and cert.result.beta == expect
            and cert.result.hypothesis_margin == 18 and not cert.result.rational):
        res.failures.append(cert.to_json())
    return res


CHECKS: list[Callable[[int, int], CheckResult]] = [
    check_pell, check_pell_shape, check_torsion, check_valuations, check_chern,
    check_principal, check_principal_pairs, check_families, check_destab,
    check_crf_sweeps, check_fault_injection, check_corollary,
]


def run_suite(d_max: int = 200, budget: int = oracle.DEFAULT_BUDGET) -> list[CheckResult]:
    out = []
    for chk in CHECKS:
        t0 = time.perf_counter()
        r = chk(d_max, budget)
        r.seconds = time.perf_counter() - t0
        out.append(r)
    return out
