"""Brute-force verifiers for the closed-form fast paths.

None of these call the code they check.  Pell solutions come from a direct
scan (or, past the scan budget, from a root-extraction certificate), torsion
counts from listing group elements, destabilizing candidates from a literal box
search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import sympy

from .crf import CrfTriple, PiecewiseQuad
from .errors import BudgetExceeded
from .exact import QuadVal, RatLike, as_rat
from .pell import PellSolution, fundamental_solution

DEFAULT_BUDGET = 10**6
PELL_SCAN = 10**5


def pell_brute(n: int, y_max: int) -> list[PellSolution]:
    """All (x, y), 1 <= y <= y_max, with x^2 - n y^2 = 1, by increasing y."""
    out = []
    for y in range(1, y_max + 1):
        t = 1 + n * y * y
        x = isqrt(t)
        if x * x == t:
            out.append(PellSolution(x, y, len(out) + 1, n))
    return out


def pell_brute_first(n: int, y_limit: int = 10**7) -> tuple[int, int]:
    for y in range(1, y_limit + 1):
        t = 1 + n * y * y
        x = isqrt(t)
        if x * x == t:
            return x, y
    raise BudgetExceeded(f"no Pell solution with y <= {y_limit}", n=n)


def _unit_pow(a: int, b: int, n: int, k: int) -> tuple[int, int]:
    x, y = 1, 0
    for _ in range(k):
        x, y = x * a + n * y * b, x * b + y * a
    return x, y


def is_proper_power(n: int, x: int, y: int) -> bool:
    """Whether x + y sqrt(n) = (a + b sqrt(n))^k for some k >= 2 and a^2 - n b^2 = 1, a, b >= 1."""
    # (a + b sqrt n)^k is within 1/(a + b sqrt n)^k of 2x, and a is the nearest integer above half its root
    for k in sympy.primerange(2, (2 * x).bit_length() + 1):
        r, _ = sympy.integer_nthroot(2 * x, k)
        for a in range(max(2, r // 2 - 1), r // 2 + 3):
            t = a * a - 1
            if t % n:
                continue
            b = isqrt(t // n)
            if b * b * n == t and _unit_pow(a, b, n, k) == (x, y):
                return True
    return False


def pell_minimal(n: int, x: int, y: int, scan: int = PELL_SCAN) -> bool:
    """Independent check that (x, y) is the least positive solution of x^2 - n y^2 = 1.

    Below the scan budget this is a literal scan.  Past it, every solution is a
    power of the least one, so (x, y) is least iff it solves the equation, no
    y' <= scan does, and it is not a proper power of another solution.
    """
    if x * x - n * y * y != 1 or y < 1:
        return False
    if y <= scan:
        first = pell_brute(n, y)
        return bool(first) and (first[0].x, first[0].y) == (x, y)
    if any(True for _ in pell_brute(n, scan)):
        return False
    return not is_proper_power(n, x, y)


def torsion_enumerate(a: int, b: int, d: int, budget: int = DEFAULT_BUDGET,
                      squared: bool = False) -> int:
    """Count z in Z/a + Z/ad with b z = 0 by listing the group.

    With ``squared`` the full (Z/a + Z/ad)^2 is enumerated and the square root
    of the count is returned.
    """
    a = abs(a)
    if a == 0 or b <= 0 or d <= 0:
        raise ValueError("need a != 0, b > 0, d > 0")
    size = a * a * d
    if squared:
        size *= size
    if size > budget:
        raise BudgetExceeded(f"group of order {size} exceeds budget {budget}", size=size)
    factor = [(z1, z2) for z1 in range(a) for z2 in range(a * d)
              if (b * z1) % a == 0 and (b * z2) % (a * d) == 0]
    if not squared:
        return len(factor)
    count = 0
    for u in itertools.product(range(a), range(a * d), range(a), range(a * d)):
        if all((b * u[i]) % m == 0 for i, m in enumerate((a, a * d, a, a * d))):
            count += 1
    root = isqrt(count)
    assert root * root == count
    return root


def vp(p: int, n: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation_check(d: int) -> bool:
    """v_p(gcd(M, y0)) + v_p(gcd(M, d y0)) == v_p(M) for M = (x0 +/- 1)/2 and all p | M.

    (x0, y0) comes from the solver, which has its own oracle; what is checked
    here is the valuation identity, prime by prime.
    """
    s = fundamental_solution(4 * d)
    x0, y0 = s.x, s.y
    for m in ((x0 + 1) // 2, (x0 - 1) // 2):
        a, b = gcd(m, y0), gcd(m, d * y0)
        for p in sympy.factorint(m):
            if vp(p, a) + vp(p, b) != vp(p, m):
                return False
    return True


def destab_brute(d: int, x0: int, y0: int) -> list[tuple[int, int, int]]:
    """Box search with each constraint evaluated literally, in integers.

    h^2 ranges over even values in [0, lh^2 / 2d]: the upper end is the Hodge
    inequality, and the first nef condition with lh y0 > (x0-1) r forces h^2 > 0.
    """
    out = []
    for r in range(1, x0):
        if not 2 * r < x0 - 1:
            continue
        for lh in range(1, (x0 + 1) * r // y0 + 1):
            if not ((x0 - 1) * r < lh * y0 < (x0 + 1) * r):
                continue
            for h_sq in range(0, lh * lh + 1, 2):
                if 2 * d * h_sq > lh * lh:
                    break
                # the nef-square inequalities multiplied by r^2 (x0 +/- 1) > 0
                n1 = h_sq * (x0 + 1) - 4 * y0 * lh * r + 2 * (x0 - 1) * r * r
                n2 = h_sq * (x0 - 1) - 4 * y0 * lh * r + 2 * (x0 + 1) * r * r
                if n1 >= 0 and n2 >= 0:
                    out.append((r, lh, h_sq))
    return out


@dataclass
class SweepReport:
    points: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> dict | None:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict:
        return {"ok": self.ok, "points": self.points, "violations": self.violations[:20]}


def _grid(lo: Fraction, step: Fraction, hi: Fraction):
    x = lo
    while x <= hi:
        yield x
        x += step


def crf_consistency_sweep(triple: CrfTriple, grid_step: RatLike, x_max: RatLike,
                          monotone_h0: bool = True, x_min: RatLike | None = None) -> SweepReport:
    """Evaluate the profiles on a rational grid and check the pointwise identities.

    Checks h0 - h1 + h2 == chi, each h^i >= 0, and (optionally) h0 non-decreasing.
    """
    step, hi = as_rat(grid_step), as_rat(x_max)
    if step <= 0:
        raise ValueError("grid_step must be positive")
    lo = as_rat(x_min) if x_min is not None else _ceil_to_grid(triple.h0.domain_floor, step)
    rep = SweepReport()
    prev = None
    for x in _grid(lo, step, hi):
        rep.points += 1
        vals = [f(x) for f in (triple.h0, triple.h1, triple.h2)]
        chi = triple.chi(x)
        if vals[0] - vals[1] + vals[2] != chi:
            rep.violations.append({"x": str(x), "check": "euler", "got": str(vals[0] - vals[1] + vals[2]),
                                   "chi": str(chi)})
        for i, v in enumerate(vals):
            if v < 0:
                rep.violations.append({"x": str(x), "check": f"h{i}>=0", "got": str(v)})
        if monotone_h0 and prev is not None and vals[0] < prev:
            rep.violations.append({"x": str(x), "check": "h0 monotone", "got": str(vals[0]),
                                   "prev": str(prev)})
        prev = vals[0]
    return rep


def _ceil_to_grid(floor: QuadVal, step: Fraction) -> Fraction:
    # smallest multiple of step that is >= floor; isqrt(d) + 1 bounds sqrt(d) from above
    k = math.floor((floor.p - abs(floor.q) * (isqrt(floor.d) + 1)) / step)
    while QuadVal(k * step) < floor:
        k += 1
    return k * step


def zero_locus_on_grid(f: PiecewiseQuad, grid_step: RatLike, x_max: RatLike) -> list[Fraction]:
    step, hi = as_rat(grid_step), as_rat(x_max)
    lo = _ceil_to_grid(f.domain_floor, step)
    return [x for x in _grid(lo, step, hi) if f(x) == 0]
