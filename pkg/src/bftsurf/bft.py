"""Basepoint-freeness thresholds beta(X, n) and beta0(X, n) of abelian surfaces.

All results are exact :class:`~bftsurf.exact.QuadVal` or Fraction values.  The
general-pair formulas are only applied under the hypothesis
``x0^2 (n^2) >= 2 y0^2 (l.n)^2``; outside it we raise rather than extrapolate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .errors import HypothesisFailed, InvalidClass, NuTooSmall, PerfectSquareType
from .exact import QuadVal, RatLike, as_rat
from .pell import PellSolution, PerfectSquareMarker, fundamental_solution, nth_solution, pell_for_type
from .polarization import PolarizedPair
from .semihomog import rank_r, roots_s


def _require_nonsquare(d: int) -> PellSolution:
    p = pell_for_type(d)
    if isinstance(p, PerfectSquareMarker):
        raise PerfectSquareType(f"d = {d} is a perfect square", d=d)
    return p


def beta_principal(d: int) -> QuadVal:
    """beta(X, l) for l of type (1, d)."""
    p = pell_for_type(d)
    if isinstance(p, PerfectSquareMarker):
        return p.beta
    return QuadVal(Fraction(2 * p.y, p.x - 1))


def beta0_principal(d: int) -> QuadVal:
    """beta0(X, l) = 2 y0 / (x0 + 1) for nonsquare d."""
    p = _require_nonsquare(d)
    return QuadVal(Fraction(2 * p.y, p.x + 1))


def second_candidate(d: int) -> Fraction:
    """2 y1 / (x1 - 1) from the second-minimal Pell solution.

    Only reported; beta(X, l) is always the first candidate.
    """
    p1 = nth_solution(_require_nonsquare(d), 2)
    return Fraction(2 * p1.y, p1.x - 1)


def beta_lower_bound_sup(d: int, nu: RatLike) -> Fraction:
    """The term (1 + r(nu)) / (d nu r(nu)) of the lower bound for beta(X, l).

    r is the rank function of the dual polarization, again of type (1, d).
    """
    _require_nonsquare(d)
    nu = as_rat(nu)
    if nu <= 0 or nu * nu * d <= 1:
        raise NuTooSmall(f"nu = {nu} is not > 1/sqrt({d})", nu=str(nu), d=d)
    r = rank_r(nu, d)
    return (1 + r) / (d * nu * r)


def beta_lower_bound_scan(d: int, max_den: int) -> tuple[Fraction, Fraction]:
    """Best lower bound over admissible nu = a/b with b <= max_den and nu <= 1.

    Returns ``(bound, nu)``.  Every value is a lower bound for beta(X, l).
    """
    _require_nonsquare(d)
    best = None
    for b in range(1, max_den + 1):
        # a/b > 1/sqrt(d)  <=>  a^2 d > b^2
        a = isqrt(b * b // d)
        while a * a * d <= b * b:
            a += 1
        for aa in range(a, b + 1):
            nu = Fraction(aa, b)
            if nu.denominator != b:
                continue
            val = beta_lower_bound_sup(d, nu)
            if best is None or val > best[0]:
                best = (val, nu)
    if best is None:
        raise NuTooSmall(f"no admissible nu with denominator <= {max_den}", d=d)
    return best


@dataclass(frozen=True)
class ThresholdResult:
    pair: PolarizedPair
    beta: QuadVal
    beta0: Optional[QuadVal]
    rational: bool
    hypothesis_margin: Optional[int]
    branch: str

    def to_json(self) -> dict:
        return {
            "l2": self.pair.l_sq,
            "ln": self.pair.ln,
            "n2": self.pair.n_sq,
            "beta": self.beta.to_json(),
            "beta0": None if self.beta0 is None else self.beta0.to_json(),
            "rational": self.rational,
            "hypothesis_margin": None if self.hypothesis_margin is None else str(self.hypothesis_margin),
            "branch": self.branch,
        }


def _check_hypothesis(pair: PolarizedPair) -> int:
    margin = pair.hypothesis_margin()
    if margin < 0:
        raise HypothesisFailed(
            f"x0^2 (n^2) < 2 y0^2 (l.n)^2 for (l^2, l.n, n^2) = {pair.as_tuple()}",
            deficit=-margin,
        )
    return margin


def beta_pair(pair: PolarizedPair) -> ThresholdResult:
    """beta(X, n) and beta0(X, n) for a pair satisfying the hypothesis."""
    if isinstance(pair.pell, PerfectSquareMarker):
        if not pair.is_principal:
            raise PerfectSquareType(
                f"d = {pair.d} is a perfect square; only n = l is determined", d=pair.d
            )
        b = pair.pell.beta
        return ThresholdResult(pair, b, None, True, None, "perfect-square type, n = l")
    margin = _check_hypothesis(pair)
    p = pair.pell
    # beta = s-(E_{-2y0/(x0-1) l}, n), beta0 = s+(E_{-2y0/(x0+1) l}, n)
    beta, _ = roots_s(Fraction(2 * p.y, p.x - 1), pair)
    _, beta0 = roots_s(Fraction(2 * p.y, p.x + 1), pair)
    assert beta * beta0 == Fraction(2, pair.n_sq)
    return ThresholdResult(pair, beta, beta0, beta.is_rational(), margin, "pell")


def beta_inverse(pair: PolarizedPair) -> QuadVal:
    """1 / beta(X, n), in the closed form with (l^2) in the denominator."""
    _check_hypothesis(pair)
    p = pair.require_pell()
    inv = QuadVal(Fraction(p.x - 1, 2 * p.y) * Fraction(pair.ln, pair.l_sq),
                  Fraction(p.x - 1, 2 * p.y) * Fraction(1, pair.l_sq),
                  pair.discriminant)
    assert inv * beta_pair(pair).beta == 1
    return inv


def roots_ordered(pair: PolarizedPair) -> bool:
    """Whether s+(F, n) <= s-(E, n) for the two Pell bundles E, F."""
    p = pair.require_pell()
    _, s_plus_f = roots_s(Fraction(2 * p.y, p.x + 1), pair)
    s_minus_e, _ = roots_s(Fraction(2 * p.y, p.x - 1), pair)
    return s_plus_f <= s_minus_e


@dataclass(frozen=True)
class SubadditivityReport:
    d: int
    m: int
    c_sq: int
    min_valid_m: int
    inv_n1: QuadVal
    inv_n2: QuadVal
    inv_total: QuadVal

    @property
    def inv_sum(self) -> QuadVal:
        return self.inv_n1 + self.inv_n2

    @property
    def subadditive(self) -> bool:
        """True iff beta(n1)^-1 + beta(n2)^-1 <= beta(n1 + n2)^-1."""
        return self.inv_sum <= self.inv_total

    @property
    def verdict(self) -> str:
        return "sum <= total" if self.subadditive else "sum > total"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "c2": self.c_sq,
            "min_valid_m": self.min_valid_m,
            "inv_beta_n1": self.inv_n1.to_json(),
            "inv_beta_n2": self.inv_n2.to_json(),
            "inv_beta_sum": self.inv_sum.to_json(),
            "inv_beta_n1_plus_n2": self.inv_total.to_json(),
            "verdict": self.verdict,
            "counterexample": not self.subadditive,
        }


def _shifted_pair(d: int, m: int, c_sq: int) -> PolarizedPair:
    # n = m l +/- c with l.c = 0: n^2 = m^2 l^2 + c^2, l.n = m l^2
    l_sq = 2 * d
    return PolarizedPair(l_sq, m * l_sq, m * m * l_sq + c_sq)


def min_shift(d: int, c_sq: int) -> int:
    """Smallest m with m l +/- c ample and satisfying the hypothesis."""
    p = _require_nonsquare(d)
    l_sq = 2 * d
    m = 1
    while True:
        n_sq = m * m * l_sq + c_sq
        if n_sq > 0 and p.x**2 * n_sq >= 2 * p.y**2 * (m * l_sq) ** 2:
            return m
        m += 1


def subadditivity_check(d: int, m: int, c_sq: int) -> SubadditivityReport:
    """Compare beta(n1)^-1 + beta(n2)^-1 with beta(n1 + n2)^-1 for n1,2 = m l +/- c."""
    if c_sq >= 0 or c_sq % 2:
        raise InvalidClass(
            f"c must be a nonzero class orthogonal to l, so c^2 is negative and even; got {c_sq}",
            c2=c_sq,
        )
    m_min = min_shift(d, c_sq)
    if m < m_min:
        n_sq = m * m * 2 * d + c_sq
        p = _require_nonsquare(d)
        deficit = 2 * p.y**2 * (m * 2 * d) ** 2 - p.x**2 * n_sq
        raise HypothesisFailed(
            f"m = {m} too small; the hypothesis needs m >= {m_min}",
            deficit=deficit, threshold_m=m_min,
        )
    n1 = _shifted_pair(d, m, c_sq)
    inv1 = beta_inverse(n1)
    total = beta_inverse(PolarizedPair(2 * d, 2 * m * 2 * d, 4 * m * m * 2 * d))
    assert total == 2 * m / beta_principal(d)
    # n2 = m l - c has the same intersection numbers as n1
    return SubadditivityReport(d, m, c_sq, m_min, inv1, inv1, total)


# --- family closed forms ----------------------------------------------------


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    m: int
    k: int
    beta: Fraction
    pell: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "k": self.k,
            "beta": f"{self.beta.numerator}/{self.beta.denominator}",
            "pell": [str(self.pell[0]), str(self.pell[1])],
        }


def family_matches(d: int) -> list[FamilyMatch]:
    """All closed-form families (m, k) that d belongs to.

    Families: d = m^2 + k and d = m^2 - k with k | m; d = m^2 + (m + k) with
    4k - 1 | 2m + 1; d = m^2 - (m + k) with 4k + 1 | 2m - 1.  Each match carries
    its predicted minimal Pell solution, which is checked against the solver.
    """
    if d < 2 or isqrt(d) ** 2 == d:
        return []
    out: list[FamilyMatch] = []
    s = isqrt(d)
    m, k = s, d - s * s
    if 1 <= k and m % k == 0:
        out.append(FamilyMatch("m^2+k", m, k, Fraction(1, m), (2 * m * m // k + 1, m // k)))
    m = s + 1
    k = m * m - d
    if 1 <= k and m % k == 0:
        out.append(FamilyMatch("m^2-k", m, k, Fraction(m, d), (2 * m * m // k - 1, m // k)))
    m = 1
    while m * m + m < d:
        k = d - m * m - m
        if (2 * m + 1) % (4 * k - 1) == 0:
            sv = (2 * m + 1) // (4 * k - 1)
            out.append(FamilyMatch("m^2+m+k", m, k, Fraction(2, 2 * m + 1),
                                   (2 * (2 * m + 1) * sv + 1, 2 * sv)))
        m += 1
    for m in range(1, s + 3):
        k = m * m - m - d
        if k >= 1 and (2 * m - 1) % (4 * k + 1) == 0:
            sv = (2 * m - 1) // (4 * k + 1)
            out.append(FamilyMatch("m^2-m-k", m, k, Fraction(2 * m - 1, 2 * d),
                                   (2 * (2 * m - 1) * sv - 1, 2 * sv)))
    fund = fundamental_solution(4 * d)
    for fm in out:
        if fm.pell != (fund.x, fund.y):
            raise AssertionError(f"family {fm} predicts {fm.pell}, solver gives {(fund.x, fund.y)}")
    return out


def family_beta(d: int) -> FamilyMatch | None:
    matches = family_matches(d)
    return matches[0] if matches else None


# --- product surface E1 x E2 with (C1.C2) = 2 --------------------------------


def product_pair(a: int, b: int) -> PolarizedPair:
    """n = a C1 + b C2 against l = C1 + C2: (4, 2(a + b), 4ab)."""
    return PolarizedPair(4, 2 * (a + b), 4 * a * b)


def product_surface_beta(a: int, b: int, cross_check: bool = True) -> Fraction:
    if a < 1 or b < 1:
        raise InvalidClass("a, b must be positive", a=a, b=b)
    if 2 * a <= b:
        val = Fraction(1, 2 * a)
    elif a <= b:
        val = Fraction(1, b)
    elif a <= 2 * b:
        val = Fraction(1, a)
    else:
        val = Fraction(1, 2 * b)
    if cross_check and b <= 2 * a and a <= 2 * b:
        assert beta_pair(product_pair(a, b)).beta == val
    return val
