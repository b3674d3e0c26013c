"""Rank-2 Neron-Severi lattice arithmetic and the searches built on it."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .bft import ThresholdResult, beta_pair
from .errors import InvalidLattice, NotAmple, OddSelfIntersection, PerfectSquareType
from .exact import is_square
from .pell import PellSolution, pell_for_type
from .polarization import PolarizedPair


class ClassVec(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class NSLattice:
    gram: tuple[tuple[int, int], tuple[int, int]]

    def __init__(self, gram: Sequence[Sequence[int]]):
        g = tuple(tuple(int(x) for x in row) for row in gram)
        if len(g) != 2 or any(len(r) != 2 for r in g):
            raise InvalidLattice("Gram matrix must be 2x2")
        if g[0][1] != g[1][0]:
            raise InvalidLattice("Gram matrix must be symmetric")
        if g[0][0] % 2 or g[1][1] % 2:
            raise InvalidLattice("diagonal entries must be even")
        if g[0][0] * g[1][1] - g[0][1] ** 2 >= 0:
            raise InvalidLattice("signature must be (1,1): det(gram) < 0")
        object.__setattr__(self, "gram", g)

    @property
    def det(self) -> int:
        g = self.gram
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(2) for j in range(2))

    def square(self, u: Sequence[int]) -> int:
        return self.dot(u, u)


def pair_from_classes(lattice: NSLattice, l: Sequence[int], n: Sequence[int]) -> PolarizedPair:
    """Intersection triple of two classes, with n ample by (n^2) > 0 and (l.n) > 0."""
    l_sq, ln, n_sq = lattice.square(l), lattice.dot(l, n), lattice.square(n)
    if l_sq <= 0:
        raise NotAmple(f"(l^2) = {l_sq} <= 0", quantity="l^2")
    if l_sq % 2:
        raise OddSelfIntersection(f"(l^2) = {l_sq} is odd", l_sq=l_sq)
    if n_sq <= 0:
        raise NotAmple(f"(n^2) = {n_sq} <= 0", quantity="n^2")
    if ln <= 0:
        raise NotAmple(f"(l.n) = {ln} <= 0", quantity="l.n")
    return PolarizedPair(l_sq, ln, n_sq)


# --- search for irrational thresholds ---------------------------------------


def _search_stripe(args: tuple[int, int, int, int, int, bool]) -> list[tuple[int, int]]:
    d, x0, y0, ln, bound, rational_too = args
    l_sq = 2 * d
    hits = []
    for n_sq in range(2, bound + 1, 2):
        if ln * ln < l_sq * n_sq:
            break
        if x0 * x0 * n_sq < 2 * y0 * y0 * ln * ln:
            continue
        if not rational_too and is_square(ln * ln - l_sq * n_sq):
            continue
        hits.append((n_sq, ln))
    return hits


def search_irrational(d: int, bound: int, rational_too: bool = False,
                      width: int = 1) -> list[tuple[PolarizedPair, ThresholdResult]]:
    """All triples (2d, ln, n_sq) with ln, n_sq <= bound where the closed form applies.

    Irrational thresholds only unless ``rational_too``.  Sorted by (n_sq, ln).
    """
    p = pell_for_type(d)
    if not isinstance(p, PellSolution):
        raise PerfectSquareType(f"d = {d} is a perfect square", d=d)
    tasks = [(d, p.x, p.y, ln, bound, rational_too) for ln in range(1, bound + 1)]
    if width > 1:
        with ProcessPoolExecutor(max_workers=width) as ex:
            stripes = list(ex.map(_search_stripe, tasks, chunksize=max(1, len(tasks) // (4 * width))))
    else:
        stripes = [_search_stripe(t) for t in tasks]
    keys = sorted(k for s in stripes for k in s)
    out = []
    for n_sq, ln in keys:
        pair = PolarizedPair(2 * d, ln, n_sq)
        out.append((pair, beta_pair(pair)))
    return out


# --- the lattice behind the (1,17) example ----------------------------------


HYPERBOLIC_SUM = tuple(
    tuple(1 if {i, j} in ({0, 1}, {2, 3}, {4, 5}) else 0 for j in range(6)) for i in range(6)
)


def _form6(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * HYPERBOLIC_SUM[i][j] * v[j] for i in range(6) for j in range(6))


@dataclass(frozen=True)
class LatticeCertificate:
    h1: tuple[int, ...]
    h2: tuple[int, ...]
    gram: tuple[tuple[int, int], tuple[int, int]]
    l: ClassVec
    n: ClassVec
    triple: tuple[int, int, int]
    basis_det: int
    result: ThresholdResult

    @property
    def n_type(self) -> tuple[int, int]:
        return (1, self.triple[2] // 2)

    def to_json(self) -> dict:
        return {
            "h1_in_rank6": list(self.h1),
            "h2_in_rank6": list(self.h2),
            "gram": [list(r) for r in self.gram],
            "l": list(self.l),
            "n": list(self.n),
            "l2_ln_n2": list(self.triple),
            "basis_det": self.basis_det,
            "unimodular_change": abs(self.basis_det) == 1,
            "type_of_n": list(self.n_type),
            "threshold": self.result.to_json(),
        }


def realize_corollary_lattice() -> tuple[NSLattice, ClassVec, ClassVec, LatticeCertificate]:
    """Rank-2 sublattice Z(e1+e2) + Z(e3-2e4) of U+U+U, with l = 2h1 + h2, n = 5h1 + 2h2."""
    h1 = (1, 1, 0, 0, 0, 0)
    h2 = (0, 0, 1, -2, 0, 0)
    gram = ((_form6(h1, h1), _form6(h1, h2)), (_form6(h2, h1), _form6(h2, h2)))
    lat = NSLattice(gram)
    l, n = ClassVec(2, 1), ClassVec(5, 2)
    pair = pair_from_classes(lat, l, n)
    det = l.a * n.b - l.b * n.a
    cert = LatticeCertificate(h1, h2, lat.gram, l, n, pair.as_tuple(), det, beta_pair(pair))
    return lat, l, n, cert


# --- numerical destabilizing candidates -------------------------------------


@dataclass(frozen=True)
class DestabCandidate:
    r: int
    lh: int
    h_sq: int
    trivial: bool

    def to_json(self) -> dict:
        return {"r": self.r, "lh": self.lh, "h_sq": self.h_sq, "trivial": self.trivial}


def _ceil_even(x: Fraction) -> int:
    c = math.ceil(x)
    return c + (c % 2)


def _floor_even(x: Fraction) -> int:
    f = math.floor(x)
    return f - (f % 2)


def destab_candidates(d: int) -> list[DestabCandidate]:
    """Integer (r, l.h, h^2) meeting the numerical constraints on the image of E -> F.

    Constraints: 1 <= r < (x0-1)/2; (x0-1)/y0 < lh/r < (x0+1)/y0; 2d h^2 <= lh^2;
    and the two nef-square inequalities, each solved as a lower bound on h^2.
    """
    p = pell_for_type(d)
    if not isinstance(p, PellSolution):
        raise PerfectSquareType(f"d = {d} is a perfect square", d=d)
    x0, y0 = p.x, p.y
    out = []
    for r in range(1, (x0 - 1) // 2):
        # strict: (x0-1) r < lh y0 < (x0+1) r
        lh_lo = (x0 - 1) * r // y0 + 1
        lh_hi = -((-(x0 + 1) * r) // y0) - 1
        for lh in range(lh_lo, lh_hi + 1):
            upper = Fraction(lh * lh, 2 * d)
            lower1 = Fraction(4 * y0 * lh * r - 2 * (x0 - 1) * r * r, x0 + 1)
            lower2 = Fraction(4 * y0 * lh * r - 2 * (x0 + 1) * r * r, x0 - 1)
            for h_sq in range(_ceil_even(max(lower1, lower2)), _floor_even(upper) + 1, 2):
                trivial = (r, lh, h_sq) == (y0, x0, 2 * y0 * y0)
                out.append(DestabCandidate(r, lh, h_sq, trivial))
    return out


@dataclass(frozen=True)
class TrivialDecomposition:
    d: int
    A: int
    B: int
    min_degree: int
    bound: Fraction
    sqrt_d_below_bound: bool

    @property
    def product_ok(self) -> bool:
        return self.A * self.B == self.d

    @property
    def min_below_bound(self) -> bool:
        return self.min_degree < self.bound

    def to_json(self) -> dict:
        return {
            "d": self.d, "A": self.A, "B": self.B, "AB_equals_d": self.product_ok,
            "min_degree": self.min_degree, "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "min_below_bound": self.min_below_bound, "sqrt_d_below_bound": self.sqrt_d_below_bound,
        }


def trivial_solution_decomposition(d: int) -> TrivialDecomposition:
    """l = A[C] + B[C'] for the trivial solution; A = gcd((x0+1)/2, d), B = gcd((x0-1)/2, d)."""
    p = pell_for_type(d)
    if not isinstance(p, PellSolution):
        raise PerfectSquareType(f"d = {d} is a perfect square", d=d)
    x0, y0 = p.x, p.y
    a = math.gcd((x0 + 1) // 2, d)
    b = math.gcd((x0 - 1) // 2, d)
    if a * b != d:
        raise AssertionError(f"A*B = {a * b} != d = {d}")
    bound = Fraction(x0 - 1, y0)
    m = min(a, b)
    assert m * m <= d
    # sqrt(d) < (x0-1)/y0  <=>  d y0^2 < (x0-1)^2
    return TrivialDecomposition(d, a, b, m, bound, d * y0 * y0 < (x0 - 1) ** 2)
