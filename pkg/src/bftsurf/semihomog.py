"""Numerical invariants of simple semihomogeneous bundles E_{lambda l}.

Everything is for a polarization l of type (1, d) on an abelian surface (g = 2),
so chi(l) = d and (l^2) = 2d.  A slope lambda = a/b is a Fraction; the ``_raw``
entry points take an unreduced pair (a, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import HodgeViolation, NonIntegralInvariant, ZeroSlope
from .exact import QuadVal, RatLike, as_rat
from .pell import fundamental_solution
from .polarization import PolarizedPair

G = 2


def torsion_count_u_general(a: int, b: int, d1: int, d2: int) -> int:
    """u for type (d1, d2): sqrt of |X[b] & K(a l)| with K(a l) = (Z/a d1 + Z/a d2)^2."""
    if a == 0:
        raise ZeroSlope("lambda = 0 has no semihomogeneous invariants here")
    if b <= 0:
        raise ValueError("denominator must be positive")
    a = abs(a)
    return gcd(a * d1, b) * gcd(a * d2, b)


def torsion_count_u_raw(a: int, b: int, d: int) -> int:
    return torsion_count_u_general(a, b, 1, d)


def torsion_count_u(lam: RatLike, d: int) -> int:
    lam = as_rat(lam)
    return torsion_count_u_raw(lam.numerator, lam.denominator, d)


@dataclass(frozen=True)
class ChernVector:
    """``(rank, c1, ch2)``; c1 is a coefficient vector over the chosen NS basis.

    In the single-class setting of a type (1, d) polarization, ``c1 = (c,)``
    stands for ``c * l``.
    """

    rank: int
    c1: tuple[Fraction, ...]
    ch2: Fraction

    def __sub__(self, other: "ChernVector") -> "ChernVector":
        if len(self.c1) != len(other.c1):
            raise ValueError("c1 vectors over different bases")
        return ChernVector(
            self.rank - other.rank,
            tuple(x - y for x, y in zip(self.c1, other.c1)),
            self.ch2 - other.ch2,
        )

    def dual(self) -> "ChernVector":
        return ChernVector(self.rank, tuple(-x for x in self.c1), self.ch2)

    def discriminant(self, gram: Sequence[Sequence[int]]) -> Fraction:
        """``(c1^2) - 2 rank ch2``; zero for semihomogeneous bundles."""
        return intersect(self.c1, self.c1, gram) - 2 * self.rank * self.ch2

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "c1": [str(x) for x in self.c1],
            "ch2": str(self.ch2),
        }


def intersect(u: Sequence[Fraction], v: Sequence[Fraction], gram: Sequence[Sequence[int]]) -> Fraction:
    if len(gram) != len(u) or len(u) != len(v):
        raise ValueError("dimension mismatch between c1 vectors and Gram matrix")
    return sum(
        (Fraction(u[i]) * gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v))),
        Fraction(0),
    )


def _rank_chi(a: int, b: int, d: int) -> tuple[Fraction, Fraction]:
    # rank = b^g / u, chi = |a|^g chi(l) / u; the sign of a only reaches c1
    u = torsion_count_u_raw(a, b, d)
    return Fraction(b**G, u), Fraction(abs(a) ** G * d, u)


def chern_vector_raw(a: int, b: int, d: int) -> ChernVector:
    """v(E_{(a/b) l}) computed from the possibly unreduced pair (a, b)."""
    rank, chi = _rank_chi(a, b, d)
    if rank.denominator != 1 or chi.denominator != 1:
        raise NonIntegralInvariant(f"non-integral invariants for a/b = {a}/{b}, d = {d}", a=a, b=b, d=d)
    c1 = rank * Fraction(a, b)
    return ChernVector(int(rank), (c1,), chi)


def chern_vector(lam: RatLike, d: int) -> ChernVector:
    lam = as_rat(lam)
    return chern_vector_raw(lam.numerator, lam.denominator, d)


def rank_r(lam: RatLike, d: int) -> int:
    """r_l(lambda) = rank E_{lambda l}."""
    return chern_vector(lam, d).rank


def roots_s(lam_abs: RatLike, pair: PolarizedPair) -> tuple[QuadVal, QuadVal]:
    """Roots ``(s-, s+)`` of the Hilbert polynomial of E_{-lambda l} along n."""
    lam = as_rat(lam_abs)
    if lam <= 0:
        raise ValueError("lambda must be positive (G = E_{-lambda l})")
    disc = pair.discriminant
    if disc < 0:
        raise HodgeViolation("(l.n)^2 < (l^2)(n^2)", discriminant=disc)
    centre = lam * pair.ln / pair.n_sq
    half = lam / pair.n_sq
    return QuadVal(centre, -half, disc), QuadVal(centre, half, disc)


def hilbert_coeffs(lam_abs: RatLike, pair: PolarizedPair, rank: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (c2, c1, c0) of chi_{G,n}(x) = (r/2)((n^2)x^2 - 2 lam (l.n) x + lam^2 (l^2))."""
    lam = as_rat(lam_abs)
    half_r = Fraction(rank, 2)
    return (half_r * pair.n_sq, -half_r * 2 * lam * pair.ln, half_r * lam * lam * pair.l_sq)


def hom_euler(vE: ChernVector, vF: ChernVector, gram: Sequence[Sequence[int]]) -> Fraction:
    """chi(E^dual (x) F) by Riemann-Roch on an abelian surface."""
    return vE.rank * vF.ch2 + vF.rank * vE.ch2 - intersect(vE.c1, vF.c1, gram)


def pell_pair_vectors(d: int) -> tuple[ChernVector, ChernVector]:
    """``(v(E), v(F))`` for E = E_{-2y0/(x0-1) l}, F = E_{-2y0/(x0+1) l}."""
    p = fundamental_solution(4 * d)
    e = chern_vector_raw(-p.y, (p.x - 1) // 2, d)
    f = chern_vector_raw(-p.y, (p.x + 1) // 2, d)
    return e, f
