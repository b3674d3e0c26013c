"""Positive solutions of x^2 - N y^2 = 1.

The production path expands sqrt(N) as a continued fraction; the brute-force
scanner used to check it lives in :mod:`bftsurf.oracle`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Union

from .errors import InvalidModulus, PerfectSquareModulus
from .exact import QuadVal


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    index: int
    n: int

    def __post_init__(self):
        if self.x * self.x - self.n * self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.n} y^2 = 1")

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "index": self.index, "n": self.n}


@dataclass(frozen=True)
class PerfectSquareMarker:
    """Type (1, d) with d = s^2: no Pell data, and beta(X, l) = 1/s."""

    d: int
    root: int

    @property
    def beta(self) -> QuadVal:
        return QuadVal(Fraction(1, self.root))


PellData = Union[PellSolution, PerfectSquareMarker]


@functools.lru_cache(maxsize=1024)
def fundamental_solution(n: int) -> PellSolution:
    if n < 2:
        raise InvalidModulus(f"Pell modulus must be >= 2, got {n}", n=n)
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise PerfectSquareModulus(f"{n} is a perfect square", n=n)
    # (P, Q) recurrence for the continued fraction of sqrt(n); convergents h/k
    m, q, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - n * k * k != 1:
        m = q * a - m
        q = (n - m * m) // q
        a = (a0 + m) // q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellSolution(h, k, 1, n)


def nth_solution(fund: PellSolution, k: int) -> PellSolution:
    """(x_k + y_k sqrt N) = (x_1 + y_1 sqrt N)^k."""
    if k < 1:
        raise ValueError("solution index starts at 1")
    if fund.index != 1:
        raise ValueError("nth_solution expects the fundamental solution")
    x, y = fund.x, fund.y
    for _ in range(k - 1):
        x, y = fund.x * x + fund.n * fund.y * y, fund.x * y + fund.y * x
    return PellSolution(x, y, k, fund.n)


def solutions(fund: PellSolution) -> Iterator[PellSolution]:
    k = 1
    while True:
        yield nth_solution(fund, k)
        k += 1


def pell_for_type(d: int) -> PellData:
    """Pell data for a polarization of type (1, d): modulus 4d, or the square marker."""
    if d < 1:
        raise InvalidModulus(f"type invariant d must be >= 1, got {d}", d=d)
    s = isqrt(d)
    if s * s == d:
        return PerfectSquareMarker(d, s)
    return fundamental_solution(4 * d)
