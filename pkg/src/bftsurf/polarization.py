"""Intersection data of two polarizations l, n on an abelian surface."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HodgeViolation, InvalidClass, PerfectSquareType
from .exact import is_square
from .pell import PellData, PellSolution, pell_for_type


@dataclass(frozen=True)
class PolarizedPair:
    """``(l^2, l.n, n^2)`` with l of type (1, l^2/2); Pell data of l attached."""

    l_sq: int
    ln: int
    n_sq: int
    pell: PellData = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for name in ("l_sq", "ln", "n_sq"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int")
        if self.l_sq <= 0 or self.l_sq % 2:
            raise InvalidClass(f"l^2 must be positive and even, got {self.l_sq}", l_sq=self.l_sq)
        if self.n_sq <= 0 or self.n_sq % 2:
            raise InvalidClass(f"n^2 must be positive and even, got {self.n_sq}", n_sq=self.n_sq)
        if self.ln <= 0:
            raise InvalidClass(f"l.n must be positive, got {self.ln}", ln=self.ln)
        if self.discriminant < 0:
            raise HodgeViolation(
                f"(l.n)^2 = {self.ln ** 2} < (l^2)(n^2) = {self.l_sq * self.n_sq}",
                discriminant=self.discriminant,
            )
        object.__setattr__(self, "pell", pell_for_type(self.l_sq // 2))

    @classmethod
    def principal(cls, d: int) -> "PolarizedPair":
        """The pair n = l."""
        return cls(2 * d, 2 * d, 2 * d)

    @property
    def d(self) -> int:
        return self.l_sq // 2

    @property
    def discriminant(self) -> int:
        """``(l.n)^2 - (l^2)(n^2)``; zero iff n is proportional to l."""
        return self.ln * self.ln - self.l_sq * self.n_sq

    @property
    def is_principal(self) -> bool:
        return self.l_sq == self.ln == self.n_sq

    def require_pell(self) -> PellSolution:
        if not isinstance(self.pell, PellSolution):
            raise PerfectSquareType(f"d = {self.d} is a perfect square; no Pell data", d=self.d)
        return self.pell

    def hypothesis_margin(self) -> int:
        """``x0^2 (n^2) - 2 y0^2 (l.n)^2``; the closed forms need this >= 0."""
        p = self.require_pell()
        return p.x * p.x * self.n_sq - 2 * p.y * p.y * self.ln * self.ln

    def rational_discriminant(self) -> bool:
        return is_square(self.discriminant)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.l_sq, self.ln, self.n_sq)
