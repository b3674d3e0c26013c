"""Piecewise-quadratic cohomological rank functions with exact breakpoints.

A :class:`PiecewiseQuad` has ``k`` breakpoints and ``k + 1`` pieces; piece ``i``
lives on the closed interval ``[bp[i-1], bp[i]]`` (the first starts at
``domain_floor``, the last is unbounded).  Adjacent pieces must agree at the
shared breakpoint, so a value on a breakpoint may be read from either side.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Union

from .errors import BelowDomain, HypothesisFailed, PerfectSquareType
from .exact import QuadVal, RatLike, as_rat, quad_cmp
from .pell import PellSolution, pell_for_type
from .polarization import PolarizedPair
from .semihomog import hilbert_coeffs, roots_s

Point = Union[QuadVal, int, Fraction]


@dataclass(frozen=True)
class Quad:
    """``c2 x^2 + c1 x + c0``."""

    c2: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c0: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c2", "c1", "c0"):
            object.__setattr__(self, name, as_rat(getattr(self, name)))

    def __call__(self, x: Point):
        if isinstance(x, QuadVal):
            return (x * self.c2 + self.c1) * x + self.c0
        x = as_rat(x)
        return (self.c2 * x + self.c1) * x + self.c0

    def __add__(self, o: "Quad") -> "Quad":
        return Quad(self.c2 + o.c2, self.c1 + o.c1, self.c0 + o.c0)

    def __sub__(self, o: "Quad") -> "Quad":
        return Quad(self.c2 - o.c2, self.c1 - o.c1, self.c0 - o.c0)

    def __neg__(self) -> "Quad":
        return Quad(-self.c2, -self.c1, -self.c0)

    def is_zero(self) -> bool:
        return not (self.c2 or self.c1 or self.c0)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c2, self.c1, self.c0)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs()]


ZERO = Quad()


def _pos_domain(x: QuadVal, lo: QuadVal | None, hi: QuadVal | None) -> bool:
    return (lo is None or quad_cmp(lo, x) <= 0) and (hi is None or quad_cmp(x, hi) <= 0)


def quad_min_on(q: Quad, lo: QuadVal, hi: QuadVal | None):
    """Exact minimum of ``q`` on ``[lo, hi]`` (``hi=None`` means unbounded).

    Returns ``None`` when the minimum is minus infinity.
    """
    if hi is None and (q.c2 < 0 or (q.c2 == 0 and q.c1 < 0)):
        return None
    cands = [q(lo)]
    if hi is not None:
        cands.append(q(hi))
    if q.c2 > 0:
        v = QuadVal(-q.c1 / (2 * q.c2))
        if _pos_domain(v, lo, hi):
            cands.append(q(v))
    best = cands[0]
    for c in cands[1:]:
        if quad_cmp(QuadVal.coerce(c), QuadVal.coerce(best)) < 0:
            best = c
    return best


@dataclass(frozen=True)
class PiecewiseQuad:
    breakpoints: tuple[QuadVal, ...]
    pieces: tuple[Quad, ...]
    domain_floor: QuadVal = field(default_factory=QuadVal)

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(QuadVal.coerce(b) for b in self.breakpoints))
        object.__setattr__(self, "domain_floor", QuadVal.coerce(self.domain_floor))
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("need exactly one more piece than breakpoints")
        bps = (self.domain_floor,) + self.breakpoints
        for a, b in zip(bps, bps[1:]):
            if quad_cmp(a, b) >= 0:
                raise ValueError(f"breakpoints not strictly increasing from the floor: {a} >= {b}")

    def interval(self, i: int) -> tuple[QuadVal, QuadVal | None]:
        lo = self.domain_floor if i == 0 else self.breakpoints[i - 1]
        hi = self.breakpoints[i] if i < len(self.breakpoints) else None
        return lo, hi

    def piece_index(self, x: Point) -> int:
        x = QuadVal.coerce(x)
        if quad_cmp(x, self.domain_floor) < 0:
            raise BelowDomain(f"x = {x} is below the domain floor {self.domain_floor}")
        for i, b in enumerate(self.breakpoints):
            if quad_cmp(x, b) <= 0:
                return i
        return len(self.breakpoints)

    def __call__(self, x: Point):
        i = self.piece_index(x)
        return self.pieces[i](x)

    def continuity_defects(self) -> list[int]:
        """Indices of breakpoints where the adjacent pieces disagree."""
        return [
            i for i, b in enumerate(self.breakpoints)
            if self.pieces[i](b) != self.pieces[i + 1](b)
        ]

    def negative_pieces(self) -> list[int]:
        out = []
        for i, q in enumerate(self.pieces):
            lo, hi = self.interval(i)
            m = quad_min_on(q, lo, hi)
            if m is None or QuadVal.coerce(m).sign() < 0:
                out.append(i)
        return out

    def validate(self) -> "PiecewiseQuad":
        bad = self.continuity_defects()
        if bad:
            raise ValueError(f"discontinuous at breakpoints {[str(self.breakpoints[i]) for i in bad]}")
        neg = self.negative_pieces()
        if neg:
            raise ValueError(f"negative values on pieces {neg}")
        return self

    def zero_prefix_end(self) -> QuadVal | None:
        """sup of the leading run where the function vanishes identically.

        ``None`` means the function is not identically zero near the floor.
        The profiles built here have no isolated zeros outside these runs.
        """
        if not self.pieces[0].is_zero():
            return None
        i = 0
        while i < len(self.breakpoints) and self.pieces[i + 1].is_zero():
            i += 1
        if i == len(self.breakpoints):
            raise ValueError("function vanishes identically")
        return self.breakpoints[i]

    def zero_suffix_start(self) -> QuadVal | None:
        """inf of the trailing run where the function vanishes identically."""
        if not self.pieces[-1].is_zero():
            return None
        i = len(self.pieces) - 1
        while i > 0 and self.pieces[i - 1].is_zero():
            i -= 1
        return self.domain_floor if i == 0 else self.breakpoints[i - 1]

    def to_json(self) -> dict:
        return {
            "domain_floor": self.domain_floor.to_json(),
            "breakpoints": [b.to_json() for b in self.breakpoints],
            "pieces": [q.to_json() for q in self.pieces],
        }


@dataclass(frozen=True)
class CrfTriple:
    """``(h0, h1, h2)`` over one shared set of breakpoints, with the Hilbert polynomial."""

    h0: PiecewiseQuad
    h1: PiecewiseQuad
    h2: PiecewiseQuad
    chi: Quad

    def __post_init__(self):
        if not (self.h0.breakpoints == self.h1.breakpoints == self.h2.breakpoints):
            raise ValueError("h0, h1, h2 must share breakpoints")

    @property
    def breakpoints(self) -> tuple[QuadVal, ...]:
        return self.h0.breakpoints

    def euler_defects(self) -> list[int]:
        """Intervals where h0 - h1 + h2 != chi as polynomials."""
        return [
            i for i, (a, b, c) in enumerate(zip(self.h0.pieces, self.h1.pieces, self.h2.pieces))
            if not (a - b + c - self.chi).is_zero()
        ]

    def validate(self) -> "CrfTriple":
        for f in (self.h0, self.h1, self.h2):
            f.validate()
        bad = self.euler_defects()
        if bad:
            raise ValueError(f"h0 - h1 + h2 != chi on intervals {bad}")
        return self

    def to_json(self) -> dict:
        return {
            "breakpoints": [b.to_json() for b in self.breakpoints],
            "chi": self.chi.to_json(),
            "h0": self.h0.to_json(),
            "h1": self.h1.to_json(),
            "h2": self.h2.to_json(),
        }


def _triple(bps: Iterable[QuadVal], h0: list[Quad], chi: Quad, h2: list[Quad] | None = None,
            floor: Point = 0) -> CrfTriple:
    bps = tuple(bps)
    h2 = h2 or [ZERO] * len(h0)
    h1 = [a + c - chi for a, c in zip(h0, h2)]
    return CrfTriple(
        PiecewiseQuad(bps, tuple(h0), QuadVal.coerce(floor)),
        PiecewiseQuad(bps, tuple(h1), QuadVal.coerce(floor)),
        PiecewiseQuad(bps, tuple(h2), QuadVal.coerce(floor)),
        chi,
    ).validate()


def _pell(d: int) -> PellSolution:
    p = pell_for_type(d)
    if not isinstance(p, PellSolution):
        raise PerfectSquareType(f"d = {d} is a perfect square; the closed form needs Pell data", d=d)
    return p


def crf_ideal_l(d: int) -> CrfTriple:
    """Profiles of the ideal sheaf of the origin along l itself (n = l)."""
    p = _pell(d)
    x0, y0 = p.x, p.y
    lo, hi = QuadVal(Fraction(2 * y0, x0 + 1)), QuadVal(Fraction(2 * y0, x0 - 1))
    chi = Quad(d, 0, -1)
    middle = Quad(Fraction(d * (x0 + 1), 2), -2 * d * y0, Fraction(x0 - 1, 2))
    return _triple((lo, hi), [ZERO, middle, chi], chi)


def crf_semihomog(lam_abs: RatLike, pair: PolarizedPair, rank: int, floor: Point | None = None) -> CrfTriple:
    """Profiles of G = E_{-lambda l} of the given rank along n."""
    lam = as_rat(lam_abs)
    s_minus, s_plus = roots_s(lam, pair)
    chi = Quad(*hilbert_coeffs(lam, pair, rank))
    if floor is None:
        floor = QuadVal(-2 * lam * pair.ln / pair.n_sq)
    if s_minus == s_plus:
        return _triple((s_minus,), [ZERO, chi], chi, h2=[chi, ZERO], floor=floor)
    return _triple((s_minus, s_plus), [ZERO, ZERO, chi], chi, h2=[chi, ZERO, ZERO], floor=floor)


def crf_ideal_n(pair: PolarizedPair) -> CrfTriple:
    """Profiles of the ideal sheaf of the origin along n, from 0 -> E -> F -> I_o -> 0."""
    p = pair.require_pell()
    margin = pair.hypothesis_margin()
    if margin < 0:
        raise HypothesisFailed(
            f"x0^2 (n^2) < 2 y0^2 (l.n)^2 for {pair.as_tuple()}", deficit=-margin
        )
    x0, y0 = p.x, p.y
    lam_f = Fraction(2 * y0, x0 + 1)
    lam_e = Fraction(2 * y0, x0 - 1)
    _, s_plus_f = roots_s(lam_f, pair)
    s_minus_e, _ = roots_s(lam_e, pair)
    chi_f = Quad(*hilbert_coeffs(lam_f, pair, (x0 + 1) // 2))
    chi = Quad(Fraction(pair.n_sq, 2), 0, -1)
    if s_plus_f == s_minus_e:
        return _triple((s_plus_f,), [ZERO, chi], chi)
    return _triple((s_plus_f, s_minus_e), [ZERO, chi_f, chi], chi)


def crf_eval(f: PiecewiseQuad, x: Point):
    """Exact value of ``f`` at ``x`` (a Fraction for rational x)."""
    if isinstance(x, QuadVal) and x.is_rational():
        x = x.p
    return f(x)


def corrupt_piece(f: PiecewiseQuad, index: int, delta_c0: RatLike = 1) -> PiecewiseQuad:
    """Copy of ``f`` with ``delta_c0`` added to one piece's constant term (fault injection)."""
    pieces = list(f.pieces)
    q = pieces[index]
    pieces[index] = Quad(q.c2, q.c1, q.c0 + as_rat(delta_c0))
    return replace(f, pieces=tuple(pieces))


def corrupt_triple(t: CrfTriple, which: str, index: int, delta_c0: RatLike = 1) -> CrfTriple:
    return replace(t, **{which: corrupt_piece(getattr(t, which), index, delta_c0)})
