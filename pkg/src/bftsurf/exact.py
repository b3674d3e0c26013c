"""Exact rationals and real quadratic irrationals.

Rationals are :class:`fractions.Fraction`.  A :class:`QuadVal` is ``p + q*sqrt(d)``
with ``p, q`` rational and ``d`` squarefree; rational values carry ``q == 0``
and ``d == 0``.  Nothing here touches floating point except :meth:`QuadVal.to_decimal`,
which exists for display.
"""

from __future__ import annotations

import decimal
import functools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Union

import sympy

Rat = Fraction
RatLike = Union[int, Fraction]

_TRIAL_LIMIT = 10**8


class MixedRadicandError(TypeError):
    """Arithmetic between sqrt(D1) and sqrt(D2) with D1 != D2, both irrational."""


def as_rat(x: RatLike | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rat(s: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a Fraction.  Decimal-point strings are refused."""
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"expected an integer or num/den, got {s!r}")
    num, sep, den = s.partition("/")
    if sep:
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def rat_str(x: RatLike) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@functools.lru_cache(maxsize=4096)
def squarefree_split(k: int) -> tuple[int, int]:
    """Return ``(s, D)`` with ``k == s*s*D`` and ``D`` squarefree."""
    if k < 0:
        raise ValueError("radicand must be non-negative")
    if k == 0:
        return 0, 0
    if k < _TRIAL_LIMIT:
        s, core, rest, p = 1, 1, k, 2
        while p * p <= rest:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                core *= p
            p += 1 if p == 2 else 2
        return s, core * rest
    s, core = 1, 1
    for p, e in sympy.factorint(k).items():
        s *= p ** (e // 2)
        if e % 2:
            core *= p
    return s, core


@functools.total_ordering
@dataclass(frozen=True, eq=False, init=False)
class QuadVal:
    """``p + q*sqrt(d)`` in canonical form."""

    p: Fraction
    q: Fraction
    d: int

    def __init__(self, p: RatLike = 0, q: RatLike = 0, d: int = 0):
        p, q = as_rat(p), as_rat(q)
        if isinstance(d, bool) or not isinstance(d, int):
            raise TypeError("radicand must be an int")
        s, core = squarefree_split(d)
        if core <= 1:
            p, q, core = p + q * s * core, Fraction(0), 0
        else:
            q = q * s
        if q == 0:
            core = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", core)

    @classmethod
    def coerce(cls, x: "QuadVal | RatLike") -> "QuadVal":
        return x if isinstance(x, QuadVal) else cls(as_rat(x))

    @classmethod
    def sqrt_of(cls, x: RatLike) -> "QuadVal":
        """Exact square root of a non-negative rational."""
        x = as_rat(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    def is_rational(self) -> bool:
        return self.q == 0

    def as_rational(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return self.p

    def conjugate(self) -> "QuadVal":
        return QuadVal(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def sign(self) -> int:
        return _sign1(self.p, self.q, self.d)

    def _radicand_with(self, other: "QuadVal") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise MixedRadicandError(f"cannot combine sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other):
        if not isinstance(other, (QuadVal, int, Fraction)):
            return NotImplemented
        o = QuadVal.coerce(other)
        return QuadVal(self.p + o.p, self.q + o.q, self._radicand_with(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadVal(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (QuadVal, int, Fraction)):
            return NotImplemented
        return self + (-QuadVal.coerce(other))

    def __rsub__(self, other):
        return QuadVal.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (QuadVal, int, Fraction)):
            return NotImplemented
        o = QuadVal.coerce(other)
        d = self._radicand_with(o)
        return QuadVal(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (QuadVal, int, Fraction)):
            return NotImplemented
        o = QuadVal.coerce(other)
        if o.q == 0:
            if o.p == 0:
                raise ZeroDivisionError("QuadVal division by zero")
            return QuadVal(self.p / o.p, self.q / o.p, self.d)
        self._radicand_with(o)
        n = o.norm()
        return self * o.conjugate() / n

    def __rtruediv__(self, other):
        return QuadVal.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out, base = QuadVal(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if not isinstance(other, QuadVal):
            return NotImplemented
        return (self.p, self.q, self.d) == (other.p, other.q, other.d)

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        if not isinstance(other, (QuadVal, int, Fraction)):
            return NotImplemented
        return quad_cmp(self, QuadVal.coerce(other)) < 0

    def __repr__(self):
        return f"QuadVal({self})"

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        if self.p == 0:
            return f"{self.q}*sqrt({self.d})"
        op = "+" if self.q > 0 else "-"
        return f"{self.p} {op} {abs(self.q)}*sqrt({self.d})"

    def to_decimal(self, digits: int = 20) -> decimal.Decimal:
        """Approximate value rounded to ``digits`` significant digits (display only)."""
        ctx = decimal.Context(prec=digits + 15)
        def dec(r: Fraction) -> decimal.Decimal:
            return ctx.divide(decimal.Decimal(r.numerator), decimal.Decimal(r.denominator))
        v = dec(self.p)
        if self.q:
            v = ctx.add(v, ctx.multiply(dec(self.q), ctx.sqrt(decimal.Decimal(self.d))))
        return decimal.Context(prec=digits).plus(v)

    def to_json(self) -> dict:
        return {"p": rat_str(self.p), "q": rat_str(self.q), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadVal":
        return cls(parse_rat(obj["p"]), parse_rat(obj["q"]), int(obj["d"]))


def quad_normalize(p: RatLike, q: RatLike, k: int) -> QuadVal:
    return QuadVal(p, q, k)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _sign1(r: Fraction, s: Fraction, a: int) -> int:
    """Sign of ``r + s*sqrt(a)`` for squarefree (or zero) ``a``."""
    sr, ss = _sgn(r), _sgn(s) if a else 0
    if ss == 0:
        return sr
    if sr == 0 or sr == ss:
        return ss
    # opposite signs: whichever has the larger square wins
    return sr * _sgn(r * r - s * s * a)


def _sign2(r: Fraction, s: Fraction, a: int, t: Fraction, b: int) -> int:
    """Sign of ``r + s*sqrt(a) + t*sqrt(b)`` with ``a != b`` both squarefree > 1."""
    su = _sign1(r, s, a)
    sv = _sgn(t)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    # |u| vs |v|: u^2 - v^2 = (r^2 + s^2 a - t^2 b) + 2 r s sqrt(a)
    return su * _sign1(r * r + s * s * a - t * t * b, 2 * r * s, a)


def quad_cmp(a: QuadVal, b: QuadVal) -> int:
    """Exact three-way comparison, returning -1, 0 or 1."""
    a, b = QuadVal.coerce(a), QuadVal.coerce(b)
    r = a.p - b.p
    if a.d == 0 or b.d == 0 or a.d == b.d:
        d = a.d or b.d
        return _sign1(r, a.q - b.q, d)
    return _sign2(r, a.q, a.d, -b.q, b.d)


def qmin(*vals: QuadVal) -> QuadVal:
    return min((QuadVal.coerce(v) for v in vals), key=functools.cmp_to_key(quad_cmp))


def qmax(*vals: QuadVal) -> QuadVal:
    return max((QuadVal.coerce(v) for v in vals), key=functools.cmp_to_key(quad_cmp))


def int_sqrt_exact(n: int) -> int | None:
    """``isqrt(n)`` when ``n`` is a perfect square, else ``None``."""
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
